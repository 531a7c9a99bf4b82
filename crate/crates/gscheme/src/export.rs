//! JSON and DOT renderings. Every list is emitted in a fixed order so the
//! bytes depend only on the input.

use std::sync::Arc;

use gscheme_core::sheaf::SchemeMorphism;
use gscheme_core::variety::{coordinate_group, variety_of};
use gscheme_core::{
    GGroup, GScheme, GroupTable, PointSet, PrimeDef, Spectrum, Subgroup, Variant, VarietySet, WordContext,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

impl std::str::FromStr for Format {
    type Err = CliError;
    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "json" => Ok(Format::Json),
            "dot" => Ok(Format::Dot),
            _ => Err(CliError::Usage(format!("unknown format `{s}` (json|dot)"))),
        }
    }
}

pub fn variant_name(v: Variant) -> &'static str {
    match v {
        Variant::T1 => "t1",
        Variant::T2 => "t2",
    }
}

pub fn parse_variant(s: &str) -> CliResult<Variant> {
    match s {
        "t1" => Ok(Variant::T1),
        "t2" => Ok(Variant::T2),
        _ => Err(CliError::Usage(format!("unknown variant `{s}` (t1|t2)"))),
    }
}

pub fn prime_def_name(d: PrimeDef) -> &'static str {
    match d {
        PrimeDef::Quotient => "quotient",
        PrimeDef::Elementwise => "elementwise",
    }
}

pub fn parse_prime_def(s: &str) -> CliResult<PrimeDef> {
    match s {
        "quotient" => Ok(PrimeDef::Quotient),
        "elementwise" => Ok(PrimeDef::Elementwise),
        _ => Err(CliError::Usage(format!("unknown prime definition `{s}` (quotient|elementwise)"))),
    }
}

/// Short description of a subgroup: its elements when small, else its order.
pub fn subgroup_label(h: &GroupTable, s: &Subgroup) -> String {
    if s.is_trivial() {
        "{1}".into()
    } else if s.is_whole() {
        "H".into()
    } else if s.order() <= 8 {
        s.label(h)
    } else {
        format!("order {}", s.order())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectJson {
    pub base: Vec<Vec<usize>>,
    pub carrier: Vec<Vec<usize>>,
    pub structure: Vec<usize>,
    pub base_labels: Option<Vec<String>>,
    pub carrier_labels: Option<Vec<String>>,
}

fn table(rows: &[Vec<usize>], labels: &Option<Vec<String>>) -> CliResult<Arc<GroupTable>> {
    let t = GroupTable::from_rows(rows)?;
    Ok(Arc::new(match labels {
        Some(l) => t.with_labels(l.clone())?,
        None => t,
    }))
}

impl ObjectJson {
    pub fn of(obj: &GGroup) -> Self {
        ObjectJson {
            base: obj.base().rows(),
            carrier: obj.carrier().rows(),
            structure: obj.structure().images().to_vec(),
            base_labels: obj.base().labels().map(<[String]>::to_vec),
            carrier_labels: obj.carrier().labels().map(<[String]>::to_vec),
        }
    }

    pub fn build(&self) -> CliResult<GGroup> {
        let base = table(&self.base, &self.base_labels)?;
        let carrier = table(&self.carrier, &self.carrier_labels)?;
        Ok(GGroup::new(base, carrier, self.structure.clone())?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub points: Vec<usize>,
    pub generic: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumJson {
    pub variant: String,
    pub prime_def: String,
    pub object: ObjectJson,
    /// Each prime as its sorted element list.
    pub primes: Vec<Vec<usize>>,
    pub closed_sets: Vec<Vec<usize>>,
    /// `(q, p)`: `p` lies in the closure of `q`.
    pub specialization: Vec<(usize, usize)>,
    pub radical: Vec<usize>,
    pub components: Vec<ComponentJson>,
}

pub fn spectrum_json(s: &Spectrum) -> SpectrumJson {
    SpectrumJson {
        variant: variant_name(s.variant()).into(),
        prime_def: prime_def_name(s.prime_def()).into(),
        object: ObjectJson::of(s.object()),
        primes: s.primes().iter().map(|p| p.elements().to_vec()).collect(),
        closed_sets: s.closed_sets().iter().map(|c| c.to_vec()).collect(),
        specialization: s.specialization_edges(),
        radical: s.radical(s.points()).elements().to_vec(),
        components: s
            .irreducible_components()
            .iter()
            .map(|c| ComponentJson { points: c.closed.members.to_vec(), generic: c.generic })
            .collect(),
    }
}

/// Rebuilds the spectrum and checks it against every exported field.
pub fn spectrum_from_json(j: &SpectrumJson) -> CliResult<Spectrum> {
    let obj = j.object.build()?;
    let s = Spectrum::new(&obj, parse_variant(&j.variant)?, parse_prime_def(&j.prime_def)?)?;
    if spectrum_json(&s) != *j {
        return Err(CliError::Usage("spectrum JSON is inconsistent with its object".into()));
    }
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpenJson {
    pub points: Vec<usize>,
    pub sections: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeJson {
    pub points: Vec<String>,
    pub local_orders: Vec<usize>,
    pub opens: Vec<OpenJson>,
    pub stalks: Vec<usize>,
    /// Present for affine schemes; the scheme is rebuilt from it.
    pub spectrum: Option<SpectrumJson>,
}

pub fn scheme_json(x: &GScheme) -> CliResult<SchemeJson> {
    Ok(SchemeJson {
        points: x.labels().to_vec(),
        local_orders: (0..x.len()).map(|p| x.local(p).table.order()).collect(),
        opens: x
            .opens()
            .iter()
            .map(|&u| Ok(OpenJson { points: u.to_vec(), sections: x.sections(u)?.order() }))
            .collect::<CliResult<_>>()?,
        stalks: (0..x.len()).map(|p| x.stalk(p).order()).collect(),
        spectrum: x.spectrum().map(|s| spectrum_json(s)),
    })
}

pub fn scheme_from_json(j: &SchemeJson) -> CliResult<GScheme> {
    let spec = j
        .spectrum
        .as_ref()
        .ok_or_else(|| CliError::Usage("only affine schemes can be re-imported".into()))?;
    let x = GScheme::affine(&spectrum_from_json(spec)?)?;
    if scheme_json(&x)? != *j {
        return Err(CliError::Usage("scheme JSON is inconsistent with its spectrum".into()));
    }
    Ok(x)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarietyJson {
    pub group: Vec<Vec<usize>>,
    pub vars: usize,
    pub generators: Vec<String>,
    pub points: Vec<Vec<usize>>,
    pub function_group_order: Option<usize>,
    pub witnesses: Vec<String>,
}

pub fn variety_json(v: &VarietySet, cap: usize) -> VarietyJson {
    let ctx = v.ctx();
    let fg = coordinate_group(v, cap).ok();
    VarietyJson {
        group: ctx.group().rows(),
        vars: ctx.vars(),
        generators: v.generators().iter().map(|w| ctx.format(w)).collect(),
        points: v.points().to_vec(),
        function_group_order: fg.as_ref().map(|f| f.order()),
        witnesses: fg.map(|f| (0..f.order()).map(|i| ctx.format(f.witness(i))).collect()).unwrap_or_default(),
    }
}

pub fn variety_from_json(j: &VarietyJson, cap: usize) -> CliResult<VarietySet> {
    let ctx = WordContext::new(Arc::new(GroupTable::from_rows(&j.group)?), j.vars);
    let gens = j.generators.iter().map(|w| ctx.parse(w)).collect::<Result<Vec<_>, _>>()?;
    let v = variety_of(&ctx, &gens)?;
    if variety_json(&v, cap) != *j {
        return Err(CliError::Usage("variety JSON is inconsistent with its generators".into()));
    }
    Ok(v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub point_map: Vec<usize>,
    pub value_maps: Vec<Vec<usize>>,
}

pub fn morphism_json(f: &SchemeMorphism) -> MorphismJson {
    MorphismJson { point_map: f.point_map.clone(), value_maps: f.value_maps.clone() }
}

pub fn morphism_from_json(j: &MorphismJson) -> SchemeMorphism {
    SchemeMorphism { point_map: j.point_map.clone(), value_maps: j.value_maps.clone() }
}

pub fn to_json<T: Serialize>(v: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Specialization order of a spectrum, generic points at the top.
pub fn spectrum_dot(s: &Spectrum) -> String {
    let h = s.object().carrier();
    let mut out = String::from("digraph spectrum {\n");
    for (i, p) in s.primes().iter().enumerate() {
        out.push_str(&format!("  P{i} [label=\"{}\"];\n", dot_escape(&subgroup_label(h, p))));
    }
    for (q, p) in s.specialization_edges() {
        out.push_str(&format!("  P{q} -> P{p};\n"));
    }
    out.push_str("}\n");
    out
}

/// Specialization order of a scheme's points.
pub fn scheme_dot(x: &GScheme) -> String {
    let mut out = String::from("digraph scheme {\n");
    for p in 0..x.len() {
        out.push_str(&format!("  X{p} [label=\"{}\"];\n", dot_escape(x.label(p))));
    }
    for q in 0..x.len() {
        for p in 0..x.len() {
            if p != q && x.specializes(q, p) && !x.specializes(p, q) {
                let direct = (0..x.len())
                    .all(|r| r == p || r == q || !(x.specializes(q, r) && x.specializes(r, p) && !x.specializes(r, q)));
                if direct {
                    out.push_str(&format!("  X{q} -> X{p};\n"));
                }
            }
        }
    }
    out.push_str("}\n");
    out
}

pub fn point_list(u: PointSet) -> String {
    let v: Vec<String> = u.iter().map(|p| p.to_string()).collect();
    format!("[{}]", v.join(", "))
}
