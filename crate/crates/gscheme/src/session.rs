//! Executes parsed programs.

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;
use std::sync::Arc;

use gscheme_core::gobject::GMorphism;
use gscheme_core::sheaf::{glue, induced_morphism, MorphismReport, SchemeMorphism};
use gscheme_core::variety::{coordinate_group, format_point, variety_of, DEFAULT_CLOSURE_CAP};
use gscheme_core::{
    Error, GGroup, GScheme, GroupTable, PointSet, PrimeDef, Spectrum, Variant, VarietySet, Word, WordContext,
};

use crate::audit::{self, AuditOptions, SuiteReport};
use crate::catalog::Scope;
use crate::dsl::{Command, CommandKind, Decl, Flag, GroupExpr, Images, Pos, Program};
use crate::error::{CliError, CliResult};
use crate::export::{self, parse_prime_def, parse_variant, point_list, subgroup_label, Format};

/// Environment variable overriding the closure-size cap.
pub const CAP_ENV: &str = "GSCHEME_CLOSURE_CAP";

pub fn cap_from_env() -> CliResult<usize> {
    match std::env::var(CAP_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("{CAP_ENV} must be a number, got `{v}`"))),
        Err(_) => Ok(DEFAULT_CLOSURE_CAP),
    }
}

#[derive(Clone, Debug)]
pub enum Object {
    Spectrum(Spectrum),
    Scheme(GScheme),
    Variety(VarietySet),
    Morphism { morphism: SchemeMorphism, report: MorphismReport },
}

/// Settings shared by commands, overridable per command by flags.
#[derive(Clone, Debug)]
pub struct Settings {
    pub variant: Variant,
    pub prime_def: PrimeDef,
    pub max_len: Option<usize>,
    pub scope: Scope,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub group: Option<(String, GroupTable)>,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            variant: Variant::T1,
            prime_def: PrimeDef::default(),
            max_len: None,
            scope: Scope::Small,
            format: Format::Json,
            out: None,
            group: None,
        }
    }
}

pub struct Session {
    pub defaults: Settings,
    pub cap: usize,
    /// Directory `table FILE` paths are resolved against.
    pub base_dir: PathBuf,
    groups: HashMap<String, Arc<GroupTable>>,
    ggroups: HashMap<String, GGroup>,
    words: HashMap<String, (String, WordContext, Word)>,
    objects: BTreeMap<String, Object>,
    pub output: String,
    pub reports: Vec<SuiteReport>,
}

pub fn build_group(expr: &GroupExpr, groups: &HashMap<String, Arc<GroupTable>>, base_dir: &std::path::Path) -> CliResult<GroupTable> {
    Ok(match expr {
        GroupExpr::Cyclic(n) => GroupTable::cyclic(*n),
        GroupExpr::Sym(n) => GroupTable::symmetric(*n),
        GroupExpr::Alt(n) => GroupTable::alternating(*n),
        GroupExpr::Dihedral(n) => GroupTable::dihedral(*n),
        GroupExpr::Quaternion8 => GroupTable::quaternion8(),
        GroupExpr::Product(a, b) => {
            GroupTable::direct_product(&build_group(a, groups, base_dir)?, &build_group(b, groups, base_dir)?)
        }
        GroupExpr::Perm(text) => crate::io::parse_perm_group(text)?,
        GroupExpr::Table(path) => crate::io::parse_group_file(&std::fs::read_to_string(base_dir.join(path))?)?,
        GroupExpr::Ref(name) => {
            groups.get(name).map(|g| (**g).clone()).ok_or_else(|| CliError::Usage(format!("undefined group `{name}`")))?
        }
    })
}

fn arity(pos: Pos, msg: String) -> CliError {
    CliError::Arity { line: pos.line, col: pos.col, msg }
}

impl Session {
    pub fn new(cap: usize) -> Self {
        Session {
            defaults: Settings::default(),
            cap,
            base_dir: PathBuf::from("."),
            groups: HashMap::new(),
            ggroups: HashMap::new(),
            words: HashMap::new(),
            objects: BTreeMap::new(),
            output: String::new(),
            reports: Vec::new(),
        }
    }

    pub fn object(&self, name: &str) -> Option<&Object> {
        self.objects.get(name)
    }

    pub fn audit_failed(&self) -> bool {
        self.reports.iter().any(SuiteReport::failed)
    }

    fn say(&mut self, line: impl AsRef<str>) {
        self.output.push_str(line.as_ref());
        self.output.push('\n');
    }

    pub fn run(&mut self, program: &Program) -> CliResult<()> {
        for d in &program.decls {
            self.exec(d)?;
        }
        Ok(())
    }

    fn exec(&mut self, d: &Decl) -> CliResult<()> {
        match d {
            Decl::Group { name, expr, .. } => {
                let g = build_group(expr, &self.groups, &self.base_dir)?;
                self.groups.insert(name.clone(), Arc::new(g));
            }
            Decl::GGroup { name, base, carrier, images, pos } => {
                let (g, h) = (self.groups[base].clone(), self.groups[carrier].clone());
                let imgs = match images {
                    Images::Identity => {
                        if g.rows() != h.rows() {
                            return Err(arity(*pos, format!("`via id` needs equal groups, got `{base}` and `{carrier}`")));
                        }
                        g.elements().collect()
                    }
                    Images::Trivial => vec![h.identity(); g.order()],
                    Images::List(v) => {
                        if v.len() != g.order() {
                            return Err(arity(*pos, format!("expected {} images, found {}", g.order(), v.len())));
                        }
                        v.clone()
                    }
                };
                self.ggroups.insert(name.clone(), GGroup::new(g, h, imgs)?);
            }
            Decl::Word { name, group, vars, literal, pos } => {
                let ctx = WordContext::new(self.groups[group].clone(), *vars);
                let w = ctx.parse(literal).map_err(|e| match e {
                    Error::Parse(msg) => CliError::Syntax { line: pos.line, col: pos.col, msg },
                    other => CliError::Core(other),
                })?;
                self.words.insert(name.clone(), (group.clone(), ctx, w));
            }
            Decl::Command(c) => self.command(c)?,
        }
        Ok(())
    }

    fn settings(&self, flags: &[Flag]) -> CliResult<Settings> {
        let mut s = self.defaults.clone();
        for f in flags {
            match f {
                Flag::Variant(v) => s.variant = parse_variant(v)?,
                Flag::PrimeDef(d) => s.prime_def = parse_prime_def(d)?,
                Flag::MaxLen(n) => s.max_len = Some(*n),
                Flag::Catalog(c) => {
                    s.scope = match c.as_str() {
                        "small" => Scope::Small,
                        "large" => Scope::Large,
                        _ => return Err(CliError::Usage(format!("unknown catalog `{c}` (small|large)"))),
                    }
                }
                Flag::Format(x) => s.format = x.parse()?,
                Flag::Out(p) => s.out = Some(self.base_dir.join(p)),
                Flag::G(e) => s.group = Some((describe_expr(e), build_group(e, &self.groups, &self.base_dir)?)),
            }
        }
        Ok(s)
    }

    fn obj(&self, name: &str) -> GGroup {
        match self.ggroups.get(name) {
            Some(o) => o.clone(),
            None => GGroup::identity(self.groups[name].clone()),
        }
    }

    fn store(&mut self, c: &Command, default: String, o: Object) {
        self.objects.insert(c.name.clone().unwrap_or(default), o);
    }

    fn command(&mut self, c: &Command) -> CliResult<()> {
        let s = self.settings(&c.flags)?;
        match &c.kind {
            CommandKind::Spec { target } => {
                let spec = Spectrum::new(&self.obj(target), s.variant, s.prime_def)?;
                self.describe_spectrum(target, &spec);
                self.store(c, target.clone(), Object::Spectrum(spec));
            }
            CommandKind::Sections { target } => {
                let x = GScheme::affine(&Spectrum::new(&self.obj(target), s.variant, s.prime_def)?)?;
                self.describe_scheme(target, &x);
                self.store(c, target.clone(), Object::Scheme(x));
            }
            CommandKind::Stalk { target, point } => {
                let x = GScheme::affine(&Spectrum::new(&self.obj(target), s.variant, s.prime_def)?)?;
                if *point >= x.len() {
                    return Err(CliError::Usage(format!("point {point} out of range ({} points)", x.len())));
                }
                let u = x.minimal_open(*point);
                let cmp = x.compare_complete_sections(u)?;
                self.say(format!("stalk {target} at P{point} ({}):", x.label(*point)));
                self.say(format!("  minimal open {}", point_list(u)));
                self.say(format!("  sections {}", x.stalk(*point).order()));
                self.say(format!("  H/rad(P) order {}", cmp.quotient_order));
                self.say(format!("  surjective {} injective {}", cmp.surjective(), cmp.isomorphism()));
                self.store(c, target.clone(), Object::Scheme(x));
            }
            CommandKind::Variety { words } => {
                let (group, ctx, _) = self.words[&words[0]].clone();
                let mut ws = Vec::new();
                for w in words {
                    let (g, wctx, word) = &self.words[w];
                    if *g != group || *wctx != ctx {
                        return Err(arity(c.pos, format!("word `{w}` lives over a different context")));
                    }
                    ws.push(word.clone());
                }
                let v = variety_of(&ctx, &ws)?;
                self.say(format!("variety of {} over {group}^{}: {} points", words.join(", "), ctx.vars(), v.len()));
                for x in v.points() {
                    self.say(format!("  {}", format_point(ctx.group(), x)));
                }
                match coordinate_group(&v, self.cap) {
                    Ok(f) => self.say(format!("  function group order {}", f.order())),
                    Err(e) => self.say(format!("  function group: {e}")),
                }
                self.store(c, words[0].clone(), Object::Variety(v));
            }
            CommandKind::Morphism { source, target, images } => {
                let (a, b) = (self.obj(source), self.obj(target));
                let imgs = match images {
                    Images::Identity => a.carrier().elements().collect(),
                    Images::Trivial => vec![b.carrier().identity(); a.carrier().order()],
                    Images::List(v) => v.clone(),
                };
                if imgs.len() != a.carrier().order() {
                    return Err(arity(c.pos, format!("expected {} images, found {}", a.carrier().order(), imgs.len())));
                }
                let f = GMorphism::new(a.clone(), b.clone(), imgs)?;
                let y = GScheme::affine(&Spectrum::new(&a, s.variant, s.prime_def)?)?;
                let x = GScheme::affine(&Spectrum::new(&b, s.variant, s.prime_def)?)?;
                let m = induced_morphism(&f, &x, &y)?;
                let report = m.check(&x, &y)?;
                self.say(format!("morphism Spec({target}) -> Spec({source}):"));
                for (p, q) in m.point_map.iter().enumerate() {
                    self.say(format!("  {} -> {}", x.label(p), y.label(*q)));
                }
                self.say(format!(
                    "  continuous {} local {} squares commute {}",
                    report.continuous, report.local, report.squares_commute
                ));
                self.store(c, format!("{source}->{target}"), Object::Morphism { morphism: m, report });
            }
            CommandKind::Glue { target, along } => {
                let x = GScheme::affine(&Spectrum::new(&self.obj(target), s.variant, s.prime_def)?)?;
                if let Some(p) = along.iter().find(|&&p| p >= x.len()) {
                    return Err(CliError::Usage(format!("point {p} out of range ({} points)", x.len())));
                }
                let u: PointSet = along.iter().copied().collect();
                let iso = SchemeMorphism::identity(&x.restrict(u)?);
                let d = glue(&x, &x, u, u, &iso)?;
                self.describe_scheme(&format!("{target} glued along {}", point_list(u)), &d);
                self.store(c, target.clone(), Object::Scheme(d));
            }
            CommandKind::Check { suite } => {
                let opts = AuditOptions { scope: s.scope, group: s.group.clone(), max_len: s.max_len, cap: self.cap };
                let report = audit::run_suite(suite, &opts)?;
                self.output.push_str(&report.render());
                self.reports.push(report);
            }
            CommandKind::Export { object } => {
                let bytes = self.export(object, s.format)?;
                match &s.out {
                    Some(path) => {
                        std::fs::write(path, &bytes)?;
                        self.say(format!("wrote {}", path.display()));
                    }
                    None => self.output.push_str(&bytes),
                }
            }
        }
        Ok(())
    }

    pub fn export(&self, name: &str, format: Format) -> CliResult<String> {
        let o = self.objects.get(name).ok_or_else(|| CliError::Usage(format!("nothing computed under `{name}`")))?;
        match (o, format) {
            (Object::Spectrum(s), Format::Json) => export::to_json(&export::spectrum_json(s)),
            (Object::Spectrum(s), Format::Dot) => Ok(export::spectrum_dot(s)),
            (Object::Scheme(x), Format::Json) => export::to_json(&export::scheme_json(x)?),
            (Object::Scheme(x), Format::Dot) => Ok(export::scheme_dot(x)),
            (Object::Variety(v), Format::Json) => export::to_json(&export::variety_json(v, self.cap)),
            (Object::Morphism { morphism, .. }, Format::Json) => export::to_json(&export::morphism_json(morphism)),
            (_, Format::Dot) => Err(CliError::Usage(format!("`{name}` has no DOT rendering"))),
        }
    }

    fn describe_spectrum(&mut self, name: &str, spec: &Spectrum) {
        let h = spec.object().carrier().clone();
        self.say(format!(
            "spec {name} [{}, {}]: {} primes",
            export::variant_name(spec.variant()),
            export::prime_def_name(spec.prime_def()),
            spec.len()
        ));
        for (i, p) in spec.primes().iter().enumerate() {
            self.say(format!("  P{i} = {}", subgroup_label(&h, p)));
        }
        let closed: Vec<String> = spec.closed_sets().iter().map(|c| point_list(*c)).collect();
        self.say(format!("  closed sets: {}", closed.join(" ")));
        for (q, p) in spec.specialization_edges() {
            self.say(format!("  P{q} -> P{p}"));
        }
        self.say(format!("  radical: {}", subgroup_label(&h, &spec.radical(spec.points()))));
        for comp in spec.irreducible_components() {
            let generic = comp.generic.map(|g| format!("P{g}")).unwrap_or_else(|| "none".into());
            self.say(format!("  component {} generic {generic}", point_list(comp.closed.members)));
        }
    }

    fn describe_scheme(&mut self, name: &str, x: &GScheme) {
        self.say(format!("sections {name}: {} points, {} opens", x.len(), x.opens().len()));
        for &u in x.opens() {
            let n = x.sections(u).map(|s| s.order()).unwrap_or(0);
            self.say(format!("  O({}) order {n}", point_list(u)));
        }
        for p in 0..x.len() {
            self.say(format!("  stalk {} order {}", x.label(p), x.stalk(p).order()));
        }
        self.say(format!("  sheaf axioms {}", if x.check_sheaf().holds() { "hold" } else { "fail" }));
    }
}

pub fn describe_expr(e: &GroupExpr) -> String {
    match e {
        GroupExpr::Cyclic(n) => format!("cyclic({n})"),
        GroupExpr::Sym(n) => format!("sym({n})"),
        GroupExpr::Alt(n) => format!("alt({n})"),
        GroupExpr::Dihedral(n) => format!("dihedral({n})"),
        GroupExpr::Quaternion8 => "quaternion8".into(),
        GroupExpr::Product(a, b) => format!("product({},{})", describe_expr(a), describe_expr(b)),
        GroupExpr::Perm(t) => t.clone(),
        GroupExpr::Table(p) => format!("table {p}"),
        GroupExpr::Ref(n) => n.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_program;

    fn run(text: &str) -> Session {
        let mut s = Session::new(DEFAULT_CLOSURE_CAP);
        s.run(&parse_program(text).unwrap()).unwrap();
        s
    }

    #[test]
    fn spec_end_to_end() {
        let s = run("group S5 = sym(5)\nggroup X = (S5 -> S5) via id\nspec X --variant t2 --prime-def quotient");
        match s.object("X") {
            Some(Object::Spectrum(sp)) => assert_eq!(sp.len(), 2),
            other => panic!("{other:?}"),
        }
        assert!(s.output.contains("2 primes"));
    }

    #[test]
    fn variety_command() {
        let s = run("group A5 = alt(5)\nword W over (A5, 1) = X1^2\nvariety W");
        assert!(s.output.contains("16 points"), "{}", s.output);
    }

    #[test]
    fn glue_and_export_dot() {
        let s = run("group S5 = sym(5)\nglue S5 along [0] --variant t2 as D");
        match s.object("D") {
            Some(Object::Scheme(x)) => assert_eq!(x.len(), 3),
            other => panic!("{other:?}"),
        }
        let dot = s.export("D", Format::Dot).unwrap();
        assert!(dot.contains("X0 -> X1;") && dot.contains("X0 -> X2;"), "{dot}");
    }

    #[test]
    fn morphism_command() {
        let s = run("group Z4 = cyclic(4)\ngroup Z2 = cyclic(2)\nggroup A = (Z4 -> Z4) via id\n\
                     ggroup B = (Z4 -> Z2) via [0, 1, 0, 1]\nmorphism A -> B via [0, 1, 0, 1] --variant t2");
        match s.object("A->B") {
            Some(Object::Morphism { report, .. }) => assert!(report.passes()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn image_count_is_checked() {
        let mut s = Session::new(DEFAULT_CLOSURE_CAP);
        let p = parse_program("group G = cyclic(2)\nggroup X = (G -> G) via [0]").unwrap();
        assert!(matches!(s.run(&p), Err(CliError::Arity { line: 2, .. })));
    }
}
