//! Sheafed spaces over finite spectra.
//!
//! Every point carries a local group with a structure map from `G`. A
//! section over an open set is a tuple of local values, one per point of
//! the open in ascending order; sections form a group pointwise. For an
//! affine spectrum the local group at `P` is `H/P` and a tuple is a section
//! when it agrees with a single `l_Q(h)` on the minimal open of each point.

mod correspond;
mod glue;
mod morphism;

pub use correspond::{enumerate_scheme_morphisms, scheme_hom_correspondence, HomRoundtrip};
pub use glue::glue;
pub use morphism::{embed_quotient, induced_morphism, Embedding, MorphismReport, SchemeMorphism};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::fingroup::{GroupTable, Homomorphism, QuotientGroup, Subgroup};
use crate::gobject::GGroup;
use crate::pointset::PointSet;
use crate::spectrum::{is_prime, PrimeDef, Spectrum};
use crate::{Error, Result};

const UNSET: u16 = u16::MAX;

/// The group a point takes values in, with its structure map from `G`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalGroup {
    pub table: Arc<GroupTable>,
    pub structure: Vec<usize>,
}

/// A relation over a set of points: tuples list values in ascending point
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Relation {
    pub attrs: PointSet,
    pub tuples: Vec<Vec<u16>>,
}

impl Relation {
    pub(crate) fn unit() -> Self {
        Relation { attrs: PointSet::EMPTY, tuples: vec![Vec::new()] }
    }

    /// Natural join on the shared points.
    pub(crate) fn join(&self, other: &Relation) -> Relation {
        let attrs = self.attrs.union(other.attrs);
        let shared = self.attrs.intersection(other.attrs);
        let pos = |set: PointSet, p: usize| set.iter().position(|q| q == p).unwrap();
        let key_a: Vec<usize> = shared.iter().map(|p| pos(self.attrs, p)).collect();
        let key_b: Vec<usize> = shared.iter().map(|p| pos(other.attrs, p)).collect();
        let mut index: BTreeMap<Vec<u16>, Vec<usize>> = BTreeMap::new();
        for (i, t) in other.tuples.iter().enumerate() {
            index.entry(key_b.iter().map(|&k| t[k]).collect()).or_default().push(i);
        }
        let mut tuples = Vec::new();
        for a in &self.tuples {
            let key: Vec<u16> = key_a.iter().map(|&k| a[k]).collect();
            let Some(matches) = index.get(&key) else { continue };
            for &i in matches {
                let b = &other.tuples[i];
                let mut merged = vec![UNSET; attrs.len()];
                for (k, p) in self.attrs.iter().enumerate() {
                    merged[pos(attrs, p)] = a[k];
                }
                for (k, p) in other.attrs.iter().enumerate() {
                    merged[pos(attrs, p)] = b[k];
                }
                tuples.push(merged);
            }
        }
        tuples.sort();
        tuples.dedup();
        Relation { attrs, tuples }
    }

    /// Projection onto a subset of the points.
    #[cfg(test)]
    pub(crate) fn project(&self, onto: PointSet) -> Relation {
        let keep: Vec<usize> =
            self.attrs.iter().enumerate().filter(|(_, p)| onto.contains(*p)).map(|(k, _)| k).collect();
        let mut tuples: Vec<Vec<u16>> = self.tuples.iter().map(|t| keep.iter().map(|&k| t[k]).collect()).collect();
        tuples.sort();
        tuples.dedup();
        Relation { attrs: self.attrs.intersection(onto), tuples }
    }
}

/// Restricts a tuple over `from` to the points of `to ⊆ from`.
pub(crate) fn restrict_values(values: &[u16], from: PointSet, to: PointSet) -> Vec<u16> {
    from.iter().zip(values).filter(|(p, _)| to.contains(*p)).map(|(_, &v)| v).collect()
}

/// The sections over one open set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionSet {
    open: PointSet,
    tuples: Vec<Vec<u16>>,
    lookup: BTreeMap<Vec<u16>, usize>,
}

impl SectionSet {
    pub(crate) fn new(open: PointSet, mut tuples: Vec<Vec<u16>>) -> Self {
        tuples.sort();
        tuples.dedup();
        let lookup = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        SectionSet { open, tuples, lookup }
    }

    pub fn open(&self) -> PointSet {
        self.open
    }

    pub fn order(&self) -> usize {
        self.tuples.len()
    }

    pub fn values(&self, s: usize) -> &[u16] {
        &self.tuples[s]
    }

    /// Value of section `s` at point `p` of the open.
    pub fn value_at(&self, s: usize, p: usize) -> usize {
        let k = self.open.iter().position(|q| q == p).expect("point outside the open");
        self.tuples[s][k] as usize
    }

    pub fn index_of(&self, values: &[u16]) -> Option<usize> {
        self.lookup.get(values).copied()
    }

    pub fn contains(&self, values: &[u16]) -> bool {
        self.lookup.contains_key(values)
    }

    pub(crate) fn relation(&self) -> Relation {
        Relation { attrs: self.open, tuples: self.tuples.clone() }
    }
}

/// One affine chart: points of the scheme identified with primes of a
/// spectrum, with matching local groups.
#[derive(Clone, Debug)]
pub struct Chart {
    pub points: PointSet,
    pub spectrum: Arc<Spectrum>,
    /// Prime index for each point of `points`, in ascending order.
    pub primes: Vec<usize>,
}

#[derive(Clone, Debug)]
struct AffineData {
    spectrum: Arc<Spectrum>,
    quotients: Vec<QuotientGroup>,
}

/// A finite local G-space with its sheaf of sections.
#[derive(Clone, Debug)]
pub struct GScheme {
    base: Arc<GroupTable>,
    labels: Vec<String>,
    locals: Vec<LocalGroup>,
    opens: Vec<PointSet>,
    sections: Vec<SectionSet>,
    charts: Vec<Chart>,
    affine: Option<AffineData>,
}

impl GScheme {
    /// `(Spec, O)` for a computed spectrum.
    pub fn affine(spec: &Spectrum) -> Result<Self> {
        if !spec.is_topology() {
            return Err(Error::Unsupported("vanishing sets are not closed under finite unions".into()));
        }
        let obj = spec.object();
        let h = obj.carrier();
        let n = spec.len();
        let mut quotients = Vec::with_capacity(n);
        let mut locals = Vec::with_capacity(n);
        for p in spec.primes() {
            let q = crate::fingroup::quotient(h, p)?;
            let structure = obj.structure().images().iter().map(|&x| q.project(x)).collect();
            locals.push(LocalGroup { table: Arc::new(q.table.clone()), structure });
            quotients.push(q);
        }
        let opens = spec.open_sets();
        let patterns: Vec<Relation> = (0..n)
            .map(|p| {
                let attrs = spec.minimal_open(p);
                let mut tuples: Vec<Vec<u16>> = h
                    .elements()
                    .map(|x| attrs.iter().map(|q| quotients[q].project(x) as u16).collect())
                    .collect();
                tuples.sort();
                tuples.dedup();
                Relation { attrs, tuples }
            })
            .collect();
        let sections = opens
            .iter()
            .map(|u| {
                let rel = u.iter().fold(Relation::unit(), |acc, p| acc.join(&patterns[p]));
                SectionSet::new(*u, rel.tuples)
            })
            .collect();
        let labels = spec.primes().iter().map(|p| p.label(h)).collect();
        let spectrum = Arc::new(spec.clone());
        let chart = Chart { points: spec.points(), spectrum: spectrum.clone(), primes: (0..n).collect() };
        Ok(GScheme {
            base: obj.base().clone(),
            labels,
            locals,
            opens,
            sections,
            charts: vec![chart],
            affine: Some(AffineData { spectrum, quotients }),
        })
    }

    pub(crate) fn from_parts(
        base: Arc<GroupTable>,
        labels: Vec<String>,
        locals: Vec<LocalGroup>,
        mut opens_and_sections: Vec<SectionSet>,
        charts: Vec<Chart>,
    ) -> Self {
        opens_and_sections.sort_by_key(|s| (s.open.len(), s.open.bits()));
        let opens = opens_and_sections.iter().map(|s| s.open).collect();
        GScheme { base, labels, locals, opens, sections: opens_and_sections, charts, affine: None }
    }

    pub fn base(&self) -> &Arc<GroupTable> {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.locals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.locals.is_empty()
    }

    pub fn points(&self) -> PointSet {
        PointSet::full(self.len())
    }

    pub fn label(&self, p: usize) -> &str {
        &self.labels[p]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn local(&self, p: usize) -> &LocalGroup {
        &self.locals[p]
    }

    pub fn opens(&self) -> &[PointSet] {
        &self.opens
    }

    pub fn charts(&self) -> &[Chart] {
        &self.charts
    }

    /// The spectrum this scheme was built from, if affine.
    pub fn spectrum(&self) -> Option<&Arc<Spectrum>> {
        self.affine.as_ref().map(|a| &a.spectrum)
    }

    pub fn is_open(&self, u: PointSet) -> bool {
        self.opens.contains(&u)
    }

    fn open_index(&self, u: PointSet) -> Result<usize> {
        self.opens.iter().position(|o| *o == u).ok_or(Error::NotOpen)
    }

    pub fn sections(&self, u: PointSet) -> Result<&SectionSet> {
        Ok(&self.sections[self.open_index(u)?])
    }

    pub fn global_sections(&self) -> &SectionSet {
        self.sections.last().expect("the whole space is open")
    }

    pub fn minimal_open(&self, p: usize) -> PointSet {
        self.opens.iter().filter(|o| o.contains(p)).fold(self.points(), |acc, o| acc.intersection(*o))
    }

    /// `q` lies in the closure of `p`.
    pub fn specializes(&self, p: usize, q: usize) -> bool {
        self.minimal_open(q).contains(p)
    }

    /// Index map of the restriction `O(u) -> O(v)`.
    pub fn restriction(&self, u: PointSet, v: PointSet) -> Result<Vec<usize>> {
        if !v.is_subset(u) {
            return Err(Error::NotOpen);
        }
        let su = self.sections(u)?;
        let sv = self.sections(v)?;
        (0..su.order())
            .map(|s| {
                sv.index_of(&restrict_values(su.values(s), u, v))
                    .ok_or_else(|| Error::Inconclusive(format!("restriction to {v:?} is not a section")))
            })
            .collect()
    }

    /// Pointwise product of two sections over `u`.
    pub fn section_mul(&self, u: PointSet, a: usize, b: usize) -> Result<usize> {
        let s = self.sections(u)?;
        let prod: Vec<u16> = u
            .iter()
            .zip(s.values(a).iter().zip(s.values(b)))
            .map(|(p, (&x, &y))| self.locals[p].table.mul(x as usize, y as usize) as u16)
            .collect();
        s.index_of(&prod).ok_or_else(|| Error::Inconclusive("sections are not closed under product".into()))
    }

    /// The constant section of `g` over `u`.
    pub fn constant_section(&self, u: PointSet, g: usize) -> Result<usize> {
        let s = self.sections(u)?;
        let vals: Vec<u16> = u.iter().map(|p| self.locals[p].structure[g] as u16).collect();
        s.index_of(&vals).ok_or_else(|| Error::Inconclusive("constant is not a section".into()))
    }

    /// The sections over `u` as a group table.
    pub fn section_table(&self, u: PointSet) -> Result<GroupTable> {
        let s = self.sections(u)?;
        let n = s.order();
        if n > crate::fingroup::MAX_ORDER {
            return Err(Error::TooLarge { cap: crate::fingroup::MAX_ORDER });
        }
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                mul.push(self.section_mul(u, a, b)? as u16);
            }
        }
        let id: Vec<u16> = u.iter().map(|p| self.locals[p].table.identity() as u16).collect();
        let id = s.index_of(&id).ok_or_else(|| Error::Inconclusive("identity is not a section".into()))?;
        Ok(GroupTable::from_raw(n, mul, id, None))
    }

    /// `O(u)` as an object over `G` via constant sections.
    pub fn section_ggroup(&self, u: PointSet) -> Result<GGroup> {
        let table = Arc::new(self.section_table(u)?);
        let images = self.base.elements().map(|g| self.constant_section(u, g)).collect::<Result<Vec<_>>>()?;
        Ok(GGroup::from_parts(self.base.clone(), table, Homomorphism::new_unchecked(images)))
    }

    /// The stalk at `p`: sections over its minimal open.
    pub fn stalk(&self, p: usize) -> &SectionSet {
        self.sections(self.minimal_open(p)).expect("minimal opens are open")
    }

    /// Sections over `u` vanishing at `p`.
    pub fn vanishing_sections(&self, u: PointSet, p: usize) -> Result<Subgroup> {
        let s = self.sections(u)?;
        if !u.contains(p) {
            return Err(Error::NotOpen);
        }
        let id = self.locals[p].table.identity();
        Ok(Subgroup::from_mask((0..s.order()).map(|i| s.value_at(i, p) == id).collect()))
    }

    /// The distinguished prime of the stalk at `p`.
    pub fn distinguished_prime(&self, p: usize) -> Subgroup {
        self.vanishing_sections(self.minimal_open(p), p).expect("minimal opens are open")
    }

    /// The open subscheme on `u`.
    pub fn restrict(&self, u: PointSet) -> Result<GScheme> {
        if !self.is_open(u) {
            return Err(Error::NotOpen);
        }
        let keep: Vec<usize> = u.iter().collect();
        let remap = |s: PointSet| -> PointSet { keep.iter().enumerate().filter(|(_, &p)| s.contains(p)).map(|(i, _)| i).collect() };
        let sections = self
            .sections
            .iter()
            .filter(|s| s.open.is_subset(u))
            .map(|s| SectionSet::new(remap(s.open), s.tuples.clone()))
            .collect();
        let charts = self
            .charts
            .iter()
            .filter(|c| c.points.is_subset(u))
            .map(|c| Chart { points: remap(c.points), spectrum: c.spectrum.clone(), primes: c.primes.clone() })
            .collect();
        Ok(GScheme::from_parts(
            self.base.clone(),
            keep.iter().map(|&p| self.labels[p].clone()).collect(),
            keep.iter().map(|&p| self.locals[p].clone()).collect(),
            sections,
            charts,
        ))
    }

    /// Every chart comes from a spectrum whose radical is one of its primes.
    pub fn is_locally_irreducible(&self) -> bool {
        let covered = self.charts.iter().fold(PointSet::EMPTY, |acc, c| acc.union(c.points));
        covered == self.points() && self.charts.iter().all(|c| spectrum_is_irreducible(&c.spectrum))
    }

    /// Checks restriction, locality at minimal opens and gluing over every
    /// pair of opens.
    pub fn check_sheaf(&self) -> SheafReport {
        let mut report = SheafReport { opens: self.opens.len(), ..Default::default() };
        for (i, &u) in self.opens.iter().enumerate() {
            let su = &self.sections[i];
            for &v in self.opens.iter().filter(|v| v.is_subset(u)) {
                if self.restriction(u, v).is_err() {
                    report.failures.push(format!("restriction {u:?} -> {v:?}"));
                }
            }
            let local = u.iter().fold(Relation::unit(), |acc, p| acc.join(&self.stalk(p).relation()));
            if local.tuples != su.tuples {
                report.failures.push(format!("locality on {u:?}"));
            }
            for (a, &v1) in self.opens.iter().enumerate().filter(|(_, v)| v.is_subset(u)) {
                for &v2 in self.opens[a..].iter().filter(|v| v.is_subset(u) && v1.union(**v) == u) {
                    report.covers += 1;
                    let s1 = self.sections(v1).expect("open");
                    let s2 = self.sections(v2).expect("open");
                    let glued = s1.relation().join(&s2.relation());
                    if glued.tuples != su.tuples {
                        report.failures.push(format!("gluing {v1:?} + {v2:?} on {u:?}"));
                    }
                }
            }
        }
        report
    }
}

/// The radical of the whole spectrum is one of its primes.
pub fn spectrum_is_irreducible(spec: &Spectrum) -> bool {
    spec.index_of(&spec.radical(spec.points())).is_some()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SheafReport {
    pub opens: usize,
    pub covers: usize,
    pub failures: Vec<String>,
}

impl SheafReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Affine-only comparisons between carrier elements and sections.
impl GScheme {
    fn affine_data(&self) -> Result<&AffineData> {
        self.affine.as_ref().ok_or_else(|| Error::Unsupported("scheme is not affine".into()))
    }

    /// `h ↦ (l_Q(h))_{Q ∈ u}`.
    pub fn complete_section(&self, u: PointSet, h: usize) -> Result<usize> {
        let a = self.affine_data()?;
        let vals: Vec<u16> = u.iter().map(|q| a.quotients[q].project(h) as u16).collect();
        self.sections(u)?.index_of(&vals).ok_or_else(|| Error::Inconclusive("complete section missing".into()))
    }

    /// The map `H -> O(u)` on complete sections.
    pub fn complete_section_map(&self, u: PointSet) -> Result<Vec<usize>> {
        let h = self.affine_data()?.spectrum.object().carrier().clone();
        h.elements().map(|x| self.complete_section(u, x)).collect()
    }

    /// Image and kernel data of `H -> O(u)`.
    pub fn compare_complete_sections(&self, u: PointSet) -> Result<SectionComparison> {
        let a = self.affine_data()?;
        let h = a.spectrum.object().carrier();
        let map = self.complete_section_map(u)?;
        let id = self.complete_section(u, h.identity())?;
        let kernel = Subgroup::from_mask(map.iter().map(|&s| s == id).collect());
        let mut hit = vec![false; self.sections(u)?.order()];
        for &s in &map {
            hit[s] = true;
        }
        let radical = a.spectrum.radical(u);
        Ok(SectionComparison {
            sections: hit.len(),
            image: hit.iter().filter(|&&b| b).count(),
            kernel_is_radical: kernel == radical,
            quotient_order: h.order() / radical.order(),
        })
    }
}

/// How `H/rad(u)` sits inside `O(u)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SectionComparison {
    pub sections: usize,
    pub image: usize,
    pub kernel_is_radical: bool,
    pub quotient_order: usize,
}

impl SectionComparison {
    pub fn surjective(&self) -> bool {
        self.image == self.sections
    }

    pub fn isomorphism(&self) -> bool {
        self.surjective() && self.kernel_is_radical
    }
}

/// Tuples `(g_j)` in `∏ H/P_j` over the generic primes of the components,
/// compatible in `H/(P_j P_k)` whenever the components meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoetherianSections {
    pub generics: Vec<usize>,
    pub tuples: Vec<Vec<u16>>,
}

pub fn noetherian_sections(spec: &Spectrum) -> Result<NoetherianSections> {
    let h = spec.object().carrier();
    let comps = spec.irreducible_components();
    let generics: Vec<usize> = comps
        .iter()
        .map(|c| c.generic.ok_or_else(|| Error::Unsupported("component without a generic prime".into())))
        .collect::<Result<_>>()?;
    let quotients: Vec<QuotientGroup> =
        generics.iter().map(|&p| crate::fingroup::quotient(h, spec.prime(p))).collect::<Result<_>>()?;
    // constraints: pairs (j, k) whose components meet, compared in H/(P_j P_k)
    let mut constraints = Vec::new();
    for j in 0..comps.len() {
        for k in j + 1..comps.len() {
            if !comps[j].closed.members.intersection(comps[k].closed.members).is_empty() {
                let pp = crate::fingroup::subgroup_product(h, spec.prime(generics[j]), spec.prime(generics[k]))?;
                constraints.push((j, k, crate::fingroup::quotient(h, &pp)?));
            }
        }
    }
    let mut tuples = Vec::new();
    let mut cur = Vec::new();
    extend_tuples(&quotients, &constraints, &mut cur, &mut tuples);
    tuples.sort();
    Ok(NoetherianSections { generics, tuples })
}

fn extend_tuples(
    quotients: &[QuotientGroup],
    constraints: &[(usize, usize, QuotientGroup)],
    cur: &mut Vec<u16>,
    out: &mut Vec<Vec<u16>>,
) {
    let j = cur.len();
    if j == quotients.len() {
        out.push(cur.clone());
        return;
    }
    for c in 0..quotients[j].table.order() {
        let ok = constraints.iter().filter(|(_, k, _)| *k == j).all(|(i, _, pq)| {
            let gi = quotients[*i].lift(cur[*i] as usize);
            let gj = quotients[j].lift(c);
            pq.project(gi) == pq.project(gj)
        });
        if ok {
            cur.push(c as u16);
            extend_tuples(quotients, constraints, cur, out);
            cur.pop();
        }
    }
}

impl NoetherianSections {
    pub fn order(&self) -> usize {
        self.tuples.len()
    }

    /// `s ↦ (s(P_j))_j` is a bijection from global sections onto the tuples.
    pub fn matches_global_sections(&self, x: &GScheme) -> bool {
        let s = x.global_sections();
        let all = x.points();
        let mut images: Vec<Vec<u16>> = (0..s.order())
            .map(|i| self.generics.iter().map(|&p| restrict_values(s.values(i), all, PointSet::singleton(p))[0]).collect())
            .collect();
        images.sort();
        let before = images.len();
        images.dedup();
        before == images.len() && images == self.tuples
    }
}

/// `I_P(u) = {s : s(P) = 1}` is prime in `O(u)` under the given test.
pub fn vanishing_sections_prime(
    x: &GScheme,
    u: PointSet,
    p: usize,
    variant: crate::gobject::Variant,
    def: PrimeDef,
) -> Result<bool> {
    let obj = x.section_ggroup(u)?;
    let ideal = x.vanishing_sections(u, p)?;
    is_prime(&obj, &ideal, variant, def)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gobject::Variant;

    fn affine(h: GroupTable, v: Variant) -> GScheme {
        let obj = GGroup::identity(Arc::new(h));
        GScheme::affine(&Spectrum::new(&obj, v, PrimeDef::Elementwise).unwrap()).unwrap()
    }

    #[test]
    fn relation_join_and_project() {
        let a = Relation { attrs: PointSet::from_bits(0b011), tuples: vec![vec![0, 1], vec![1, 1]] };
        let b = Relation { attrs: PointSet::from_bits(0b110), tuples: vec![vec![1, 5], vec![0, 7]] };
        let j = a.join(&b);
        assert_eq!(j.attrs, PointSet::from_bits(0b111));
        assert_eq!(j.tuples, vec![vec![0, 1, 5], vec![1, 1, 5]]);
        assert_eq!(j.project(PointSet::from_bits(0b100)).tuples, vec![vec![5]]);
    }

    #[test]
    fn s5_sections() {
        let x = affine(GroupTable::symmetric(5), Variant::T2);
        assert_eq!(x.len(), 2);
        assert_eq!(x.global_sections().order(), 120);
        assert_eq!(x.sections(PointSet::EMPTY).unwrap().order(), 1);
        assert!(x.check_sheaf().holds());
        assert_eq!(x.stalk(1).order(), 120);
        assert_eq!(x.stalk(0).order(), 120);
        let cmp = x.compare_complete_sections(x.points()).unwrap();
        assert!(cmp.isomorphism());
        assert_eq!(x.sections(PointSet::singleton(1)).unwrap_err(), Error::NotOpen);
    }

    #[test]
    fn a5_squared_sections() {
        let a5 = GroupTable::alternating(5);
        let x = affine(GroupTable::direct_product(&a5, &a5), Variant::T1);
        assert_eq!(x.global_sections().order(), 3600);
        assert_eq!(x.opens().len(), 4);
        let ns = noetherian_sections(x.spectrum().unwrap()).unwrap();
        assert_eq!(ns.order(), 3600);
        assert!(ns.matches_global_sections(&x));
    }

    #[test]
    fn empty_spectrum() {
        let x = affine(GroupTable::cyclic(2), Variant::T1);
        assert!(x.is_empty());
        assert_eq!(x.global_sections().order(), 1);
        assert_eq!(noetherian_sections(x.spectrum().unwrap()).unwrap().order(), 1);
        assert!(x.check_sheaf().holds());
    }

    #[test]
    fn sheaf_axioms_on_small_groups() {
        for h in [GroupTable::symmetric(4), GroupTable::dihedral(4), GroupTable::quaternion8(), GroupTable::cyclic(4)] {
            for v in [Variant::T1, Variant::T2] {
                let x = affine(h.clone(), v);
                let r = x.check_sheaf();
                assert!(r.holds(), "{:?}", r.failures);
            }
        }
    }

    #[test]
    fn evaluation_kernels_are_prime() {
        let x = affine(GroupTable::symmetric(5), Variant::T2);
        for p in 0..x.len() {
            let u = x.minimal_open(p);
            assert!(vanishing_sections_prime(&x, u, p, Variant::T2, PrimeDef::Elementwise).unwrap());
        }
    }
}
