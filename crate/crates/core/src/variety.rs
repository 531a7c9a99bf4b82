//! Affine varieties in `G^n`, regular functions and point ideals.
//!
//! Ideals of the free product are infinite, so they appear here as
//! membership predicates on words (`I_x`, `I_V`, `I_{N,x}`) together with the
//! finite group of regular functions they cut out.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::fingroup::{self, GroupTable, Homomorphism, Subgroup};
use crate::freeprod::{Meet, Word, WordContext};
use crate::gobject::{enumerate_g_morphisms, is_integral, GGroup, GMorphism, Variant};
use crate::{Error, Result};

/// Default bound on the size of a function group.
pub const DEFAULT_CLOSURE_CAP: usize = 4096;

/// Default length of probe words.
pub const DEFAULT_PROBE_LEN: usize = 3;

/// Every point of `G^n` in lexicographic order.
pub fn ambient_points(ctx: &WordContext) -> Vec<Vec<usize>> {
    let g = ctx.group().order();
    let n = ctx.vars();
    let total = g.checked_pow(n as u32).expect("ambient space too large");
    (0..total)
        .map(|mut k| {
            let mut p = vec![0; n];
            for i in (0..n).rev() {
                p[i] = k % g;
                k /= g;
            }
            p
        })
        .collect()
}

/// Zero set of a family of words.
#[derive(Clone, Debug, PartialEq)]
pub struct VarietySet {
    ctx: WordContext,
    generators: Vec<Word>,
    points: Vec<Vec<usize>>,
}

/// `Var(n(gens))`: the points where every generator evaluates to 1.
pub fn variety_of(ctx: &WordContext, gens: &[Word]) -> Result<VarietySet> {
    for w in gens {
        ctx.check_word(w)?;
    }
    let id = ctx.group().identity();
    let points = ambient_points(ctx)
        .into_iter()
        .filter(|x| gens.iter().all(|w| ctx.evaluate_at(w, x) == Ok(id)))
        .collect();
    Ok(VarietySet { ctx: ctx.clone(), generators: gens.to_vec(), points })
}

impl VarietySet {
    /// The variety with explicitly given points (no defining words).
    pub fn from_points(ctx: &WordContext, mut points: Vec<Vec<usize>>) -> Result<Self> {
        for p in &points {
            if p.len() != ctx.vars() {
                return Err(Error::ArityMismatch { expected: ctx.vars(), found: p.len() });
            }
            for &c in p {
                ctx.group().check_element(c)?;
            }
        }
        points.sort();
        points.dedup();
        Ok(VarietySet { ctx: ctx.clone(), generators: Vec::new(), points })
    }

    pub fn ctx(&self) -> &WordContext {
        &self.ctx
    }

    pub fn generators(&self) -> &[Word] {
        &self.generators
    }

    pub fn points(&self) -> &[Vec<usize>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, x: &[usize]) -> Option<usize> {
        self.points.binary_search_by(|p| p.as_slice().cmp(x)).ok()
    }

    pub fn contains(&self, x: &[usize]) -> bool {
        self.index_of(x).is_some()
    }

    /// Values of `w` at every point.
    pub fn values(&self, w: &Word) -> Result<Vec<usize>> {
        self.ctx.check_word(w)?;
        self.points.iter().map(|x| self.ctx.evaluate_at(w, x)).collect()
    }

    /// Membership in `I_V`, the words vanishing on every point.
    pub fn vanishing_ideal_contains(&self, w: &Word) -> Result<bool> {
        let id = self.ctx.group().identity();
        Ok(self.values(w)?.iter().all(|&v| v == id))
    }
}

/// Membership in `I_x`.
pub fn point_ideal_contains(ctx: &WordContext, x: &[usize], w: &Word) -> Result<bool> {
    ctx.check_word(w)?;
    Ok(ctx.evaluate_at(w, x)? == ctx.group().identity())
}

/// Membership in `I_{N,x} = {P : f_P(x) in N}`.
pub fn shifted_point_ideal_contains(ctx: &WordContext, x: &[usize], n: &Subgroup, w: &Word) -> Result<bool> {
    ctx.check_word(w)?;
    Ok(n.contains(ctx.evaluate_at(w, x)?))
}

/// The group of regular functions on a variety, with a witness word per
/// function. Index 0 is the identity function.
#[derive(Clone, Debug)]
pub struct FunctionGroup {
    variety: VarietySet,
    values: Vec<Vec<u16>>,
    witnesses: Vec<Word>,
    lookup: BTreeMap<Vec<u16>, usize>,
    table: Arc<GroupTable>,
    constants: Vec<usize>,
    coordinates: Vec<usize>,
}

/// Closure of the constants and coordinate functions under pointwise product.
pub fn coordinate_group(v: &VarietySet, cap: usize) -> Result<FunctionGroup> {
    let ctx = v.ctx();
    let g = ctx.group();
    let mut gens: Vec<(Vec<u16>, Word)> = Vec::new();
    for c in g.elements().filter(|&c| c != g.identity()) {
        let w = ctx.constant(c)?;
        gens.push((to_u16(&v.values(&w)?), w));
    }
    for i in 1..=ctx.vars() {
        let w = ctx.variable(i)?;
        gens.push((to_u16(&v.values(&w)?), w));
    }
    let one = vec![g.identity() as u16; v.len()];
    let mut values = vec![one.clone()];
    let mut witnesses = vec![ctx.identity()];
    let mut lookup = BTreeMap::new();
    lookup.insert(one, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(f) = queue.pop_front() {
        for (gv, gw) in &gens {
            let prod: Vec<u16> =
                values[f].iter().zip(gv).map(|(&a, &b)| g.mul(a as usize, b as usize) as u16).collect();
            if lookup.contains_key(&prod) {
                continue;
            }
            if values.len() >= cap {
                return Err(Error::TooLarge { cap });
            }
            lookup.insert(prod.clone(), values.len());
            witnesses.push(ctx.mul(&witnesses[f], gw));
            queue.push_back(values.len());
            values.push(prod);
        }
    }
    let order = values.len();
    let mut mul = Vec::with_capacity(order * order);
    for a in &values {
        for b in &values {
            let prod: Vec<u16> = a.iter().zip(b).map(|(&x, &y)| g.mul(x as usize, y as usize) as u16).collect();
            mul.push(lookup[&prod] as u16);
        }
    }
    let table = Arc::new(GroupTable::from_raw(order, mul, 0, None));
    let find = |w: &Word| -> Result<usize> { Ok(lookup[&to_u16(&v.values(w)?)]) };
    let constants = g
        .elements()
        .map(|c| if c == g.identity() { Ok(0) } else { find(&ctx.constant(c)?) })
        .collect::<Result<Vec<_>>>()?;
    let coordinates = (1..=ctx.vars()).map(|i| find(&ctx.variable(i)?)).collect::<Result<Vec<_>>>()?;
    Ok(FunctionGroup { variety: v.clone(), values, witnesses, lookup, table, constants, coordinates })
}

fn to_u16(v: &[usize]) -> Vec<u16> {
    v.iter().map(|&x| x as u16).collect()
}

impl FunctionGroup {
    pub fn variety(&self) -> &VarietySet {
        &self.variety
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn table(&self) -> &Arc<GroupTable> {
        &self.table
    }

    /// Values of function `f` at the points of the variety.
    pub fn values(&self, f: usize) -> Vec<usize> {
        self.values[f].iter().map(|&x| x as usize).collect()
    }

    pub fn value_at(&self, f: usize, point: usize) -> usize {
        self.values[f][point] as usize
    }

    pub fn witness(&self, f: usize) -> &Word {
        &self.witnesses[f]
    }

    /// The function with the given values, if regular.
    pub fn function_with_values(&self, values: &[usize]) -> Option<usize> {
        self.lookup.get(&to_u16(values)).copied()
    }

    /// The function `f_w` restricted to the variety.
    pub fn function_of(&self, w: &Word) -> Result<usize> {
        let vals = self.variety.values(w)?;
        self.function_with_values(&vals).ok_or_else(|| Error::Inconclusive("word outside the closure".into()))
    }

    /// `c_g`
    pub fn constant(&self, g: usize) -> usize {
        self.constants[g]
    }

    /// `[X_i]`, 1-based.
    pub fn coordinate(&self, i: usize) -> usize {
        self.coordinates[i - 1]
    }

    /// The function group as an object over `G` via constants.
    pub fn as_ggroup(&self) -> GGroup {
        GGroup::from_parts(
            self.variety.ctx().group().clone(),
            self.table.clone(),
            Homomorphism::new_unchecked(self.constants.clone()),
        )
    }
}

/// Evidence about the intermediate ideal `I_{N,x}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MaximalityCertificate {
    /// `N = 1`, so `I_{N,x} = I_x`.
    Collapse,
    /// `N = G`, so `I_{N,x}` is the whole free product.
    Whole,
    /// `I_x ⊊ I_{N,x} ⊊ G[X]`: `inside` lies in `I_{N,x}` but not `I_x`, and
    /// `outside` lies outside `I_{N,x}`.
    Strict { inside: Word, outside: Word },
}

pub fn maximality_probe(ctx: &WordContext, x: &[usize], n: &Subgroup) -> Result<MaximalityCertificate> {
    let g = ctx.group();
    if n.parent_order() != g.order() || !fingroup::is_normal(g, n) {
        return Err(Error::NotNormal);
    }
    if x.len() != ctx.vars() {
        return Err(Error::ArityMismatch { expected: ctx.vars(), found: x.len() });
    }
    if n.is_trivial() {
        return Ok(MaximalityCertificate::Collapse);
    }
    if n.is_whole() {
        return Ok(MaximalityCertificate::Whole);
    }
    let first_in = g.elements().find(|&e| e != g.identity() && n.contains(e)).unwrap();
    let first_out = g.elements().find(|&e| !n.contains(e)).unwrap();
    let inside = ctx.constant(first_in)?;
    let outside = ctx.constant(first_out)?;
    debug_assert!(shifted_point_ideal_contains(ctx, x, n, &inside)? && !point_ideal_contains(ctx, x, &inside)?);
    Ok(MaximalityCertificate::Strict { inside, outside })
}

/// `target = residual · q` with `q` a product of constant conjugates of
/// `probe^{±1}` and `residual` vanishing at the point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub probe: Word,
    pub target: Word,
    /// `(g, e)` stands for `c_g probe^e c_g^-1`.
    pub conjugates: Vec<(usize, i8)>,
    pub q: Word,
    pub residual: Word,
}

impl Factorization {
    pub fn verify(&self, ctx: &WordContext, x: &[usize]) -> Result<bool> {
        let mut q = ctx.identity();
        for &(g, e) in &self.conjugates {
            let c = ctx.constant(g)?;
            q = ctx.mul(&q, &ctx.conjugate(&c, &ctx.pow(&self.probe, e as i64)));
        }
        Ok(q == self.q
            && point_ideal_contains(ctx, x, &self.residual)?
            && ctx.mul(&self.residual, &self.q) == self.target)
    }
}

/// For simple `G` and `probe ∉ I_x`, shows that any ideal containing `I_x`
/// and `probe` contains `target`.
pub fn factorization_certificate(ctx: &WordContext, x: &[usize], probe: &Word, target: &Word) -> Result<Factorization> {
    let g = ctx.group();
    if !fingroup::is_simple(g)? {
        return Err(Error::Unsupported("coefficient group is not simple".into()));
    }
    if point_ideal_contains(ctx, x, probe)? {
        return Err(Error::Unsupported("probe vanishes at the point".into()));
    }
    ctx.check_word(target)?;
    let a = ctx.evaluate_at(probe, x)?;
    let goal = ctx.evaluate_at(target, x)?;
    // shortest product of conjugates of a^{±1} reaching the goal
    let steps: Vec<(usize, i8, usize)> = g
        .elements()
        .flat_map(|h| [(h, 1i8, g.conj(h, a)), (h, -1i8, g.conj(h, g.inv(a)))])
        .collect();
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; g.order()];
    let mut seen = vec![false; g.order()];
    seen[g.identity()] = true;
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(e) = queue.pop_front() {
        if e == goal {
            break;
        }
        for (i, &(_, _, c)) in steps.iter().enumerate() {
            let next = g.mul(e, c);
            if !seen[next] {
                seen[next] = true;
                prev[next] = Some((e, i));
                queue.push_back(next);
            }
        }
    }
    let mut conjugates = Vec::new();
    let mut cur = goal;
    while let Some((p, i)) = prev[cur] {
        conjugates.push((steps[i].0, steps[i].1));
        cur = p;
    }
    conjugates.reverse();
    let mut q = ctx.identity();
    for &(h, e) in &conjugates {
        q = ctx.mul(&q, &ctx.conjugate(&ctx.constant(h)?, &ctx.pow(probe, e as i64)));
    }
    let residual = ctx.mul(target, &ctx.inverse(&q));
    Ok(Factorization { probe: probe.clone(), target: target.clone(), conjugates, q, residual })
}

/// The topology on a variety induced by zero sets of probe words.
///
/// A set is closed when it contains the probe closure of each of its points,
/// which makes the space finite and determined by its specialization order.
#[derive(Clone, Debug)]
pub struct VarietyTopology {
    closures: Vec<Vec<bool>>,
}

impl VarietyTopology {
    /// Requires `G` to be integral for `variant`.
    pub fn new(v: &VarietySet, variant: Variant, probe_len: usize) -> Result<Self> {
        let ctx = v.ctx();
        if !is_integral(&GGroup::identity(ctx.group().clone()), variant) {
            return Err(Error::NotIntegral);
        }
        let id = ctx.group().identity();
        let mut zero_sets: Vec<Vec<bool>> = ctx
            .words_up_to(probe_len, 1)
            .iter()
            .map(|w| v.points().iter().map(|x| ctx.evaluate_at(w, x) == Ok(id)).collect())
            .collect();
        zero_sets.sort();
        zero_sets.dedup();
        let closures = (0..v.len())
            .map(|p| {
                let mut cl = vec![true; v.len()];
                for z in zero_sets.iter().filter(|z| z[p]) {
                    for (c, &b) in cl.iter_mut().zip(z) {
                        *c &= b;
                    }
                }
                cl
            })
            .collect();
        Ok(VarietyTopology { closures })
    }

    pub fn len(&self) -> usize {
        self.closures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.closures.is_empty()
    }

    /// `p` lies in the closure of `q`.
    pub fn specializes(&self, q: usize, p: usize) -> bool {
        self.closures[q][p]
    }

    pub fn point_closure(&self, p: usize) -> Vec<usize> {
        (0..self.len()).filter(|&q| self.closures[p][q]).collect()
    }

    pub fn closure(&self, s: &[bool]) -> Vec<bool> {
        let mut out = vec![false; self.len()];
        for p in (0..self.len()).filter(|&p| s[p]) {
            for (o, &c) in out.iter_mut().zip(&self.closures[p]) {
                *o |= c;
            }
        }
        out
    }

    pub fn is_closed(&self, s: &[bool]) -> bool {
        self.closure(s) == s
    }

    pub fn generic_points(&self) -> Vec<usize> {
        (0..self.len()).filter(|&p| self.closures[p].iter().all(|&b| b)).collect()
    }

    /// In a finite space determined by point closures, irreducible means
    /// having a generic point.
    pub fn is_irreducible(&self) -> bool {
        !self.generic_points().is_empty()
    }

    /// Preserves specialization, which is continuity here.
    pub fn is_continuous(&self, target: &VarietyTopology, map: &[usize]) -> bool {
        (0..self.len()).all(|q| {
            (0..self.len()).all(|p| !self.specializes(q, p) || target.specializes(map[q], map[p]))
        })
    }
}

/// Both sides of the bijection between variety morphisms `V -> W` and
/// morphisms of function groups `O(W) -> O(V)`.
#[derive(Clone, Debug)]
pub struct HomCorrespondence {
    /// Point maps as indices into the target variety.
    pub variety_morphisms: Vec<Vec<usize>>,
    pub g_morphisms: Vec<GMorphism>,
    /// `a(phi)` as an index into `g_morphisms`.
    pub a: Vec<Option<usize>>,
    /// `b(psi)` as an index into `variety_morphisms`.
    pub b: Vec<Option<usize>>,
}

impl HomCorrespondence {
    pub fn is_bijection(&self) -> bool {
        self.variety_morphisms.len() == self.g_morphisms.len()
            && self.a.iter().enumerate().all(|(i, a)| a.and_then(|j| self.b[j]) == Some(i))
            && self.b.iter().enumerate().all(|(j, b)| b.and_then(|i| self.a[i]) == Some(j))
    }
}

/// Cap on the number of candidate point maps.
const MAP_CAP: usize = 1 << 16;

pub fn hom_variety_correspondence(
    v: &VarietySet,
    w: &VarietySet,
    variant: Variant,
    cap: usize,
) -> Result<HomCorrespondence> {
    if v.ctx().group() != w.ctx().group() {
        return Err(Error::ContextMismatch);
    }
    let tv = VarietyTopology::new(v, variant, DEFAULT_PROBE_LEN)?;
    let tw = VarietyTopology::new(w, variant, DEFAULT_PROBE_LEN)?;
    let ov = coordinate_group(v, cap)?;
    let ow = coordinate_group(w, cap)?;
    let g_morphisms = enumerate_g_morphisms(&ow.as_ggroup(), &ov.as_ggroup())?;

    let count = (w.len() as u128).checked_pow(v.len() as u32).filter(|&c| c <= MAP_CAP as u128);
    let Some(count) = count else {
        return Err(Error::TooLarge { cap: MAP_CAP });
    };
    let mut variety_morphisms = Vec::new();
    if !(w.is_empty() && !v.is_empty()) {
        for mut k in 0..count as usize {
            let map: Vec<usize> = (0..v.len())
                .map(|_| {
                    let d = k % w.len().max(1);
                    k /= w.len().max(1);
                    d
                })
                .collect();
            let regular = (1..=w.ctx().vars()).all(|i| pullback(&ov, &ow, ow.coordinate(i), &map).is_some());
            if regular && tv.is_continuous(&tw, &map) {
                variety_morphisms.push(map);
            }
        }
    }
    variety_morphisms.sort();

    let a = variety_morphisms
        .iter()
        .map(|map| {
            let images: Option<Vec<usize>> = (0..ow.order()).map(|f| pullback(&ov, &ow, f, map)).collect();
            images.and_then(|im| g_morphisms.iter().position(|m| m.map.images() == im.as_slice()))
        })
        .collect();
    let b = g_morphisms
        .iter()
        .map(|psi| {
            let map: Option<Vec<usize>> = (0..v.len())
                .map(|p| {
                    let x: Vec<usize> = (1..=w.ctx().vars())
                        .map(|i| ov.value_at(psi.map.apply(ow.coordinate(i)), p))
                        .collect();
                    w.index_of(&x)
                })
                .collect();
            map.and_then(|m| variety_morphisms.iter().position(|vm| *vm == m))
        })
        .collect();
    Ok(HomCorrespondence { variety_morphisms, g_morphisms, a, b })
}

/// `f ∘ map` as a function on `V`, if regular.
fn pullback(ov: &FunctionGroup, ow: &FunctionGroup, f: usize, map: &[usize]) -> Option<usize> {
    let vals: Vec<usize> = map.iter().map(|&q| ow.value_at(f, q)).collect();
    ov.function_with_values(&vals)
}

/// Tallies for an elementwise primality audit over probe pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProbeReport {
    pub pairs: usize,
    /// One of the pair lies in the ideal.
    pub passed: usize,
    /// The divisor condition fails, so the pair says nothing.
    pub vacuous: usize,
    pub inconclusive: usize,
    /// The condition holds but neither word lies in the ideal.
    pub violations: Vec<(Word, Word)>,
}

/// `ncl(a)` and `ncl(b)` commute, for every pair of elements of `g`.
fn normal_closures_commute(g: &GroupTable) -> Vec<Vec<bool>> {
    let classes = fingroup::conjugacy_classes(g);
    let mut class_of = vec![0; g.order()];
    for (i, c) in classes.iter().enumerate() {
        for &e in c {
            class_of[e] = i;
        }
    }
    let k = classes.len();
    let mut cc = vec![vec![false; k]; k];
    for i in 0..k {
        for j in 0..k {
            cc[i][j] = classes[i].iter().all(|&a| classes[j].iter().all(|&b| g.commute(a, b)));
        }
    }
    (0..g.order()).map(|a| (0..g.order()).map(|b| cc[class_of[a]][class_of[b]]).collect()).collect()
}

/// Audits "condition modulo `I_S` implies membership" for the ideal of
/// words vanishing on every point of `points`.
///
/// `T1` is decided exactly by evaluation. `T2` is decided only when both
/// spans are certified cyclic.
pub fn probe_ideal_primality(
    ctx: &WordContext,
    points: &[Vec<usize>],
    variant: Variant,
    probes: &[Word],
) -> Result<ProbeReport> {
    let g = ctx.group();
    let id = g.identity();
    let values: Vec<Vec<usize>> = probes
        .iter()
        .map(|w| {
            ctx.check_word(w)?;
            points.iter().map(|x| ctx.evaluate_at(w, x)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let inside: Vec<bool> = values.iter().map(|v| v.iter().all(|&e| e == id)).collect();
    let ncl = normal_closures_commute(g);
    let spans: Vec<Vec<Word>> = probes.iter().map(|w| ctx.span_generators(w)).collect();
    let cyclic: Vec<_> = probes.iter().zip(&spans).map(|(w, s)| ctx.cyclic_torsion(w, s)).collect();
    let mut report = ProbeReport::default();
    for i in 0..probes.len() {
        for j in i..probes.len() {
            report.pairs += 1;
            if inside[i] || inside[j] {
                report.passed += 1;
                continue;
            }
            let condition = match variant {
                Variant::T1 => Some((0..points.len()).all(|p| ncl[values[i][p]][values[j][p]])),
                Variant::T2 => match (cyclic[i], cyclic[j]) {
                    (Some(ti), Some(tj)) => match ctx.cyclic_meet(&probes[i], ti, &probes[j], tj) {
                        Meet::Trivial(_) => Some(true),
                        Meet::Common(c) => {
                            let vanishes = points.iter().all(|x| ctx.evaluate_at(&c, x) == Ok(id));
                            if vanishes {
                                None
                            } else {
                                Some(false)
                            }
                        }
                    },
                    _ => None,
                },
            };
            match condition {
                Some(true) => report.violations.push((probes[i].clone(), probes[j].clone())),
                Some(false) => report.vacuous += 1,
                None => report.inconclusive += 1,
            }
        }
    }
    Ok(report)
}

/// Per-point outcome of comparing `Var(I) ∪ Var(J)` with the product-type
/// variety (`Var([I,J])` or `Var(I ∩ J)`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UnionReport {
    pub points: usize,
    pub agree: usize,
    /// Points in the product-type variety but outside the union.
    pub counterexamples: Vec<Vec<usize>>,
    pub inconclusive: Vec<Vec<usize>>,
}

impl UnionReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty() && self.inconclusive.is_empty()
    }
}

/// Compares `Var(I) ∪ Var(J)` with `Var([I,J])` (`T1`) or `Var(I ∩ J)`
/// (`T2`) for `I = n(s)`, `J = n(t)`.
///
/// `T1` is exact: `e_x([I,J]) = [ncl(s(x)), ncl(t(x))]`. For `T2` a point
/// outside the union is settled either by a commutator of conjugates that
/// survives evaluation, or, for abelian `G` in one variable and single
/// generators, by intersecting the abelianized cyclic subgroups. Equal
/// families are exact since `I ∩ I = I`.
pub fn union_identity(ctx: &WordContext, s: &[Word], t: &[Word], variant: Variant) -> Result<UnionReport> {
    let g = ctx.group();
    let id = g.identity();
    for w in s.iter().chain(t) {
        ctx.check_word(w)?;
    }
    let ncl = normal_closures_commute(g);
    let abelian_cert = match (s, t) {
        ([a], [b]) if g.is_abelian() && ctx.vars() == 1 => Some((abelianize(ctx, a), abelianize(ctx, b))),
        _ => None,
    };
    let mut report = UnionReport::default();
    for x in ambient_points(ctx) {
        report.points += 1;
        let sx: Vec<usize> = s.iter().map(|w| ctx.evaluate_at(w, &x)).collect::<Result<_>>()?;
        let tx: Vec<usize> = t.iter().map(|w| ctx.evaluate_at(w, &x)).collect::<Result<_>>()?;
        let in_union = sx.iter().all(|&e| e == id) || tx.iter().all(|&e| e == id);
        let commute = sx.iter().all(|&a| tx.iter().all(|&b| ncl[a][b]));
        let verdict = match variant {
            Variant::T1 => Some(in_union == commute),
            Variant::T2 if in_union || !commute || s == t => Some(true),
            Variant::T2 => abelian_cert.and_then(|(a, b)| {
                let kills = abelian_intersection_vanishes(g, a, b, x[0]);
                kills.then_some(false)
            }),
        };
        match verdict {
            Some(true) => report.agree += 1,
            Some(false) => report.counterexamples.push(x),
            None => report.inconclusive.push(x),
        }
    }
    Ok(report)
}

/// Image of a word in `G × Z` for abelian `G` and one variable.
fn abelianize(ctx: &WordContext, w: &Word) -> (usize, i64) {
    use crate::freeprod::Syllable;
    let g = ctx.group();
    w.syllables().iter().fold((g.identity(), 0), |(c, k), s| match *s {
        Syllable::Coef(e) => (g.mul(c, e), k),
        Syllable::Letter { exp, .. } => (c, k + exp as i64),
    })
}

/// Whether evaluation at `x` kills `<a> ∩ <b>` inside `G × Z`.
fn abelian_intersection_vanishes(g: &GroupTable, a: (usize, i64), b: (usize, i64), x: usize) -> bool {
    let eval = |(c, k): (usize, i64)| g.mul(c, g.pow(x, k));
    match (a.1, b.1) {
        (0, 0) => {
            let pa = fingroup::generate(g, [a.0]);
            let pb = fingroup::generate(g, [b.0]);
            pa.intersection(&pb).is_trivial()
        }
        (0, _) | (_, 0) => true,
        (k1, k2) => {
            let d = gcd(k1.unsigned_abs(), k2.unsigned_abs()) as i64;
            let (m0, l0) = (k2 / d, k1 / d);
            let h = g.mul(g.pow(a.0, m0), g.pow(b.0, -l0));
            let t = g.element_order(h) as i64;
            let m = t * m0;
            eval((g.pow(a.0, m), m * k1)) == g.identity()
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `∩ Var(n(S_a)) = Var(n(∪ S_a))`, checked pointwise.
pub fn intersection_identity(ctx: &WordContext, families: &[Vec<Word>]) -> Result<bool> {
    let mut left: Option<Vec<Vec<usize>>> = None;
    for f in families {
        let pts = variety_of(ctx, f)?.points;
        left = Some(match left {
            None => pts,
            Some(l) => l.into_iter().filter(|p| pts.contains(p)).collect(),
        });
    }
    let left = left.unwrap_or_else(|| ambient_points(ctx));
    let union: Vec<Word> = families.iter().flatten().cloned().collect();
    Ok(variety_of(ctx, &union)?.points == left)
}

/// Formats a point as `(g_1, ..., g_n)` with element labels.
pub fn format_point(g: &GroupTable, x: &[usize]) -> alloc::string::String {
    let parts: Vec<_> = x.iter().map(|&e| g.label(e)).collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(g: GroupTable, n: usize) -> WordContext {
        WordContext::new(Arc::new(g), n)
    }

    #[test]
    fn involutions_in_a5() {
        let c = ctx(GroupTable::alternating(5), 1);
        let v = variety_of(&c, &[c.parse("X1^2").unwrap()]).unwrap();
        assert_eq!(v.len(), 16);
    }

    #[test]
    fn trivial_generators() {
        let c = ctx(GroupTable::symmetric(3), 2);
        assert_eq!(variety_of(&c, &[]).unwrap().len(), 36);
        let v = variety_of(&c, &[c.variable(1).unwrap()]).unwrap();
        assert_eq!(v.len(), 6);
        assert!(v.points().iter().all(|p| p[0] == 0));
    }

    #[test]
    fn coordinate_groups() {
        let c = ctx(GroupTable::alternating(5), 1);
        let v = VarietySet::from_points(&c, vec![vec![0]]).unwrap();
        let o = coordinate_group(&v, DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(o.order(), 60);

        let c = ctx(GroupTable::cyclic(2), 1);
        let o = coordinate_group(&variety_of(&c, &[]).unwrap(), DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(o.order(), 4);
        assert!(o.table().is_abelian());
        assert!(o.table().elements().all(|e| o.table().pow(e, 2) == 0));

        let empty = VarietySet::from_points(&c, vec![]).unwrap();
        assert_eq!(coordinate_group(&empty, DEFAULT_CLOSURE_CAP).unwrap().order(), 1);

        let c = ctx(GroupTable::alternating(5), 1);
        let whole = variety_of(&c, &[]).unwrap();
        assert_eq!(coordinate_group(&whole, 100).unwrap_err(), Error::TooLarge { cap: 100 });
    }

    #[test]
    fn witnesses_evaluate_to_their_functions() {
        let c = ctx(GroupTable::symmetric(3), 1);
        let v = variety_of(&c, &[c.parse("X1^2").unwrap()]).unwrap();
        let o = coordinate_group(&v, DEFAULT_CLOSURE_CAP).unwrap();
        for f in 0..o.order() {
            assert_eq!(v.values(o.witness(f)).unwrap(), o.values(f));
        }
    }

    #[test]
    fn strictness_certificate_s3() {
        let s3 = GroupTable::symmetric(3);
        let a3 = fingroup::generate(&s3, [3]);
        assert_eq!(a3.order(), 3);
        let c = ctx(s3.clone(), 1);
        let x = s3.elements().find(|&e| s3.label(e) == "(1 2 3)").unwrap();
        let MaximalityCertificate::Strict { inside, outside } = maximality_probe(&c, &[x], &a3).unwrap() else {
            panic!("expected strict certificate");
        };
        assert!(shifted_point_ideal_contains(&c, &[x], &a3, &inside).unwrap());
        assert!(!point_ideal_contains(&c, &[x], &inside).unwrap());
        assert!(!shifted_point_ideal_contains(&c, &[x], &a3, &outside).unwrap());
        assert_eq!(maximality_probe(&c, &[x], &Subgroup::trivial(&s3)).unwrap(), MaximalityCertificate::Collapse);
    }

    #[test]
    fn factorization_in_a5() {
        let a5 = GroupTable::alternating(5);
        let c = ctx(a5.clone(), 1);
        let x = a5.elements().find(|&e| a5.label(e) == "(1 2)(3 4)").unwrap();
        let probe = c.variable(1).unwrap();
        for g in [1, 7, 59] {
            let target = c.constant(g).unwrap();
            let f = factorization_certificate(&c, &[x], &probe, &target).unwrap();
            assert!(f.verify(&c, &[x]).unwrap());
        }
        let s3 = ctx(GroupTable::symmetric(3), 1);
        assert!(factorization_certificate(&s3, &[1], &s3.variable(1).unwrap(), &s3.identity()).is_err());
    }

    #[test]
    fn z2_hom_correspondence() {
        let c = ctx(GroupTable::cyclic(2), 1);
        let v = variety_of(&c, &[]).unwrap();
        let h = hom_variety_correspondence(&v, &v, Variant::T2, DEFAULT_CLOSURE_CAP).unwrap();
        assert!(h.is_bijection());
        assert_eq!(h.variety_morphisms.len(), h.g_morphisms.len());
        let point = variety_of(&c, &[c.variable(1).unwrap()]).unwrap();
        let h = hom_variety_correspondence(&v, &point, Variant::T2, DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(h.variety_morphisms.len(), 1);
        assert!(h.is_bijection());
        assert_eq!(
            hom_variety_correspondence(&v, &v, Variant::T1, DEFAULT_CLOSURE_CAP).unwrap_err(),
            Error::NotIntegral
        );
    }

    #[test]
    fn t1_union_identity_over_a5() {
        let c = ctx(GroupTable::alternating(5), 1);
        let s = [c.parse("X1^2").unwrap()];
        let t = [c.parse("X1^3").unwrap()];
        let r = union_identity(&c, &s, &t, Variant::T1).unwrap();
        assert!(r.holds());
        assert_eq!(r.agree, 60);
    }

    #[test]
    fn t2_union_identity_fails_over_z2() {
        let c = ctx(GroupTable::cyclic(2), 1);
        let r = union_identity(&c, &[c.variable(1).unwrap()], &[c.constant(1).unwrap()], Variant::T2).unwrap();
        assert_eq!(r.counterexamples, vec![vec![1]]);
    }

    #[test]
    fn family_intersection() {
        let c = ctx(GroupTable::symmetric(3), 2);
        let fam = vec![vec![c.parse("X1^2").unwrap()], vec![c.parse("X2^3").unwrap()]];
        assert!(intersection_identity(&c, &fam).unwrap());
    }

    #[test]
    fn point_ideals_are_prime_for_t1_integral_group() {
        let a5 = GroupTable::alternating(5);
        let c = ctx(a5, 1);
        let probes: Vec<Word> = c.words_up_to(2, 1).into_iter().skip(1).collect();
        let r = probe_ideal_primality(&c, &[vec![5]], Variant::T1, &probes).unwrap();
        assert!(r.violations.is_empty());
        assert_eq!(r.inconclusive, 0);
    }

    #[test]
    fn probe_topology_requires_integrality() {
        let c = ctx(GroupTable::symmetric(3), 1);
        let v = variety_of(&c, &[]).unwrap();
        assert_eq!(VarietyTopology::new(&v, Variant::T1, 2).unwrap_err(), Error::NotIntegral);
        let t = VarietyTopology::new(&v, Variant::T2, 2).unwrap();
        // c_g X1 vanishes exactly at g^-1, so points are closed
        assert!((0..6).all(|p| t.point_closure(p) == vec![p]));
        assert!(!t.is_irreducible());
    }
}
