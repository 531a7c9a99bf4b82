//! Groups under a coefficient group: objects `(H, f: G -> H)`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::fingroup::{self, generate, GroupTable, Homomorphism, QuotientGroup, Subgroup};
use crate::{Error, Result};

/// The two divisor-of-zero notions: commuting spans (`T1`) or spans with
/// trivial intersection (`T2`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variant {
    T1,
    T2,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::T1 => "t1",
            Variant::T2 => "t2",
        }
    }
}

/// A carrier `H` with structure map `f: G -> H`. The map need not be
/// injective.
///
/// Orbits of `H` under conjugation by `f(G)` are computed once; `G(x)`
/// depends only on the orbit of `x`.
#[derive(Clone, Debug)]
pub struct GGroup {
    base: Arc<GroupTable>,
    carrier: Arc<GroupTable>,
    structure: Homomorphism,
    orbits: Vec<Vec<usize>>,
    orbit_of: Vec<usize>,
}

impl PartialEq for GGroup {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.carrier == other.carrier && self.structure == other.structure
    }
}

impl GGroup {
    pub fn new(base: Arc<GroupTable>, carrier: Arc<GroupTable>, images: Vec<usize>) -> Result<Self> {
        let structure = Homomorphism::new(&base, &carrier, images)?;
        Ok(Self::from_parts(base, carrier, structure))
    }

    pub(crate) fn from_parts(base: Arc<GroupTable>, carrier: Arc<GroupTable>, structure: Homomorphism) -> Self {
        let mut conjugators: Vec<usize> = structure.images().to_vec();
        conjugators.sort_unstable();
        conjugators.dedup();
        let n = carrier.order();
        let mut orbit_of = vec![usize::MAX; n];
        let mut orbits = Vec::new();
        for x in carrier.elements() {
            if orbit_of[x] != usize::MAX {
                continue;
            }
            // f(G) is a subgroup, so one sweep of conjugators gives the whole orbit.
            let mut orbit = Vec::new();
            for &c in &conjugators {
                let y = carrier.conj(c, x);
                if orbit_of[y] == usize::MAX {
                    orbit_of[y] = orbits.len();
                    orbit.push(y);
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        GGroup { base, carrier, structure, orbits, orbit_of }
    }

    /// `(G, id)`.
    pub fn identity(group: Arc<GroupTable>) -> Self {
        let structure = Homomorphism::identity(&group);
        Self::from_parts(group.clone(), group, structure)
    }

    /// Carrier with the trivial structure map.
    pub fn with_trivial_structure(base: Arc<GroupTable>, carrier: Arc<GroupTable>) -> Self {
        let structure = Homomorphism::trivial(&base, &carrier);
        Self::from_parts(base, carrier, structure)
    }

    pub fn base(&self) -> &Arc<GroupTable> {
        &self.base
    }

    pub fn carrier(&self) -> &Arc<GroupTable> {
        &self.carrier
    }

    pub fn structure(&self) -> &Homomorphism {
        &self.structure
    }

    #[inline]
    pub fn act(&self, g: usize) -> usize {
        self.structure.apply(g)
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn orbit_of(&self, x: usize) -> usize {
        self.orbit_of[x]
    }

    /// `(H/N, p_N ∘ f)` together with the quotient data.
    pub fn quotient(&self, n: &Subgroup) -> Result<(GGroup, QuotientGroup)> {
        let q = fingroup::quotient(&self.carrier, n)?;
        let structure = self.structure.then(&q.projection);
        let obj = Self::from_parts(self.base.clone(), Arc::new(q.table.clone()), structure);
        Ok((obj, q))
    }

    fn identity_orbit(&self) -> usize {
        self.orbit_of[self.carrier.identity()]
    }
}

/// `G(x)`: the subgroup generated by `f(g) x f(g)^-1`.
pub fn g_span(obj: &GGroup, x: usize) -> Subgroup {
    generate(&obj.carrier, obj.orbits[obj.orbit_of[x]].iter().copied())
}

/// Spans of every orbit, computed on demand.
pub(crate) struct SpanCache<'a> {
    obj: &'a GGroup,
    spans: Vec<Option<Subgroup>>,
}

impl<'a> SpanCache<'a> {
    pub(crate) fn new(obj: &'a GGroup) -> Self {
        SpanCache { obj, spans: vec![None; obj.orbits.len()] }
    }

    pub(crate) fn span(&mut self, orbit: usize) -> &Subgroup {
        let obj = self.obj;
        self.spans[orbit].get_or_insert_with(|| generate(&obj.carrier, obj.orbits[orbit].iter().copied()))
    }

    /// Every generator of the first span commutes with every generator of
    /// the second, i.e. `[G(x), G(y)] = 1`.
    pub(crate) fn orbits_commute(&self, a: usize, b: usize) -> bool {
        let h = &self.obj.carrier;
        self.obj.orbits[a].iter().all(|&x| self.obj.orbits[b].iter().all(|&y| h.commute(x, y)))
    }

    pub(crate) fn spans_meet_trivially(&mut self, a: usize, b: usize) -> bool {
        let id = self.obj.carrier.identity();
        let sa = self.span(a).clone();
        let sb = self.span(b);
        sa.elements().iter().all(|&e| e == id || !sb.contains(e))
    }

    pub(crate) fn is_divisor_pair(&mut self, a: usize, b: usize, variant: Variant) -> bool {
        match variant {
            Variant::T1 => self.orbits_commute(a, b),
            Variant::T2 => self.spans_meet_trivially(a, b),
        }
    }
}

/// First `y != 1` in canonical order witnessing that `x` is a divisor of zero.
pub fn divisor_witness(obj: &GGroup, x: usize, variant: Variant) -> Result<Option<usize>> {
    obj.carrier.check_element(x)?;
    if x == obj.carrier.identity() {
        return Err(Error::IdentityElement);
    }
    let mut cache = SpanCache::new(obj);
    let ox = obj.orbit_of(x);
    let mut verdict: Vec<Option<bool>> = vec![None; obj.orbits.len()];
    for y in obj.carrier.elements() {
        if y == obj.carrier.identity() {
            continue;
        }
        let oy = obj.orbit_of(y);
        let ok = *verdict[oy].get_or_insert_with(|| cache.is_divisor_pair(ox, oy, variant));
        if ok {
            return Ok(Some(y));
        }
    }
    Ok(None)
}

/// No element is a divisor of zero. The trivial group is integral.
pub fn is_integral(obj: &GGroup, variant: Variant) -> bool {
    let mut cache = SpanCache::new(obj);
    let id_orbit = obj.identity_orbit();
    let n = obj.orbits.len();
    for a in 0..n {
        if a == id_orbit {
            continue;
        }
        for b in 0..n {
            if b != id_orbit && cache.is_divisor_pair(a, b, variant) {
                return false;
            }
        }
    }
    true
}

/// `{x : G(x) is nilpotent}`, sorted.
pub fn nilpotent_elements(obj: &GGroup) -> Vec<usize> {
    let mut cache = SpanCache::new(obj);
    let mut out = Vec::new();
    for (o, orbit) in obj.orbits.iter().enumerate() {
        if fingroup::is_nilpotent(&obj.carrier, cache.span(o)) {
            out.extend_from_slice(orbit);
        }
    }
    out.sort_unstable();
    out
}

/// A homomorphism of carriers commuting with the structure maps.
#[derive(Clone, Debug, PartialEq)]
pub struct GMorphism {
    pub source: GGroup,
    pub target: GGroup,
    pub map: Homomorphism,
}

impl GMorphism {
    pub fn new(source: GGroup, target: GGroup, images: Vec<usize>) -> Result<Self> {
        if source.base != target.base {
            return Err(Error::ContextMismatch);
        }
        let map = Homomorphism::new(&source.carrier, &target.carrier, images)?;
        for g in source.base.elements() {
            if map.apply(source.act(g)) != target.act(g) {
                return Err(Error::NotHomomorphism("does not commute with the structure maps".into()));
            }
        }
        Ok(GMorphism { source, target, map })
    }

    pub fn identity(obj: &GGroup) -> Self {
        GMorphism { source: obj.clone(), target: obj.clone(), map: Homomorphism::identity(&obj.carrier) }
    }
}

/// Extends generator images along right multiplication; `None` on conflict.
fn extend(h: &GroupTable, target: &GroupTable, gens: &[usize], imgs: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; h.order()];
    map[h.identity()] = target.identity();
    let mut queue = vec![h.identity()];
    let mut k = 0;
    while k < queue.len() {
        let e = queue[k];
        k += 1;
        for (&g, &v) in gens.iter().zip(imgs) {
            let p = h.mul(e, g);
            let val = target.mul(map[e], v);
            if map[p] == usize::MAX {
                map[p] = val;
                queue.push(p);
            } else if map[p] != val {
                return None;
            }
        }
    }
    Some(map)
}

/// All morphisms `a -> b` in the comma category, sorted by image list.
pub fn enumerate_g_morphisms(a: &GGroup, b: &GGroup) -> Result<Vec<GMorphism>> {
    if a.base != b.base {
        return Err(Error::ContextMismatch);
    }
    let (ha, hb) = (&a.carrier, &b.carrier);
    let mut forced = vec![usize::MAX; ha.order()];
    for g in a.base.elements() {
        let (x, y) = (a.act(g), b.act(g));
        if forced[x] == usize::MAX {
            forced[x] = y;
        } else if forced[x] != y {
            return Ok(Vec::new());
        }
    }
    // Generators: structure images first (their images are forced), then the rest.
    let mut gens = Vec::new();
    let mut current = Subgroup::trivial(ha);
    let candidates_order = a.base.elements().map(|g| a.act(g)).chain(ha.elements());
    for x in candidates_order {
        if !current.contains(x) {
            gens.push(x);
            current = generate(ha, gens.iter().copied());
        }
    }
    let choices: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| {
            if forced[x] != usize::MAX {
                vec![forced[x]]
            } else {
                let ord = ha.element_order(x);
                hb.elements().filter(|&y| ord % hb.element_order(y) == 0).collect()
            }
        })
        .collect();

    let mut found = Vec::new();
    let mut imgs = Vec::with_capacity(gens.len());
    search(ha, hb, &gens, &choices, &mut imgs, &mut |map| {
        if a.base.elements().all(|g| map[a.act(g)] == b.act(g)) {
            found.push(map);
        }
    });
    found.sort();
    Ok(found
        .into_iter()
        .map(|images| GMorphism { source: a.clone(), target: b.clone(), map: Homomorphism::new_unchecked(images) })
        .collect())
}

fn search(
    ha: &GroupTable,
    hb: &GroupTable,
    gens: &[usize],
    choices: &[Vec<usize>],
    imgs: &mut Vec<usize>,
    emit: &mut dyn FnMut(Vec<usize>),
) {
    let depth = imgs.len();
    if depth == gens.len() {
        if let Some(map) = extend(ha, hb, gens, imgs) {
            emit(map);
        }
        return;
    }
    for &y in &choices[depth] {
        imgs.push(y);
        if extend(ha, hb, &gens[..=depth], imgs).is_some() {
            search(ha, hb, gens, choices, imgs, emit);
        }
        imgs.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::{center, normal_subgroups};

    fn ident(g: GroupTable) -> GGroup {
        GGroup::identity(Arc::new(g))
    }

    fn find(h: &GroupTable, label: &str) -> usize {
        h.elements().find(|&e| h.label(e) == label).unwrap()
    }

    #[test]
    fn span_examples() {
        let s3 = ident(GroupTable::symmetric(3));
        let c = find(s3.carrier(), "(1 2 3)");
        assert_eq!(g_span(&s3, c).order(), 3);

        let s5 = Arc::new(GroupTable::symmetric(5));
        let triv = GGroup::with_trivial_structure(Arc::new(GroupTable::trivial()), s5.clone());
        let x = find(&s5, "(1 2 3 4 5)");
        assert_eq!(g_span(&triv, x).order(), 5);

        let z2 = Arc::new(GroupTable::cyclic(2));
        let t = find(&s5, "(1 2)");
        let obj = GGroup::new(z2, s5.clone(), vec![0, t]).unwrap();
        let y = find(&s5, "(3 4 5)");
        let span = g_span(&obj, y);
        assert_eq!(span.order(), 3);
        assert!(span.contains(y));
    }

    #[test]
    fn witness_examples() {
        let v4 = ident(GroupTable::direct_product(&GroupTable::cyclic(2), &GroupTable::cyclic(2)));
        // (1,0) has index 2; first witness is (0,1) with index 1
        assert_eq!(divisor_witness(&v4, 2, Variant::T2).unwrap(), Some(1));
        let a5 = ident(GroupTable::alternating(5));
        let c = find(a5.carrier(), "(1 2 3)");
        assert_eq!(divisor_witness(&a5, c, Variant::T1).unwrap(), None);
        let z5 = ident(GroupTable::cyclic(5));
        assert_eq!(divisor_witness(&z5, 3, Variant::T1).unwrap(), Some(1));
        assert_eq!(divisor_witness(&z5, 0, Variant::T1), Err(Error::IdentityElement));
    }

    #[test]
    fn integrality_examples() {
        assert!(is_integral(&ident(GroupTable::alternating(5)), Variant::T1));
        let z2 = ident(GroupTable::cyclic(2));
        assert!(!is_integral(&z2, Variant::T1));
        assert!(is_integral(&z2, Variant::T2));
        assert!(is_integral(&ident(GroupTable::trivial()), Variant::T1));
        assert!(is_integral(&ident(GroupTable::trivial()), Variant::T2));
    }

    #[test]
    fn nilpotent_element_examples() {
        let s3 = ident(GroupTable::symmetric(3));
        let a3 = normal_subgroups(s3.carrier())[1].clone();
        assert_eq!(nilpotent_elements(&s3), a3.elements());
        let q8 = ident(GroupTable::quaternion8());
        assert_eq!(nilpotent_elements(&q8).len(), 8);
        assert_eq!(nilpotent_elements(&ident(GroupTable::trivial())), vec![0]);
    }

    #[test]
    fn nilpotent_with_central_element_is_t1_divisor() {
        for g in [GroupTable::quaternion8(), GroupTable::dihedral(4), GroupTable::symmetric(4)] {
            let obj = ident(g);
            let h = obj.carrier().clone();
            for x in nilpotent_elements(&obj) {
                if x == h.identity() {
                    continue;
                }
                if !center(&h, &g_span(&obj, x)).is_trivial() {
                    assert!(divisor_witness(&obj, x, Variant::T1).unwrap().is_some());
                }
            }
        }
    }

    #[test]
    fn span_is_normalized_by_structure_image() {
        let s5 = Arc::new(GroupTable::symmetric(5));
        let z2 = Arc::new(GroupTable::cyclic(2));
        let t = find(&s5, "(1 2)");
        let obj = GGroup::new(z2.clone(), s5.clone(), vec![0, t]).unwrap();
        for x in s5.elements() {
            let span = g_span(&obj, x);
            for g in z2.elements() {
                assert!(span.elements().iter().all(|&e| span.contains(s5.conj(obj.act(g), e))));
            }
        }
    }

    #[test]
    fn morphism_enumeration_examples() {
        let s5 = ident(GroupTable::symmetric(5));
        let homs = enumerate_g_morphisms(&s5, &s5).unwrap();
        assert_eq!(homs.len(), 1);
        assert_eq!(homs[0], GMorphism::identity(&s5));

        let triv = Arc::new(GroupTable::trivial());
        let a = GGroup::with_trivial_structure(triv.clone(), Arc::new(GroupTable::cyclic(2)));
        let b = GGroup::with_trivial_structure(triv, Arc::new(GroupTable::cyclic(3)));
        assert_eq!(enumerate_g_morphisms(&a, &b).unwrap().len(), 1);

        let z2 = Arc::new(GroupTable::cyclic(2));
        let v4 = Arc::new(GroupTable::direct_product(&z2, &z2));
        // g -> (g, 0) has index 2
        let a = GGroup::new(z2.clone(), v4, vec![0, 2]).unwrap();
        let b = GGroup::identity(z2);
        assert_eq!(enumerate_g_morphisms(&a, &b).unwrap().len(), 2);
    }
}
