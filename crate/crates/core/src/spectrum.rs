//! Prime ideals, spectra and their finite topology.
//!
//! Closed sets are the vanishing sets `V(N)` over all normal subgroups `N`
//! of the carrier, stored extensionally as bitsets over the prime list.

use alloc::format;
use alloc::vec::Vec;

use crate::fingroup::{self, Subgroup};
use crate::gobject::{is_integral, GGroup, SpanCache, Variant};
use crate::pointset::{PointSet, MAX_POINTS};
use crate::{Error, Result};

/// Which notion of primality to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum PrimeDef {
    /// `H/I` with the induced structure is integral.
    Quotient,
    /// The divisor condition on `x, y` modulo `I` forces `x` or `y` into `I`.
    #[default]
    Elementwise,
}

impl PrimeDef {
    pub fn name(self) -> &'static str {
        match self {
            PrimeDef::Quotient => "quotient",
            PrimeDef::Elementwise => "elementwise",
        }
    }
}

/// Primality test for a proper normal subgroup of the carrier.
pub fn is_prime(obj: &GGroup, ideal: &Subgroup, variant: Variant, def: PrimeDef) -> Result<bool> {
    let h = obj.carrier();
    if ideal.parent_order() != h.order() || !fingroup::is_normal(h, ideal) {
        return Err(Error::NotNormal);
    }
    if ideal.is_whole() {
        return Err(Error::NotProper);
    }
    match def {
        PrimeDef::Quotient => {
            let (q, _) = obj.quotient(ideal)?;
            Ok(is_integral(&q, variant))
        }
        PrimeDef::Elementwise => Ok(elementwise_prime(obj, ideal, variant)),
    }
}

fn elementwise_prime(obj: &GGroup, ideal: &Subgroup, variant: Variant) -> bool {
    let h = obj.carrier();
    // membership in a normal subgroup is constant on orbits
    let outside: Vec<usize> = (0..obj.orbits().len()).filter(|&o| !ideal.contains(obj.orbits()[o][0])).collect();
    let mut cache = SpanCache::new(obj);
    for (i, &a) in outside.iter().enumerate() {
        for &b in &outside[i..] {
            let holds = match variant {
                Variant::T1 => obj.orbits()[a]
                    .iter()
                    .all(|&x| obj.orbits()[b].iter().all(|&y| ideal.contains(h.commutator(x, y)))),
                Variant::T2 => {
                    let sa = cache.span(a).clone();
                    sa.intersection(cache.span(b)).is_subset(ideal)
                }
            };
            if holds {
                return false;
            }
        }
    }
    true
}

/// A closed subset together with a normal subgroup cutting it out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedSet {
    pub members: PointSet,
    pub generator: Subgroup,
}

/// A maximal irreducible closed subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub closed: ClosedSet,
    /// Index of the member prime equal to the radical, if any.
    pub generic: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Spectrum {
    object: GGroup,
    variant: Variant,
    prime_def: PrimeDef,
    normals: Vec<Subgroup>,
    primes: Vec<Subgroup>,
    closed: Vec<PointSet>,
}

impl PartialEq for Spectrum {
    fn eq(&self, other: &Self) -> bool {
        self.object == other.object
            && self.variant == other.variant
            && self.prime_def == other.prime_def
            && self.primes == other.primes
    }
}

impl Spectrum {
    /// All primes of `obj`, canonically ordered (by order, then elements).
    pub fn new(obj: &GGroup, variant: Variant, prime_def: PrimeDef) -> Result<Self> {
        let normals = fingroup::normal_subgroups(obj.carrier());
        let mut primes = Vec::new();
        for n in normals.iter().filter(|n| !n.is_whole()) {
            if is_prime(obj, n, variant, prime_def)? {
                primes.push(n.clone());
            }
        }
        Self::from_primes(obj.clone(), variant, prime_def, normals, primes)
    }

    pub(crate) fn from_primes(
        object: GGroup,
        variant: Variant,
        prime_def: PrimeDef,
        normals: Vec<Subgroup>,
        primes: Vec<Subgroup>,
    ) -> Result<Self> {
        if primes.len() > MAX_POINTS {
            return Err(Error::TooLarge { cap: MAX_POINTS });
        }
        let mut closed: Vec<PointSet> = normals.iter().map(|n| vanishing(&primes, n)).collect();
        closed.sort_by_key(|c| (c.len(), c.bits()));
        closed.dedup();
        Ok(Spectrum { object, variant, prime_def, normals, primes, closed })
    }

    pub fn object(&self) -> &GGroup {
        &self.object
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn prime_def(&self) -> PrimeDef {
        self.prime_def
    }

    pub fn primes(&self) -> &[Subgroup] {
        &self.primes
    }

    pub fn prime(&self, p: usize) -> &Subgroup {
        &self.primes[p]
    }

    /// Position of a subgroup in the prime list.
    pub fn index_of(&self, s: &Subgroup) -> Option<usize> {
        self.primes.iter().position(|p| p == s)
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn points(&self) -> PointSet {
        PointSet::full(self.len())
    }

    /// Every normal subgroup of the carrier, including the carrier itself.
    pub fn normals(&self) -> &[Subgroup] {
        &self.normals
    }

    /// `V(N)`: the primes containing `n`.
    pub fn vanishing_set(&self, n: &Subgroup) -> Result<ClosedSet> {
        let h = self.object.carrier();
        if n.parent_order() != h.order() || !fingroup::is_normal(h, n) {
            return Err(Error::NotNormal);
        }
        Ok(ClosedSet { members: vanishing(&self.primes, n), generator: n.clone() })
    }

    /// Distinct closed sets ordered by size, then bits.
    pub fn closed_sets(&self) -> &[PointSet] {
        &self.closed
    }

    pub fn open_sets(&self) -> Vec<PointSet> {
        let mut opens: Vec<PointSet> = self.closed.iter().map(|c| c.complement(self.len())).collect();
        opens.sort_by_key(|o| (o.len(), o.bits()));
        opens
    }

    /// Whether the vanishing sets are closed under finite unions, so that
    /// they are the closed sets of a topology. Intersections always are.
    pub fn is_topology(&self) -> bool {
        self.closed.iter().enumerate().all(|(i, a)| self.closed[i + 1..].iter().all(|b| self.is_closed(a.union(*b))))
    }

    pub fn is_closed(&self, s: PointSet) -> bool {
        self.closed.contains(&s)
    }

    pub fn is_open(&self, s: PointSet) -> bool {
        self.is_closed(s.complement(self.len()))
    }

    /// Complement of `V(n(h))`.
    pub fn basic_open(&self, h: usize) -> Result<PointSet> {
        self.object.carrier().check_element(h)?;
        let n = fingroup::normal_closure(self.object.carrier(), &[h]);
        Ok(vanishing(&self.primes, &n).complement(self.len()))
    }

    /// Smallest closed set containing `s`.
    pub fn closure(&self, s: PointSet) -> PointSet {
        self.closed
            .iter()
            .filter(|c| s.is_subset(**c))
            .fold(self.points(), |acc, c| acc.intersection(*c))
    }

    pub fn closure_set(&self, s: PointSet) -> ClosedSet {
        let members = self.closure(s);
        ClosedSet { members, generator: self.radical(members) }
    }

    /// Intersection of all opens containing `p`.
    pub fn minimal_open(&self, p: usize) -> PointSet {
        self.open_sets()
            .into_iter()
            .filter(|o| o.contains(p))
            .fold(self.points(), |acc, o| acc.intersection(o))
    }

    /// `q` specializes to `p`: `p` lies in the closure of `q`.
    pub fn specializes(&self, q: usize, p: usize) -> bool {
        self.closure(PointSet::singleton(q)).contains(p)
    }

    /// Edges `q -> p` of the specialization order, `q != p`.
    pub fn specialization_edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for q in 0..n {
            let cl = self.closure(PointSet::singleton(q));
            for p in cl.iter().filter(|&p| p != q) {
                out.push((q, p));
            }
        }
        out
    }

    /// Intersection of the primes in `s`; the whole carrier when `s` is empty.
    pub fn radical(&self, s: PointSet) -> Subgroup {
        let h = self.object.carrier();
        s.iter().fold(Subgroup::whole(h), |acc, p| acc.intersection(&self.primes[p]))
    }

    /// Radical of the minimal open around `p`.
    pub fn point_radical(&self, p: usize) -> Subgroup {
        self.radical(self.minimal_open(p))
    }

    /// Closed subsets of `z` relative to `z`.
    fn relative_closed(&self, z: PointSet) -> Vec<PointSet> {
        let mut out: Vec<PointSet> = self.closed.iter().map(|c| c.intersection(z)).collect();
        out.sort_by_key(|c| c.bits());
        out.dedup();
        out
    }

    /// Nonempty and not the union of two proper closed subsets.
    pub fn is_irreducible(&self, s: PointSet) -> bool {
        let z = self.closure(s);
        if z.is_empty() {
            return false;
        }
        let proper: Vec<PointSet> = self.relative_closed(z).into_iter().filter(|c| *c != z).collect();
        !proper.iter().any(|a| proper.iter().any(|b| a.union(*b) == z))
    }

    /// Maximal irreducible closed sets, ordered by their least member.
    pub fn irreducible_components(&self) -> Vec<Component> {
        let irreducible: Vec<PointSet> = self.closed.iter().copied().filter(|c| self.is_irreducible(*c)).collect();
        let mut maximal: Vec<PointSet> = irreducible
            .iter()
            .copied()
            .filter(|c| !irreducible.iter().any(|d| d != c && c.is_subset(*d)))
            .collect();
        maximal.sort_by_key(|c| (c.iter().next(), c.bits()));
        maximal
            .into_iter()
            .map(|members| {
                let generator = self.radical(members);
                let generic = self.index_of(&generator).filter(|&p| members.contains(p));
                Component { closed: ClosedSet { members, generator }, generic }
            })
            .collect()
    }

    /// Points whose closure is the whole space.
    pub fn dense_points(&self) -> Vec<usize> {
        (0..self.len()).filter(|&p| self.closure(PointSet::singleton(p)) == self.points()).collect()
    }

    pub fn describe_prime(&self, p: usize) -> alloc::string::String {
        format!("P{p} = {}", self.primes[p].label(self.object.carrier()))
    }
}

fn vanishing(primes: &[Subgroup], n: &Subgroup) -> PointSet {
    primes.iter().enumerate().filter(|(_, p)| n.is_subset(p)).map(|(i, _)| i).collect()
}
