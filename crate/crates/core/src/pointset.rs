//! Small point sets for finite topological spaces.

use alloc::vec::Vec;
use core::fmt;

/// Maximum number of points a space may have.
pub const MAX_POINTS: usize = 64;

/// A subset of `0..64` stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PointSet(u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_POINTS);
        if n == MAX_POINTS {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(p: usize) -> Self {
        PointSet(1u64 << p)
    }

    pub fn from_bits(bits: u64) -> Self {
        PointSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, p: usize) -> bool {
        p < MAX_POINTS && self.0 >> p & 1 == 1
    }

    pub fn insert(&mut self, p: usize) {
        self.0 |= 1u64 << p;
    }

    pub fn union(self, o: PointSet) -> PointSet {
        PointSet(self.0 | o.0)
    }

    pub fn intersection(self, o: PointSet) -> PointSet {
        PointSet(self.0 & o.0)
    }

    pub fn difference(self, o: PointSet) -> PointSet {
        PointSet(self.0 & !o.0)
    }

    pub fn complement(self, n: usize) -> PointSet {
        PointSet::full(n).difference(self)
    }

    pub fn is_subset(self, o: PointSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..MAX_POINTS).filter(move |&p| self.contains(p))
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for PointSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = PointSet::EMPTY;
        for p in iter {
            s.insert(p);
        }
        s
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
