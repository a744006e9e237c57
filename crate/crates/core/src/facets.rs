//! Fixed-width bitsets of facet indices.

use alloc::vec::Vec;
use core::fmt;

/// Largest number of facets a polytope may carry.
pub const MAX_FACETS: usize = 128;

/// A set of facet indices, stored as a 128-bit mask.
///
/// Ordering is lexicographic on the sorted index lists, so the least vertex
/// of a polytope is the one whose sorted facet list compares smallest.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FacetSet(u128);

impl FacetSet {
    pub const EMPTY: FacetSet = FacetSet(0);

    pub fn from_bits(bits: u128) -> Self {
        FacetSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < MAX_FACETS);
        FacetSet(1u128 << i)
    }

    /// Builds a set from indices; panics if an index is `>= MAX_FACETS`.
    pub fn from_indices<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = FacetSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < MAX_FACETS, "facet index {i} exceeds capacity");
        self.0 |= 1u128 << i;
    }

    pub fn remove(&mut self, i: usize) {
        if i < MAX_FACETS {
            self.0 &= !(1u128 << i);
        }
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_FACETS && self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: FacetSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: FacetSet) -> FacetSet {
        FacetSet(self.0 | other.0)
    }

    pub fn intersection(self, other: FacetSet) -> FacetSet {
        FacetSet(self.0 & other.0)
    }

    pub fn difference(self, other: FacetSet) -> FacetSet {
        FacetSet(self.0 & !other.0)
    }

    pub fn iter(self) -> FacetIter {
        FacetIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Applies an index map to every member.
    pub fn map(self, f: impl Fn(usize) -> usize) -> FacetSet {
        FacetSet::from_indices(self.iter().map(f))
    }
}

impl Ord for FacetSet {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for FacetSet {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for FacetSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for FacetSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        FacetSet::from_indices(iter)
    }
}

impl IntoIterator for FacetSet {
    type Item = usize;
    type IntoIter = FacetIter;

    fn into_iter(self) -> FacetIter {
        self.iter()
    }
}

/// Ascending iterator over the members of a [`FacetSet`].
#[derive(Clone)]
pub struct FacetIter(u128);

impl Iterator for FacetIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for FacetIter {}

/// Calls `f` on every subset of `set`, the empty set included.
pub(crate) fn for_each_subset(set: FacetSet, mut f: impl FnMut(FacetSet)) {
    let bits = set.bits();
    let mut sub = bits;
    loop {
        f(FacetSet::from_bits(sub));
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & bits;
    }
}
