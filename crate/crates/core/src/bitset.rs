//! Word-sized element sets.

use std::fmt;

/// Largest universe any instance may have.
pub const MAX_ELEMENTS: usize = 64;

/// Index of a selectable element within an instance's universe.
pub type ElementId = usize;

/// A subset of `{0, .., 63}` stored as a single machine word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ELEMENTS, "universe of {n} elements exceeds {MAX_ELEMENTS}");
        if n == MAX_ELEMENTS {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(e: ElementId) -> Self {
        assert!(e < MAX_ELEMENTS);
        ElementSet(1u64 << e)
    }

    pub fn contains(self, e: ElementId) -> bool {
        e < MAX_ELEMENTS && self.0 >> e & 1 == 1
    }

    pub fn insert(&mut self, e: ElementId) {
        self.0 |= Self::singleton(e).0;
    }

    pub fn remove(&mut self, e: ElementId) {
        if e < MAX_ELEMENTS {
            self.0 &= !(1u64 << e);
        }
    }

    pub fn with(mut self, e: ElementId) -> Self {
        self.insert(e);
        self
    }

    pub fn without(mut self, e: ElementId) -> Self {
        self.remove(e);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<ElementId> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest member, if any.
    pub fn last(self) -> Option<ElementId> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    /// Members in increasing order.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// Maps every member through `map` (used to lift sub-instance ids).
    pub fn map(self, map: &[ElementId]) -> Self {
        self.iter().map(|e| map[e]).collect()
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = ElementId;

    fn next(&mut self) -> Option<ElementId> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

impl IntoIterator for ElementSet {
    type Item = ElementId;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<ElementId> for ElementSet {
    fn from_iter<I: IntoIterator<Item = ElementId>>(iter: I) -> Self {
        let mut s = ElementSet::EMPTY;
        for e in iter {
            s.insert(e);
        }
        s
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_and_iter() {
        assert_eq!(ElementSet::full(0), ElementSet::EMPTY);
        assert_eq!(ElementSet::full(64).len(), 64);
        let s: ElementSet = [5, 1, 3].into_iter().collect();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 3, 5]);
        assert_eq!(s.first(), Some(1));
        assert_eq!(s.last(), Some(5));
        assert_eq!(format!("{s:?}"), "{1, 3, 5}");
    }

    #[test]
    fn map_lifts_members() {
        let s: ElementSet = [0, 2].into_iter().collect();
        assert_eq!(s.map(&[4, 7, 9]), [4, 9].into_iter().collect());
    }
}
