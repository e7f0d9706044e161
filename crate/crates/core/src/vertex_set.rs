//! Fixed-width vertex subsets.

use std::fmt;

use serde::ser::{Serialize, SerializeSeq, Serializer};

/// Largest supported vertex universe.
pub const MAX_VERTICES: usize = 128;

/// A subset of the vertex universe `{0, …, 127}` stored as a 128-bit mask.
///
/// Ordering is numeric on the mask, which is the canonical facet order used
/// throughout the crate.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(u128);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u128) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u128 {
        self.0
    }

    /// `{0, …, n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u128::MAX)
        } else {
            VertexSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        assert!(v < MAX_VERTICES);
        VertexSet(1u128 << v)
    }

    /// Panics if any element is `>= 128`.
    pub fn from_iter_checked<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter()
            .fold(VertexSet::EMPTY, |acc, v| acc.with(v))
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | VertexSet::singleton(v).0)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !VertexSet::singleton(v).0)
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    /// Complement inside `{0, …, n-1}`.
    pub fn complement(self, n: usize) -> Self {
        VertexSet(!self.0 & VertexSet::full(n).0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_superset(self, other: Self) -> bool {
        other.is_subset(self)
    }

    /// Largest element, if any.
    pub fn max_vertex(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(127 - self.0.leading_zeros() as usize)
        }
    }

    pub fn min_vertex(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Elements in ascending order.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// Image under a vertex map.
    pub fn map(self, f: impl Fn(usize) -> usize) -> Self {
        self.iter().fold(VertexSet::EMPTY, |acc, v| acc.with(f(v)))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_iter_checked(iter)
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

pub struct Iter(u128);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Iter {}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Serialized as the ascending list of vertex indices.
impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for v in self.iter() {
            seq.serialize_element(&v)?;
        }
        seq.end()
    }
}

/// Default label of vertex `i`: `A`–`Z` for the first 26, then `x27`, `x28`, ….
pub fn default_vertex_name(i: usize) -> String {
    if i < 26 {
        char::from(b'A' + i as u8).to_string()
    } else {
        format!("x{}", i + 1)
    }
}

/// Set from a string of single-letter labels `A`–`Z` (`"ABC"` → `{0,1,2}`).
///
/// Panics on other characters; meant for literals in builders and tests.
pub fn letters(s: &str) -> VertexSet {
    s.chars()
        .map(|c| {
            assert!(c.is_ascii_uppercase(), "not a vertex letter: {c:?}");
            (c as u8 - b'A') as usize
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra() {
        let a = letters("ABC");
        let b = letters("BCD");
        assert_eq!(a.intersection(b), letters("BC"));
        assert_eq!(a.union(b), letters("ABCD"));
        assert_eq!(a.difference(b), letters("A"));
        assert_eq!(a.complement(5), letters("DE"));
        assert_eq!(a.len(), 3);
        assert!(letters("AB").is_subset(a));
        assert!(!b.is_subset(a));
    }

    #[test]
    fn extremes_and_iteration() {
        let s = VertexSet::from_iter_checked([3, 0, 127]);
        assert_eq!(s.min_vertex(), Some(0));
        assert_eq!(s.max_vertex(), Some(127));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 3, 127]);
        assert_eq!(VertexSet::full(128).len(), 128);
        assert_eq!(VertexSet::EMPTY.max_vertex(), None);
    }

    #[test]
    fn numeric_order_is_canonical() {
        // {A,B} = 0b011 < {C} = 0b100
        assert!(letters("AB") < letters("C"));
        assert!(letters("ABC") < letters("ABD"));
    }

    #[test]
    fn names() {
        assert_eq!(default_vertex_name(0), "A");
        assert_eq!(default_vertex_name(25), "Z");
        assert_eq!(default_vertex_name(26), "x27");
    }
}
