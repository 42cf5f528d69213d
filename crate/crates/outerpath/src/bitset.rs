//! Vertex subsets as packed bit vectors.
//!
//! Sets are tied to a host graph only through their capacity (the host's
//! vertex count). Ordering compares the bit patterns as one big unsigned
//! integer, so "lexicographically least set" means "numerically smallest
//! bitmask", matching the tie-breaking rules used by the search routines.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    capacity: u32,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(capacity: u32) -> Self {
        let nwords = (capacity as usize).div_ceil(64).max(1);
        VertexSet {
            capacity,
            words: vec![0; nwords],
        }
    }

    pub fn full(capacity: u32) -> Self {
        let mut s = Self::new(capacity);
        for v in 0..capacity {
            s.insert(v);
        }
        s
    }

    pub fn from_iter<I: IntoIterator<Item = u32>>(capacity: u32, iter: I) -> Self {
        let mut s = Self::new(capacity);
        for v in iter {
            s.insert(v);
        }
        s
    }

    /// Builds a set over a host with `capacity <= 64` from a raw mask.
    pub fn from_mask64(capacity: u32, mask: u64) -> Self {
        debug_assert!(capacity <= 64);
        VertexSet {
            capacity,
            words: vec![mask],
        }
    }

    /// The raw mask, when the capacity fits in a machine word.
    pub fn as_mask64(&self) -> Option<u64> {
        if self.capacity <= 64 {
            Some(self.words[0])
        } else {
            None
        }
    }

    pub fn capacity(&self) -> u32 {
        self.capacity
    }

    pub fn insert(&mut self, v: u32) {
        assert!(v < self.capacity, "vertex {v} beyond capacity {}", self.capacity);
        self.words[(v / 64) as usize] |= 1u64 << (v % 64);
    }

    pub fn remove(&mut self, v: u32) {
        assert!(v < self.capacity);
        self.words[(v / 64) as usize] &= !(1u64 << (v % 64));
    }

    pub fn contains(&self, v: u32) -> bool {
        v < self.capacity && self.words[(v / 64) as usize] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn min_element(&self) -> Option<u32> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i as u32 * 64 + w.trailing_zeros());
            }
        }
        None
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let base = i as u32 * 64;
            std::iter::successors(Some(w), |&w| Some(w & w.wrapping_sub(1)))
                .take_while(|&w| w != 0)
                .map(move |w| base + w.trailing_zeros())
        })
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.capacity, other.capacity);
        VertexSet {
            capacity: self.capacity,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.capacity, other.capacity);
        VertexSet {
            capacity: self.capacity,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.capacity, other.capacity);
        VertexSet {
            capacity: self.capacity,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & !b)
                .collect(),
        }
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        assert_eq!(self.capacity, other.capacity);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        assert_eq!(self.capacity, other.capacity);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn to_sorted_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for VertexSet {
    /// Numeric order of the bit pattern (most significant word first).
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        debug_assert_eq!(self.capacity, other.capacity);
        for (a, b) in self.words.iter().rev().zip(other.words.iter().rev()) {
            match a.cmp(b) {
                std::cmp::Ordering::Equal => continue,
                ord => return ord,
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_iter_roundtrip() {
        let s = VertexSet::from_iter(130, [0, 63, 64, 129]);
        assert_eq!(s.to_sorted_vec(), vec![0, 63, 64, 129]);
        assert_eq!(s.len(), 4);
        assert!(s.contains(64));
        assert!(!s.contains(65));
        assert_eq!(s.min_element(), Some(0));
    }

    #[test]
    fn set_algebra() {
        let a = VertexSet::from_iter(10, [1, 2, 3]);
        let b = VertexSet::from_iter(10, [3, 4]);
        assert_eq!(a.union(&b).to_sorted_vec(), vec![1, 2, 3, 4]);
        assert_eq!(a.intersection(&b).to_sorted_vec(), vec![3]);
        assert_eq!(a.difference(&b).to_sorted_vec(), vec![1, 2]);
        assert!(!a.is_disjoint(&b));
        assert!(a.intersection(&b).is_subset_of(&a));
    }

    #[test]
    fn numeric_ordering() {
        let a = VertexSet::from_iter(100, [0, 1]);
        let b = VertexSet::from_iter(100, [70]);
        assert!(a < b);
        let c = VertexSet::from_iter(100, [0, 70]);
        assert!(b < c);
    }
}
