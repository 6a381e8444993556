//! Dense bit-indexed state sets.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::spectral::WeightVector;
use num_bigint::BigUint;

/// A subset of the state universe `[0, n)`, backed by a dense bitset.
///
/// Two sets compare equal only if they also share the same universe size.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateSet {
    bits: FixedBitSet,
}

impl StateSet {
    /// The empty subset of `[0, n)`.
    pub fn empty(n: usize) -> Self {
        StateSet {
            bits: FixedBitSet::with_capacity(n),
        }
    }

    /// The full set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        StateSet { bits }
    }

    /// The singleton `{q}` inside `[0, n)`.
    pub fn singleton(n: usize, q: usize) -> Self {
        let mut s = Self::empty(n);
        s.insert(q);
        s
    }

    /// Builds a set from member indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, indices: I) -> Self {
        let mut s = Self::empty(n);
        for q in indices {
            s.insert(q);
        }
        s
    }

    /// Universe size `n` (not the cardinality).
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, q: usize) {
        self.bits.insert(q);
    }

    pub fn contains(&self, q: usize) -> bool {
        self.bits.contains(q)
    }

    /// Cardinality of the set.
    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_singleton(&self) -> bool {
        self.len() == 1
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe()
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// Iterates members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    /// Smallest member, if any.
    pub fn min(&self) -> Option<usize> {
        self.bits.ones().next()
    }

    /// Total weight of the members under `w`.
    pub fn weight(&self, w: &WeightVector) -> BigUint {
        let mut sum = BigUint::from(0u32);
        for q in self.iter() {
            sum += w.entry(q);
        }
        sum
    }
}

impl fmt::Display for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, q) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{q}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_and_singleton() {
        let full = StateSet::full(4);
        assert_eq!(full.len(), 4);
        assert!(full.is_full());
        let s = StateSet::singleton(4, 2);
        assert!(s.is_singleton());
        assert!(s.is_subset(&full));
        assert_eq!(s.to_string(), "{2}");
    }

    #[test]
    fn weight_sums_entries() {
        let w = WeightVector::from_u64s(&[1, 1, 2, 2]).unwrap();
        let s = StateSet::from_indices(4, [0, 3]);
        assert_eq!(s.weight(&w), BigUint::from(3u32));
    }
}
