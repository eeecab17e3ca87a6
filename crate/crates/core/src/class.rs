//! Subsets of a finite carrier, stored as bitsets over position indices.

use std::fmt;

use fixedbitset::FixedBitSet;

/// A subclass of a carrier with `universe` positions.
///
/// Every operation between two classes assumes they share a universe; mixing
/// universes is a logic error and panics in debug builds.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Class {
    bits: FixedBitSet,
}

impl Class {
    pub fn empty(universe: usize) -> Self {
        Class {
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        Class { bits }
    }

    pub fn singleton(universe: usize, x: usize) -> Self {
        let mut c = Class::empty(universe);
        c.insert(x);
        c
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, members: I) -> Self {
        let mut c = Class::empty(universe);
        for x in members {
            c.insert(x);
        }
        c
    }

    /// The subset whose members are the set bits of `mask` (universe ≤ 64).
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        debug_assert!(universe <= 64);
        Class::from_indices(universe, (0..universe).filter(|i| mask >> i & 1 == 1))
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.bits.contains(x)
    }

    pub fn insert(&mut self, x: usize) {
        self.bits.insert(x);
    }

    pub fn remove(&mut self, x: usize) {
        self.bits.set(x, false);
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn first(&self) -> Option<usize> {
        self.bits.minimum()
    }

    pub fn union(&self, other: &Class) -> Class {
        debug_assert_eq!(self.universe(), other.universe());
        let mut out = self.clone();
        out.bits.union_with(&other.bits);
        out
    }

    pub fn union_with(&mut self, other: &Class) {
        debug_assert_eq!(self.universe(), other.universe());
        self.bits.union_with(&other.bits);
    }

    pub fn intersection(&self, other: &Class) -> Class {
        debug_assert_eq!(self.universe(), other.universe());
        let mut out = self.clone();
        out.bits.intersect_with(&other.bits);
        out
    }

    pub fn difference(&self, other: &Class) -> Class {
        debug_assert_eq!(self.universe(), other.universe());
        let mut out = self.clone();
        out.bits.difference_with(&other.bits);
        out
    }

    pub fn complement(&self) -> Class {
        let mut out = self.clone();
        out.bits.toggle_range(..);
        out
    }

    pub fn is_subset(&self, other: &Class) -> bool {
        debug_assert_eq!(self.universe(), other.universe());
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &Class) -> bool {
        debug_assert_eq!(self.universe(), other.universe());
        self.bits.is_disjoint(&other.bits)
    }

    pub fn meets(&self, other: &Class) -> bool {
        !self.is_disjoint(other)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Every subset of a universe of at most 63 positions, in mask order.
pub fn all_subsets(universe: usize) -> impl Iterator<Item = Class> {
    assert!(universe < 64, "subset enumeration needs a universe below 64");
    (0..1u64 << universe).map(move |mask| Class::from_mask(universe, mask))
}
