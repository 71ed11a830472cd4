use alloc::vec::Vec;
use bitvec::prelude::{bitvec, BitVec, Lsb0};
use core::cmp::Ordering;

/// Subset of a fixed finite carrier, stored as a bitset for O(1)
/// membership inside the exhaustive scans.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarrierSet {
    bits: BitVec<usize, Lsb0>,
}

impl CarrierSet {
    pub fn empty(carrier: usize) -> Self {
        CarrierSet { bits: bitvec![usize, Lsb0; 0; carrier] }
    }

    pub fn full(carrier: usize) -> Self {
        CarrierSet { bits: bitvec![usize, Lsb0; 1; carrier] }
    }

    pub fn from_members<I: IntoIterator<Item = u32>>(carrier: usize, members: I) -> Option<Self> {
        let mut set = CarrierSet::empty(carrier);
        for x in members {
            if x as usize >= carrier {
                return None;
            }
            set.insert(x);
        }
        Some(set)
    }

    /// Size of the ambient carrier, not the subset.
    pub fn carrier(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        self.bits[x as usize]
    }

    #[inline]
    pub fn insert(&mut self, x: u32) {
        self.bits.set(x as usize, true);
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.not_any()
    }

    pub fn members(&self) -> Vec<u32> {
        self.bits.iter_ones().map(|i| i as u32).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.bits.iter_ones().map(|i| i as u32)
    }

    pub fn is_subset(&self, other: &CarrierSet) -> bool {
        debug_assert_eq!(self.carrier(), other.carrier());
        self.bits.iter_ones().all(|i| other.bits[i])
    }

    pub fn intersect(&self, other: &CarrierSet) -> CarrierSet {
        debug_assert_eq!(self.carrier(), other.carrier());
        let mut bits = self.bits.clone();
        bits &= other.bits.as_bitslice();
        CarrierSet { bits }
    }

    pub fn union(&self, other: &CarrierSet) -> CarrierSet {
        debug_assert_eq!(self.carrier(), other.carrier());
        let mut bits = self.bits.clone();
        bits |= other.bits.as_bitslice();
        CarrierSet { bits }
    }

    pub fn disjoint_from(&self, other: &CarrierSet) -> bool {
        self.intersect(other).is_empty()
    }

    /// Order by cardinality first, then by the member list; gives every
    /// enumeration in the crate a single deterministic ordering.
    pub fn canonical_cmp(&self, other: &CarrierSet) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.members().cmp(&other.members()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_and_listing() {
        let s = CarrierSet::from_members(6, [0, 3]).unwrap();
        assert!(s.contains(3));
        assert!(!s.contains(2));
        assert_eq!(s.members(), alloc::vec![0, 3]);
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn out_of_range_member_is_rejected() {
        assert!(CarrierSet::from_members(4, [5]).is_none());
    }

    #[test]
    fn set_algebra() {
        let a = CarrierSet::from_members(8, [0, 2, 4, 6]).unwrap();
        let b = CarrierSet::from_members(8, [0, 4]).unwrap();
        assert!(b.is_subset(&a));
        assert!(!a.is_subset(&b));
        assert_eq!(a.intersect(&b).members(), alloc::vec![0, 4]);
        assert_eq!(a.union(&b).members(), alloc::vec![0, 2, 4, 6]);
        let c = CarrierSet::from_members(8, [1, 3]).unwrap();
        assert!(a.disjoint_from(&c));
    }

    #[test]
    fn canonical_order_is_size_then_members() {
        let small = CarrierSet::from_members(6, [5]).unwrap();
        let bigger = CarrierSet::from_members(6, [0, 1]).unwrap();
        let later = CarrierSet::from_members(6, [0, 2]).unwrap();
        assert_eq!(small.canonical_cmp(&bigger), Ordering::Less);
        assert_eq!(bigger.canonical_cmp(&later), Ordering::Less);
    }
}
