//! Ring-side checks against independently computed values on small
//! carriers.

use bowtie_core::ring::{FiniteRing, RingHom};
use bowtie_core::{AlgebraError, Budget, Ideal, MultSet, Witness};

fn budget() -> Budget {
    Budget::default()
}

#[test]
fn zmod_tables_match_modular_arithmetic() {
    let b = budget();
    let r = FiniteRing::zmod(12, &b).unwrap();
    assert_eq!(r.size(), 12);
    assert_eq!(r.zero(), 0);
    assert_eq!(r.one(), 1);
    assert_eq!(r.add(7, 9), 4);
    assert_eq!(r.mul(7, 9), 3);
    assert_eq!(r.neg(5), 7);
    assert_eq!(r.pow(5, 2), 1);
    assert_eq!(r.name(11), "11");
}

#[test]
fn zmod_rejects_degenerate_sizes() {
    let b = budget();
    assert!(FiniteRing::zmod(0, &b).is_err());
    assert!(FiniteRing::zmod(1, &b).is_err());
}

#[test]
fn product_ring_works_componentwise() {
    let b = budget();
    let r2 = FiniteRing::zmod(2, &b).unwrap();
    let r3 = FiniteRing::zmod(3, &b).unwrap();
    let p = FiniteRing::product(&r2, &r3, &b).unwrap();
    assert_eq!(p.size(), 6);
    // index (x, y) = 3x + y
    let a = 3 * 1 + 2; // (1, 2)
    let c = 3 * 1 + 1; // (1, 1)
    assert_eq!(p.add(a, c), 3 * 0 + 0);
    assert_eq!(p.mul(a, c), 3 * 1 + 2);
    assert_eq!(p.one(), 3 * 1 + 1);
}

#[test]
fn units_of_z12() {
    let b = budget();
    let r = FiniteRing::zmod(12, &b).unwrap();
    assert_eq!(r.units(), vec![1, 5, 7, 11]);
}

#[test]
fn ideals_of_z12_are_the_divisor_lattice() {
    let b = budget();
    let r = FiniteRing::zmod(12, &b).unwrap();
    let ideals = r.ideals(&b).unwrap();
    let mut got: Vec<Vec<u32>> = ideals.iter().map(|i| i.members()).collect();
    got.sort();
    let mut want = vec![
        vec![0],
        vec![0, 6],
        vec![0, 4, 8],
        vec![0, 3, 6, 9],
        vec![0, 2, 4, 6, 8, 10],
        (0..12).collect::<Vec<u32>>(),
    ];
    want.sort();
    assert_eq!(got, want);
}

#[test]
fn ideal_generated_by_4_in_z12() {
    let b = budget();
    let r = FiniteRing::zmod(12, &b).unwrap();
    let i = Ideal::generated(&r, &[4], &b).unwrap();
    assert_eq!(i.members(), vec![0, 4, 8]);
    assert!(i.is_proper());
    assert!(!i.is_zero());
}

#[test]
fn from_members_rejects_non_ideals() {
    let b = budget();
    let r = FiniteRing::zmod(12, &b).unwrap();
    // not closed under addition
    assert!(Ideal::from_members(&r, [0u32, 4]).is_err());
    // not closed under outside multiplication is impossible for
    // additive subgroups of a cyclic ring, so check a product ring
    let r2 = FiniteRing::zmod(2, &b).unwrap();
    let p = FiniteRing::product(&r2, &r2, &b).unwrap();
    // diagonal {(0,0),(1,1)} is an additive subgroup but not an ideal
    assert!(Ideal::from_members(&p, [0u32, 3]).is_err());
}

#[test]
fn prime_ideal_refutation_in_z12_has_least_witness() {
    let b = budget();
    let r = FiniteRing::zmod(12, &b).unwrap();
    let i = Ideal::from_members(&r, [0u32, 4, 8]).unwrap();
    let v = i.is_prime(&b).unwrap();
    assert!(!v.holds);
    assert_eq!(v.witness, Some(Witness::pair("a", 2, "b", 2)));
    let evens = Ideal::from_members(&r, [0u32, 2, 4, 6, 8, 10]).unwrap();
    assert!(evens.is_prime(&b).unwrap().holds);
}

#[test]
fn two_absorbing_refutation_in_z12_has_least_witness() {
    let b = budget();
    let r = FiniteRing::zmod(12, &b).unwrap();
    let zero = Ideal::from_members(&r, [0u32]).unwrap();
    let v = zero.is_two_absorbing(false, &b).unwrap();
    assert!(!v.holds);
    assert_eq!(v.witness, Some(Witness::triple("a", 2, "b", 2, "c", 3)));
    let four = Ideal::from_members(&r, [0u32, 4, 8]).unwrap();
    assert!(four.is_two_absorbing(false, &b).unwrap().holds);
}

#[test]
fn quotient_of_z12_by_evens_is_z2() {
    let b = budget();
    let r = FiniteRing::zmod(12, &b).unwrap();
    let evens = Ideal::from_members(&r, [0u32, 2, 4, 6, 8, 10]).unwrap();
    let q = FiniteRing::quotient(&r, &evens, &b).unwrap();
    assert_eq!(q.ring.size(), 2);
    assert!(q.projection.is_surjective());
    assert_eq!(q.projection.kernel().members(), evens.members());
}

#[test]
fn hom_validation_rejects_broken_maps() {
    let b = budget();
    let r6 = FiniteRing::zmod(6, &b).unwrap();
    let r4 = FiniteRing::zmod(4, &b).unwrap();
    // reduction mod 4 is not additive on Z6: it breaks at 3 + 3
    let err = RingHom::new(r6.clone(), r4.clone(), vec![0, 1, 2, 3, 0, 1]).unwrap_err();
    assert!(matches!(err, AlgebraError::NotAHom { .. }));

    let r2 = FiniteRing::zmod(2, &b).unwrap();
    let r6b = FiniteRing::zmod(6, &b).unwrap();
    // 1 must go to 1, not to 3
    let err = RingHom::new(r2, r6b, vec![0, 3]).unwrap_err();
    assert!(matches!(err, AlgebraError::NotAHom { .. }));
}

#[test]
fn hom_enumeration_finds_all_unital_maps() {
    let b = budget();
    let r6 = FiniteRing::zmod(6, &b).unwrap();
    let r2 = FiniteRing::zmod(2, &b).unwrap();
    let r3 = FiniteRing::zmod(3, &b).unwrap();
    // Z6 -> Z2 and Z6 -> Z3: exactly the reductions
    assert_eq!(RingHom::enumerate(&r6, &r2, &b).unwrap().len(), 1);
    assert_eq!(RingHom::enumerate(&r6, &r3, &b).unwrap().len(), 1);
    // Z2 -> Z3: no unital map (1 has additive order 2, but 1 in Z3 has order 3)
    assert_eq!(RingHom::enumerate(&r2, &r3, &b).unwrap().len(), 0);
    // Z6 -> Z6: identity only
    let endos = RingHom::enumerate(&r6, &r6, &b).unwrap();
    assert_eq!(endos.len(), 1);
    assert!(endos[0].is_identity_shape());
}

#[test]
fn mult_set_construction_and_closure() {
    let b = budget();
    let r = FiniteRing::zmod(12, &b).unwrap();
    // missing 1
    assert!(MultSet::from_members(&r, [2u32, 4, 8]).is_err());
    // not closed: 2 * 2 = 4 missing
    assert!(MultSet::from_members(&r, [1u32, 2]).is_err());
    let s = MultSet::generated_by(&r, 2).unwrap();
    assert_eq!(s.members(), vec![1, 2, 4, 8]);
    assert!(!s.contains_zero());
    let u = MultSet::units(&r);
    assert_eq!(u.members(), vec![1, 5, 7, 11]);
    assert!(u.all_units());
    // powers of a nilpotent pick up 0
    let s8 = MultSet::generated_by(&FiniteRing::zmod(8, &b).unwrap(), 2).unwrap();
    assert!(s8.contains_zero());
}

#[test]
fn ideal_product_and_intersection_in_z12() {
    let b = budget();
    let r = FiniteRing::zmod(12, &b).unwrap();
    let i4 = Ideal::from_members(&r, [0u32, 4, 8]).unwrap();
    let i6 = Ideal::from_members(&r, [0u32, 6]).unwrap();
    assert_eq!(i4.product(&i6, &b).unwrap().members(), vec![0]);
    assert_eq!(i4.intersection(&i6).unwrap().members(), vec![0]);
    let evens = Ideal::from_members(&r, [0u32, 2, 4, 6, 8, 10]).unwrap();
    assert_eq!(evens.product(&evens, &b).unwrap().members(), vec![0, 4, 8]);
    assert_eq!(i4.intersection(&evens).unwrap().members(), vec![0, 4, 8]);
}

#[test]
fn budget_stops_oversized_scans() {
    let tiny = Budget::new(10);
    let r = FiniteRing::zmod(12, &Budget::default()).unwrap();
    let zero = Ideal::from_members(&r, [0u32]).unwrap();
    let err = zero.is_two_absorbing(false, &tiny).unwrap_err();
    assert!(matches!(err, AlgebraError::BudgetExceeded { .. }));
}
