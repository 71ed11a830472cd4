//! Module-side checks against independently computed values.

use bowtie_core::module::{intersect_chain, union_chain};
use bowtie_core::ring::RingHom;
use bowtie_core::{AlgebraError, Budget, FiniteModule, FiniteRing, Ideal, Submodule, Witness};

fn budget() -> Budget {
    Budget::default()
}

#[test]
fn regular_module_mirrors_its_ring() {
    let b = budget();
    let r = FiniteRing::zmod(12, &b).unwrap();
    let m = FiniteModule::regular(&r, &b).unwrap();
    assert_eq!(m.size(), 12);
    assert!(m.is_regular());
    assert_eq!(m.act(5, 7), 11);
    assert_eq!(m.add(7, 9), 4);
    assert!(m.is_cyclic());
    assert_eq!(m.cyclic_generator(), Some(1));
    assert!(m.annihilator().is_zero());
}

#[test]
fn submodule_lattices_of_small_cyclic_modules() {
    let b = budget();
    let r12 = FiniteRing::zmod(12, &b).unwrap();
    let m12 = FiniteModule::regular(&r12, &b).unwrap();
    assert_eq!(m12.submodules(&b).unwrap().len(), 6);
    let r6 = FiniteRing::zmod(6, &b).unwrap();
    let m6 = FiniteModule::regular(&r6, &b).unwrap();
    assert_eq!(m6.submodules(&b).unwrap().len(), 4);
}

#[test]
fn product_module_and_its_submodules() {
    let b = budget();
    let r2 = FiniteRing::zmod(2, &b).unwrap();
    let m2 = FiniteModule::regular(&r2, &b).unwrap();
    // over the product ring the submodules are exactly the products
    // I x J, so the diagonal is not one of them
    let p = FiniteModule::product(&m2, &m2, &b).unwrap();
    assert_eq!(p.size(), 4);
    let mut members: Vec<Vec<u32>> = p.submodules(&b).unwrap().iter().map(|s| s.members()).collect();
    members.sort();
    let mut want = vec![vec![0], vec![0, 1], vec![0, 2], vec![0, 1, 2, 3]];
    want.sort();
    assert_eq!(members, want);

    // the same carrier over Z2 through the diagonal map picks up the
    // diagonal line as well
    let d = diagonal_z2_module(&b);
    let mut dm: Vec<Vec<u32>> = d.submodules(&b).unwrap().iter().map(|s| s.members()).collect();
    dm.sort();
    let mut dwant = vec![vec![0], vec![0, 1], vec![0, 2], vec![0, 3], vec![0, 1, 2, 3]];
    dwant.sort();
    assert_eq!(dm, dwant);
}

/// Z2 x Z2 as a module over Z2, acting through the diagonal embedding.
fn diagonal_z2_module(b: &Budget) -> std::sync::Arc<FiniteModule> {
    let r2 = FiniteRing::zmod(2, b).unwrap();
    let m2 = FiniteModule::regular(&r2, b).unwrap();
    let p = FiniteModule::product(&m2, &m2, b).unwrap();
    let diag = RingHom::new(r2, p.ring().clone(), vec![0, 3]).unwrap();
    FiniteModule::restrict(&p, &diag, b).unwrap()
}

#[test]
fn colon_and_residual_values_in_z12() {
    let b = budget();
    let r = FiniteRing::zmod(12, &b).unwrap();
    let m = FiniteModule::regular(&r, &b).unwrap();
    let zero = Submodule::from_members(&m, [0u32]).unwrap();
    assert_eq!(zero.colon_element(4).unwrap().members(), vec![0, 3, 6, 9]);
    assert_eq!(zero.residual_module().members(), vec![0]);
    let f = Submodule::from_members(&m, [0u32, 4, 8]).unwrap();
    assert_eq!(f.residual_module().members(), vec![0, 4, 8]);
    assert_eq!(f.residual_subset(&[6]).unwrap().members(), vec![0, 2, 4, 6, 8, 10]);
    assert_eq!(f.colon_ideal(&Ideal::from_members(&r, [0u32, 6]).unwrap()).unwrap().members(), vec![0, 2, 4, 6, 8, 10]);
}

#[test]
fn primary_and_radical_values_in_z12() {
    let b = budget();
    let r = FiniteRing::zmod(12, &b).unwrap();
    let m = FiniteModule::regular(&r, &b).unwrap();
    let f = Submodule::from_members(&m, [0u32, 4, 8]).unwrap();
    let (v, p) = f.is_primary(&b).unwrap();
    assert!(v.holds);
    assert_eq!(p.members(), vec![0, 2, 4, 6, 8, 10]);
    let zero = Submodule::from_members(&m, [0u32]).unwrap();
    let (vz, pz) = zero.is_primary(&b).unwrap();
    // 2 * 6 = 0 with 6 not in 0 and 2 not in rad(0) = {0, 6}
    assert!(!vz.holds);
    assert_eq!(pz.members(), vec![0, 6]);
    assert_eq!(zero.radical(&b).unwrap().members(), vec![0, 6]);
    assert_eq!(f.radical(&b).unwrap().members(), vec![0, 2, 4, 6, 8, 10]);
}

#[test]
fn prime_and_two_absorbing_submodules_of_z12() {
    let b = budget();
    let r = FiniteRing::zmod(12, &b).unwrap();
    let m = FiniteModule::regular(&r, &b).unwrap();
    let evens = Submodule::from_members(&m, [0u32, 2, 4, 6, 8, 10]).unwrap();
    assert!(evens.is_prime(&b).unwrap().holds);
    assert!(evens.is_two_absorbing(&b).unwrap().holds);
    let threes = Submodule::from_members(&m, [0u32, 3, 6, 9]).unwrap();
    assert!(threes.is_prime(&b).unwrap().holds);
    let f4 = Submodule::from_members(&m, [0u32, 4, 8]).unwrap();
    assert!(!f4.is_prime(&b).unwrap().holds);
    assert!(f4.is_two_absorbing(&b).unwrap().holds);
    let zero = Submodule::from_members(&m, [0u32]).unwrap();
    let v = zero.is_two_absorbing(&b).unwrap();
    assert!(!v.holds);
    assert_eq!(v.witness, Some(Witness::triple("a", 2, "b", 2, "m", 3)));
}

#[test]
fn z30_zero_submodule_least_violation() {
    let b = budget();
    let r = FiniteRing::zmod(30, &b).unwrap();
    let m = FiniteModule::regular(&r, &b).unwrap();
    let zero = Submodule::from_members(&m, [0u32]).unwrap();
    let v = zero.is_two_absorbing(&b).unwrap();
    assert!(!v.holds);
    assert_eq!(v.witness, Some(Witness::triple("a", 2, "b", 3, "m", 5)));
}

#[test]
fn restricted_product_module_over_z12() {
    let b = budget();
    let r12 = FiniteRing::zmod(12, &b).unwrap();
    let r4 = FiniteRing::zmod(4, &b).unwrap();
    let r6 = FiniteRing::zmod(6, &b).unwrap();
    let prod = FiniteRing::product(&r4, &r6, &b).unwrap();
    let reduce: Vec<u32> = (0..12).map(|x| (x % 4) * 6 + (x % 6)).collect();
    let f = RingHom::new(r12.clone(), prod.clone(), reduce).unwrap();
    let n = FiniteModule::regular(&prod, &b).unwrap();
    let m = FiniteModule::restrict(&n, &f, &b).unwrap();
    assert_eq!(m.size(), 24);
    assert!(!m.is_cyclic());
    // (1, 1) = index 7 generates the largest cyclic piece, of order 12
    assert_eq!(m.annihilator().members(), vec![0]);

    let zero = Submodule::from_members(&m, [0u32]).unwrap();
    let v = zero.is_two_absorbing(&b).unwrap();
    assert!(!v.holds);
    // least violation: a = 2, b = 2, m = (1, 0)
    assert_eq!(v.witness, Some(Witness::triple("a", 2, "b", 2, "m", 6)));

    // the motivating violation at a = 2, b = 3, m = (0, 1) is also
    // genuine, just not the least one
    let (a, bb, mm) = (2u32, 3u32, 1u32);
    let ab = r12.mul(a, bb);
    assert!(zero.contains(m.act(ab, mm)));
    assert!(!zero.residual_module().contains(ab));
    assert!(!zero.contains(m.act(a, mm)));
    assert!(!zero.contains(m.act(bb, mm)));
}

#[test]
fn quotient_module_projection_and_kernel() {
    let b = budget();
    let r = FiniteRing::zmod(12, &b).unwrap();
    let m = FiniteModule::regular(&r, &b).unwrap();
    let f = Submodule::from_members(&m, [0u32, 4, 8]).unwrap();
    let q = FiniteModule::quotient(&m, &f, &b).unwrap();
    assert_eq!(q.module.size(), 4);
    assert!(q.projection.is_surjective());
    assert_eq!(q.projection.kernel().members(), vec![0, 4, 8]);

    let r6 = FiniteRing::zmod(6, &b).unwrap();
    let m6 = FiniteModule::regular(&r6, &b).unwrap();
    let f6 = Submodule::from_members(&m6, [0u32, 3]).unwrap();
    assert_eq!(FiniteModule::quotient(&m6, &f6, &b).unwrap().module.size(), 3);
}

#[test]
fn zero_divisors_on_quotient_of_z6() {
    let b = budget();
    let r = FiniteRing::zmod(6, &b).unwrap();
    let m = FiniteModule::regular(&r, &b).unwrap();
    let f = Submodule::from_members(&m, [0u32, 3]).unwrap();
    assert_eq!(m.zero_divisors_on_quotient(&f).unwrap(), vec![0, 3]);
    let zero = Submodule::from_members(&m, [0u32]).unwrap();
    assert_eq!(m.zero_divisors_on_quotient(&zero).unwrap(), vec![0, 2, 3, 4]);
    let full = Submodule::full(&m);
    assert!(matches!(
        m.zero_divisors_on_quotient(&full),
        Err(AlgebraError::NotProper)
    ));
}

#[test]
fn multiplication_module_checks() {
    let b = budget();
    let r = FiniteRing::zmod(12, &b).unwrap();
    let m = FiniteModule::regular(&r, &b).unwrap();
    assert!(m.is_multiplication(&b).unwrap().holds);
    // over the product ring every submodule is I x J = (I x J) M
    let r2 = FiniteRing::zmod(2, &b).unwrap();
    let m2 = FiniteModule::regular(&r2, &b).unwrap();
    let p = FiniteModule::product(&m2, &m2, &b).unwrap();
    assert!(p.is_multiplication(&b).unwrap().holds);
    // but Z2 x Z2 over Z2 is not a multiplication module: no ideal of
    // Z2 carves out a line
    let d = diagonal_z2_module(&b);
    assert!(!d.is_multiplication(&b).unwrap().holds);
}

#[test]
fn ideal_times_module() {
    let b = budget();
    let r = FiniteRing::zmod(12, &b).unwrap();
    let m = FiniteModule::regular(&r, &b).unwrap();
    let i = Ideal::from_members(&r, [0u32, 4, 8]).unwrap();
    let im = Submodule::ideal_times(&i, &m, &b).unwrap();
    assert_eq!(im.members(), vec![0, 4, 8]);
}

#[test]
fn chain_operations() {
    let b = budget();
    let r = FiniteRing::zmod(12, &b).unwrap();
    let m = FiniteModule::regular(&r, &b).unwrap();
    let zero = Submodule::from_members(&m, [0u32]).unwrap();
    let six = Submodule::from_members(&m, [0u32, 6]).unwrap();
    let threes = Submodule::from_members(&m, [0u32, 3, 6, 9]).unwrap();
    let chain = vec![zero.clone(), six.clone(), threes.clone()];
    assert_eq!(intersect_chain(&chain).unwrap().members(), vec![0]);
    assert_eq!(union_chain(&chain).unwrap().members(), vec![0, 3, 6, 9]);
    // not a chain: {0, 6} and {0, 4, 8} are incomparable
    let four = Submodule::from_members(&m, [0u32, 4, 8]).unwrap();
    let bad = vec![six, four];
    assert!(intersect_chain(&bad).is_err());
    assert!(union_chain(&bad).is_err());
    assert!(intersect_chain(&[]).is_err());
}

#[test]
fn module_hom_enumeration_and_kernels() {
    let b = budget();
    let r6 = FiniteRing::zmod(6, &b).unwrap();
    let m6 = FiniteModule::regular(&r6, &b).unwrap();
    let id = RingHom::enumerate(&r6, &r6, &b).unwrap().remove(0);
    // module endomorphisms of Z6 over Z6: multiplication by each element
    let endos = bowtie_core::ModuleHom::enumerate(&id, &m6, &m6, &b).unwrap();
    assert_eq!(endos.len(), 6);
    let triple = endos
        .iter()
        .find(|h| h.apply(1) == 3)
        .expect("multiplication by 3 is a module endomorphism");
    assert_eq!(triple.kernel().members(), vec![0, 2, 4]);
    assert_eq!(triple.image_size(), 2);
    assert!(!triple.is_surjective());
}
