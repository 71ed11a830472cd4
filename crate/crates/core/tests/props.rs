//! Structural invariants checked over randomized small carriers.

use proptest::prelude::*;

use bowtie_core::amalg::Amalgamation;
use bowtie_core::localize::{localize_module, localize_ring};
use bowtie_core::verify::{realize, Family, InstanceSpec};
use bowtie_core::{Budget, FiniteModule, FiniteRing, Ideal, MultSet, Submodule};

fn budget() -> Budget {
    Budget::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generated_ideals_are_closed(n in 2u32..=12, g1 in 0u32..12, g2 in 0u32..12) {
        let b = budget();
        let r = FiniteRing::zmod(n, &b).unwrap();
        let i = Ideal::generated(&r, &[g1 % n, g2 % n], &b).unwrap();
        // regenerating from the members changes nothing
        let again = Ideal::generated(&r, &i.members(), &b).unwrap();
        prop_assert_eq!(i.members(), again.members());
        // and the member list validates as an ideal on its own
        prop_assert!(Ideal::from_members(&r, i.members()).is_ok());
    }

    #[test]
    fn prime_ideals_are_two_absorbing(n in 2u32..=12) {
        let b = budget();
        let r = FiniteRing::zmod(n, &b).unwrap();
        for i in r.ideals(&b).unwrap() {
            if !i.is_proper() {
                continue;
            }
            if i.is_prime(&b).unwrap().holds {
                prop_assert!(i.is_two_absorbing(false, &b).unwrap().holds);
            }
        }
    }

    #[test]
    fn residuals_validate_as_ideals(n in 2u32..=12, d in 1u32..=12) {
        let b = budget();
        let r = FiniteRing::zmod(n, &b).unwrap();
        let m = FiniteModule::regular(&r, &b).unwrap();
        let gen = d % n;
        let f = Submodule::generated(&m, &[gen], &b).unwrap();
        let resid = f.residual_module();
        prop_assert!(Ideal::from_members(&r, resid.members()).is_ok());
        for k in m.submodules(&b).unwrap() {
            let rk = f.residual_subset(&k.members()).unwrap();
            prop_assert!(Ideal::from_members(&r, rk.members()).is_ok());
        }
    }

    #[test]
    fn quotient_kernels_recover_the_submodule(n in 2u32..=12) {
        let b = budget();
        let r = FiniteRing::zmod(n, &b).unwrap();
        let m = FiniteModule::regular(&r, &b).unwrap();
        for f in m.submodules(&b).unwrap() {
            let q = FiniteModule::quotient(&m, &f, &b).unwrap();
            prop_assert!(q.projection.is_surjective());
            prop_assert_eq!(q.projection.kernel().members(), f.members());
            prop_assert_eq!(q.module.size() * f.len(), m.size());
        }
    }

    #[test]
    fn localization_kernel_is_the_saturation(n in 2u32..=12, x in 0u32..12) {
        let b = budget();
        let r = FiniteRing::zmod(n, &b).unwrap();
        let s = MultSet::generated_by(&r, x % n).unwrap();
        let lr = localize_ring(&r, &s, &b).unwrap();
        prop_assert!(lr.to_fractions.is_surjective());
        let kernel = lr.to_fractions.kernel();
        for a in r.elements() {
            let should_die = s.members().iter().any(|&w| r.mul(w, a) == r.zero());
            prop_assert_eq!(kernel.contains(a), should_die);
        }
        let m = FiniteModule::regular(&r, &b).unwrap();
        let lm = localize_module(&m, &s, &lr, &b).unwrap();
        prop_assert_eq!(lm.module.size(), lr.ring.size());
    }

    #[test]
    fn identity_gluing_sizes_multiply(n in 2u32..=10, d in 1u32..=10) {
        let b = budget();
        let d = {
            let mut d = d;
            while n % d != 0 {
                d -= 1;
            }
            d
        };
        let r = FiniteRing::zmod(n, &b).unwrap();
        let j = Ideal::generated(&r, &[d % n], &b).unwrap();
        let m = FiniteModule::regular(&r, &b).unwrap();
        let a = Amalgamation::duplication(&j, &m, &b).unwrap();
        prop_assert_eq!(a.ring().size(), r.size() * j.len());
        prop_assert_eq!(a.module().size(), m.size() * a.jn().len());
        for f in m.submodules(&b).unwrap() {
            let lift = a.sub_amalg(&f).unwrap();
            prop_assert_eq!(lift.len(), f.len() * a.jn().len());
        }
    }

    #[test]
    fn random_specs_round_trip_and_realize(seed in 0u64..1000) {
        let b = budget();
        let specs = Family::Random { count: 1, seed, max_size: 6 }.instances(&b).unwrap();
        let text = serde_json::to_string(&specs[0]).unwrap();
        let back: InstanceSpec = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&specs[0], &back);
        let inst = realize(&back, &b).unwrap();
        prop_assert_eq!(
            inst.amalg.module().size(),
            inst.m.size() * inst.amalg.jn().len()
        );
    }

    #[test]
    fn submodule_two_absorbing_matches_residual_on_cyclic(n in 2u32..=12) {
        let b = budget();
        let r = FiniteRing::zmod(n, &b).unwrap();
        let m = FiniteModule::regular(&r, &b).unwrap();
        for f in m.submodules(&b).unwrap() {
            if !f.is_proper() {
                continue;
            }
            let sub_side = f.is_two_absorbing(&b).unwrap().holds;
            let ideal_side = f.residual_module().is_two_absorbing(false, &b).unwrap().holds;
            prop_assert_eq!(sub_side, ideal_side);
        }
    }
}
