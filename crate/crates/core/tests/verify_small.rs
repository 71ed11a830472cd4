//! End-to-end checks of the verification layer on small instances.

use bowtie_core::verify::{
    example_suite, hierarchy_violations, realize, sweep, verify_statement, Family, InstanceSpec,
    StatementId,
};
use bowtie_core::{Budget, FiniteModule, FiniteRing};

fn budget() -> Budget {
    Budget::default()
}

#[test]
fn all_statements_hold_on_z6_with_j3() {
    let b = budget();
    let spec = InstanceSpec::identity_zmod(6, vec![0, 3]);
    let inst = realize(&spec, &b).unwrap();
    for id in StatementId::ALL {
        let report = verify_statement(id, &inst, &b).unwrap();
        assert!(
            report.holds(),
            "{} refuted: {}",
            id,
            report.counterexamples[0].detail,
        );
    }
}

#[test]
fn all_statements_hold_on_z8_with_j2() {
    let b = budget();
    let spec = InstanceSpec::identity_zmod(8, vec![0, 2, 4, 6]);
    let inst = realize(&spec, &b).unwrap();
    for id in StatementId::ALL {
        let report = verify_statement(id, &inst, &b).unwrap();
        assert!(
            report.holds(),
            "{} refuted: {}",
            id,
            report.counterexamples[0].detail,
        );
    }
}

#[test]
fn sweep_aggregates_over_a_small_family() {
    let b = budget();
    let specs = Family::AmalgZmod { max_n: 6 }.instances(&b).unwrap();
    // one instance per divisor of each n in 2..=6: 2+2+3+2+4
    assert_eq!(specs.len(), 13);
    let ids = [StatementId::T3_4a, StatementId::T3_4b, StatementId::L3_3];
    let report = sweep(&ids, &specs, &b).unwrap();
    assert_eq!(report.instances, 13);
    assert!(report.all_hold());
    assert_eq!(report.total_counterexamples(), 0);
    for st in &report.statements {
        assert!(st.hypotheses_met > 0, "{} never fired", st.id);
        assert_eq!(st.hypotheses_met, st.confirmed);
    }
}

#[test]
fn example_suite_matches_frozen_outcomes() {
    let b = budget();
    for item in example_suite() {
        let run = item.run(&b).unwrap();
        assert!(
            run.matches_expected,
            "{}: got {:?}",
            item.name,
            run.verdict.witness,
        );
    }
}

#[test]
fn predicate_hierarchy_is_consistent_on_small_modules() {
    let b = budget();
    for n in [6u32, 12, 30] {
        let r = FiniteRing::zmod(n, &b).unwrap();
        let m = FiniteModule::regular(&r, &b).unwrap();
        let violations = hierarchy_violations(&m, &b).unwrap();
        assert!(violations.is_empty(), "{:?}", violations);
    }
}

#[test]
fn instance_specs_round_trip_through_json() {
    let b = budget();
    let specs = Family::Products.instances(&b).unwrap();
    for spec in specs {
        let text = serde_json::to_string(&spec).unwrap();
        let back: InstanceSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(spec, back);
        realize(&back, &b).unwrap();
    }
}

#[test]
fn random_family_is_deterministic_and_realizable() {
    let b = budget();
    let fam = Family::Random { count: 4, seed: 11, max_size: 8 };
    let once = fam.instances(&b).unwrap();
    let twice = fam.instances(&b).unwrap();
    assert_eq!(once, twice);
    assert_eq!(once.len(), 4);
    for spec in &once {
        let inst = realize(spec, &b).unwrap();
        let report = verify_statement(StatementId::T3_4a, &inst, &b).unwrap();
        assert!(report.holds());
    }
}

#[test]
fn pinned_product_submodule_fires_exactly_once() {
    let b = budget();
    use bowtie_core::verify::{HomSpec, ModuleSpec, RingSpec};
    let r = RingSpec::for_shape(&[2, 4]).unwrap();
    let mut spec = InstanceSpec::basic(
        r.clone(),
        r,
        HomSpec::Identity,
        vec![0],
        ModuleSpec::Regular,
        ModuleSpec::Regular,
        HomSpec::Identity,
    );
    spec.product_shape = Some(vec![2, 4]);
    // F = Z2 x {0, 2}: full first factor beside a 2-absorbing second
    // factor, so the repaired hypothesis fires on exactly this tuple
    spec.f_sub = Some(vec![0, 2, 4, 6]);
    let inst = realize(&spec, &b).unwrap();
    let report = verify_statement(StatementId::C3_10_3, &inst, &b).unwrap();
    assert!(report.holds());
    assert_eq!(report.hypotheses_met, 1);
    assert_eq!(report.confirmed, 1);
}
