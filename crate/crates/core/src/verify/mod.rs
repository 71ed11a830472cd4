//! Statement catalog and sweep engine: every implemented claim is an
//! executable check over a concrete instance, and sweeps aggregate
//! verdicts over declarative instance families.

mod instance;
mod statements;
mod suite;

pub use instance::{realize, Family, HomSpec, Instance, InstanceSpec, ModuleSpec, RingSpec};
pub use statements::{verify_statement, Counterexample, StatementId, StatementReport};
pub use suite::{example_suite, hierarchy_violations, ExampleItem, ExampleOutcome, ExampleRun};

use alloc::vec::Vec;

use crate::budget::Budget;
use crate::error::Result;

/// Aggregated result of running statements over a family of instances.
#[derive(Debug, Clone)]
pub struct SweepReport {
    pub statements: Vec<StatementReport>,
    pub instances: u64,
}

impl SweepReport {
    pub fn total_counterexamples(&self) -> usize {
        self.statements.iter().map(|s| s.counterexamples.len()).sum()
    }

    pub fn all_hold(&self) -> bool {
        self.total_counterexamples() == 0
    }
}

/// Run the given statements over one realized instance.
pub fn verify_all_for_instance(
    ids: &[StatementId],
    inst: &Instance,
    budget: &Budget,
) -> Result<Vec<StatementReport>> {
    let mut out = Vec::with_capacity(ids.len());
    for &id in ids {
        out.push(verify_statement(id, inst, budget)?);
    }
    Ok(out)
}

/// Merge per-instance reports in instance order, so parallel drivers
/// produce the same aggregate as a sequential run.
pub fn merge_reports(per_instance: Vec<Vec<StatementReport>>) -> SweepReport {
    let instances = per_instance.len() as u64;
    let mut merged: Vec<StatementReport> = Vec::new();
    for batch in per_instance {
        for report in batch {
            match merged.iter_mut().find(|r| r.id == report.id) {
                Some(acc) => acc.absorb(report),
                None => merged.push(report),
            }
        }
    }
    SweepReport { statements: merged, instances }
}

/// Sequential sweep: realize each instance, run each statement.
pub fn sweep(ids: &[StatementId], specs: &[InstanceSpec], budget: &Budget) -> Result<SweepReport> {
    let mut per_instance = Vec::with_capacity(specs.len());
    for spec in specs {
        let inst = realize(spec, budget)?;
        per_instance.push(verify_all_for_instance(ids, &inst, budget)?);
    }
    Ok(merge_reports(per_instance))
}

/// Claims that cannot be checked on explicit finite carriers, listed
/// so reports stay truthful about coverage.
pub fn out_of_scope() -> &'static [(&'static str, &'static str)] {
    &[
        (
            "C3_11",
            "valuation modules over integral domains: the hypotheses force infinite carriers",
        ),
        (
            "pair multiplicative sets",
            "the multiplicatively closed pair sets of the amalgamation are defined but unused by the checked statements",
        ),
        (
            "infinite examples",
            "instances over the integers or power series are replaced by finite analogs in the canned suite",
        ),
    ]
}
