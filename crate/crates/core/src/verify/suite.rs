//! A small catalog of worked examples with frozen expected outcomes,
//! plus an internal-consistency audit of the predicate hierarchy.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::budget::Budget;
use crate::error::Result;
use crate::module::{FiniteModule, Submodule};
use crate::verdict::{Verdict, Witness};

use super::instance::{realize, HomSpec, InstanceSpec, ModuleSpec};

/// Expected outcome of the 2-absorbing check on one example.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExampleOutcome {
    pub holds: bool,
    /// The lexicographically least violation, when one is expected.
    pub witness: Option<Witness>,
}

/// One worked example: an instance plus the submodule to test and the
/// frozen outcome.
#[derive(Debug, Clone)]
pub struct ExampleItem {
    pub name: &'static str,
    pub spec: InstanceSpec,
    pub expected: ExampleOutcome,
}

/// Result of re-running one example.
#[derive(Debug, Clone)]
pub struct ExampleRun {
    pub verdict: Verdict,
    pub matches_expected: bool,
    pub text: String,
}

impl ExampleItem {
    /// Re-run the check and compare against the frozen outcome.
    pub fn run(&self, budget: &Budget) -> Result<ExampleRun> {
        let inst = realize(&self.spec, budget)?;
        let members = self
            .spec
            .f_sub
            .clone()
            .expect("every cataloged example pins its submodule");
        let f = Submodule::from_members(&inst.m, members)?;
        let verdict = f.is_two_absorbing(budget)?;
        let matches_expected = verdict.holds == self.expected.holds
            && match (&self.expected.witness, &verdict.witness) {
                (None, _) => true,
                (Some(want), Some(got)) => want == got,
                (Some(_), None) => false,
            };
        let text = match &verdict.witness {
            Some(w) => format!(
                "{} is not 2-absorbing: {}",
                f.describe(),
                w.render(|role, idx| match role {
                    "m" | "member" => inst.m.name(idx).into(),
                    _ => inst.r1.name(idx).into(),
                }),
            ),
            None => format!("{} is 2-absorbing", f.describe()),
        };
        Ok(ExampleRun { verdict, matches_expected, text })
    }
}

/// The examples shipped with the workbench, each with its expected
/// verdict frozen after independent hand computation.
pub fn example_suite() -> Vec<ExampleItem> {
    let mut items = Vec::new();

    // The zero submodule of Z30 over itself: 2 * 3 * 5 = 0 but no
    // partial product lands in the zero submodule or its residual.
    items.push(ExampleItem {
        name: "z30-zero",
        spec: {
            let mut s = InstanceSpec::identity_zmod(30, vec![0]);
            s.f_sub = Some(vec![0]);
            s
        },
        expected: ExampleOutcome {
            holds: false,
            witness: Some(Witness::triple("a", 2, "b", 3, "m", 5)),
        },
    });

    // The zero submodule of Z4 x Z6 seen as a module over Z12 through
    // the simultaneous reduction map. Pairs are indexed as 6x + y.
    items.push(ExampleItem {
        name: "z4xz6-zero",
        spec: {
            let mut s = InstanceSpec::identity_zmod(12, vec![0]);
            s.m = ModuleSpec::Restricted { a: 4, b: 6 };
            s.phi = HomSpec::Table(vec![0; 24]);
            s.f_sub = Some(vec![0]);
            s
        },
        expected: ExampleOutcome {
            holds: false,
            witness: Some(Witness::triple("a", 2, "b", 2, "m", 6)),
        },
    });

    // The even residues inside Z6: a prime submodule, hence
    // 2-absorbing.
    items.push(ExampleItem {
        name: "z6-evens",
        spec: {
            let mut s = InstanceSpec::identity_zmod(6, vec![0]);
            s.f_sub = Some(vec![0, 2, 4]);
            s
        },
        expected: ExampleOutcome { holds: true, witness: None },
    });

    items
}

/// Audit the predicate hierarchy on one module: every prime ideal and
/// prime submodule must be 2-absorbing, and on a cyclic module the
/// submodule check must agree with the ideal check of the residual.
/// Returns a description of every violation found.
pub fn hierarchy_violations(m: &Arc<FiniteModule>, budget: &Budget) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let ring = m.ring();
    for i in ring.ideals(budget)? {
        if !i.is_proper() {
            continue;
        }
        if i.is_prime(budget)?.holds && !i.is_two_absorbing(false, budget)?.holds {
            out.push(format!(
                "prime ideal {} of {} is not 2-absorbing",
                i.describe(),
                ring.label(),
            ));
        }
    }
    let cyclic = m.is_cyclic();
    for f in m.submodules(budget)? {
        if !f.is_proper() {
            continue;
        }
        let two_abs = f.is_two_absorbing(budget)?.holds;
        if f.is_prime(budget)?.holds && !two_abs {
            out.push(format!(
                "prime submodule {} of {} is not 2-absorbing",
                f.describe(),
                m.label(),
            ));
        }
        if cyclic {
            let res = f.residual_module();
            if res.is_two_absorbing(false, budget)?.holds != two_abs {
                out.push(format!(
                    "cyclic module {}: submodule {} and residual {} disagree",
                    m.label(),
                    f.describe(),
                    res.describe(),
                ));
            }
        }
    }
    Ok(out)
}
