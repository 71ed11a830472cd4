use alloc::string::String;

use crate::error::{AlgebraError, Result};

/// Cap on primitive loop iterations for a single exhaustive check.
///
/// Every search that scans pairs or triples of carrier elements charges
/// its iterations against a budget and aborts with
/// [`AlgebraError::BudgetExceeded`] once the cap is crossed, so an
/// oversized carrier fails fast instead of hanging the process. The
/// default cap of 10^8 comfortably admits every structure this crate is
/// designed for (carriers of a few hundred elements) while refusing
/// accidental million-element inputs. Checks that finish early (a
/// witness ends the scan) only pay for the iterations they performed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    limit: u64,
}

pub const DEFAULT_BUDGET: u64 = 100_000_000;

impl Default for Budget {
    fn default() -> Self {
        Budget { limit: DEFAULT_BUDGET }
    }
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Start metering one exhaustive check against this budget.
    pub fn meter(&self) -> Meter {
        Meter { limit: self.limit, used: 0 }
    }
}

/// Running iteration count for one check.
#[derive(Debug)]
pub struct Meter {
    limit: u64,
    used: u64,
}

impl Meter {
    /// Charge `n` primitive iterations, failing once the cap is crossed.
    #[inline]
    pub fn charge(&mut self, n: u64) -> Result<()> {
        self.used = self.used.saturating_add(n);
        if self.used > self.limit {
            Err(AlgebraError::BudgetExceeded { limit: self.limit, context: None })
        } else {
            Ok(())
        }
    }

    /// Charge with a description that ends up in the error message.
    #[inline]
    pub fn charge_for(&mut self, n: u64, context: &str) -> Result<()> {
        self.used = self.used.saturating_add(n);
        if self.used > self.limit {
            Err(AlgebraError::BudgetExceeded {
                limit: self.limit,
                context: Some(String::from(context)),
            })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_cap_is_one_hundred_million() {
        assert_eq!(Budget::default().limit(), 100_000_000);
    }

    #[test]
    fn meter_trips_once_limit_is_crossed() {
        let budget = Budget::new(10);
        let mut meter = budget.meter();
        assert!(meter.charge(10).is_ok());
        let err = meter.charge(1).unwrap_err();
        assert!(matches!(err, AlgebraError::BudgetExceeded { limit: 10, .. }));
    }

    #[test]
    fn early_exit_checks_only_pay_for_work_done() {
        let budget = Budget::new(1000);
        let mut meter = budget.meter();
        meter.charge(7).unwrap();
        assert_eq!(meter.used(), 7);
    }
}
