//! Exact optima with and without the connectivity requirement.
//!
//! Utilities are rescaled to integers over a common denominator so the
//! searches run on `i128` arithmetic; results are converted back to exact
//! rationals.

mod connected;
mod unconstrained;

use serde::Serialize;

use crate::instance::{Allocation, Instance};
use crate::rational::{common_denominator, welfare_ratio, Rational};

pub use connected::{
    best_connected_egal, best_connected_util, count_connected_allocations,
    enumerate_connected_allocations, for_each_connected_allocation,
};
pub use unconstrained::{opt_egal_unconstrained, opt_util_unconstrained};

/// Node budget used when nothing else is configured.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "POC_BUDGET";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("utilities are too large for exact integer search")]
    Overflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of search nodes before giving up with an error.
    pub budget: u64,
    /// Split the connected search across threads at the first agent.
    pub parallel: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: budget_from_env().unwrap_or(DEFAULT_BUDGET),
            parallel: false,
        }
    }
}

impl SearchOptions {
    pub fn with_budget(budget: u64) -> Self {
        SearchOptions {
            budget,
            parallel: false,
        }
    }

    pub fn parallel(mut self, on: bool) -> Self {
        self.parallel = on;
        self
    }
}

/// Reads the budget from `POC_BUDGET`, ignoring unparsable values.
pub fn budget_from_env() -> Option<u64> {
    std::env::var(BUDGET_ENV).ok()?.trim().parse().ok()
}

/// An optimal value together with an allocation attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Optimum {
    pub value: Rational,
    pub witness: Allocation,
}

/// All four optima of an instance and the two welfare ratios.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WelfareReport {
    pub opt_egal: Optimum,
    pub opt_util: Optimum,
    pub best_connected_egal: Optimum,
    pub best_connected_util: Optimum,
    /// `opt_egal / best_connected_egal`, with 0/0 read as 1.
    pub egal_ratio: Rational,
    /// `opt_util / best_connected_util`, with 0/0 read as 1.
    pub util_ratio: Rational,
}

/// Serializable view of a [`WelfareReport`] with rationals as strings and
/// bundles as sorted vertex lists.
#[derive(Debug, Clone, Serialize)]
pub struct ReportSummary {
    pub opt_egal: String,
    pub best_connected_egal: String,
    pub opt_util: String,
    pub best_connected_util: String,
    pub egal_ratio: String,
    pub util_ratio: String,
    pub witnesses: Witnesses,
}

#[derive(Debug, Clone, Serialize)]
pub struct Witnesses {
    pub opt_egal: Vec<Vec<usize>>,
    pub best_connected_egal: Vec<Vec<usize>>,
    pub opt_util: Vec<Vec<usize>>,
    pub best_connected_util: Vec<Vec<usize>>,
}

impl WelfareReport {
    pub fn summary(&self) -> ReportSummary {
        use crate::rational::format_rational as f;
        let b = |a: &Allocation| a.bundles.iter().map(|s| s.to_vec()).collect();
        ReportSummary {
            opt_egal: f(&self.opt_egal.value),
            best_connected_egal: f(&self.best_connected_egal.value),
            opt_util: f(&self.opt_util.value),
            best_connected_util: f(&self.best_connected_util.value),
            egal_ratio: f(&self.egal_ratio),
            util_ratio: f(&self.util_ratio),
            witnesses: Witnesses {
                opt_egal: b(&self.opt_egal.witness),
                best_connected_egal: b(&self.best_connected_egal.witness),
                opt_util: b(&self.opt_util.witness),
                best_connected_util: b(&self.best_connected_util.witness),
            },
        }
    }
}

/// Computes the four optima and both ratios.
pub fn welfare_report(inst: &Instance, opts: SearchOptions) -> Result<WelfareReport, OracleError> {
    let opt_egal = opt_egal_unconstrained(inst, opts)?;
    let opt_util = opt_util_unconstrained(inst);
    let best_connected_egal = best_connected_egal(inst, opts)?;
    let best_connected_util = best_connected_util(inst, opts)?;
    // Connected optima never exceed unconstrained ones, and the connected
    // optimum is zero only when the unconstrained one is.
    let egal_ratio = welfare_ratio(opt_egal.value, best_connected_egal.value)
        .expect("positive egalitarian optimum has a positive connected counterpart");
    let util_ratio = welfare_ratio(opt_util.value, best_connected_util.value)
        .expect("positive utilitarian optimum has a positive connected counterpart");
    Ok(WelfareReport {
        opt_egal,
        opt_util,
        best_connected_egal,
        best_connected_util,
        egal_ratio,
        util_ratio,
    })
}

/// Utilities as integers over one shared denominator.
pub(crate) struct Scaled {
    /// `weights[agent][vertex]`.
    pub weights: Vec<Vec<i128>>,
    pub denom: i128,
}

impl Scaled {
    pub fn new(inst: &Instance) -> Result<Self, OracleError> {
        let denom =
            common_denominator(inst.utilities().iter().flatten()).ok_or(OracleError::Overflow)?;
        let mut weights = Vec::with_capacity(inst.agent_count());
        let mut grand: i128 = 0;
        for row in inst.utilities() {
            let mut w = Vec::with_capacity(row.len());
            for u in row {
                let x = u
                    .numer()
                    .checked_mul(denom / u.denom())
                    .ok_or(OracleError::Overflow)?;
                grand = grand.checked_add(x).ok_or(OracleError::Overflow)?;
                w.push(x);
            }
            weights.push(w);
        }
        // Every search sums at most all weights, so this bounds all sums.
        grand.checked_mul(2).ok_or(OracleError::Overflow)?;
        Ok(Scaled { weights, denom })
    }

    pub fn value(&self, x: i128) -> Rational {
        Rational::new(x, self.denom)
    }

    pub fn sum(&self, agent: usize, s: crate::graph::VertexSet) -> i128 {
        s.iter().map(|v| self.weights[agent][v]).sum()
    }
}

/// Shared node counter enforcing the budget.
pub(crate) struct Budget {
    used: std::sync::atomic::AtomicU64,
    limit: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget {
            used: std::sync::atomic::AtomicU64::new(0),
            limit,
        }
    }

    #[inline]
    pub fn tick(&self) -> Result<(), OracleError> {
        let used = self.used.fetch_add(1, std::sync::atomic::Ordering::Relaxed) + 1;
        if used > self.limit {
            Err(OracleError::BudgetExceeded(self.limit))
        } else {
            Ok(())
        }
    }
}
