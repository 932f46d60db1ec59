//! Verification suites for the anti-concentration inequalities and the
//! order machinery, with JSON and CSV reporting.

mod report;
mod suites;

pub use report::{InequalityReport, Report, Summary, Tolerances};
pub use suites::{
    suite_acm, suite_discrete_max, suite_discrete_variance_point, suite_order_machinery, suite_orlicz_sandwich,
    suite_variance_point, Suite, P_LIST,
};

use crate::error::Result;

/// Runs `suites` in order; `trials = None` uses each suite's default count.
pub fn run_suites(suites: &[Suite], trials: Option<usize>, seed: u64, tol: Tolerances, reproducible: bool) -> Result<Report> {
    let mut records = Vec::new();
    for &s in suites {
        records.extend(s.run(trials.unwrap_or(s.default_trials()), seed, &tol)?);
    }
    let names = suites.iter().map(|s| s.name().to_string()).collect();
    Ok(Report::new(seed, tol, names, records, reproducible))
}
