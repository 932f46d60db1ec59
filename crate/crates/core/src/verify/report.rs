use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Violation threshold and equality threshold for slacks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub num_tol: f64,
    pub eq_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { num_tol: 1e-7, eq_tol: 1e-8 }
    }
}

/// One checked inequality `lhs <= rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub suite: String,
    pub instance: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub pass: bool,
    pub equality: bool,
    /// Whether the instance is known to attain (`true`) or miss (`false`)
    /// equality; `None` when nothing is claimed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_equality: Option<bool>,
}

impl InequalityReport {
    pub fn new(suite: &str, instance: String, lhs: f64, rhs: f64, tol: &Tolerances, expected_equality: Option<bool>) -> Self {
        let slack = rhs - lhs;
        let pass = slack >= -tol.num_tol;
        let equality = pass && slack.abs() <= tol.eq_tol;
        InequalityReport { suite: suite.to_string(), instance, lhs, rhs, slack, pass, equality, expected_equality }
    }

    /// Equality flag disagrees with what the instance is known to do.
    pub fn equality_mismatch(&self) -> bool {
        self.expected_equality.is_some_and(|e| e != self.equality)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub failures: usize,
    pub equalities: usize,
    pub equality_mismatches: usize,
}

impl Summary {
    pub fn of(records: &[InequalityReport]) -> Self {
        Summary {
            total: records.len(),
            failures: records.iter().filter(|r| !r.pass).count(),
            equalities: records.iter().filter(|r| r.equality).count(),
            equality_mismatches: records.iter().filter(|r| r.equality_mismatch()).count(),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failures == 0 && self.equality_mismatches == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<u64>,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub suites: Vec<String>,
    pub records: Vec<InequalityReport>,
    pub summary: Summary,
}

impl Report {
    pub fn new(seed: u64, tolerances: Tolerances, suites: Vec<String>, records: Vec<InequalityReport>, reproducible: bool) -> Self {
        let generated_at = if reproducible {
            None
        } else {
            std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).ok().map(|d| d.as_secs())
        };
        let summary = Summary::of(&records);
        Report { generated_at, seed, tolerances, suites, records, summary }
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Numerical(format!("cannot serialize report: {e}")))
    }

    /// Record table with columns `suite,instance,lhs,rhs,slack,pass,equality`.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let io = |e: csv::Error| Error::Numerical(format!("cannot write report: {e}"));
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["suite", "instance", "lhs", "rhs", "slack", "pass", "equality"]).map_err(io)?;
        for r in &self.records {
            w.write_record([
                r.suite.clone(),
                r.instance.clone(),
                format!("{:e}", r.lhs),
                format!("{:e}", r.rhs),
                format!("{:e}", r.slack),
                r.pass.to_string(),
                r.equality.to_string(),
            ])
            .map_err(io)?;
        }
        w.flush().map_err(|e| Error::Numerical(format!("cannot write report: {e}")))
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        String::from_utf8(buf).map_err(|e| Error::Numerical(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_and_equality_flags() {
        let tol = Tolerances::default();
        let r = InequalityReport::new("s", "i".into(), 4.0, 4.0, &tol, Some(true));
        assert!(r.pass && r.equality && !r.equality_mismatch());
        let r = InequalityReport::new("s", "i".into(), 1.0 + 5e-8, 1.0, &tol, Some(true));
        assert!(r.pass && !r.equality && r.equality_mismatch());
        let r = InequalityReport::new("s", "i".into(), 1.0 + 2e-7, 1.0, &tol, None);
        assert!(!r.pass && !r.equality);
        let r = InequalityReport::new("s", "i".into(), f64::NAN, 1.0, &tol, None);
        assert!(!r.pass);
    }

    #[test]
    fn csv_mirrors_records() {
        let tol = Tolerances::default();
        let records = vec![InequalityReport::new("a", "x=1".into(), 0.5, 1.0, &tol, None)];
        let report = Report::new(1, tol, vec!["a".into()], records, true);
        let text = report.to_csv().unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("suite,instance,lhs,rhs,slack,pass,equality"));
        assert_eq!(lines.next(), Some("a,x=1,5e-1,1e0,5e-1,true,false"));
        assert!(report.to_json().unwrap().contains("\"summary\""));
        assert!(report.generated_at.is_none());
    }
}
