use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// Parameters of a check; absent fields do not apply.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Inputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub law: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extra: Option<String>,
}

/// Result of one verification check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub criterion: u32,
    pub name: String,
    pub inputs: Inputs,
    /// Observed value compared against `tolerance`; absent when the check
    /// could not compute it.
    pub statistic: Option<f64>,
    /// Threshold the statistic is compared with; absent when the check
    /// failed before it was known.
    pub tolerance: Option<f64>,
    pub passed: bool,
    pub wall_time_s: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Collection of check records.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// One JSON object per line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&serde_json::to_string(c).expect("records serialize"));
            out.push('\n');
        }
        out
    }

    pub fn from_json_lines(text: &str) -> serde_json::Result<Self> {
        let checks = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(serde_json::from_str)
            .collect::<serde_json::Result<_>>()?;
        Ok(Self { checks })
    }

    /// Fixed-width table for terminals.
    pub fn to_table(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(4).max(5);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:>3}  {:<width$}  {:>12}  {:>12}  {:>8}  {}",
            "#", "check", "statistic", "tolerance", "time[s]", "result"
        );
        for c in &self.checks {
            let stat = c.statistic.map_or_else(|| "-".to_string(), |v| format!("{v:.4e}"));
            let tol = c.tolerance.map_or_else(|| "-".to_string(), |v| format!("{v:.4e}"));
            let _ = writeln!(
                out,
                "{:>3}  {:<width$}  {:>12}  {:>12}  {:>8.3}  {}",
                c.criterion,
                c.name,
                stat,
                tol,
                c.wall_time_s,
                if c.passed { "pass" } else { "FAIL" }
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_lines_round_trip() {
        let rep = VerificationReport {
            checks: vec![CheckRecord {
                criterion: 3,
                name: "cf".into(),
                inputs: Inputs { d: Some(3), seed: Some(7), ..Default::default() },
                statistic: Some(1e-9),
                tolerance: Some(1e-6),
                passed: true,
                wall_time_s: 0.5,
                detail: None,
            }],
        };
        let text = rep.to_json_lines();
        assert_eq!(text.lines().count(), 1);
        assert!(!text.contains("lambda"));
        assert_eq!(VerificationReport::from_json_lines(&text).unwrap(), rep);
        assert!(rep.to_table().contains("pass"));
    }
}
