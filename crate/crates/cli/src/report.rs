//! Result records and their text rendering.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
    Info,
    Error,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::NotApplicable => "N/A",
            Status::Info => "INFO",
            Status::Error => "ERROR",
        }
    }

    pub fn is_ok(self) -> bool {
        !matches!(self, Status::Fail | Status::Error)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numbers: Option<Value>,
}

impl CheckResult {
    pub fn new(check: impl Into<String>, status: Status, witness: impl Into<String>) -> Self {
        CheckResult {
            check: check.into(),
            status,
            witness: Some(witness.into()),
            numbers: None,
        }
    }

    pub fn verdict(check: impl Into<String>, pass: bool, witness: impl Into<String>) -> Self {
        CheckResult::new(
            check,
            if pass { Status::Pass } else { Status::Fail },
            witness,
        )
    }

    pub fn with_numbers(mut self, v: Value) -> Self {
        self.numbers = Some(v);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub ring: String,
    pub ideal: String,
    pub command: String,
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.results.iter().all(|r| r.status.is_ok())
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("{}  {}\n$ {}\n", self.ring, self.ideal, self.command);
        let width = self
            .results
            .iter()
            .map(|r| r.check.len())
            .max()
            .unwrap_or(0);
        for r in &self.results {
            out.push_str(&format!(
                "  {:<5} {:<width$}  {}\n",
                r.status.label(),
                r.check,
                r.witness.as_deref().unwrap_or("")
            ));
            if let Some(b) = r
                .numbers
                .as_ref()
                .and_then(|n| n.get("betti"))
                .and_then(|b| b.as_array())
            {
                out.push_str(&betti_table(b));
            }
        }
        out
    }
}

/// One-row Betti table indexed by homological degree.
fn betti_table(b: &[Value]) -> String {
    let cells: Vec<String> = b.iter().map(|v| v.to_string()).collect();
    let w = cells.iter().map(|c| c.len()).max().unwrap_or(1).max(2);
    let head: Vec<String> = (0..cells.len()).map(|i| format!("{i:>w$}")).collect();
    let row: Vec<String> = cells.iter().map(|c| format!("{c:>w$}")).collect();
    format!(
        "          {}\n   total: {}\n",
        head.join(" "),
        row.join(" ")
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_and_exit_status() {
        let r = Report {
            ring: "F_101[x,y]".into(),
            ideal: "I = (x*y)".into(),
            command: "betti --upto 2".into(),
            results: vec![
                CheckResult::verdict("betti", true, "matches")
                    .with_numbers(serde_json::json!({"betti": [1, 2, 3]})),
                CheckResult::new("dual", Status::NotApplicable, "zero-dim CI"),
            ],
        };
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<Report>(&s).unwrap(), r);
        assert!(r.ok());
        assert!(r.render_text().contains("total:  1  2  3"));
        let mut bad = r.clone();
        bad.results
            .push(CheckResult::verdict("x", false, "differs"));
        assert!(!bad.ok());
    }
}
