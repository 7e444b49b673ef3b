//! Embedded table fixtures and the pipeline that re-checks every row.

mod cubic;
mod lambda;
mod lsv;
mod registry;
pub mod tables;

pub use cubic::{
    eta_perp, h4_glue, invariant_in_primitive, k3_association_verdict, labeling_search,
    verify_cubic_cases, verify_cubic_tables, K3Verdict, Labeling,
};
pub use lambda::{
    derive_og10_order3_candidates, verify_lambda_p, verify_lambda_p_rows, CandidateSet,
};
pub use lsv::{verify_lsv_rows, verify_lsv_table};
pub use registry::{builtin, builtin_names, builtin_vector, fixtures_json};

use serde::Serialize;
use std::fmt::Write as _;

/// A named check and the value it observed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowVerdict {
    pub row: String,
    pub checks: Vec<Check>,
    /// Informational remarks that are not pass/fail.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl RowVerdict {
    pub(crate) fn new(row: impl Into<String>) -> Self {
        RowVerdict {
            row: row.into(),
            checks: vec![],
            notes: vec![],
        }
    }

    pub(crate) fn check(&mut self, name: &str, pass: bool, value: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            pass,
            value: value.into(),
        });
    }

    pub(crate) fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn pass(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Per-row verdicts in table order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub table: String,
    pub rows: Vec<RowVerdict>,
}

impl VerdictReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(RowVerdict::pass)
    }

    pub fn passed(&self) -> usize {
        self.rows.iter().filter(|r| r.pass()).count()
    }

    pub fn row(&self, id: &str) -> Option<&RowVerdict> {
        self.rows.iter().find(|r| r.row == id)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{}: {}/{} rows pass",
            self.table,
            self.passed(),
            self.rows.len()
        );
        for r in &self.rows {
            let _ = writeln!(
                s,
                "  row {}: {}",
                r.row,
                if r.pass() { "pass" } else { "FAIL" }
            );
            for c in &r.checks {
                let _ = writeln!(
                    s,
                    "    [{}] {}: {}",
                    if c.pass { "ok" } else { "!!" },
                    c.name,
                    c.value
                );
            }
            for n in &r.notes {
                let _ = writeln!(s, "    note: {n}");
            }
        }
        s
    }
}
