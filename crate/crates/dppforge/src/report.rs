//! Identity reports: one entry per identity family, with exact residual witnesses.

use serde::{Deserialize, Serialize};

use crate::rational::Rational;

/// How many failing tuples are kept per identity (the lexicographically first ones).
pub const MAX_WITNESSES: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One nonzero coefficient of a residual, keyed by a basis label or label tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub basis: String,
    pub coeff: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub args: Vec<String>,
    pub residual: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityResult {
    pub id: String,
    pub status: Status,
    /// Number of argument tuples evaluated.
    pub checked: usize,
    /// Number of argument tuples with a nonzero residual.
    pub failures: usize,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl IdentityResult {
    pub fn skipped(id: &str, note: &str) -> Self {
        IdentityResult {
            id: id.to_string(),
            status: Status::Skipped,
            checked: 0,
            failures: 0,
            witnesses: vec![],
            note: Some(note.to_string()),
        }
    }

    /// Builds a result from `(args, residual)` pairs for every failing tuple, given in
    /// evaluation (lexicographic) order.
    pub fn from_failures(id: &str, checked: usize, failing: Vec<Witness>) -> Self {
        let failures = failing.len();
        let mut witnesses = failing;
        witnesses.truncate(MAX_WITNESSES);
        IdentityResult {
            id: id.to_string(),
            status: if failures == 0 { Status::Pass } else { Status::Fail },
            checked,
            failures,
            witnesses,
            note: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub results: Vec<IdentityResult>,
}

impl IdentityReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, r: IdentityResult) {
        self.results.push(r);
    }

    pub fn extend(&mut self, other: IdentityReport) {
        self.results.extend(other.results);
    }

    /// True when no identity failed or was skipped.
    pub fn passed(&self) -> bool {
        self.results.iter().all(IdentityResult::passed)
    }

    pub fn get(&self, id: &str) -> Option<&IdentityResult> {
        self.results.iter().find(|r| r.id == id)
    }

    pub fn failed_ids(&self) -> Vec<&str> {
        self.results.iter().filter(|r| r.status == Status::Fail).map(|r| r.id.as_str()).collect()
    }

    pub fn count_passed(&self) -> usize {
        self.results.iter().filter(|r| r.passed()).count()
    }

    /// Marks every listed identity as skipped because a prerequisite failed.
    pub fn all_skipped(ids: &[String], note: &str) -> Self {
        IdentityReport { results: ids.iter().map(|id| IdentityResult::skipped(id, note)).collect() }
    }

    /// One line per identity: `PASS id (checked n)` or `FAIL id ... first witness`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.results {
            let tag = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            s.push_str(&format!("{tag:<5}{:<34} checked {:>7}", r.id, r.checked));
            if r.failures > 0 {
                s.push_str(&format!("  failures {}", r.failures));
            }
            if let Some(w) = r.witnesses.first() {
                let res: Vec<String> = w.residual.iter().map(|t| format!("{}·{}", t.coeff, t.basis)).collect();
                s.push_str(&format!("  at ({}) residual {}", w.args.join(", "), res.join(" + ")));
            }
            if let Some(n) = &r.note {
                s.push_str(&format!("  [{n}]"));
            }
            s.push('\n');
        }
        s
    }
}
