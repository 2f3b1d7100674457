use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// How many counterexamples a claim keeps; the total count is always kept.
pub const MAX_COUNTEREXAMPLES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Where the claim failed, e.g. `n = 17` or `k = 3`.
    pub at: String,
    pub detail: String,
}

/// The outcome of one claim over a tested range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub id: String,
    pub statement: String,
    pub range: String,
    pub status: Status,
    pub checked: u64,
    pub failures: u64,
    pub counterexamples: Vec<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detected_threshold: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl ClaimReport {
    pub fn new(
        id: impl Into<String>,
        statement: impl Into<String>,
        range: impl Into<String>,
    ) -> Self {
        ClaimReport {
            id: id.into(),
            statement: statement.into(),
            range: range.into(),
            status: Status::Pass,
            checked: 0,
            failures: 0,
            counterexamples: Vec::new(),
            detected_threshold: None,
            notes: Vec::new(),
        }
    }

    /// Records one check; `detail` is only built on failure.
    pub fn check<F>(&mut self, ok: bool, at: impl FnOnce() -> String, detail: F) -> bool
    where
        F: FnOnce() -> String,
    {
        self.checked += 1;
        if !ok {
            self.fail(at(), detail());
        }
        ok
    }

    pub fn fail(&mut self, at: String, detail: String) {
        self.failures += 1;
        self.status = Status::Fail;
        if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
            self.counterexamples.push(Counterexample { at, detail });
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub evaluator: String,
    pub claims: Vec<ClaimReport>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, evaluator: impl Into<String>) -> Self {
        VerificationReport {
            suite: suite.into(),
            evaluator: evaluator.into(),
            claims: Vec::new(),
        }
    }

    pub fn push(&mut self, claim: ClaimReport) {
        self.claims.push(claim);
    }

    /// Appends another report's claims (suite order is kept).
    pub fn merge(&mut self, other: VerificationReport) {
        self.claims.extend(other.claims);
    }

    pub fn passed(&self) -> bool {
        self.claims.iter().all(ClaimReport::passed)
    }

    pub fn claim(&self, id: &str) -> Option<&ClaimReport> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    /// Human-readable summary, one block per claim.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "suite {} ({})", self.suite, self.evaluator);
        for c in &self.claims {
            let tag = if c.passed() { "PASS" } else { "FAIL" };
            let _ = writeln!(
                s,
                "{tag} {:<24} {}  [{}; {} checks]",
                c.id, c.statement, c.range, c.checked
            );
            if let Some(t) = &c.detected_threshold {
                let _ = writeln!(s, "     detected threshold: {t}");
            }
            for n in &c.notes {
                let _ = writeln!(s, "     note: {n}");
            }
            if c.failures > 0 {
                let _ = writeln!(s, "     {} failure(s), e.g.:", c.failures);
                for x in &c.counterexamples {
                    let _ = writeln!(s, "       at {}: {}", x.at, x.detail);
                }
            }
        }
        let passed = self.claims.iter().filter(|c| c.passed()).count();
        let _ = writeln!(s, "{passed}/{} claims passed", self.claims.len());
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_claims_carry_counterexamples() {
        let mut c = ClaimReport::new("x", "n is even", "n = 0..=9");
        for n in 0..10 {
            c.check(n % 2 == 0, || format!("n = {n}"), || "odd".into());
        }
        assert!(!c.passed());
        assert_eq!(c.checked, 10);
        assert_eq!(c.failures, 5);
        assert_eq!(c.counterexamples[0].at, "n = 1");

        let mut many = ClaimReport::new("y", "never", "");
        for n in 0..100 {
            many.check(false, || n.to_string(), String::new);
        }
        assert_eq!(many.counterexamples.len(), MAX_COUNTEREXAMPLES);
        assert_eq!(many.failures, 100);

        let mut r = VerificationReport::new("s", "e");
        r.push(c);
        assert!(!r.passed());
        let back: VerificationReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.summary().contains("FAIL x"));
        assert!(r.summary().contains("0/1 claims passed"));
    }
}
