//! Verdict records and the run report emitted by the verification
//! front end. Reports serialize deterministically: all collections are
//! ordered, and the wall-time field is the only nondeterministic entry.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped { reason: String },
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail)
    }
}

/// The first witness of a failed identity, rendered canonically so the
/// failure is reproducible without rerunning.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Counterexample {
    /// Where the two sides differ: a basis element or "scalar".
    pub location: String,
    pub lhs: String,
    pub rhs: String,
}

/// Verdict record for one identity instance over one index tuple.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity_id: String,
    pub deformation: String,
    pub indices: Vec<i64>,
    /// Basis window half-width used for operator equality (0 when the
    /// check is purely scalar).
    pub window: i64,
    /// Whether this cell belongs to the release-blocking set.
    pub must_pass: bool,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Counterexample>,
    /// Conventions and prefactor variants the verdict depends on.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl IdentityReport {
    pub fn new(identity_id: &str, deformation: &str, indices: Vec<i64>, window: i64) -> Self {
        IdentityReport {
            identity_id: identity_id.to_string(),
            deformation: deformation.to_string(),
            indices,
            window,
            must_pass: false,
            verdict: Verdict::Pass,
            counterexample: None,
            notes: Vec::new(),
        }
    }

    pub fn must_pass(mut self, yes: bool) -> Self {
        self.must_pass = yes;
        self
    }

    pub fn verdict(mut self, v: Verdict) -> Self {
        self.verdict = v;
        self
    }

    pub fn counterexample(mut self, c: Option<Counterexample>) -> Self {
        self.counterexample = c;
        self
    }

    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub must_pass_failures: usize,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub tool_version: String,
    pub config: serde_json::Value,
    pub reports: Vec<IdentityReport>,
    pub summary: Summary,
    pub wall_time_ms: u64,
}

impl RunReport {
    pub fn summarize(reports: Vec<IdentityReport>, config: serde_json::Value, wall_time_ms: u64) -> RunReport {
        let mut summary = Summary::default();
        for r in &reports {
            match &r.verdict {
                Verdict::Pass => summary.pass += 1,
                Verdict::Fail => {
                    summary.fail += 1;
                    if r.must_pass {
                        summary.must_pass_failures += 1;
                    }
                }
                Verdict::Skipped { .. } => summary.skipped += 1,
            }
        }
        RunReport {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            reports,
            summary,
            wall_time_ms,
        }
    }
}
