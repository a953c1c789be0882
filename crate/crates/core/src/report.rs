//! Check reports: collection, text and JSON rendering, exit-code contract.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{Expr, Point, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Info => "info",
        }
    }
}

/// One named check. `description` is shown in text output only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    #[serde(skip)]
    pub description: String,
    pub paper_ref: String,
    pub status: Status,
    pub residual: String,
    pub witness: Option<BTreeMap<String, String>>,
    pub ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub status: Status,
}

/// Result of evaluating a single check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: Status,
    pub residual: String,
    pub witness: Option<Point>,
    pub description: Option<String>,
}

impl Outcome {
    pub fn pass() -> Self {
        Outcome {
            status: Status::Pass,
            residual: "0".into(),
            witness: None,
            description: None,
        }
    }

    pub fn fail(residual: impl Into<String>) -> Self {
        Outcome {
            status: Status::Fail,
            residual: residual.into(),
            witness: None,
            description: None,
        }
    }

    pub fn info(text: impl Into<String>) -> Self {
        Outcome {
            status: Status::Info,
            residual: text.into(),
            witness: None,
            description: None,
        }
    }

    /// Pass iff `e` is the zero canonical form.
    pub fn zero(e: &Expr) -> Self {
        if e.is_zero() {
            Self::pass()
        } else {
            Self::fail(e.to_string())
        }
    }

    /// Pass iff every expression is zero; the first nonzero one is reported.
    pub fn all_zero<'a>(es: impl IntoIterator<Item = (String, &'a Expr)>) -> Self {
        for (label, e) in es {
            if !e.is_zero() {
                return Self::fail(format!("{label}: {e}"));
            }
        }
        Self::pass()
    }

    /// Pass with residual `0`, or fail carrying `residual`.
    pub fn check(ok: bool, residual: impl Into<String>) -> Self {
        if ok {
            Self::pass()
        } else {
            Self::fail(residual)
        }
    }

    pub fn with_description(mut self, d: impl Into<String>) -> Self {
        self.description = Some(d.into());
        self
    }

    pub fn with_witness(mut self, w: Option<Point>) -> Self {
        self.witness = w;
        self
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }
}

impl Report {
    pub fn new(suite: &str, seed: u64) -> Self {
        Report {
            suite: suite.into(),
            seed,
            checks: Vec::new(),
            status: Status::Pass,
        }
    }

    pub fn push(&mut self, check: Check) {
        if check.status == Status::Fail {
            self.status = Status::Fail;
        }
        self.checks.push(check);
    }

    /// Appends another report's checks, prefixing ids with its suite name.
    pub fn merge(&mut self, other: Report) {
        for mut c in other.checks {
            c.id = format!("{}/{}", other.suite, c.id);
            self.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let idw = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(2).max(2);
        let refw = self
            .checks
            .iter()
            .map(|c| c.paper_ref.len())
            .max()
            .unwrap_or(3)
            .max(3);
        let mut out = String::new();
        let _ = writeln!(out, "suite {} (seed {})", self.suite, self.seed);
        let _ = writeln!(out, "{:<6} {:<idw$} {:<refw$} {:>6}  residual", "status", "id", "ref", "ms");
        for c in &self.checks {
            let mut residual = c.residual.clone();
            if residual.len() > 160 {
                let mut cut = 157;
                while !residual.is_char_boundary(cut) {
                    cut -= 1;
                }
                residual.truncate(cut);
                residual.push_str("...");
            }
            let _ = writeln!(
                out,
                "{:<6} {:<idw$} {:<refw$} {:>6}  {}",
                c.status.as_str(),
                c.id,
                c.paper_ref,
                c.ms,
                residual
            );
            if !c.description.is_empty() {
                let _ = writeln!(out, "{:<6} {:<idw$} {}", "", "", c.description);
            }
            if let Some(w) = &c.witness {
                let pts: Vec<String> = w.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let _ = writeln!(out, "{:<6} {:<idw$} witness: {}", "", "", pts.join(", "));
            }
        }
        let pass = self.checks.iter().filter(|c| c.status == Status::Pass).count();
        let fail = self.checks.iter().filter(|c| c.status == Status::Fail).count();
        let info = self.checks.len() - pass - fail;
        let _ = writeln!(
            out,
            "{}: {pass} passed, {fail} failed, {info} info",
            self.status.as_str().to_uppercase()
        );
        out
    }
}

/// Accumulates checks into a report, timing each one when enabled.
pub struct Recorder {
    report: Report,
    timings: bool,
}

impl Recorder {
    pub fn new(suite: &str, seed: u64, timings: bool) -> Self {
        Recorder {
            report: Report::new(suite, seed),
            timings,
        }
    }

    pub fn seed(&self) -> u64 {
        self.report.seed
    }

    /// Runs `f`; an error becomes a failing check carrying the message.
    pub fn run(
        &mut self,
        id: &str,
        paper_ref: &str,
        description: &str,
        f: impl FnOnce() -> Result<Outcome>,
    ) -> bool {
        let start = Instant::now();
        let outcome = f().unwrap_or_else(|e| Outcome::fail(format!("error: {e}")));
        let ms = if self.timings {
            start.elapsed().as_millis() as u64
        } else {
            0
        };
        let ok = outcome.status != Status::Fail;
        self.report.push(Check {
            id: id.into(),
            description: outcome.description.unwrap_or_else(|| description.into()),
            paper_ref: paper_ref.into(),
            status: outcome.status,
            residual: outcome.residual,
            witness: outcome
                .witness
                .map(|p| p.iter().map(|(k, v)| (k.clone(), ratio_text(v))).collect()),
            ms,
        });
        ok
    }

    pub fn absorb(&mut self, other: Report) {
        self.report.merge(other);
    }

    pub fn finish(self) -> Report {
        self.report
    }
}

/// Witness values are always written as `p/q`.
pub fn ratio_text(q: &Q) -> String {
    format!("{}/{}", q.numer(), q.denom())
}
