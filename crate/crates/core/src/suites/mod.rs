//! Verification suites.

pub mod algebra;
pub mod charts;
pub mod engine;
pub mod instant_form;
pub mod frozen;
pub mod lagrangian;
pub mod massshell;

use crate::error::{Error, Result};
use crate::report::Report;
use crate::Q;

pub const SUITES: [&str; 6] = [
    "algebra",
    "instant-form",
    "jacobi",
    "frozen",
    "lagrangian",
    "all",
];

/// Suite options shared by the CLI and the acceptance tests.
#[derive(Clone, Debug)]
pub struct Options {
    /// Interaction function `f(xd^2)` of the instant form, in TR3 syntax.
    pub f: String,
    /// Lagrangian candidate for the compatibility chain, in TR3 syntax.
    pub lagrangian: String,
    /// Masses for the mass-shell suite.
    pub masses: Vec<Q>,
    pub seed: u64,
    pub timings: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            f: "0".into(),
            lagrangian: "c*sqrt(1-xd1^2-xd2^2-xd3^2)".into(),
            masses: vec![Q::from_integer(1.into()), Q::from_integer(3.into())],
            seed: 0,
            timings: false,
        }
    }
}

pub fn run_suite(name: &str, opts: &Options) -> Result<Report> {
    match name {
        "algebra" => algebra::run(opts),
        "instant-form" => instant_form::run(opts),
        "jacobi" => massshell::run(opts),
        "frozen" => frozen::run(opts),
        "lagrangian" => lagrangian::run(opts),
        "all" => {
            let mut all = Report::new("all", opts.seed);
            for s in SUITES.iter().filter(|s| **s != "all") {
                all.merge(run_suite(s, opts)?);
            }
            Ok(all)
        }
        other => Err(Error::UnknownSuite(other.into())),
    }
}

use crate::expr::Expr;
use crate::report::Outcome;
use crate::sample::{find_witness, SampleRng, Sampler};

/// Passes when every named residual vanishes; otherwise lists the nonzero
/// ones and attaches a sampled witness when one is found.
pub(crate) fn residuals_outcome(
    es: &[(String, Expr)],
    sampler: Option<&Sampler>,
    rng: &mut SampleRng,
) -> Outcome {
    let bad: Vec<&(String, Expr)> = es.iter().filter(|(_, e)| !e.is_zero()).collect();
    if bad.is_empty() {
        return Outcome::pass();
    }
    let mut text = bad
        .iter()
        .map(|(n, e)| if n.is_empty() { e.to_string() } else { format!("{n}: {e}") })
        .collect::<Vec<_>>()
        .join("; ");
    let mut o = Outcome::fail("");
    if let Some(s) = sampler {
        let exprs: Vec<Expr> = bad.iter().map(|(_, e)| e.clone()).collect();
        if let Some((pt, v)) = find_witness(&exprs, s, rng) {
            text = format!("{text} ; value {v}");
            o = o.with_witness(Some(pt));
        }
    }
    o.residual = text;
    o
}
