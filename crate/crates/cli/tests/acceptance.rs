//! Acceptance battery: one PASS/FAIL line per criterion.
//!
//! Criteria whose statement cannot hold are run unchanged and reported as
//! FAIL; the target still succeeds when the failing checks are exactly the
//! documented ones, so any drift in either direction is caught.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::Instant;

use realize_core::report::{Report, Status};
use realize_core::suites::{engine, run_suite, Options};

struct Criterion {
    name: &'static str,
    /// Check ids (with suite prefix) known to fail.
    expected_failures: &'static [&'static str],
    result: Result<Vec<(String, Status, String)>, String>,
}

fn select(r: &Report, prefixes: &[&str]) -> Vec<(String, Status, String)> {
    r.checks
        .iter()
        .filter(|c| prefixes.iter().any(|p| c.id.starts_with(p)))
        .map(|c| (format!("{}/{}", r.suite, c.id), c.status, c.residual.clone()))
        .collect()
}

fn checks(suite: &Report, prefixes: &[&str]) -> Result<Vec<(String, Status, String)>, String> {
    let v = select(suite, prefixes);
    if v.len() < prefixes.len() {
        return Err(format!("only {} checks matched {prefixes:?}", v.len()));
    }
    Ok(v)
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_realize"))
        .args(args)
        .output()
        .expect("run realize");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn tooling(engine: &Report) -> Result<Vec<(String, Status, String)>, String> {
    let mut out = select(engine, &["parse-print"]);
    let (c1, j1) = cli(&["verify", "frozen", "--json", "--seed", "7"]);
    let (c2, j2) = cli(&["verify", "frozen", "--json", "--seed", "7"]);
    let same = j1 == j2 && !j1.is_empty();
    out.push(("cli/same-seed-json".into(), if same { Status::Pass } else { Status::Fail }, String::new()));
    let parsed = Report::from_json(&j1).map_err(|e| e.to_string())?;
    let contract = |code: i32, r: &Report| code == r.exit_code();
    out.push((
        "cli/exit-code-fail".into(),
        if c1 == 1 && c2 == 1 && contract(c1, &parsed) { Status::Pass } else { Status::Fail },
        format!("exit {c1}"),
    ));
    let (c3, _) = cli(&["verify", "algebra", "--json"]);
    out.push(("cli/exit-code-pass".into(), if c3 == 0 { Status::Pass } else { Status::Fail }, format!("exit {c3}")));
    let (c4, _) = cli(&["verify", "instant-form", "--f", "1"]);
    out.push(("cli/exit-code-interacting".into(), if c4 == 1 { Status::Pass } else { Status::Fail }, format!("exit {c4}")));
    Ok(out)
}

fn main() {
    let start = Instant::now();
    let opts = Options::default();
    let run = |s: &str| run_suite(s, &opts).unwrap_or_else(|e| panic!("suite {s}: {e}"));
    let algebra = run("algebra");
    let instant = run("instant-form");
    let jacobi = run("jacobi");
    let frozen = run("frozen");
    let lagrangian = run("lagrangian");
    let eng = engine::run(opts.seed, false).expect("engine properties");

    let criteria = vec![
        Criterion {
            name: "Poincare table: antisymmetry and Jacobi over all 10^3 basis triples",
            expected_failures: &[],
            result: checks(&algebra, &["antisymmetry[", "jacobi["]),
        },
        Criterion {
            name: "Instant form, f = 0: 45 closure pairs and both world-line families exact",
            expected_failures: &[],
            result: checks(&instant, &["closure[", "wlc:position", "wlc:velocity"]),
        },
        Criterion {
            name: "Boost PDEs: [K1,K2] - J3 reproduces the three reference equations",
            expected_failures: &[],
            result: checks(&instant, &["pde:1", "pde:2", "pde:3"]),
        },
        Criterion {
            name: "No-interaction certificate: f = 0 passes, battery gives witnesses, locus verified",
            expected_failures: &[],
            result: checks(&instant, &["certificate:f=0", "certificate:f=1", "certificate:f=xd1^2", "certificate:f=1/(1", "certificate:locus"]),
        },
        Criterion {
            name: "Unique Lagrangian: full chain for c sqrt(1 - xd^2), rejections, only alpha = 1/2",
            expected_failures: &[],
            result: checks(&instant, &["chain:", "chain-rejects:", "alpha:"]),
        },
        Criterion {
            name: "Mass shell (m = 1, 3): contact data, table, Schouten identities, Jacobi, eleven generators",
            expected_failures: &[],
            result: checks(&jacobi, &["m=1:", "m=3:"]),
        },
        Criterion {
            name: "Frozen phase space: kernel, theta(Gamma) = 1, rank 6, descent",
            expected_failures: &["frozen/theta(Gamma)"],
            result: checks(&frozen, &["i_Delta", "i_Gamma", "L_Delta", "theta(Gamma)", "rank", "["]),
        },
        Criterion {
            name: "Lagrangian form: omega_L, connection, Lambda, Lorentz lifts, Newton-Wigner, translations, frame",
            expected_failures: &["lagrangian/Lambda-closed-form", "lagrangian/tangent-f1"],
            result: Ok(lagrangian
                .checks
                .iter()
                .map(|c| (format!("lagrangian/{}", c.id), c.status, c.residual.clone()))
                .collect()),
        },
        Criterion {
            name: "Engine properties: d^2 = 0, Cartan, Jacobi, Schouten oracle, normalize, product rule",
            expected_failures: &[],
            result: checks(&eng, &["d^2=0", "cartan", "jacobi", "schouten-oracle", "normalize-idempotent", "product-rule"]),
        },
        Criterion {
            name: "Tooling: byte-identical JSON, exit-code contract, parse-print round trip",
            expected_failures: &[],
            result: tooling(&eng),
        },
    ];

    let mut unexpected = 0;
    for (i, c) in criteria.iter().enumerate() {
        let n = i + 1;
        match &c.result {
            Err(e) => {
                unexpected += 1;
                println!("criterion {n:>2}: FAIL  {}\n              error: {e}", c.name);
            }
            Ok(checks) => {
                let failed: BTreeSet<&str> = checks
                    .iter()
                    .filter(|(_, s, _)| *s == Status::Fail)
                    .map(|(id, _, _)| id.as_str())
                    .collect();
                let expected: BTreeSet<&str> = c.expected_failures.iter().copied().collect();
                let verdict = if failed.is_empty() { "PASS" } else { "FAIL" };
                println!("criterion {n:>2}: {verdict}  {} ({} checks)", c.name, checks.len());
                for (id, s, res) in checks.iter().filter(|(_, s, _)| *s == Status::Fail) {
                    let short: String = res.chars().take(160).collect();
                    println!("              {} {id}: {short}", s.as_str());
                }
                if failed != expected {
                    unexpected += 1;
                    println!("              unexpected: failing {failed:?}, documented {expected:?}");
                }
            }
        }
    }
    println!("acceptance finished in {:.1?}", start.elapsed());
    if unexpected > 0 {
        eprintln!("{unexpected} criteria deviate from their documented outcome");
        std::process::exit(1);
    }
}
