use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use realize_core::geom::{lie_bracket, schouten_bracket};
use realize_core::suites::charts::builtin;
use realize_core::suites::{run_suite, Options, SUITES};
use realize_core::{Chart, Error, Q, Result};

mod fields;

#[derive(Parser)]
#[command(name = "realize", version, about = "Exact checks of Poincaré-algebra realizations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite; exits 0 iff every non-info check passes.
    Verify(VerifyArgs),
    /// Lie bracket of vector fields, or Schouten bracket up to bivectors.
    Bracket {
        /// Field such as `-x2*@x1 + x1*@x2` or `@x1^@xd1`.
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[arg(long, default_value = "TR3")]
        chart: String,
    },
    /// Expression utilities.
    Expr {
        #[command(subcommand)]
        command: ExprCommand,
    },
}

#[derive(Subcommand)]
enum ExprCommand {
    /// Print the canonical form of an expression.
    Normalize {
        expr: String,
        #[arg(long, default_value = "TR3")]
        chart: String,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// One of algebra, instant-form, jacobi, frozen, lagrangian, all.
    suite: String,
    /// Interaction function f(xd^2) for the instant form.
    #[arg(long)]
    f: Option<String>,
    /// Lagrangian candidate for the compatibility chain.
    #[arg(long)]
    lagrangian: Option<String>,
    /// Mass for the mass-shell suite; repeatable.
    #[arg(long)]
    mass: Vec<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
    /// Record elapsed milliseconds per check (breaks byte-identical output).
    #[arg(long)]
    timings: bool,
}

/// A built-in chart name or a path to a TOML chart file.
fn load_chart(name: &str) -> Result<Arc<Chart>> {
    let path = Path::new(name);
    if path.extension().is_some_and(|e| e == "toml") || path.exists() {
        Chart::load(path)
    } else {
        builtin(name)
    }
}

fn parse_mass(text: &str) -> Result<Q> {
    let m = text
        .trim()
        .parse::<Q>()
        .map_err(|e| Error::Config(format!("invalid mass `{text}`: {e}")))?;
    if m <= Q::from_integer(0.into()) {
        return Err(Error::Config(format!("mass must be positive, got `{text}`")));
    }
    Ok(m)
}

fn verify(a: &VerifyArgs) -> Result<ExitCode> {
    if !SUITES.contains(&a.suite.as_str()) {
        return Err(Error::UnknownSuite(a.suite.clone()));
    }
    let mut opts = Options {
        seed: a.seed,
        timings: a.timings,
        ..Options::default()
    };
    if let Some(f) = &a.f {
        opts.f = f.clone();
    }
    if let Some(l) = &a.lagrangian {
        opts.lagrangian = l.clone();
    }
    if !a.mass.is_empty() {
        opts.masses = a.mass.iter().map(|m| parse_mass(m)).collect::<Result<_>>()?;
    }
    let report = run_suite(&a.suite, &opts)?;
    if a.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    Ok(ExitCode::from(report.exit_code() as u8))
}

fn bracket(x: &str, y: &str, chart: &str) -> Result<ExitCode> {
    let c = load_chart(chart)?;
    let a = fields::parse_multivector(&c, x)?;
    let b = fields::parse_multivector(&c, y)?;
    let out = if a.degree() == 1 && b.degree() == 1 {
        lie_bracket(&a.to_field()?, &b.to_field()?)?.to_string()
    } else {
        schouten_bracket(&a, &b)?.to_string()
    };
    println!("{out}");
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Verify(a) => verify(&a),
        Command::Bracket { x, y, chart } => bracket(&x, &y, &chart),
        Command::Expr {
            command: ExprCommand::Normalize { expr, chart },
        } => {
            let c = load_chart(&chart)?;
            println!("{}", c.parse(&expr)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
