//! `acbm` — evaluate, verify and cross-check almost contact B-metric
//! structures on the built-in hypersurfaces.
//!
//! Exit codes: 0 pass, 1 usage error, 2 domain error, 3 verification failure.

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use acbm_core::crosscheck::crosscheck;
use acbm_core::manifolds::{self, default_grid, product_grid, MANIFOLD_NAMES};
use acbm_core::report::{render_crosscheck, render_eval, render_verify, Format};
use acbm_core::verify::{tolerance_from_env, verify};
use acbm_core::{evaluate, Error};

const EXIT_USAGE: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_FAILED: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "acbm", version, about = "Almost contact B-metric structures on hyperspheres")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate every quantity at one point.
    Eval {
        #[arg(long)]
        manifold: String,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        /// u¹,u²,u³ in radians.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        point: Vec<f64>,
        #[arg(long, default_value = "md")]
        format: Format,
    },
    /// Compare against the closed forms over a grid and check the theorem items.
    Verify {
        #[arg(long)]
        manifold: String,
        #[arg(long, value_delimiter = ',', default_value = "0.5,1,2")]
        radii: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        u1: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        u2: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        u3: Option<Vec<f64>>,
        /// Relative tolerance (default: $ACBM_TOL, else 1e-9).
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value = "md")]
        format: Format,
    },
    /// Independent-route checks at seeded random points.
    Crosscheck {
        #[arg(long)]
        manifold: String,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value = "md")]
        format: Format,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_domain() {
            Failure::Domain(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

fn check_manifold(name: &str) -> Result<(), Failure> {
    if MANIFOLD_NAMES.contains(&name) {
        Ok(())
    } else {
        Err(Failure::Usage(format!(
            "unknown manifold `{name}` (expected one of {})",
            MANIFOLD_NAMES.join(", ")
        )))
    }
}

fn run(cmd: Command) -> Result<String, Failure> {
    match cmd {
        Command::Eval {
            manifold,
            radius,
            point,
            format,
        } => {
            check_manifold(&manifold)?;
            let u: [f64; 3] = point
                .as_slice()
                .try_into()
                .map_err(|_| Failure::Usage(format!("--point needs 3 comma-separated values, got {}", point.len())))?;
            let chart = manifolds::chart(&manifold, radius)?;
            let bundle = evaluate(&chart, u)?;
            Ok(render_eval(&manifold, radius, u, &bundle, format))
        }
        Command::Verify {
            manifold,
            radii,
            u1,
            u2,
            u3,
            tol,
            format,
        } => {
            check_manifold(&manifold)?;
            let tol = tol.unwrap_or_else(tolerance_from_env);
            if !(tol.is_finite() && tol > 0.0) {
                return Err(Failure::Usage(format!("--tol must be positive, got {tol}")));
            }
            let grid = if u1.is_none() && u2.is_none() && u3.is_none() {
                default_grid(&manifold)
            } else {
                let base = default_grid(&manifold);
                let axis = |k: usize| {
                    let mut v: Vec<f64> = base.iter().map(|p| p[k]).collect();
                    v.sort_by(f64::total_cmp);
                    v.dedup();
                    v
                };
                product_grid(
                    &u1.unwrap_or_else(|| axis(0)),
                    &u2.unwrap_or_else(|| axis(1)),
                    &u3.unwrap_or_else(|| axis(2)),
                )
            };
            let mut reports = Vec::with_capacity(radii.len());
            for r in radii {
                let suite = manifolds::suite(&manifold, r)?;
                reports.push(verify(&suite, &grid, tol)?);
            }
            let text = render_verify(&reports, format);
            if reports.iter().all(|r| r.overall) {
                Ok(text)
            } else {
                Err(Failure::Verification(text))
            }
        }
        Command::Crosscheck {
            manifold,
            radius,
            samples,
            seed,
            format,
        } => {
            check_manifold(&manifold)?;
            let report = crosscheck(&manifold, radius, samples, seed)?;
            let text = render_crosscheck(&report, format);
            if report.pass() {
                Ok(text)
            } else {
                Err(Failure::Verification(text))
            }
        }
    }
}

// A closed pipe (e.g. `| head`) is not an error worth a panic.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(text) => {
            emit(&text);
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("domain error: {msg}");
            ExitCode::from(EXIT_DOMAIN)
        }
        Err(Failure::Verification(text)) => {
            emit(&text);
            eprintln!("verification failed");
            ExitCode::from(EXIT_FAILED)
        }
    }
}
