//! `cbs`: property-suite runner and strengthened-CBS constant computation
//! for matrices, elements, and meshes.
//!
//! Exit codes: 0 = success/all-pass, 1 = bound or invariant violation,
//! 2 = usage or input error. All randomness flows from `--seed` through
//! counter-based streams, so identical commands produce byte-identical
//! CSV and JSON outputs regardless of `CBS_THREADS`.

mod gamma;
mod report;
mod schema;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cbs_core::elasticity::Form;
use cbs_core::suites::{run_suite, Suite};

use gamma::{ElementArgs, MaterialArgs, MeshArgs};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or flag combinations (exit 2).
    Usage(String),
    /// Unreadable or schema-violating input (exit 2).
    Input(String),
    /// A mathematical bound or cross-method invariant failed (exit 1).
    Violation(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaMethodArg {
    Eigen,
    Alternating,
    Sampling,
}

impl GammaMethodArg {
    fn as_str(&self) -> &'static str {
        match self {
            GammaMethodArg::Eigen => "eigen",
            GammaMethodArg::Alternating => "alternating",
            GammaMethodArg::Sampling => "sampling",
        }
    }
}

fn parse_method(s: &str) -> Result<GammaMethodArg, String> {
    match s {
        "eigen" => Ok(GammaMethodArg::Eigen),
        "alternating" => Ok(GammaMethodArg::Alternating),
        "sampling" => Ok(GammaMethodArg::Sampling),
        _ => Err(format!("unknown method {s:?} (eigen|alternating|sampling)")),
    }
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    Suite::parse(s).ok_or_else(|| {
        format!("unknown suite {s:?} (core|weighted|integral|strengthened|all)")
    })
}

fn parse_form(s: &str) -> Result<Form, String> {
    Form::parse(s).ok_or_else(|| format!("unknown form {s:?} (a|a1|a2)"))
}

#[derive(Parser)]
#[command(
    name = "cbs",
    version,
    about = "Cauchy-Bunyakovsky-Schwarz inequality suites and the strengthened-CBS constant"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a randomized property suite and report pass/fail per property.
    Verify {
        /// core | weighted | integral | strengthened | all
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        /// Trials per property.
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// γ for a block-partitioned SPSD matrix from a JSON file.
    GammaMatrix {
        /// JSON file: { n, entries, u_indices, v_indices }.
        #[arg(long)]
        input: PathBuf,
        /// eigen | alternating | sampling (non-eigen methods are
        /// cross-checked against eigen).
        #[arg(long, default_value = "eigen", value_parser = parse_method)]
        method: GammaMethodArg,
        /// Sampling trials (sampling method only).
        #[arg(long, default_value_t = 100000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write <OUT>.csv and <OUT>.json instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// γ for one macro-element (reference, inline, or random simplices).
    GammaElement {
        #[arg(long)]
        dim: usize,
        /// a | a1 | a2
        #[arg(long, value_parser = parse_form)]
        form: Form,
        /// Poisson ratio with E = 1.
        #[arg(long)]
        nu: Option<f64>,
        /// START:STOP:STEP sweep of Poisson ratios with E = 1.
        #[arg(long, value_name = "START:STOP:STEP")]
        nu_sweep: Option<String>,
        /// First Lamé modulus (with --mu).
        #[arg(long)]
        lambda: Option<f64>,
        /// Shear modulus (with --lambda).
        #[arg(long)]
        mu: Option<f64>,
        /// "random" or a JSON array of dim+1 points; defaults to the
        /// reference simplex.
        #[arg(long)]
        vertices: Option<String>,
        /// Number of random draws when --vertices random.
        #[arg(long, default_value_t = 1)]
        draws: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Octahedron diagonal for 3D red refinement: 0, 1, or 2.
        #[arg(long, default_value_t = 0)]
        diagonal: u8,
        /// Write <OUT>.csv and <OUT>.json instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// γ element by element over a mesh from a JSON file.
    GammaMesh {
        /// JSON file: { dim, vertices, elements }.
        #[arg(long)]
        mesh: PathBuf,
        /// a | a1 | a2
        #[arg(long, value_parser = parse_form)]
        form: Form,
        #[arg(long)]
        nu: Option<f64>,
        #[arg(long, value_name = "START:STOP:STEP")]
        nu_sweep: Option<String>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        mu: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write <OUT>.csv and <OUT>.json instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Honor the CBS_THREADS cap (0 or unset = automatic).
fn configure_threads() -> Result<(), CliError> {
    if let Ok(raw) = std::env::var("CBS_THREADS") {
        let n: usize = raw.trim().parse().map_err(|_| {
            CliError::Usage(format!("CBS_THREADS must be a nonnegative integer, got {raw:?}"))
        })?;
        if n > 0 {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| CliError::Usage(format!("cannot size thread pool: {e}")))?;
        }
    }
    Ok(())
}

fn cmd_verify(suite: Suite, trials: u64, seed: u64) -> Result<(), CliError> {
    if trials < 1 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let outcomes = run_suite(suite, trials, seed);
    let mut failures = Vec::new();
    for suite_outcome in &outcomes {
        for p in &suite_outcome.properties {
            if p.passed {
                println!("pass {}/{} ({} trials)", suite_outcome.suite, p.property, p.trials);
            } else {
                println!("FAIL {}/{} ({} trials)", suite_outcome.suite, p.property, p.trials);
                failures.push(format!(
                    "{}/{} seed={} {}",
                    suite_outcome.suite,
                    p.property,
                    seed,
                    p.failure.as_deref().unwrap_or("no detail")
                ));
            }
        }
    }
    if failures.is_empty() {
        println!("verify: all properties passed (seed={seed}, trials={trials})");
        Ok(())
    } else {
        for f in &failures {
            eprintln!("FAIL {f}");
        }
        Err(CliError::Violation(format!(
            "{} propert{} failed",
            failures.len(),
            if failures.len() == 1 { "y" } else { "ies" }
        )))
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match cli.command {
        Command::Verify { suite, trials, seed } => cmd_verify(suite, trials, seed),
        Command::GammaMatrix {
            input,
            method,
            trials,
            seed,
            out,
        } => gamma::cmd_gamma_matrix(&input, method, trials, seed, out.as_deref()),
        Command::GammaElement {
            dim,
            form,
            nu,
            nu_sweep,
            lambda,
            mu,
            vertices,
            draws,
            seed,
            diagonal,
            out,
        } => gamma::cmd_gamma_element(ElementArgs {
            dim,
            form,
            material: MaterialArgs { nu, nu_sweep, lambda, mu },
            vertices,
            draws,
            seed,
            diagonal,
            out,
        }),
        Command::GammaMesh {
            mesh,
            form,
            nu,
            nu_sweep,
            lambda,
            mu,
            seed,
            out,
        } => gamma::cmd_gamma_mesh(MeshArgs {
            mesh,
            form,
            material: MaterialArgs { nu, nu_sweep, lambda, mu },
            seed,
            out,
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Violation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) | Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
