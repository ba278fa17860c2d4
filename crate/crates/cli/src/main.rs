//! Command-line front end for the spectral toolkit.
//!
//! Subcommands map one-to-one onto the library surface: `coeffs` prints
//! the Fourier coefficient/margin table, `spectrum` locates eigenvalue
//! pairs by shooting (optionally cross-checked against the truncated
//! matrix oracle), `check` runs one of the two coefficient-balance
//! criteria, `gram` measures basis conditioning on one window or a
//! nested dyadic sweep, `density` perturbs a potential across the
//! hypothesis-class boundary, and `counterexample` emits the lacunary
//! family as a potential file.
//!
//! Output is deterministic: identical invocations print byte-identical
//! reports.  Errors print one JSON line to stderr with a `class` of
//! `"config"` (exit 2: bad flags, malformed potential files, windows
//! the grid cannot resolve) or `"solver"` (exit 3: the computation
//! itself failed).

mod commands;
mod output;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hillspec::{BcCase, DensityTarget, Error, Potential, Result};

#[derive(Parser)]
#[command(
    name = "hillspec",
    version,
    about = "Spectral pair and basis diagnostics for Hill operators with trigonometric-polynomial potentials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Potential: a JSON file path, or an inline JSON object.
    #[arg(long, global = true)]
    potential: Option<String>,

    /// Boundary-condition case: 1 = periodic, 2 = antiperiodic.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    case: u8,

    /// Override the potential's smoothness index m.
    #[arg(long, global = true)]
    m: Option<u32>,

    /// First pair or coefficient index of the window.
    #[arg(long, global = true)]
    n0: Option<u32>,

    /// Last pair or coefficient index of the window.
    #[arg(long = "n-max", global = true)]
    n_max: Option<u32>,

    /// Spatial grid size for root-function sampling.
    #[arg(long, global = true)]
    grid: Option<usize>,

    /// Integrator tolerance.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol: f64,

    /// Dyadic drift bound for the band criterion.
    #[arg(long, global = true, default_value_t = 4.0)]
    theta: f64,

    /// Minimum ratio-growth slope for the scan criterion.
    #[arg(long = "sigma-min", global = true, default_value_t = 0.1)]
    sigma_min: f64,

    /// Coefficient floor below which scan candidates are discarded.
    #[arg(long = "c-floor", global = true, default_value_t = 1e-6)]
    c_floor: f64,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Fourier coefficient pairs with decay margins and ratios.
    Coeffs,
    /// Eigenvalue pairs located by shooting.
    Spectrum {
        /// Also compute the truncated-matrix spectrum and report deviations.
        #[arg(long = "oracle-compare")]
        oracle_compare: bool,
    },
    /// Run a coefficient-balance criterion and print the verdict.
    Check {
        /// Criterion to run: 1 = band bound, 2 = ratio-growth scan.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        theorem: u8,
    },
    /// Gram-matrix conditioning of normalized root functions.
    Gram {
        /// Sweep nested dyadic windows instead of a single one.
        #[arg(long)]
        sweep: bool,
    },
    /// Perturb the potential across the hypothesis-class boundary.
    Density {
        /// L1 budget for the perturbation.
        #[arg(long, default_value_t = 1e-3)]
        delta: f64,
        /// Which side of the boundary to land on.
        #[arg(long, value_enum, default_value_t)]
        target: Target,
    },
    /// Emit the lacunary counterexample family as a potential file.
    Counterexample {
        /// Decay exponent of the lower coefficients `c_{-n} = n^{-eps1}`.
        #[arg(long)]
        eps1: f64,
        /// Decay exponent of the upper coefficients `c_{n} = n^{-eps2}`.
        #[arg(long)]
        eps2: f64,
        /// Support cutoff (largest Fourier index kept).
        #[arg(long = "K")]
        k: Option<u32>,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Default, PartialEq, Eq, ValueEnum)]
enum Target {
    Basis,
    #[default]
    NonBasis,
}

impl From<Target> for DensityTarget {
    fn from(t: Target) -> Self {
        match t {
            Target::Basis => DensityTarget::BasisLike,
            Target::NonBasis => DensityTarget::NonBasisLike,
        }
    }
}

/// Read the potential argument: an inline JSON object or a file path.
fn load_potential(arg: &str, m_override: Option<u32>) -> Result<Potential> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg)?
    };
    let mut q = Potential::from_json_str(&text)?;
    if let Some(m) = m_override {
        q = q.with_smoothness(m);
    }
    Ok(q)
}

fn run(cli: &Cli) -> Result<commands::CommandOutput> {
    let bc = BcCase::from_label(cli.case)
        .ok_or_else(|| Error::InvalidParameter(format!("case must be 1 or 2, got {}", cli.case)))?;

    if let Command::Counterexample { eps1, eps2, k } = &cli.command {
        if cli.potential.is_some() {
            return Err(Error::InvalidParameter(
                "counterexample builds its own potential; drop --potential".into(),
            ));
        }
        return commands::counterexample(bc, *eps1, *eps2, k.unwrap_or(64), cli.m.unwrap_or(0));
    }

    let arg = cli.potential.as_deref().ok_or_else(|| {
        Error::InvalidParameter("--potential is required (file path or inline JSON)".into())
    })?;
    let q = load_potential(arg, cli.m)?;

    // Window defaults: pair windows start at the lowest admissible index
    // for the case; coefficient windows start at 1.
    let pair_n0 = cli.n0.unwrap_or(match bc {
        BcCase::Periodic => 1,
        BcCase::Antiperiodic => 0,
    });

    match &cli.command {
        Command::Coeffs => commands::coeffs(&q, bc, cli.n0.unwrap_or(1), cli.n_max.unwrap_or(16)),
        Command::Spectrum { oracle_compare } => commands::spectrum(
            &q,
            bc,
            pair_n0,
            cli.n_max.unwrap_or(16),
            cli.tol,
            *oracle_compare,
        ),
        Command::Check { theorem } => commands::check(
            &q,
            bc,
            *theorem,
            cli.n0.unwrap_or(1),
            cli.n_max.unwrap_or(64),
            cli.theta,
            cli.sigma_min,
            cli.c_floor,
        ),
        Command::Gram { sweep } => {
            if *sweep {
                commands::gram_sweep(&q, bc, pair_n0, cli.n_max.unwrap_or(64), cli.grid, cli.tol)
            } else {
                commands::gram(&q, bc, pair_n0, cli.n_max.unwrap_or(8), cli.grid, cli.tol)
            }
        }
        Command::Density { delta, target } => {
            if cli.format == Format::Csv {
                return Err(Error::InvalidParameter(
                    "density reports are nested; use --format json".into(),
                ));
            }
            commands::density(&q, bc, *delta, (*target).into(), cli.n_max.unwrap_or(64))
        }
        Command::Counterexample { .. } => unreachable!("handled above"),
    }
}

/// Split errors into operator mistakes (exit 2) and failed computations
/// (exit 3) so scripts can tell them apart.
fn classify(e: &Error) -> (u8, &'static str) {
    match e {
        Error::GridTooSmall { .. }
        | Error::InvalidParameter(_)
        | Error::BadPotentialFile(_)
        | Error::Json(_)
        | Error::Io(_) => (2, "config"),
        _ => (3, "solver"),
    }
}

/// Print the one-line JSON error report and return the exit code.
fn fail(e: &Error) -> ExitCode {
    let (code, class) = classify(e);
    let msg = serde_json::to_string(&e.to_string()).unwrap_or_else(|_| "\"unprintable\"".into());
    eprintln!("{{\"error\":{msg},\"class\":\"{class}\"}}");
    ExitCode::from(code)
}

fn execute(cli: &Cli) -> Result<()> {
    let report = run(cli)?;
    let rendered = match cli.format {
        Format::Json => {
            let mut s = output::render_json(&report.json);
            s.push('\n');
            s
        }
        Format::Csv => report.csv.ok_or_else(|| {
            Error::InvalidParameter("this report has no CSV projection; use --format json".into())
        })?,
    };
    match &cli.out {
        Some(path) => fs::write(path, &rendered)?,
        None => print!("{rendered}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&e),
    }
}
