//! Command-line front end for `sincbinom`.
//!
//! Exit codes: 0 success, 1 usage or domain error, 2 no convergence,
//! 3 at least one identity check failed.

mod commands;
mod output;
mod parse;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sincbinom::Complex;

#[derive(Parser, Debug)]
#[command(name = "sincbinom", version, about = "Generalized binomial coefficients through sinc series")]
struct Cli {
    /// Absolute and relative error target for series evaluations.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_terms: usize,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate C(w, z).
    Eval {
        #[arg(long, value_parser = parse::parse_complex, allow_hyphen_values = true)]
        w: Complex,
        #[arg(long, value_parser = parse::parse_complex, allow_hyphen_values = true)]
        z: Complex,
        /// gamma-ratio, finite-sum, sinc-series or auto
        #[arg(long, default_value = "auto")]
        method: String,
    },
    /// Tabulate C(w, x) on a real grid (CSV: x,re,im,abs_err).
    Table {
        #[arg(long, value_parser = parse::parse_complex, allow_hyphen_values = true, default_value = "1+1i")]
        w: Complex,
        #[arg(long, allow_hyphen_values = true, default_value_t = -2.0)]
        x_min: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 8.0)]
        x_max: f64,
        #[arg(long, default_value_t = 0.05)]
        step: f64,
    },
    /// ∫ C(w, x) f(x) dx by the coefficient series and by line quadrature.
    Integrate {
        #[arg(long, value_parser = parse::parse_complex, allow_hyphen_values = true)]
        w: Complex,
        #[command(flatten)]
        kernel: KernelArgs,
        /// Error target for the line quadrature.
        #[arg(long, default_value_t = 1e-6)]
        quad_tol: f64,
    },
    /// Check one identity at one point.
    Verify {
        /// antiderivative, cot, triple-product, rational-simple,
        /// rational-square, sech or sinc-representation
        #[arg(long)]
        identity: String,
        #[arg(long, value_parser = parse::parse_complex, allow_hyphen_values = true)]
        w: Option<Complex>,
        #[arg(long, value_parser = parse::parse_complex, allow_hyphen_values = true)]
        z: Option<Complex>,
        #[arg(long, value_parser = parse::parse_complex, allow_hyphen_values = true)]
        alpha: Option<Complex>,
    },
    /// Seeded random sweep over every identity.
    Battery {
        /// Samples per identity.
        #[arg(long, default_value_t = 50)]
        samples: usize,
        /// Worker threads; defaults to the number of cores.
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Args, Debug)]
pub struct KernelArgs {
    /// rational-simple, rational-square, sech, sinc-shift or tabulated
    #[arg(long)]
    pub kernel: String,
    /// Parameter of the rational and sech kernels.
    #[arg(long, value_parser = parse::parse_complex, allow_hyphen_values = true)]
    pub alpha: Option<Complex>,
    /// Shift of the sinc kernel.
    #[arg(long, value_parser = parse::parse_complex, allow_hyphen_values = true)]
    pub a: Option<Complex>,
    /// CSV file `xi,re,im` with the tabulated spectrum.
    #[arg(long)]
    pub spectrum: Option<PathBuf>,
}

/// What a command reports back to `main`.
pub enum Failure {
    Usage(String),
    NoConvergence(String),
    Checks(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::NoConvergence(_) => 2,
            Failure::Checks(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::NoConvergence(m) | Failure::Checks(m) => m,
        }
    }
}

impl From<sincbinom::Error> for Failure {
    fn from(e: sincbinom::Error) -> Self {
        match e {
            sincbinom::Error::NoConvergence { .. } => Failure::NoConvergence(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(format!("cannot write output: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    if !(cli.tol > 0.0) {
        return Err(Failure::Usage(format!("--tol must be positive, got {}", cli.tol)));
    }
    let opts = sincbinom::EvalOptions::default()
        .with_tol(cli.tol)
        .with_max_terms(cli.max_terms);
    let ctx = commands::Context {
        opts,
        out: cli.out.clone(),
        seed: cli.seed,
    };
    match cli.command {
        Command::Eval { w, z, method } => commands::eval(&ctx, cli.format.unwrap_or(Format::Json), w, z, &method),
        Command::Table { w, x_min, x_max, step } => {
            commands::table(&ctx, cli.format.unwrap_or(Format::Csv), w, x_min, x_max, step)
        }
        Command::Integrate { w, kernel, quad_tol } => {
            commands::integrate(&ctx, cli.format.unwrap_or(Format::Json), w, &kernel, quad_tol)
        }
        Command::Verify { identity, w, z, alpha } => {
            commands::verify(&ctx, cli.format.unwrap_or(Format::Json), &identity, w, z, alpha)
        }
        Command::Battery { samples, threads } => {
            commands::battery(&ctx, cli.format.unwrap_or(Format::Json), samples, threads)
        }
    }
}
