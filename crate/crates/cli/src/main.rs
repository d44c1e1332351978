use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod error;

use error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "mahler",
    version,
    about = "Mahler measures of linear forms and 3-step ramble integrals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Binary working precision.
    #[arg(long, global = true, env = "MAHLER_BITS", default_value_t = 512)]
    pub bits: u32,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Displayed significant digits (decimal places for `table`); internal precision is unaffected.
    #[arg(long, global = true)]
    pub digits: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    E1,
    E2,
    Cm,
    Quad,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableArg {
    Values,
    Sdl,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Logarithmic Mahler measure of W0 Z0 + … + Wn Zn.
    Mahler {
        /// Comma-separated coefficients, e.g. `3,2,1`, `sqrt(2),1,1`, `1+i,1,e`.
        #[arg(long)]
        d: String,
        #[arg(long, value_enum, default_value_t = MethodArg::E2)]
        method: MethodArg,
        #[arg(long = "N", default_value_t = 200)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        l: u32,
        /// Lattice size for `--method quad`.
        #[arg(long, default_value_t = 2048)]
        grid: usize,
        /// Bounding constant attached to the error bound.
        #[arg(long = "a-d", default_value_t = 1.0)]
        a_d: f64,
    },
    /// Density p3(a) = a·I(a) of a 3-step walk: one point, a curve, or a Monte Carlo histogram.
    Density {
        #[arg(long)]
        steps: String,
        #[arg(long)]
        a: Option<String>,
        /// Curve points per interval between non-differentiability points.
        #[arg(long, default_value_t = 32)]
        points: usize,
        /// Curve points closer than this to a divergence point are dropped.
        #[arg(long, default_value_t = 1e-3)]
        exclusion: f64,
        /// Emit a Monte Carlo histogram with this many samples instead of the curve.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0.05)]
        bin_width: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Oscillatory quadrature with this many windows, alongside the closed form at `--a`.
        #[arg(long)]
        periods: Option<usize>,
    },
    /// Coefficients a(n,0…N,D).
    Coeffs {
        #[arg(long)]
        d: String,
        #[arg(long = "N", default_value_t = 200)]
        n: usize,
    },
    /// Shifted inner series S_D(l) truncated at N.
    Sdl {
        #[arg(long)]
        d: String,
        #[arg(long, default_value_t = 1)]
        l: u32,
        #[arg(long = "N", default_value_t = 200)]
        n: usize,
    },
    /// Experimental constant C = max |m − E2(N)|·√N.
    EstimateC {
        #[arg(long)]
        d: String,
        #[arg(long, default_value_t = 1)]
        l: u32,
        #[arg(long = "N", default_value_t = 200)]
        n: usize,
        /// Reference value of m; defaults to the closed form for n = 2.
        #[arg(long)]
        reference: Option<String>,
    },
    /// Oracle-agreement suite; exits 1 if any check fails.
    Validate {
        #[arg(long = "N", default_value_t = 200)]
        n: usize,
        #[arg(long, default_value_t = 2048)]
        grid: usize,
        #[arg(long, default_value_t = 2000)]
        periods: usize,
        #[arg(long, default_value_t = 4_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Reproduce the value table or the S_D(l) table.
    Table {
        #[arg(value_enum)]
        which: TableArg,
        #[arg(long = "N", default_value_t = 200)]
        n: usize,
    },
}

fn emit(path: Option<&PathBuf>, body: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, body)?,
        None => io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = commands::run(&cli.command, &cli.common).and_then(|out| {
        emit(cli.common.out.as_ref(), &out.body)?;
        Ok(out.failed)
    });
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("mahler: {e}");
            ExitCode::from(e.code())
        }
    }
}
