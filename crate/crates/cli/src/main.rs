//! `latshift`: lattice counts of randomly shifted integer polygons.

mod commands;
mod selfcheck;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "latshift", version, about = "Exact statistics of lattice points in shifted integer polygons")]
struct Cli {
    /// Worker threads for the parallel loops.
    #[arg(long, global = true, env = "LATSHIFT_THREADS")]
    threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistMethod {
    Exact,
    Triangle,
    Montecarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CovMethod {
    Theorem,
    Covariogram,
    Series,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Area, lattice counts, affine lengths, mean, variance and support bound.
    Analyze { polygon: PathBuf },
    /// Law of the count.
    Distribution {
        polygon: PathBuf,
        #[arg(long, value_enum, default_value_t = DistMethod::Exact)]
        method: DistMethod,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        shards: u32,
    },
    /// Covariance of the counts of two polygons under the same shift.
    Covariance {
        p: PathBuf,
        q: PathBuf,
        #[arg(long, value_enum, default_value_t = CovMethod::Theorem)]
        method: CovMethod,
        #[arg(long, default_value_t = 100)]
        radius: u32,
    },
    /// Monte Carlo tallies compared with the exact law.
    Simulate {
        polygon: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        shards: u32,
    },
    /// Fourier coefficients and the covariance series convergence table.
    Spectral {
        polygon: PathBuf,
        /// Second polygon for a cross-covariance table (defaults to the first).
        #[arg(long)]
        with: Option<PathBuf>,
        /// Coefficients are listed for every frequency with |m|_inf up to this.
        #[arg(long, default_value_t = 3)]
        max_freq: i64,
        #[arg(long, value_delimiter = ',', default_value = "10,50,100,200")]
        radii: Vec<u32>,
    },
    /// Overlap areas of A with the lattice translates of B.
    Covariogram { a: PathBuf, b: PathBuf },
    /// Runs the invariant suite over a seeded random corpus.
    Selfcheck {
        #[arg(long, default_value_t = 25)]
        corpus_size: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Perturbs one probability to show the checks catch it.
        #[arg(long)]
        sabotage: bool,
    },
}

/// A command's result: JSON document, CSV text, and whether it passed.
pub struct Output {
    pub json: Value,
    pub csv: String,
    pub ok: bool,
}

pub struct CliError {
    pub kind: String,
    pub message: String,
    pub line: Option<usize>,
}

impl From<latshift::Error> for CliError {
    fn from(e: latshift::Error) -> Self {
        let line = match &e {
            latshift::Error::Parse { line, .. } => Some(*line),
            _ => None,
        };
        CliError {
            kind: e.kind().to_string(),
            message: e.to_string(),
            line,
        }
    }
}

fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Analyze { polygon } => commands::analyze(&polygon),
        Command::Distribution {
            polygon,
            method,
            samples,
            seed,
            shards,
        } => commands::distribution(&polygon, method, samples, seed, shards),
        Command::Covariance { p, q, method, radius } => commands::covariance(&p, &q, method, radius),
        Command::Simulate {
            polygon,
            samples,
            seed,
            shards,
        } => commands::simulate(&polygon, samples, seed, shards),
        Command::Spectral {
            polygon,
            with,
            max_freq,
            radii,
        } => commands::spectral(&polygon, with.as_deref(), max_freq, &radii),
        Command::Covariogram { a, b } => commands::covariogram(&a, &b),
        Command::Selfcheck {
            corpus_size,
            seed,
            sabotage,
        } => Ok(selfcheck::run(corpus_size, seed, sabotage)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        // fails only if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let format = cli.format;
    match run(cli) {
        Ok(out) => {
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("valid JSON")),
                Format::Csv => print!("{}", out.csv),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let mut err = json!({ "kind": e.kind, "message": e.message });
            if let Some(line) = e.line {
                err["line"] = json!(line);
            }
            println!("{}", serde_json::to_string_pretty(&json!({ "error": err })).expect("valid JSON"));
            ExitCode::from(2)
        }
    }
}
