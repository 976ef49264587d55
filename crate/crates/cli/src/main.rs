//! `sn-spectral`: batch front end for the symmetric-group toolkit.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::Format;

#[derive(Debug, Parser)]
#[command(name = "sn-spectral", version, about = "Exact Fourier analysis and edge-isoperimetry on S_n")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Seed for randomized families and searches; echoed into every report.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for parallel reductions.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Option<u16>,
    /// Omit the timestamp so identical inputs give identical bytes.
    #[arg(long, global = true)]
    pub deterministic: bool,
    /// Character-table cache directory (falls back to `SN_SPECTRAL_CACHE`).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
}

/// Where a permutation set comes from: a file, a family spec, or a lex segment.
#[derive(Debug, Clone, Args)]
pub struct SetInput {
    /// Degree; required with --family or --k.
    #[arg(long)]
    pub n: Option<usize>,
    /// Permutation-set file (`n=<degree>` header, one permutation per line).
    #[arg(long, conflicts_with_all = ["family", "k"])]
    pub set: Option<PathBuf>,
    /// Family spec such as `chain(t=1,m=2)` or `perturb(base=coset(t=1),swap=12,seed=7)`.
    #[arg(long, conflicts_with = "k")]
    pub family: Option<String>,
    /// Lexicographic initial segment of this size.
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Character table with the Σ dim² integrity line.
    Chartable {
        #[arg(long)]
        n: usize,
    },
    /// Kostka number K_{λ,μ}, or the decomposition of ξ_μ when --lambda is omitted.
    Kostka {
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        mu: String,
    },
    /// Isotypic weights of a set and its distance from the degree-t space.
    Project {
        #[command(flatten)]
        input: SetInput,
        #[arg(long)]
        t: usize,
    },
    /// Eigenvalues of a normal Cayley graph.
    Spectrum {
        #[arg(long)]
        n: usize,
        /// `transpositions`, `<k>-cycles`, or `;`-separated cycle types.
        #[arg(long, default_value = "transpositions")]
        generators: String,
    },
    /// Edge boundary in the transposition graph.
    Boundary {
        #[command(flatten)]
        input: SetInput,
    },
    /// Edge boundary with the spectral lower bounds.
    Bounds {
        #[command(flatten)]
        input: SetInput,
        #[arg(long)]
        t: usize,
    },
    /// Lex initial segments against the least boundary of each size.
    Lexcheck {
        #[arg(long)]
        n: usize,
        /// Enumerate every subset (n ≤ 4).
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        /// Random starts per size for the local search.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Closest union of t-cosets and the measured stability constants.
    Stability {
        #[command(flatten)]
        input: SetInput,
        #[arg(long)]
        t: usize,
        /// Number of cosets to fit instead of the rounded density.
        #[arg(long)]
        m: Option<usize>,
    },
    /// Spectrum of the coset-averaging operator, with a dense cross-check for n ≤ 6.
    Mcheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
    },
    /// Randomized check of the fourth-moment bound and the exact two-level optimum.
    H4check {
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 64)]
        grid: usize,
        #[arg(long, default_value = "0.01,0.99")]
        theta_range: String,
        #[arg(long, default_value = "0,0.5")]
        eta_range: String,
        /// θ for the exact optimum.
        #[arg(long, default_value = "1/4")]
        theta: String,
        /// η for the exact optimum; η/θ must be a rational square.
        #[arg(long, default_value = "1/16")]
        eta: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("sn-spectral: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
