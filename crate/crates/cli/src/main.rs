//! `qwzeta`: zeta functions of Grover walks on graphs from the command line.
//!
//! Exit codes: 0 success, 1 invalid input, 2 a verified identity failed,
//! 3 a numeric evaluation does not converge.

mod absolute;
mod graphs;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use qwzeta_core::Error;

use input::GraphArgs;

#[derive(Parser, Debug)]
#[command(
    name = "qwzeta",
    version,
    about = "Zeta functions of Grover walks on graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EvalKind {
    /// `Z_f(w, s)` of a graph by decomposition and by the Mellin integral
    Absolute,
    /// Multiple gamma `Γ_r(x, ω)`
    Gamma,
    /// Multiple sine `S_r(x, ω)`
    Sine,
    /// Multiple Hurwitz zeta `ζ_r(w, x, ω)`
    Multizeta,
    /// Hurwitz zeta `ζ(w, x)`
    Hurwitz,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a family member or a random connected graph as an edge list
    Gen {
        /// Family spec such as `cycle:5`, `star:4`, `complete:4`, `bipartite:2,3`
        #[arg(long, conflicts_with = "random")]
        family: Option<qwzeta_core::GraphFamily>,
        /// Number of vertices of a random connected graph
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Probability of each extra edge beyond a random spanning tree
        #[arg(long, default_value_t = 0.4)]
        p: f64,
        /// Output file instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
        /// Also print the Grover matrix with `p/q` entries
        #[arg(long)]
        dump_matrix: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Grover zeta `1/det(I - uU)`, raw and factored over `u^k - 1`
    Zeta {
        #[command(flatten)]
        graph: GraphArgs,
        /// Largest `k` tried when factoring over `u^k - 1`
        #[arg(long)]
        kmax: Option<usize>,
        /// Also print the Grover matrix with `p/q` entries
        #[arg(long)]
        dump_matrix: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Ihara zeta by the determinant expression and by the positive support
    Ihara {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Exact spectrum of the Grover matrix with RW / RW^c parts
    Spectrum {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check the determinant, weight and Ihara identities
    Verify {
        #[command(flatten)]
        graph: GraphArgs,
        /// Verify every edge-list file in a directory, in parallel
        #[arg(long, conflicts_with_all = ["family", "input"])]
        batch: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Decompose the absolute zeta function into multiple gamma factors
    Abszeta {
        #[command(flatten)]
        graph: GraphArgs,
        /// Evaluate `Z_f(w, s)` at this `w` (needs `--s`)
        #[arg(long, requires = "s")]
        w: Option<Complex64>,
        /// Evaluate `ζ_f(s)` and the functional equation at this real `s`
        #[arg(long)]
        s: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate absolute, multiple gamma, multiple sine or Hurwitz values
    Eval {
        #[arg(long, value_enum)]
        kind: EvalKind,
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        w: Option<Complex64>,
        #[arg(long)]
        s: Option<Complex64>,
        #[arg(long, allow_negative_numbers = true)]
        x: Option<f64>,
        /// Comma-separated periods, e.g. `2,3`
        #[arg(long, value_delimiter = ',')]
        omega: Option<Vec<u64>>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// P_l table, truncated series and formal product for complete graphs
    Series {
        #[command(flatten)]
        graph: GraphArgs,
        /// Largest index in the P_l table
        #[arg(long, default_value_t = 20)]
        lmax: usize,
        #[arg(long, requires = "s")]
        w: Option<Complex64>,
        #[arg(long, requires = "w")]
        s: Option<Complex64>,
        /// Number of series terms
        #[arg(long, default_value_t = 400)]
        trunc: usize,
        /// Print the formal regularised product
        #[arg(long)]
        formal: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Successful runs either agree with every identity checked or report a
/// mismatch.
pub enum Status {
    Ok,
    Mismatch,
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    match cli.command {
        Command::Gen {
            family,
            random,
            seed,
            p,
            output,
            dump_matrix,
            format,
        } => graphs::gen(family, random, seed, p, output, dump_matrix, format),
        Command::Zeta {
            graph,
            kmax,
            dump_matrix,
            format,
        } => graphs::zeta(&graph, kmax, dump_matrix, format),
        Command::Ihara { graph, format } => graphs::ihara(&graph, format),
        Command::Spectrum { graph, format } => graphs::spectrum(&graph, format),
        Command::Verify {
            graph,
            batch,
            format,
        } => match batch {
            Some(dir) => graphs::verify_batch(&dir, format),
            None => graphs::verify(&graph, format),
        },
        Command::Abszeta {
            graph,
            w,
            s,
            format,
        } => absolute::abszeta(&graph, w, s, format),
        Command::Eval {
            kind,
            graph,
            w,
            s,
            x,
            omega,
            format,
        } => absolute::eval(kind, &graph, w, s, x, omega, format),
        Command::Series {
            graph,
            lmax,
            w,
            s,
            trunc,
            formal,
            format,
        } => absolute::series(&graph, lmax, w.zip(s), trunc, formal, format),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Convergence(_)) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Mismatch) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
