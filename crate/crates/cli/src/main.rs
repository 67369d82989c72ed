mod commands;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "hyperheat", version, about = "Heat flows on directed hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum InputFormat {
    Json,
    #[value(name = "incidence-csv", alias = "csv")]
    IncidenceCsv,
    #[value(name = "complex-json")]
    ComplexJson,
}

impl From<InputFormat> for hyperheat::io::Format {
    fn from(f: InputFormat) -> Self {
        match f {
            InputFormat::Json => Self::Json,
            InputFormat::IncidenceCsv => Self::IncidenceCsv,
            InputFormat::ComplexJson => Self::ComplexJson,
        }
    }
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Hypergraph or complex file.
    #[arg(short, long)]
    pub input: PathBuf,
    /// Input format; inferred from the extension when omitted.
    #[arg(long, value_enum)]
    pub format: Option<InputFormat>,
    /// Write the report here instead of stdout.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PropertyArg {
    Positivity,
    InfContractivity,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum UnionModeArg {
    CoOriented,
    Bipartite,
    Equipotent,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Laplacian ℒ = ℐℐᵀ and degree data.
    Laplacian(InputArgs),
    /// Eigenvalues, clusters and lowest eigenvector.
    Spectrum {
        #[command(flatten)]
        io: InputArgs,
        /// Also write the eigenvectors as CSV (one column per eigenvalue).
        #[arg(long)]
        vectors: Option<PathBuf>,
    },
    /// Order-theoretic classification of the heat semigroup.
    Classify {
        #[command(flatten)]
        io: InputArgs,
        /// Keep witnesses for true flags and the lowest projector.
        #[arg(long)]
        witnesses: bool,
        #[arg(long)]
        horizon: Option<f64>,
        /// Entry tolerance for sign tests.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Trajectory u(t) = e^{−tℒ}u₀ as CSV.
    Flow {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long, default_value_t = 0.0)]
        t0: f64,
        #[arg(long, default_value_t = 5.0)]
        t1: f64,
        #[arg(long, default_value_t = 200)]
        steps: usize,
        /// `ones`, `unit:<label>` or comma-separated values.
        #[arg(long, default_value = "ones")]
        u0: String,
        /// Write a gnuplot script plotting the CSV (requires --out).
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Threshold time after which positivity or ∞-contractivity holds.
    Threshold {
        #[command(flatten)]
        io: InputArgs,
        /// Both properties when omitted.
        #[arg(long, value_enum)]
        property: Option<PropertyArg>,
        #[arg(long)]
        horizon: Option<f64>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Dual hypergraph and dual Laplacian ℒ* = ℐᵀℐ.
    Dual(InputArgs),
    /// Laplacian with Dirichlet conditions outside the kept vertices.
    Dirichlet {
        #[command(flatten)]
        io: InputArgs,
        /// Comma-separated labels of the vertices kept free.
        #[arg(long, value_delimiter = ',', required = true)]
        keep: Vec<String>,
    },
    /// Spectrum of a graph united with one extra hyperedge.
    UnionLemma {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long, value_enum, default_value = "co-oriented")]
        mode: UnionModeArg,
        /// Labels of the source half (bipartite and equipotent modes).
        #[arg(long, value_delimiter = ',')]
        sources: Vec<String>,
    },
    /// Hodge Laplacian of a simplicial complex.
    Hodge {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long, default_value_t = 1)]
        degree: usize,
        /// Time for the rescaled-flow ∞-norm.
        #[arg(long, default_value_t = 50.0)]
        time: f64,
    },
    /// Cycle space and dual semigroup of a graph.
    GraphDual(InputArgs),
    /// Directed Fano plane realisations.
    Fano {
        #[command(subcommand)]
        action: FanoAction,
    },
    /// Eigenvalue enclosures.
    Bounds(InputArgs),
    /// Eventual domination of one semigroup by another.
    Dominate {
        /// Dominating hypergraph.
        #[command(flatten)]
        io: InputArgs,
        /// Dominated hypergraph.
        #[arg(long)]
        against: PathBuf,
        #[arg(long)]
        horizon: Option<f64>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum FanoAction {
    /// Enumerate all sign patterns and summarise them.
    Enumerate {
        /// Group Laplacians into permutation classes.
        #[arg(long)]
        classify: bool,
        /// CSV with one row per orientation, or per class with --classify.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => report(&e),
    }
}

fn report(e: &CliError) -> ExitCode {
    let diag = serde_json::json!({
        "schema_version": output::SCHEMA_VERSION,
        "error": { "kind": e.kind(), "message": e.to_string() },
    });
    eprintln!("{}", serde_json::to_string_pretty(&diag).expect("plain JSON"));
    ExitCode::from(e.exit_code())
}
