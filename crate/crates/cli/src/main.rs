//! `croc`: JSON in, JSON out. Exit status 2 for unreadable input, 1 for a
//! failed verification (with a witness report on stdout).

mod commands;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "croc", version, about = "Two-line configuration spaces, CROCs and bialgebra deformation complexes")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Verb {
    #[command(subcommand)]
    Strata(StrataCmd),
    #[command(subcommand)]
    Bialg(BialgCmd),
    #[command(subcommand)]
    Croc(CrocCmd),
    #[command(subcommand)]
    Mho(MhoCmd),
    #[command(subcommand)]
    Quillen(QuillenCmd),
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand)]
enum StrataCmd {
    /// All strata of a profile, or the face poset with `--format dot`.
    Enum {
        #[arg(long)]
        profile: String,
    },
    /// Ranks, boundary check and homology of the cellular chain complex.
    Complex {
        #[arg(long)]
        profile: String,
    },
    /// The stratum a Laurent configuration converges to.
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// A configuration converging to the stratum with the given levels.
    Sample {
        #[arg(long)]
        profile: String,
        /// Comma-separated level per gap; relabeled to `0..d`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        levels: Vec<i64>,
    },
}

/// Where a bialgebra comes from.
#[derive(Args, Clone)]
struct BialgSource {
    #[arg(long = "bialg", conflicts_with = "builtin")]
    file: Option<PathBuf>,
    /// `c2`, `candidate` or `zero<dim>`.
    #[arg(long)]
    builtin: Option<String>,
}

#[derive(Subcommand)]
enum BialgCmd {
    /// The three axiom defects; fails when any is nonzero.
    Check {
        #[arg(long = "in", conflicts_with = "builtin")]
        input: Option<PathBuf>,
        #[arg(long)]
        builtin: Option<String>,
    },
}

#[derive(Subcommand)]
enum CrocCmd {
    /// `general_compose(x, y)` of two Hom-tensors.
    Compose {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
    },
}

#[derive(Subcommand)]
enum MhoCmd {
    Product {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
        #[arg(long, default_value_t = 2)]
        dim: usize,
    },
    /// The differential at a bialgebra point.
    D {
        #[arg(long)]
        x: PathBuf,
        #[command(flatten)]
        source: BialgSource,
    },
    /// Associativity of the product on random elements.
    Verify {
        #[arg(long, default_value_t = 4)]
        bound: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
    },
}

#[derive(Subcommand)]
enum QuillenCmd {
    /// Tensor algebra on the shifted dual of a dg algebra.
    Bar(DgInput),
    /// Free Lie algebra on the shifted dual of a commutative dg algebra.
    Cl(DgInput),
    /// Chevalley–Eilenberg cochains of a dg Lie algebra.
    Lc(DgInput),
    /// `℧ → bar → abelianization → free Lie`, exploratory.
    Pipeline {
        #[command(flatten)]
        source: BialgSource,
        #[arg(long, default_value_t = 3)]
        bound: usize,
        #[arg(long, default_value_t = 2)]
        max_weight: usize,
    },
}

#[derive(Args)]
struct DgInput {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value_t = 3)]
    max_weight: usize,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Every bundled suite.
    All {
        #[arg(long, default_value_t = 5)]
        bound: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
    },
}

pub enum Failure {
    /// Bad arguments or unreadable input.
    Input(String),
    /// A check failed; the report names the invariant and a witness.
    Verification(serde_json::Value),
    Runtime(String),
}

pub enum Output {
    Json(serde_json::Value),
    Text(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = commands::run(&cli);
    let (output, code) = match result {
        Ok(o) => (o, 0),
        Err(Failure::Verification(report)) => (Output::Json(report), 1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let text = match output {
        Output::Json(v) => serde_json::to_string_pretty(&v).expect("json values serialize") + "\n",
        Output::Text(s) => s,
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code)
}
