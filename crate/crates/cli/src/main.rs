//! `ahtk`: command-line front end for the graph homotopy toolkit.
//!
//! Exit codes: 0 success or affirmative answer, 1 sound negative answer,
//! 2 usage error, 3 invalid input or failed precondition, 4 search bound
//! exhausted without an answer.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "ahtk", version, about = "Discrete homotopy theory for graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Graph homomorphism checks.
    #[command(subcommand)]
    Hom(HomCmd),
    /// Build and inspect graphs.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Operations on stable paths.
    #[command(subcommand)]
    Path(PathCmd),
    /// Search for a homotopy certificate between two paths.
    Homotopic(HomotopicArgs),
    /// Decide whether the identity of a graph is homotopic to a constant map.
    Contractible(ContractibleArgs),
    /// Covering map checks.
    #[command(subcommand)]
    Cover(CoverCmd),
    /// Lift paths, homotopies and homomorphisms through a cover.
    #[command(subcommand)]
    Lift(LiftCmd),
    /// Winding number of a loop at [0] in C_k.
    Winding { k: i64, path: PathBuf },
    /// Fundamental group of cycles.
    #[command(subcommand)]
    Pi1(Pi1Cmd),
    /// Certificate validation.
    #[command(subcommand)]
    Cert(CertCmd),
}

#[derive(Debug, Subcommand)]
enum HomCmd {
    /// Check whether a map file is a graph homomorphism G1 → G2.
    Check {
        g1: String,
        g2: String,
        map: PathBuf,
        #[arg(long)]
        based: bool,
    },
}

#[derive(Debug, Subcommand)]
enum GraphCmd {
    /// Cartesian product of two graphs.
    Product { g1: String, g2: String },
    /// The cycle C_k with vertices [0] .. [k-1], based at [0].
    Cycle {
        #[arg(allow_negative_numbers = true)]
        k: i64,
    },
    /// The path I_n with vertices 0 .. n, based at 0.
    Path {
        #[arg(allow_negative_numbers = true)]
        n: i64,
    },
    /// Fail unless the graph has no 3-cycles and no 4-cycles.
    GirthGuard { graph: String },
}

/// A graph file, `cycle:<k>`, `path:<n>`, or `line` for the integer line.
#[derive(Debug, Args)]
struct SpaceArg {
    space: String,
}

#[derive(Debug, Subcommand)]
enum PathCmd {
    /// Rewrite a path in canonical form.
    Normalize {
        #[command(flatten)]
        space: SpaceArg,
        path: PathBuf,
    },
    /// `f · g`: g first, then f. f must start where g ends.
    Concat {
        #[command(flatten)]
        space: SpaceArg,
        f: PathBuf,
        g: PathBuf,
    },
    /// `i ↦ f(−i)`.
    Reverse {
        #[command(flatten)]
        space: SpaceArg,
        path: PathBuf,
    },
    /// `i ↦ f(i − n)`.
    Shift {
        #[command(flatten)]
        space: SpaceArg,
        path: PathBuf,
        #[arg(allow_negative_numbers = true)]
        n: i64,
    },
    /// Insert `left + right` copies of `f(b)` at `b` (output is not
    /// normalized).
    Pad {
        #[command(flatten)]
        space: SpaceArg,
        path: PathBuf,
        #[arg(allow_negative_numbers = true)]
        b: i64,
        left: u32,
        right: u32,
    },
}

#[derive(Debug, Args)]
struct HomotopicArgs {
    graph: String,
    p1: PathBuf,
    p2: PathBuf,
    #[arg(long)]
    max_len: usize,
    #[arg(long)]
    max_rows: usize,
    /// Also write the certificate square to this file.
    #[arg(long)]
    emit_cert: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ContractibleArgs {
    graph: String,
    /// Require every frame to fix this vertex.
    #[arg(long)]
    based: Option<String>,
    /// Write the contraction chain to this file.
    #[arg(long)]
    emit_chain: Option<PathBuf>,
}

/// `cyclic:<k>`, `mod:<n>:<k>`, or `map:<total>,<base>,<map-file>`.
#[derive(Debug, Args)]
struct CoverArg {
    cover: String,
}

#[derive(Debug, Subcommand)]
enum CoverCmd {
    /// Check that a cover specification is a local isomorphism.
    Check {
        #[command(flatten)]
        cover: CoverArg,
    },
}

#[derive(Debug, Subcommand)]
enum LiftCmd {
    /// Lift a path in the base starting at a vertex of the cover.
    Path {
        #[command(flatten)]
        cover: CoverArg,
        path: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        start: String,
    },
    /// Lift a homotopy square given a lift of its bottom row.
    Homotopy {
        #[command(flatten)]
        cover: CoverArg,
        square: PathBuf,
        #[arg(long)]
        bottom: PathBuf,
    },
    /// Lift a homomorphism K → base through a finite cover.
    Hom {
        #[command(flatten)]
        cover: CoverArg,
        k: String,
        map: PathBuf,
        #[arg(long)]
        start: String,
    },
}

#[derive(Debug, Subcommand)]
enum Pi1Cmd {
    /// Check winding(γ_n · γ_m) = n + m for |n|, |m| ≤ range. The cells are
    /// visited in an order drawn from `AHTK_SEED` (default 0).
    Verify {
        k: i64,
        #[arg(long)]
        range: u32,
    },
    /// Certify that two loops are homotopic, or that they are not.
    Certify {
        k: i64,
        p1: PathBuf,
        p2: PathBuf,
        #[arg(long)]
        emit_cert: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum CertCmd {
    /// Check a certificate square (or a `---` separated chain) from p1 to p2.
    Check {
        #[command(flatten)]
        space: SpaceArg,
        square: PathBuf,
        p1: PathBuf,
        p2: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
