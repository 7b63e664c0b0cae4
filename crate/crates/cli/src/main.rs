//! `orthotree` command-line front end.

mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use orthotree::{Error, ErrorKind};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "orthotree", version, about = "Orthogonal tree decompositions: build, check, compress, lift, hunt cliques")]
pub struct Cli {
    /// Output format for graphs and decompositions.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for commands that run many independent seeds.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a graph: grid, complete-bipartite, complete-tripartite,
    /// subdivided-knn, add-dominant, shift, line-grid, universal-2tree.
    Gen(GenArgs),
    /// Validate the decompositions of a bundle against its graph.
    Check {
        /// Bundle file, or a decomposition file when --graph is given (`-` for stdin).
        input: String,
        #[arg(long)]
        graph: Option<String>,
    },
    /// Orthogonality of two decompositions: a bundle, or two decomposition files.
    Ortho {
        first: String,
        second: Option<String>,
        /// Fail with exit code 2 if the orthogonality exceeds this.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Known orthogonal pairs and the domino construction.
    Construct {
        #[command(subcommand)]
        which: Construct,
    },
    /// Compress a tree decomposition and a k-orthogonal weak path decomposition.
    Compress {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        tree: String,
        /// A weak path, path or layering decomposition.
        #[arg(long)]
        weakpath: String,
        #[arg(long)]
        k: usize,
    },
    /// Balanced separator from a tree decomposition.
    Separator {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        tree: String,
    },
    /// Lift a decomposition of the planarisation.
    Lift {
        #[arg(value_enum)]
        what: LiftKind,
        #[arg(long)]
        input: String,
        #[arg(long, value_enum, default_value_t = Base::Heuristic)]
        base: Base,
        /// Vertex cap for the exact base decomposition.
        #[arg(long, default_value_t = 16)]
        cap: usize,
    },
    /// Evaluate the closed-form bounds for the given parameters.
    Bounds(BoundArgs),
    /// Rectangle tools.
    Rect {
        #[command(subcommand)]
        which: RectCmd,
    },
    /// Box tools.
    Box {
        #[command(subcommand)]
        which: BoxCmd,
    },
    /// Exact oracles on small graphs.
    Oracle {
        #[arg(value_enum)]
        which: OracleKind,
        /// Graph file (`-` for stdin).
        graph: String,
        /// Vertex cap; defaults to the oracle's own.
        #[arg(long)]
        cap: Option<usize>,
    },
}

#[derive(Args, Debug)]
pub struct GenArgs {
    pub family: String,
    #[arg(long)]
    pub n: Option<i64>,
    #[arg(long)]
    pub a: Option<i64>,
    #[arg(long)]
    pub b: Option<i64>,
    /// Base graph file for add-dominant.
    #[arg(long)]
    pub base: Option<String>,
    #[arg(long)]
    pub q: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    /// Height of the universal 2-tree.
    #[arg(long)]
    pub h: Option<i64>,
    /// Branching of the universal 2-tree.
    #[arg(long)]
    pub d: Option<usize>,
    /// Edge cap for the universal 2-tree.
    #[arg(long)]
    pub cap: Option<u128>,
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    GridPair {
        #[arg(long)]
        n: usize,
    },
    KnnPair {
        #[arg(long)]
        n: usize,
    },
    /// Star decompositions of a bipartite graph.
    StarPair {
        #[arg(long)]
        graph: String,
    },
    SubdivPair {
        #[arg(long)]
        n: usize,
    },
    /// Domino path decomposition from a bundle holding a tree decomposition
    /// and a layering.
    Domino {
        #[arg(long)]
        input: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftKind {
    String,
    Drawing,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Base {
    Heuristic,
    Exact,
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long)]
    pub s: Option<u64>,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub g: Option<u64>,
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long)]
    pub tw: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum RectCmd {
    /// Classify every ordered pair i < j of a rectangle family.
    Classify { input: String },
    /// Test whether the family, in order, is hvo-alternating.
    Hvo { input: String },
    /// Hunt a k-clique down an oracle-realised universal 2-tree.
    Clique(CliqueArgs),
    /// Interval path decompositions of a rectangle family.
    ToPaths { input: String },
    /// Rectangles from a bundle with two path decompositions.
    FromPaths { input: String },
    /// Realise a universal 2-tree with rectangles, for `--oracle file:`.
    Realize {
        #[arg(long)]
        h: i64,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value = "random")]
        oracle: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        cap: Option<u128>,
    },
}

#[derive(Args, Debug)]
pub struct CliqueArgs {
    #[arg(long)]
    pub k: usize,
    /// random, stall-h, stall-v, corner, or file:<path>.
    #[arg(long, default_value = "random")]
    pub oracle: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Run this many consecutive seeds.
    #[arg(long)]
    pub count: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum BoxCmd {
    /// Extend a (2d+1)-clique of d-boxes to a k-clique.
    Clique {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        count: Option<u64>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleKind {
    Tw,
    Pw,
    Clique,
    Chi,
    Sep,
}

fn exit_code(kind: ErrorKind) -> u8 {
    match kind {
        ErrorKind::InvalidInput | ErrorKind::Procedure => 1,
        ErrorKind::Validation => 2,
        ErrorKind::CapExceeded => 3,
    }
}

fn kind_name(kind: ErrorKind) -> &'static str {
    match kind {
        ErrorKind::InvalidInput => "invalid_input",
        ErrorKind::Validation => "validation",
        ErrorKind::CapExceeded => "cap_exceeded",
        ErrorKind::Procedure => "procedure",
    }
}

fn report_error(kind: &str, message: &str, code: u8) -> ExitCode {
    let body = json!({"error": {"kind": kind, "message": message, "exit_code": code}});
    let _ = std::io::stderr().write_all(orthotree::io::to_pretty(&body).as_bytes());
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return report_error("usage", e.to_string().trim_end(), 1),
    };
    match commands::run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}

fn fail(e: &Error) -> ExitCode {
    let kind = e.kind();
    report_error(kind_name(kind), &e.to_string(), exit_code(kind))
}
