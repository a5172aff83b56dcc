//! Command-line front end: parse graphs, properads, and graphical sets, run
//! every checker, and export DOT renderings and JSON reports.
//!
//! Exit codes: 0 on success, 1 on a failed check (with a JSON witness
//! report), 2 on an input error (with line-numbered diagnostics).

mod dot;
mod run;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "properad-kit", version, about = "Wiring graphs, graph substitution, and properadic checkers")]
pub struct Cli {
    /// Vertex bound for truncations and exhaustive checks.
    #[arg(long, global = true, env = "PROPERAD_KIT_BOUND", default_value_t = 4)]
    pub bound: usize,
    /// Seed for randomized corpora.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Load inputs even when their law checks fail.
    #[arg(long, global = true)]
    pub force: bool,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the wiring-graph invariants of a graph file.
    Validate { file: PathBuf },
    /// List the isomorphisms between two graphs.
    Iso {
        a: PathBuf,
        b: PathBuf,
        /// strict preserves port and slot orders; weak forgets them.
        #[arg(long, default_value = "weak")]
        mode: String,
    },
    /// Substitute a guest graph into a vertex of a host graph.
    Substitute {
        host: PathBuf,
        guest: PathBuf,
        /// Host vertex to replace; boundary slots attach in port order.
        #[arg(long)]
        at: String,
    },
    /// Enumerate the coface maps into a graph as a JSON-lines trace.
    Cofaces { file: PathBuf },
    /// The codegeneracy collapsing a (1,1)-vertex.
    Codegen {
        file: PathBuf,
        #[arg(long)]
        at: String,
    },
    /// Factor a morphism (JSON) into a codegeneracy part and a coface part.
    Factor { file: PathBuf },
    /// Enumerate the morphisms between two graphs.
    Hom { source: PathBuf, target: PathBuf },
    /// Enumerate free-properad elements over a graph.
    Free {
        file: PathBuf,
        /// Boundary profile, e.g. "a,b;c" for inputs a,b and output c.
        #[arg(long)]
        profile: String,
        #[arg(long, default_value_t = 4)]
        max_vertices: usize,
    },
    /// Decorations of a graph by a properad, or with no graph the truncated
    /// nerve as a graphical-set JSON.
    Nerve {
        properad: PathBuf,
        graph: Option<PathBuf>,
    },
    /// Run the properad law checker.
    CheckProperad { file: PathBuf },
    /// Set-level Segal condition for a graphical set.
    CheckSegal { file: PathBuf },
    /// Inner horn filling for a graphical set.
    CheckInnerKan {
        file: PathBuf,
        /// Require exactly one filler per horn.
        #[arg(long)]
        unique: bool,
    },
    /// Nerve characterization: Segal plus properad reconstruction.
    IsNerve { file: PathBuf },
    /// Render a graph in DOT.
    ExportDot { file: PathBuf },
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run::run(cli));
}
