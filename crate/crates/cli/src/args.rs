use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nestkit::gens::Family;

#[derive(Debug, Parser)]
#[command(name = "nestkit", version, about = "Nests of cycles in plane triangulations and drawings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Output format; `svg` renders the graph with the result highlighted.
    /// Defaults to `svg` for `render` and `json` otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads for batches of inputs.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write a run report (JSON) here.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Svg,
}

/// Input files; none or `-` reads standard input.
#[derive(Debug, Clone, Args)]
pub struct Inputs {
    pub inputs: Vec<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit a generated triangulation, or a drawing of it with `--crossings`.
    Gen {
        #[arg(value_parser = parse_family)]
        family: Family,
        /// One parameter, or width and height for `grid`.
        #[arg(required = true, num_args = 1..=2)]
        size: Vec<usize>,
        #[arg(long)]
        crossings: Option<usize>,
        #[arg(long, default_value_t = 0, requires = "crossings")]
        deletions: usize,
    },
    /// Find a nest of `k` cycles.
    FindNest {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        s: Option<usize>,
    },
    /// Refine to a standard tree decomposition of width below 12k, or a 0-nest.
    Decompose {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        k: usize,
    },
    /// Check a nest or a decomposition against a graph.
    Verify {
        graph: PathBuf,
        #[arg(long, conflicts_with = "decomposition", required_unless_present = "decomposition")]
        nest: Option<PathBuf>,
        #[arg(long)]
        decomposition: Option<PathBuf>,
        /// Also check the refinement bounds for this `k`.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Planarize a drawing and account for its faces.
    Planarize {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, default_value_t = 0)]
        r: u64,
        /// Fill non-triangular faces with apex vertices.
        #[arg(long)]
        fill: bool,
    },
    /// Find `t` consecutive nest cycles with crossing-free annuli.
    Clean {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        t: usize,
        /// Crossing budget; defaults to the drawing's crossing count.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0)]
        r: u64,
    },
    /// Bridges of the union of two nest cycles.
    Bridges {
        graph: PathBuf,
        #[arg(long)]
        nest: PathBuf,
        /// Index of the outer cycle of the pair.
        #[arg(long, default_value_t = 1)]
        c2: usize,
        #[arg(long, default_value_t = 3)]
        c4: usize,
        /// `auto` or a candidate index.
        #[arg(long, default_value = "auto")]
        omega: String,
        /// Also run the exhaustive minimality check.
        #[arg(long)]
        minimality: bool,
        #[arg(long)]
        max_oracle_vertices: Option<usize>,
    },
    /// Largest nest with `s` shared vertices, by exhaustive search.
    Oracle {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        max_oracle_vertices: Option<usize>,
    },
    /// Draw a graph or drawing as SVG.
    Render {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, conflicts_with = "decomposition")]
        nest: Option<PathBuf>,
        /// Highlight the rings of this decomposition.
        #[arg(long)]
        decomposition: Option<PathBuf>,
    },
    /// Nest sizes needed for crossing budget `k` and degree slack `r`.
    Budget {
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 0)]
        r: u64,
    },
}

pub fn parse_family(s: &str) -> Result<Family, String> {
    serde_json::from_value(serde_json::Value::String(s.replace('-', "_")))
        .map_err(|_| format!("unknown family {s:?} (concentric, bipyramid, one-nest, apollonian, grid, random)"))
}
