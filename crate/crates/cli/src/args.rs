//! Command-line surface.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graphfx_core::load_balance::LbParams;
use graphfx_core::traversal::{DirectionPolicy, MuEstimate, DEFAULT_DO_A, DEFAULT_DO_B};
use graphfx_core::Strategy;

use crate::dataset::GraphSpec;

pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Parser)]
#[command(name = "graphfx", version, about = "Frontier-based graph primitives benchmark harness")]
pub struct Cli {
    /// Worker threads; defaults to hardware parallelism.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Breadth-first search.
    Bfs(BfsArgs),
    /// Single-source shortest paths (delta-stepping).
    Sssp(SsspArgs),
    /// Single-source betweenness centrality.
    Bc(BcArgs),
    /// Connected components.
    Cc(CcArgs),
    /// PageRank.
    Pagerank(PagerankArgs),
    /// Triangle counting.
    Tc(TcArgs),
    /// BFS over a do_a x do_b grid, one CSV row per cell.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Estimate {
    Verbatim,
    EdgeScaled,
}

impl From<Estimate> for MuEstimate {
    fn from(e: Estimate) -> Self {
        match e {
            Estimate::Verbatim => MuEstimate::Verbatim,
            Estimate::EdgeScaled => MuEstimate::EdgeScaled,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceSpec {
    Vertex(u32),
    /// A fresh seeded draw for every run.
    Random,
}

impl FromStr for SourceSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "random" {
            return Ok(SourceSpec::Random);
        }
        s.parse()
            .map(SourceSpec::Vertex)
            .map_err(|_| format!("expected a vertex id or `random`, got `{s}`"))
    }
}

impl fmt::Display for SourceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SourceSpec::Vertex(v) => write!(f, "{v}"),
            SourceSpec::Random => f.write_str("random"),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GraphArgs {
    /// File path, `rmat:SCALE,EDGE_FACTOR` or `rgg:SCALE`.
    #[arg(long)]
    pub graph: GraphSpec,
    /// Keep edge direction instead of symmetrizing.
    #[arg(long)]
    pub directed: bool,
    /// Seed for generators, random weights and random sources.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct ExecArgs {
    /// thread_expand, twc, lb, lb_light, lb_cull or auto.
    #[arg(long, default_value = "auto")]
    pub traversal_mode: Strategy,
    /// TWC: lists at least this long go to sub-teams.
    #[arg(long)]
    pub small_cut: Option<usize>,
    /// TWC: lists at least this long go to full teams.
    #[arg(long)]
    pub large_cut: Option<usize>,
    /// Frontier size where the LB family moves to output balancing.
    #[arg(long)]
    pub light_threshold: Option<usize>,
}

impl ExecArgs {
    pub fn lb_params(&self) -> LbParams {
        let mut p = LbParams::default();
        if let Some(v) = self.small_cut {
            p.small_cut = v;
        }
        if let Some(v) = self.large_cut {
            p.large_cut = v;
        }
        if let Some(v) = self.light_threshold {
            p.light_threshold = v;
        }
        p
    }
}

#[derive(Debug, Clone, Args)]
pub struct ReportArgs {
    /// Timed repetitions.
    #[arg(long, default_value_t = 10)]
    pub iters: usize,
    /// Untimed runs before the repetitions.
    #[arg(long, default_value_t = 1)]
    pub warmup: usize,
    #[arg(long, value_enum, default_value = "table")]
    pub output: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BfsArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, default_value = "0")]
    pub source: SourceSpec,
    #[command(flatten)]
    pub exec: ExecArgs,
    #[arg(long, default_value = "push")]
    pub direction: DirectionPolicy,
    #[arg(long, default_value_t = DEFAULT_DO_A)]
    pub do_a: f64,
    #[arg(long, default_value_t = DEFAULT_DO_B)]
    pub do_b: f64,
    #[arg(long, value_enum, default_value = "verbatim")]
    pub mu_estimate: Estimate,
    /// Atomic-free discovery with an inexact filter.
    #[arg(long)]
    pub idempotent: bool,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SsspArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, default_value = "0")]
    pub source: SourceSpec,
    #[command(flatten)]
    pub exec: ExecArgs,
    /// Bucket width; defaults to ceil(32 * mean weight).
    #[arg(long)]
    pub delta: Option<u64>,
    #[arg(long)]
    pub no_priority_queue: bool,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Clone, Args)]
pub struct BcArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, default_value = "0")]
    pub source: SourceSpec,
    #[command(flatten)]
    pub exec: ExecArgs,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CcArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub exec: ExecArgs,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Clone, Args)]
pub struct PagerankArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub exec: ExecArgs,
    #[arg(long, default_value_t = 0.85)]
    pub damping: f64,
    /// Per-vertex convergence threshold; 0 runs all iterations in full.
    #[arg(long, default_value_t = 1e-6)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 100)]
    pub max_iters: usize,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Clone, Args)]
pub struct TcArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub exec: ExecArgs,
    /// Pairs with both lists shorter than this use the merge path.
    #[arg(long, default_value_t = graphfx_core::operators::DEFAULT_INTERSECT_CUT)]
    pub intersect_cut: usize,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub exec: ExecArgs,
    #[arg(long, value_delimiter = ',', default_values_t = [1e-5, 1e-4, 1e-3, 1e-2, 1e-1])]
    pub do_a: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_values_t = [0.01, 0.05, 0.1, 0.2, 0.5])]
    pub do_b: Vec<f64>,
    /// BFS runs per grid cell, each from a random source.
    #[arg(long, default_value_t = 25)]
    pub runs: usize,
    #[arg(long, default_value_t = 1)]
    pub warmup: usize,
    #[arg(long, value_enum, default_value = "verbatim")]
    pub mu_estimate: Estimate,
    #[arg(long)]
    pub idempotent: bool,
    #[arg(long, value_enum, default_value = "csv")]
    pub output: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
