//! Report assembly and JSON / CSV / table emission.

use std::io::Write;

use graphfx_core::Primitive;
use serde::{Deserialize, Serialize};

use crate::dataset::GraphInfo;
use crate::error::CliError;
use crate::run::{Job, RunEntry};

/// Column order of the per-run CSV.
pub const RUN_CSV_HEADER: [&str; 10] = [
    "primitive",
    "graph",
    "run",
    "source",
    "runtime_ms",
    "preprocessing_ms",
    "edges_traversed",
    "mteps",
    "iterations",
    "direction_switches",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub job: Job,
    /// `random` or a vertex id; absent for whole-graph primitives.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    pub iters: usize,
    pub warmup: usize,
    pub seed: u64,
    pub threads: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeanStats {
    pub runs: usize,
    pub total_runtime_ms: f64,
    pub preprocessing_ms: f64,
    pub edges_traversed: f64,
    /// Mean of per-run MTEPS; null when any run has none.
    pub mteps: Option<f64>,
    pub iterations: f64,
    pub direction_switches: f64,
}

impl MeanStats {
    pub fn of(runs: &[RunEntry]) -> Self {
        let k = runs.len().max(1) as f64;
        let mean = |f: &dyn Fn(&RunEntry) -> f64| runs.iter().map(f).sum::<f64>() / k;
        let mteps = runs
            .iter()
            .map(|r| r.stats.mteps)
            .collect::<Option<Vec<f64>>>()
            .filter(|v| !v.is_empty())
            .map(|v| v.iter().sum::<f64>() / v.len() as f64);
        Self {
            runs: runs.len(),
            total_runtime_ms: mean(&|r| r.stats.total_runtime_ms),
            preprocessing_ms: mean(&|r| r.stats.preprocessing_ms),
            edges_traversed: mean(&|r| r.stats.edges_traversed as f64),
            mteps,
            iterations: mean(&|r| r.stats.iterations as f64),
            direction_switches: mean(&|r| r.stats.direction_switches as f64),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub primitive: Primitive,
    pub graph: GraphInfo,
    pub config: RunConfig,
    pub runs: Vec<RunEntry>,
    pub mean: MeanStats,
}

impl Report {
    pub fn new(graph: GraphInfo, config: RunConfig, runs: Vec<RunEntry>) -> Self {
        let primitive = runs.first().map(|r| r.stats.primitive).unwrap_or(match config.job {
            Job::Bfs(_) => Primitive::Bfs,
            Job::Sssp(_) => Primitive::Sssp,
            Job::Bc(_) => Primitive::Bc,
            Job::Cc(_) => Primitive::Cc,
            Job::Pagerank(_) => Primitive::Pagerank,
            Job::Tc(_) => Primitive::Tc,
        });
        let mean = MeanStats::of(&runs);
        Self {
            primitive,
            graph,
            config,
            runs,
            mean,
        }
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    primitive: &'a str,
    graph: &'a str,
    run: String,
    source: Option<u32>,
    runtime_ms: f64,
    preprocessing_ms: f64,
    edges_traversed: f64,
    mteps: Option<f64>,
    iterations: f64,
    direction_switches: f64,
}

fn encode(e: impl std::fmt::Display) -> CliError {
    CliError::Encode(e.to_string())
}

pub fn write_json(report: &Report, out: &mut dyn Write) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, report).map_err(encode)?;
    writeln!(out).map_err(encode)
}

/// One row per run followed by a `mean` row.
pub fn write_csv(report: &Report, out: &mut dyn Write) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    let name = report.primitive.name();
    for r in &report.runs {
        w.serialize(CsvRow {
            primitive: name,
            graph: &report.graph.name,
            run: r.run.to_string(),
            source: r.source,
            runtime_ms: r.stats.total_runtime_ms,
            preprocessing_ms: r.stats.preprocessing_ms,
            edges_traversed: r.stats.edges_traversed as f64,
            mteps: r.stats.mteps,
            iterations: r.stats.iterations as f64,
            direction_switches: r.stats.direction_switches as f64,
        })
        .map_err(encode)?;
    }
    let m = &report.mean;
    w.serialize(CsvRow {
        primitive: name,
        graph: &report.graph.name,
        run: "mean".into(),
        source: None,
        runtime_ms: m.total_runtime_ms,
        preprocessing_ms: m.preprocessing_ms,
        edges_traversed: m.edges_traversed,
        mteps: m.mteps,
        iterations: m.iterations,
        direction_switches: m.direction_switches,
    })
    .map_err(encode)?;
    w.flush().map_err(encode)
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.3}"))
}

pub fn write_table(report: &Report, out: &mut dyn Write) -> Result<(), CliError> {
    let g = &report.graph;
    let kind = if g.undirected { "undirected" } else { "directed" };
    let mut s = format!(
        "{} on {} ({} vertices, {} edges, {kind})\n",
        report.primitive, g.name, g.vertices, g.edges
    );
    s += &format!(
        "{:>5} {:>8} {:>12} {:>12} {:>12} {:>10} {:>6} {:>8}\n",
        "run", "source", "runtime_ms", "preproc_ms", "edges", "MTEPS", "iters", "switches"
    );
    for r in &report.runs {
        s += &format!(
            "{:>5} {:>8} {:>12.3} {:>12.3} {:>12} {:>10} {:>6} {:>8}\n",
            r.run,
            r.source.map_or_else(|| "-".to_string(), |v| v.to_string()),
            r.stats.total_runtime_ms,
            r.stats.preprocessing_ms,
            r.stats.edges_traversed,
            opt(r.stats.mteps),
            r.stats.iterations,
            r.stats.direction_switches,
        );
    }
    let m = &report.mean;
    s += &format!(
        "{:>5} {:>8} {:>12.3} {:>12.3} {:>12.0} {:>10} {:>6.1} {:>8.1}\n",
        "mean", "", m.total_runtime_ms, m.preprocessing_ms, m.edges_traversed, opt(m.mteps), m.iterations,
        m.direction_switches,
    );
    out.write_all(s.as_bytes()).map_err(encode)
}
