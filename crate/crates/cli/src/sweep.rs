//! do_a x do_b grid over direction-optimizing BFS.

use std::io::Write;

use graphfx_core::primitives::{bfs, BfsOptions};
use graphfx_core::traversal::DirectionPolicy;
use graphfx_core::CsrGraph;
use serde::{Deserialize, Serialize};

use crate::args::SourceSpec;
use crate::error::CliError;
use crate::run::Sources;

pub const SWEEP_CSV_HEADER: [&str; 7] = [
    "do_a",
    "do_b",
    "runs",
    "mean_runtime_ms",
    "mean_mteps",
    "mean_edges_traversed",
    "mean_direction_switches",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub do_a: f64,
    pub do_b: f64,
    pub runs: usize,
    pub mean_runtime_ms: f64,
    pub mean_mteps: Option<f64>,
    pub mean_edges_traversed: f64,
    pub mean_direction_switches: f64,
}

pub struct SweepPlan<'a> {
    pub base: BfsOptions,
    pub do_a: &'a [f64],
    pub do_b: &'a [f64],
    pub runs: usize,
    pub warmup: usize,
    pub seed: u64,
}

/// Every cell sees the same source sequence, so cells differ only in the
/// switching parameters.
pub fn sweep(g: &CsrGraph, plan: &SweepPlan<'_>) -> Result<Vec<SweepRow>, CliError> {
    if plan.runs == 0 {
        return Err(CliError::Config("--runs must be at least 1".into()));
    }
    if plan.do_a.is_empty() || plan.do_b.is_empty() {
        return Err(CliError::Config("empty do_a or do_b grid".into()));
    }
    let mut rows = Vec::with_capacity(plan.do_a.len() * plan.do_b.len());
    for &do_a in plan.do_a {
        for &do_b in plan.do_b {
            let opts = BfsOptions {
                direction: DirectionPolicy::Auto,
                do_a,
                do_b,
                ..plan.base
            };
            let mut sources = Sources::new(g, SourceSpec::Random, plan.seed)?;
            for _ in 0..plan.warmup {
                bfs(g, sources.next_source(), &opts)?;
            }
            let mut runtime = 0.0;
            let mut mteps = Some(0.0);
            let mut edges = 0.0;
            let mut switches = 0.0;
            for _ in 0..plan.runs {
                let st = bfs(g, sources.next_source(), &opts)?.stats;
                runtime += st.total_runtime_ms;
                mteps = mteps.zip(st.mteps).map(|(a, b)| a + b);
                edges += st.edges_traversed as f64;
                switches += st.direction_switches as f64;
            }
            let k = plan.runs as f64;
            rows.push(SweepRow {
                do_a,
                do_b,
                runs: plan.runs,
                mean_runtime_ms: runtime / k,
                mean_mteps: mteps.map(|x| x / k),
                mean_edges_traversed: edges / k,
                mean_direction_switches: switches / k,
            });
        }
    }
    Ok(rows)
}

pub fn write_csv(rows: &[SweepRow], out: &mut dyn Write) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Encode(e.to_string()))?;
    }
    w.flush().map_err(|e| CliError::Encode(e.to_string()))
}

pub fn write_table(rows: &[SweepRow], out: &mut dyn Write) -> Result<(), CliError> {
    let mut s = format!(
        "{:>10} {:>8} {:>5} {:>12} {:>10} {:>9}\n",
        "do_a", "do_b", "runs", "runtime_ms", "MTEPS", "switches"
    );
    for r in rows {
        s += &format!(
            "{:>10.1e} {:>8.3} {:>5} {:>12.3} {:>10} {:>9.2}\n",
            r.do_a,
            r.do_b,
            r.runs,
            r.mean_runtime_ms,
            r.mean_mteps.map_or_else(|| "-".to_string(), |x| format!("{x:.3}")),
            r.mean_direction_switches
        );
    }
    out.write_all(s.as_bytes()).map_err(|e| CliError::Encode(e.to_string()))
}
