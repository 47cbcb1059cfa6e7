//! Repeated primitive execution.

use graphfx_core::primitives::{
    bc, bfs, cc, pagerank, sssp, tc, BcOptions, BfsOptions, CcOptions, PagerankOptions, SsspOptions, TcOptions,
};
use graphfx_core::{CsrGraph, RunStats, VertexId, UNVISITED};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::args::SourceSpec;
use crate::error::CliError;

/// A primitive together with its options.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "primitive", content = "options", rename_all = "snake_case")]
pub enum Job {
    Bfs(BfsOptions),
    Sssp(SsspOptions),
    Bc(BcOptions),
    Cc(CcOptions),
    Pagerank(PagerankOptions),
    Tc(TcOptions),
}

impl Job {
    pub fn needs_source(&self) -> bool {
        matches!(self, Job::Bfs(_) | Job::Sssp(_) | Job::Bc(_))
    }

    pub fn needs_weights(&self) -> bool {
        matches!(self, Job::Sssp(_))
    }
}

/// Small digest of a run's output, enough to spot a wrong answer.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    /// Vertices with a finite label.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reached: Option<u64>,
    /// Largest finite depth or distance.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_label: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_bc: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_sum: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triangles: Option<u64>,
}

fn label_summary(labels: &[u32]) -> Summary {
    let finite = labels.iter().filter(|&&l| l != UNVISITED);
    Summary {
        reached: Some(finite.clone().count() as u64),
        max_label: Some(finite.copied().max().unwrap_or(0) as u64),
        ..Summary::default()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunEntry {
    pub run: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<VertexId>,
    pub stats: RunStats,
    pub summary: Summary,
}

/// Runs `job` once. `source` is ignored by whole-graph primitives.
pub fn run_once(g: &CsrGraph, job: &Job, source: VertexId) -> Result<(RunStats, Summary), CliError> {
    Ok(match job {
        Job::Bfs(o) => {
            let r = bfs(g, source, o)?;
            (r.stats, label_summary(&r.labels))
        }
        Job::Sssp(o) => {
            let r = sssp(g, source, o)?;
            (r.stats, label_summary(&r.labels))
        }
        Job::Bc(o) => {
            let r = bc(g, source, o)?;
            let max_bc = r.bc_values.iter().copied().fold(0.0, f64::max);
            let summary = Summary {
                max_bc: Some(max_bc),
                ..label_summary(&r.labels)
            };
            (r.stats, summary)
        }
        Job::Cc(o) => {
            let r = cc(g, o)?;
            let summary = Summary {
                components: Some(r.num_components as u64),
                ..Summary::default()
            };
            (r.stats, summary)
        }
        Job::Pagerank(o) => {
            let r = pagerank(g, o)?;
            let summary = Summary {
                rank_sum: Some(r.rank.iter().sum()),
                ..Summary::default()
            };
            (r.stats, summary)
        }
        Job::Tc(o) => {
            let r = tc(g, o)?;
            let summary = Summary {
                triangles: Some(r.total_triangles),
                ..Summary::default()
            };
            (r.stats, summary)
        }
    })
}

/// Seeded stream of sources. Random draws skip isolated vertices when the
/// graph has any edges, so a run never degenerates to a single vertex.
pub struct Sources {
    spec: SourceSpec,
    candidates: Vec<VertexId>,
    rng: ChaCha8Rng,
}

impl Sources {
    pub fn new(g: &CsrGraph, spec: SourceSpec, seed: u64) -> Result<Self, CliError> {
        let mut candidates = Vec::new();
        if spec == SourceSpec::Random {
            let n = g.num_vertices() as u32;
            candidates = (0..n).filter(|&v| g.degree(v) > 0).collect();
            if candidates.is_empty() {
                candidates = (0..n).collect();
            }
            if candidates.is_empty() {
                return Err(CliError::Config("cannot draw a random source from an empty graph".into()));
            }
        }
        Ok(Self {
            spec,
            candidates,
            rng: ChaCha8Rng::seed_from_u64(seed),
        })
    }

    pub fn next_source(&mut self) -> VertexId {
        match self.spec {
            SourceSpec::Vertex(v) => v,
            SourceSpec::Random => self.candidates[self.rng.gen_range(0..self.candidates.len())],
        }
    }
}

/// Warmup runs followed by `iters` recorded runs.
pub fn run_benchmark(
    g: &CsrGraph,
    job: &Job,
    source: SourceSpec,
    iters: usize,
    warmup: usize,
    seed: u64,
) -> Result<Vec<RunEntry>, CliError> {
    if iters == 0 {
        return Err(CliError::Config("--iters must be at least 1".into()));
    }
    let mut sources = Sources::new(g, source, seed)?;
    for _ in 0..warmup {
        let s = sources.next_source();
        run_once(g, job, s)?;
    }
    (0..iters)
        .map(|run| {
            let s = sources.next_source();
            let (stats, summary) = run_once(g, job, s)?;
            Ok(RunEntry {
                run,
                source: job.needs_source().then_some(s),
                stats,
                summary,
            })
        })
        .collect()
}
