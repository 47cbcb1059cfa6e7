//! PageRank with a shrinking frontier of unconverged vertices.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::atomic::{AtomicF64, FixedAccumulator};
use crate::error::PrimitiveError;
use crate::frontier::Frontier;
use crate::graph::{CsrGraph, EdgeId, VertexId};
use crate::operators::{advance, compute, filter, AdvanceConfig, AdvanceKind, FilterMode, Functor, ItemCond};
use crate::par;
use crate::stats::{elapsed_ms, IterationStats, Primitive, RunStats};
use crate::traversal::Direction;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PagerankOptions {
    pub advance: AdvanceConfig,
    pub damping: f64,
    /// Per-vertex absolute change below which a vertex leaves the frontier.
    /// Zero keeps every vertex, making each iteration a plain power step.
    pub epsilon: f64,
    pub max_iters: usize,
}

impl Default for PagerankOptions {
    fn default() -> Self {
        Self {
            advance: AdvanceConfig::default(),
            damping: 0.85,
            epsilon: 1e-6,
            max_iters: 100,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PagerankResult {
    pub rank: Vec<f64>,
    pub iterations: usize,
    pub stats: RunStats,
}

/// Scatters `rank[src] / degree(src)` into each neighbor's accumulator.
struct Scatter<'a> {
    g: &'a CsrGraph,
    rank: &'a [AtomicF64],
    into: &'a [FixedAccumulator],
}

impl Functor for Scatter<'_> {
    #[inline]
    fn cond_edge(&self, src: VertexId, dst: VertexId, _edge: EdgeId) -> bool {
        self.into[dst as usize].add(self.rank[src as usize].load() / self.g.degree(src) as f64);
        false
    }
}

pub fn pagerank(g: &CsrGraph, opts: &PagerankOptions) -> Result<PagerankResult, PrimitiveError> {
    if !(opts.damping > 0.0 && opts.damping < 1.0) {
        return Err(PrimitiveError::InvalidOption(format!("damping {} outside (0, 1)", opts.damping)));
    }
    if opts.epsilon.is_nan() || opts.epsilon < 0.0 {
        return Err(PrimitiveError::InvalidOption("epsilon must be non-negative".into()));
    }
    let n = g.num_vertices();
    let mut stats = RunStats::new(Primitive::Pagerank);
    if n == 0 {
        stats.finish(0.0);
        return Ok(PagerankResult {
            rank: Vec::new(),
            iterations: 0,
            stats,
        });
    }
    let d = opts.damping;
    let base = (1.0 - d) / n as f64;
    let rank: Vec<AtomicF64> = par::map_index(n, |_| AtomicF64::new(1.0 / n as f64));
    let change: Vec<AtomicF64> = par::map_index(n, |_| AtomicF64::new(0.0));
    let incoming: Vec<FixedAccumulator> = par::map_index(n, |_| FixedAccumulator::new());
    // Contributions of vertices that already left the frontier.
    let frozen: Vec<FixedAccumulator> = par::map_index(n, |_| FixedAccumulator::new());
    let dangling: Vec<VertexId> = (0..n as u32).filter(|&v| g.degree(v) == 0).collect();

    let start = Instant::now();
    let mut frontier = Frontier::all_vertices(n);
    let mut iterations = 0;
    while !frontier.is_empty() && iterations < opts.max_iters {
        let t = Instant::now();
        par::for_each_index(n, |v| incoming[v].reset());
        let scatter = Scatter {
            g,
            rank: &rank,
            into: &incoming,
        };
        advance(g, &frontier, AdvanceKind::V2V, &opts.advance, &scatter)?;
        stats.edges_traversed += par::sum_index(frontier.len(), |i| g.degree(frontier.items()[i]) as u64);
        // Sequential so the sum is reproducible.
        let lost: f64 = dangling.iter().map(|&v| rank[v as usize].load()).sum();
        let spread = lost / n as f64;

        compute(&frontier, |v| {
            let v = v as usize;
            let next = base + d * (frozen[v].get() + incoming[v].get() + spread);
            change[v].store((next - rank[v].load()).abs());
            rank[v].store(next);
        });
        let next = filter(&frontier, &FilterMode::Exact, &ItemCond(|v: u32| change[v as usize].load() >= opts.epsilon));
        if next.len() < frontier.len() {
            let leaving = filter(&frontier, &FilterMode::Exact, &ItemCond(|v: u32| change[v as usize].load() < opts.epsilon));
            let freeze = Scatter {
                g,
                rank: &rank,
                into: &frozen,
            };
            advance(g, &leaving, AdvanceKind::V2V, &opts.advance, &freeze)?;
        }
        stats.record(IterationStats {
            iteration: iterations,
            frontier_in: frontier.len(),
            frontier_out: next.len(),
            mode: Direction::Push,
            runtime_ms: elapsed_ms(t),
            unvisited: None,
        });
        frontier = next;
        iterations += 1;
    }
    let runtime = elapsed_ms(start);
    stats.finish(runtime);
    Ok(PagerankResult {
        rank: rank.iter().map(AtomicF64::load).collect(),
        iterations,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::BuildOptions;

    #[test]
    fn triangle_is_uniform() {
        let g = CsrGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)], BuildOptions::undirected()).unwrap();
        let r = pagerank(&g, &PagerankOptions { epsilon: 1e-8, ..Default::default() }).unwrap();
        assert!(r.rank.iter().all(|&x| (x - 1.0 / 3.0).abs() < 1e-12));
    }

    #[test]
    fn single_vertex() {
        let g = CsrGraph::from_edges(1, &[], BuildOptions::undirected()).unwrap();
        let r = pagerank(&g, &PagerankOptions::default()).unwrap();
        assert!((r.rank[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn directed_path_one_step() {
        let g = CsrGraph::from_edges(3, &[(0, 1), (1, 2)], BuildOptions::directed()).unwrap();
        let r = pagerank(&g, &PagerankOptions { max_iters: 1, ..Default::default() }).unwrap();
        let third = 1.0 / 3.0;
        let base = 0.15 / 3.0;
        let spread = 0.85 * third / 3.0;
        let want = [base + spread, base + 0.85 * third + spread, base + 0.85 * third + spread];
        for (got, want) in r.rank.iter().zip(want) {
            assert!((got - want).abs() < 1e-15, "{got} vs {want}");
        }
        assert_eq!(r.iterations, 1);
    }

    #[test]
    fn bad_options() {
        let g = CsrGraph::from_edges(1, &[], BuildOptions::undirected()).unwrap();
        assert!(pagerank(&g, &PagerankOptions { damping: 1.0, ..Default::default() }).is_err());
        assert!(pagerank(&g, &PagerankOptions { epsilon: -1.0, ..Default::default() }).is_err());
        assert!(pagerank(&g, &PagerankOptions { epsilon: f64::NAN, ..Default::default() }).is_err());
    }
}
