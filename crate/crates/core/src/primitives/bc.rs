//! Betweenness centrality: Brandes dependency accumulation per source.

use std::sync::atomic::{AtomicU32, Ordering};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{atomic_vec, check_source, reached_edges, snapshot};
use crate::atomic::{compare_and_set, AtomicF64};
use crate::error::PrimitiveError;
use crate::frontier::{Frontier, UNVISITED};
use crate::graph::{CsrGraph, EdgeId, VertexId};
use crate::operators::{advance, compute, AdvanceConfig, AdvanceKind, Functor};
use crate::par;
use crate::stats::{elapsed_ms, IterationStats, Primitive, RunStats};
use crate::traversal::Direction;

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct BcOptions {
    pub advance: AdvanceConfig,
}

#[derive(Debug, Clone)]
pub struct BcResult {
    /// Summed dependencies over all sources (not halved for undirected graphs).
    pub bc_values: Vec<f64>,
    /// Shortest-path counts from the last source.
    pub sigma: Vec<f64>,
    /// BFS depths from the last source.
    pub labels: Vec<u32>,
    pub stats: RunStats,
}

struct Forward<'a> {
    labels: &'a [AtomicU32],
    sigma: &'a [AtomicF64],
    depth: u32,
}

impl Functor for Forward<'_> {
    /// Claims unvisited neighbors for the next level and adds the source's
    /// path count to every neighbor on that level. Only the claiming edge
    /// emits the vertex.
    #[inline]
    fn cond_edge(&self, src: VertexId, dst: VertexId, _edge: EdgeId) -> bool {
        let next = self.depth + 1;
        let claimed = compare_and_set(&self.labels[dst as usize], UNVISITED, next);
        if self.labels[dst as usize].load(Ordering::Relaxed) == next {
            self.sigma[dst as usize].fetch_add(self.sigma[src as usize].load());
        }
        claimed
    }
}

struct Backward<'a> {
    labels: &'a [AtomicU32],
    sigma: &'a [AtomicF64],
    delta: &'a [AtomicF64],
    contrib: &'a [AtomicF64],
}

impl Functor for Backward<'_> {
    /// Writes `sigma[v] / sigma[w] * (1 + delta[w])` for every successor edge
    /// `v -> w`; emits nothing.
    #[inline]
    fn cond_edge(&self, v: VertexId, w: VertexId, edge: EdgeId) -> bool {
        let (lv, lw) = (
            self.labels[v as usize].load(Ordering::Relaxed),
            self.labels[w as usize].load(Ordering::Relaxed),
        );
        if lw != UNVISITED && lw == lv + 1 {
            let c = self.sigma[v as usize].load() / self.sigma[w as usize].load() * (1.0 + self.delta[w as usize].load());
            self.contrib[edge as usize].store(c);
        }
        false
    }
}

/// Dependencies of every vertex for a single source.
pub fn bc(g: &CsrGraph, source: VertexId, opts: &BcOptions) -> Result<BcResult, PrimitiveError> {
    bc_sources(g, &[source], opts)
}

/// Sums dependencies over `sources`.
pub fn bc_sources(g: &CsrGraph, sources: &[VertexId], opts: &BcOptions) -> Result<BcResult, PrimitiveError> {
    for &s in sources {
        check_source(g, s)?;
    }
    let n = g.num_vertices();
    let m = g.num_edges();
    let mut stats = RunStats::new(Primitive::Bc);
    let mut bc_values = vec![0.0f64; n];
    let mut labels_out = vec![UNVISITED; n];
    let mut sigma_out = vec![0.0; n];

    let labels = atomic_vec(n, UNVISITED);
    let sigma: Vec<AtomicF64> = par::map_index(n, |_| AtomicF64::new(0.0));
    let delta: Vec<AtomicF64> = par::map_index(n, |_| AtomicF64::new(0.0));
    let contrib: Vec<AtomicF64> = par::map_index(m, |_| AtomicF64::new(0.0));

    let mut runtime = 0.0;
    let mut iteration = 0usize;
    for &source in sources {
        par::for_each_index(n, |v| {
            labels[v].store(UNVISITED, Ordering::Relaxed);
            sigma[v].store(0.0);
            delta[v].store(0.0);
        });
        let start = Instant::now();
        labels[source as usize].store(0, Ordering::Relaxed);
        sigma[source as usize].store(1.0);

        let mut levels = vec![Frontier::vertices(vec![source])];
        let mut depth = 0u32;
        loop {
            let t = Instant::now();
            let cur = levels.last().expect("source level");
            let f = Forward {
                labels: &labels,
                sigma: &sigma,
                depth,
            };
            let next = advance(g, cur, AdvanceKind::V2V, &opts.advance, &f)?;
            stats.record(IterationStats {
                iteration,
                frontier_in: cur.len(),
                frontier_out: next.len(),
                mode: Direction::Push,
                runtime_ms: elapsed_ms(t),
                unvisited: None,
            });
            iteration += 1;
            if next.is_empty() {
                break;
            }
            levels.push(next);
            depth += 1;
        }

        let back = Backward {
            labels: &labels,
            sigma: &sigma,
            delta: &delta,
            contrib: &contrib,
        };
        for level in levels.iter().rev() {
            let t = Instant::now();
            advance(g, level, AdvanceKind::V2E, &opts.advance, &back)?;
            compute(level, |v| {
                let lv = labels[v as usize].load(Ordering::Relaxed);
                let mut sum = 0.0;
                for e in g.edge_range(v) {
                    let w = g.column_indices()[e];
                    let lw = labels[w as usize].load(Ordering::Relaxed);
                    if lw != UNVISITED && lw == lv + 1 {
                        sum += contrib[e].load();
                    }
                }
                delta[v as usize].store(sum);
            });
            stats.record(IterationStats {
                iteration,
                frontier_in: level.len(),
                frontier_out: 0,
                mode: Direction::Push,
                runtime_ms: elapsed_ms(t),
                unvisited: None,
            });
            iteration += 1;
        }
        runtime += elapsed_ms(start);

        labels_out = snapshot(&labels);
        sigma_out = sigma.iter().map(AtomicF64::load).collect();
        for (v, b) in bc_values.iter_mut().enumerate() {
            if v != source as usize {
                *b += delta[v].load();
            }
        }
        stats.edges_traversed += reached_edges(g, &labels_out);
    }
    stats.finish(runtime);
    Ok(BcResult {
        bc_values,
        sigma: sigma_out,
        labels: labels_out,
        stats,
    })
}
