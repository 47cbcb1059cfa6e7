//! Single-source shortest paths: frontier relaxation with a near/far queue.

use std::sync::atomic::{AtomicU32, AtomicU64, Ordering};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::check_source;
use crate::atomic::{compare_and_set, pack_label, unpack_label};
use crate::error::PrimitiveError;
use crate::frontier::{Frontier, UNVISITED};
use crate::graph::{CsrGraph, EdgeId, VertexId, INVALID_ID};
use crate::load_balance::Strategy;
use crate::operators::{advance, advance_filter, filter, AdvanceConfig, AdvanceKind, FilterMode, Functor, ItemCond};
use crate::par;
use crate::priority_queue::NearFarPile;
use crate::stats::{elapsed_ms, IterationStats, Primitive, RunStats};
use crate::traversal::Direction;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SsspOptions {
    pub advance: AdvanceConfig,
    /// Bucket width; `None` picks [`default_delta`].
    pub delta: Option<u64>,
    /// Off means a single unbounded bucket.
    pub priority_queue: bool,
}

impl Default for SsspOptions {
    fn default() -> Self {
        Self {
            advance: AdvanceConfig::default(),
            delta: None,
            priority_queue: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SsspResult {
    /// Shortest distance, [`UNVISITED`] if unreachable.
    pub labels: Vec<u32>,
    /// Smallest-id predecessor on a shortest path.
    pub preds: Vec<VertexId>,
    pub stats: RunStats,
}

/// `ceil(average edge weight * 32)`, at least 1.
pub fn default_delta(g: &CsrGraph) -> u64 {
    let m = g.num_edges();
    let avg = match g.edge_weights() {
        Some(w) if m > 0 => w.iter().map(|&x| x as f64).sum::<f64>() / m as f64,
        _ => 1.0,
    };
    ((avg * 32.0).ceil() as u64).max(1)
}

struct Relax<'a> {
    g: &'a CsrGraph,
    labels: &'a [AtomicU64],
    queue_ids: &'a [AtomicU32],
    stamp: u32,
}

impl Relax<'_> {
    #[inline]
    fn dist(&self, v: VertexId) -> u32 {
        unpack_label(self.labels[v as usize].load(Ordering::Relaxed)).0
    }
}

impl Functor for Relax<'_> {
    /// Update_Label: atomic min on the packed (distance, predecessor) pair.
    /// Passes only when the distance itself drops.
    #[inline]
    fn cond_edge(&self, src: VertexId, dst: VertexId, edge: EdgeId) -> bool {
        let new = self.dist(src).saturating_add(self.g.weight(edge)).min(UNVISITED - 1);
        let prev = self.labels[dst as usize].fetch_min(pack_label(new, src), Ordering::Relaxed);
        new < unpack_label(prev).0
    }

    /// Set_Pred: the predecessor travels with the label; only the queue
    /// stamp is left to record.
    #[inline]
    fn apply_edge(&self, _src: VertexId, dst: VertexId, _edge: EdgeId) {
        self.queue_ids[dst as usize].store(2 * self.stamp, Ordering::Relaxed);
    }

    /// Remove_Redundant: the first copy claims the stamp, later copies fail.
    #[inline]
    fn cond_item(&self, v: u32) -> bool {
        compare_and_set(&self.queue_ids[v as usize], 2 * self.stamp, 2 * self.stamp + 1)
    }
}

pub fn sssp(g: &CsrGraph, source: VertexId, opts: &SsspOptions) -> Result<SsspResult, PrimitiveError> {
    check_source(g, source)?;
    let delta = if opts.priority_queue {
        opts.delta.unwrap_or_else(|| default_delta(g))
    } else {
        u64::MAX
    };
    if delta == 0 {
        return Err(PrimitiveError::InvalidOption("delta must be positive".into()));
    }
    let n = g.num_vertices();
    let mut stats = RunStats::new(Primitive::Sssp);

    let labels: Vec<AtomicU64> = par::map_index(n, |_| AtomicU64::new(pack_label(UNVISITED, INVALID_ID)));
    let queue_ids: Vec<AtomicU32> = par::map_index(n, |_| AtomicU32::new(u32::MAX));
    // Distance each vertex was last expanded at; re-expanding at the same
    // distance is redundant.
    let expanded: Vec<AtomicU32> = par::map_index(n, |_| AtomicU32::new(UNVISITED));
    labels[source as usize].store(pack_label(0, INVALID_ID), Ordering::Relaxed);
    let dist = |v: u32| unpack_label(labels[v as usize].load(Ordering::Relaxed)).0;
    let key = |v: u32| dist(v) as u64;

    let start = Instant::now();
    let mut pile = NearFarPile::new(Frontier::vertices(vec![source]), delta);
    let mut iteration = 0u32;
    let mut edges = 0u64;
    loop {
        if pile.near.is_empty() {
            if pile.far.is_empty() {
                break;
            }
            pile.advance_bucket(key, |v| expanded[v as usize].load(Ordering::Relaxed) != dist(v))?;
            continue;
        }
        let iter_start = Instant::now();
        let fresh = ItemCond(|v: u32| expanded[v as usize].load(Ordering::Relaxed) != dist(v));
        let input = std::mem::replace(&mut pile.near, Frontier::vertices(vec![]));
        let input = filter(&input, &FilterMode::Exact, &fresh);
        par::for_each_index(input.len(), |i| {
            let v = input.items()[i];
            expanded[v as usize].store(dist(v), Ordering::Relaxed);
        });
        edges += par::sum_index(input.len(), |i| g.degree(input.items()[i]) as u64);

        let f = Relax {
            g,
            labels: &labels,
            queue_ids: &queue_ids,
            stamp: iteration,
        };
        let output = if opts.advance.strategy == Strategy::LbCull {
            advance_filter(g, &input, AdvanceKind::V2V, &opts.advance, &FilterMode::Exact, &f)?
        } else {
            let out = advance(g, &input, AdvanceKind::V2V, &opts.advance, &f)?;
            filter(&out, &FilterMode::Exact, &f)
        };
        pile.push_split(&output, key);
        stats.record(IterationStats {
            iteration: iteration as usize,
            frontier_in: input.len(),
            frontier_out: output.len(),
            mode: Direction::Push,
            runtime_ms: elapsed_ms(iter_start),
            unvisited: None,
        });
        iteration += 1;
    }
    let runtime = elapsed_ms(start);

    let (labels, preds): (Vec<u32>, Vec<u32>) = par::map_slice(&labels, |c| unpack_label(c.load(Ordering::Relaxed)))
        .into_iter()
        .unzip();
    stats.edges_traversed = edges;
    stats.finish(runtime);
    Ok(SsspResult { labels, preds, stats })
}
