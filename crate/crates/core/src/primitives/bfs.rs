//! Breadth-first search with optional direction optimization.

use std::sync::atomic::{AtomicU32, Ordering};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{atomic_vec, check_source, reached_edges, snapshot};
use crate::atomic::compare_and_set;
use crate::error::PrimitiveError;
use crate::frontier::{generate_unvisited_frontier, Frontier, StatusBitmap, UNVISITED};
use crate::graph::{CsrGraph, EdgeId, VertexId, INVALID_ID};
use crate::load_balance::Strategy;
use crate::operators::{advance, advance_filter, filter, AdvanceConfig, AdvanceKind, CullConfig, FilterMode, Functor};
use crate::stats::{elapsed_ms, IterationStats, Primitive, RunStats};
use crate::traversal::{pull_step, Direction, DirectionPolicy, DirectionState, MuEstimate, DEFAULT_DO_A, DEFAULT_DO_B};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BfsOptions {
    pub advance: AdvanceConfig,
    /// Discover vertices with plain stores and an inexact filter.
    pub idempotent: bool,
    pub direction: DirectionPolicy,
    pub do_a: f64,
    pub do_b: f64,
    pub estimate: MuEstimate,
    pub cull: CullConfig,
}

impl Default for BfsOptions {
    fn default() -> Self {
        Self {
            advance: AdvanceConfig::default(),
            idempotent: false,
            direction: DirectionPolicy::Push,
            do_a: DEFAULT_DO_A,
            do_b: DEFAULT_DO_B,
            estimate: MuEstimate::Verbatim,
            cull: CullConfig::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BfsResult {
    /// Hop count from the source, [`UNVISITED`] if unreachable.
    pub labels: Vec<u32>,
    /// A parent on some shortest path; [`INVALID_ID`] for the source and
    /// unreached vertices.
    pub preds: Vec<VertexId>,
    pub stats: RunStats,
}

struct Discover<'a> {
    labels: &'a [AtomicU32],
    preds: &'a [AtomicU32],
    visited: &'a StatusBitmap,
    depth: u32,
    idempotent: bool,
}

impl Functor for Discover<'_> {
    #[inline]
    fn cond_edge(&self, _src: VertexId, dst: VertexId, _edge: EdgeId) -> bool {
        if self.idempotent {
            !self.visited.get(dst)
        } else {
            compare_and_set(&self.labels[dst as usize], UNVISITED, self.depth + 1)
        }
    }

    #[inline]
    fn apply_edge(&self, src: VertexId, dst: VertexId, _edge: EdgeId) {
        if self.idempotent {
            self.labels[dst as usize].store(self.depth + 1, Ordering::Relaxed);
        }
        self.preds[dst as usize].store(src, Ordering::Relaxed);
    }

    #[inline]
    fn apply_item(&self, v: u32) {
        self.visited.set(v);
    }
}

/// Probes in-neighbors of unvisited vertices for one at the current depth.
struct Probe<'a> {
    labels: &'a [AtomicU32],
    preds: &'a [AtomicU32],
    visited: &'a StatusBitmap,
    depth: u32,
}

impl Functor for Probe<'_> {
    #[inline]
    fn cond_edge(&self, src: VertexId, _dst: VertexId, _edge: EdgeId) -> bool {
        self.labels[src as usize].load(Ordering::Relaxed) <= self.depth
    }

    #[inline]
    fn apply_edge(&self, src: VertexId, dst: VertexId, _edge: EdgeId) {
        self.labels[dst as usize].store(self.depth + 1, Ordering::Relaxed);
        self.preds[dst as usize].store(src, Ordering::Relaxed);
        self.visited.set(dst);
    }
}

pub fn bfs(g: &CsrGraph, source: VertexId, opts: &BfsOptions) -> Result<BfsResult, PrimitiveError> {
    check_source(g, source)?;
    if !(opts.do_a > 0.0 && opts.do_b > 0.0) {
        return Err(PrimitiveError::InvalidOption("do_a and do_b must be positive".into()));
    }
    let n = g.num_vertices();
    let mut stats = RunStats::new(Primitive::Bfs);
    let mut preprocessing = 0.0;

    let labels = atomic_vec(n, UNVISITED);
    let preds = atomic_vec(n, INVALID_ID);
    let visited = StatusBitmap::new(n);
    labels[source as usize].store(0, Ordering::Relaxed);
    visited.set(source);

    let filter_mode = if opts.idempotent {
        FilterMode::Inexact(opts.cull)
    } else {
        FilterMode::Exact
    };
    let mut state = DirectionState::new(n, g.num_edges(), opts.do_a, opts.do_b);
    state.estimate = opts.estimate;

    let start = Instant::now();
    let mut frontier = Frontier::vertices(vec![source]);
    let mut unvisited: Option<Frontier> = None;
    let mut depth = 0u32;
    while !frontier.is_empty() {
        let iter_start = Instant::now();
        state.observe(frontier.len());
        let unvisited_before = state.n_u;
        let mode = match opts.direction {
            DirectionPolicy::Push => Direction::Push,
            DirectionPolicy::Pull if depth == 0 => Direction::Push,
            DirectionPolicy::Pull => Direction::Pull,
            DirectionPolicy::Auto => state.step(),
        };
        state.mode = mode;

        let next = match mode {
            Direction::Push => {
                unvisited = None;
                let f = Discover {
                    labels: &labels,
                    preds: &preds,
                    visited: &visited,
                    depth,
                    idempotent: opts.idempotent,
                };
                if opts.advance.strategy == Strategy::LbCull {
                    advance_filter(g, &frontier, AdvanceKind::V2V, &opts.advance, &filter_mode, &f)?
                } else {
                    let out = advance(g, &frontier, AdvanceKind::V2V, &opts.advance, &f)?;
                    filter(&out, &filter_mode, &f)
                }
            }
            Direction::Pull => {
                if !g.has_reverse() {
                    let t = Instant::now();
                    g.reverse();
                    preprocessing += elapsed_ms(t);
                }
                let candidates = match unvisited.take() {
                    Some(u) => u,
                    None => generate_unvisited_frontier(&snapshot(&labels)),
                };
                let f = Probe {
                    labels: &labels,
                    preds: &preds,
                    visited: &visited,
                    depth,
                };
                let (active, rest) = pull_step(g, &candidates, &opts.advance, &f)?;
                unvisited = Some(rest);
                active
            }
        };
        stats.record(IterationStats {
            iteration: depth as usize,
            frontier_in: frontier.len(),
            frontier_out: next.len(),
            mode,
            runtime_ms: elapsed_ms(iter_start),
            unvisited: Some(unvisited_before),
        });
        frontier = next;
        depth += 1;
    }
    let runtime = elapsed_ms(start) - preprocessing;

    let labels = snapshot(&labels);
    stats.preprocessing_ms = preprocessing;
    stats.edges_traversed = reached_edges(g, &labels);
    stats.finish(runtime.max(0.0));
    Ok(BfsResult {
        labels,
        preds: snapshot(&preds),
        stats,
    })
}
