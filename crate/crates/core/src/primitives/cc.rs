//! Connected components by hooking and pointer jumping.

use std::sync::atomic::{AtomicU32, Ordering};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{atomic_vec, snapshot};
use crate::atomic::compare_and_set;
use crate::error::PrimitiveError;
use crate::frontier::Frontier;
use crate::graph::{CsrGraph, VertexId};
use crate::operators::{advance, filter, AdvanceConfig, AdvanceKind, EdgeCond, FilterMode, Functor, ItemCond};
use crate::par;
use crate::stats::{elapsed_ms, IterationStats, Primitive, RunStats};
use crate::traversal::Direction;

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct CcOptions {
    /// Used for the advance that builds the initial edge frontier.
    pub advance: AdvanceConfig,
}

#[derive(Debug, Clone)]
pub struct CcResult {
    /// Component id per vertex: the root vertex of its tree.
    pub component: Vec<VertexId>,
    pub num_components: usize,
    pub stats: RunStats,
}

/// Hooks one root onto the other across each edge whose endpoints are still
/// in different components; drops the rest.
struct Hook<'a> {
    component: &'a [AtomicU32],
    sources: &'a [VertexId],
    targets: &'a [VertexId],
    /// Odd rounds write the lower id into the higher root.
    odd: bool,
}

impl Functor for Hook<'_> {
    #[inline]
    fn cond_item(&self, e: u32) -> bool {
        let cu = self.component[self.sources[e as usize] as usize].load(Ordering::Relaxed);
        let cv = self.component[self.targets[e as usize] as usize].load(Ordering::Relaxed);
        if cu == cv {
            return false;
        }
        let (lo, hi) = (cu.min(cv), cu.max(cv));
        let (root, value) = if self.odd { (hi, lo) } else { (lo, hi) };
        // Only roots are rewritten, and every write in a round points the
        // same way, so no cycle can form.
        compare_and_set(&self.component[root as usize], root, value);
        true
    }
}

pub fn cc(g: &CsrGraph, opts: &CcOptions) -> Result<CcResult, PrimitiveError> {
    if !g.is_undirected() {
        return Err(PrimitiveError::DirectedInput("connected components"));
    }
    let n = g.num_vertices();
    let mut stats = RunStats::new(Primitive::Cc);
    let component = atomic_vec(n, 0);
    par::for_each_index(n, |v| component[v].store(v as u32, Ordering::Relaxed));
    let sources = g.edge_sources();
    let targets = g.column_indices();

    let start = Instant::now();
    // Each undirected edge once.
    let all_vertices = Frontier::all_vertices(n);
    let mut edges = advance(
        g,
        &all_vertices,
        AdvanceKind::V2E,
        &opts.advance,
        &EdgeCond(|u: VertexId, v: VertexId, _| u < v),
    )?;
    let mut round = 1usize;
    while !edges.is_empty() {
        let t = Instant::now();
        let before = edges.len();
        let hook = Hook {
            component: &component,
            sources,
            targets,
            odd: round % 2 == 1,
        };
        edges = filter(&edges, &FilterMode::Exact, &hook);

        let jump = ItemCond(|v: u32| {
            let p = component[v as usize].load(Ordering::Relaxed);
            let pp = component[p as usize].load(Ordering::Relaxed);
            if p != pp {
                component[v as usize].store(pp, Ordering::Relaxed);
                true
            } else {
                false
            }
        });
        let mut moving = filter(&all_vertices, &FilterMode::Exact, &jump);
        while !moving.is_empty() {
            moving = filter(&moving, &FilterMode::Exact, &jump);
        }
        stats.record(IterationStats {
            iteration: round - 1,
            frontier_in: before,
            frontier_out: edges.len(),
            mode: Direction::Push,
            runtime_ms: elapsed_ms(t),
            unvisited: None,
        });
        round += 1;
    }
    let runtime = elapsed_ms(start);

    let component = snapshot(&component);
    let num_components = par::sum_index(n, |v| (component[v] == v as u32) as u64) as usize;
    stats.edges_traversed = g.num_edges() as u64;
    stats.finish(runtime);
    Ok(CcResult {
        component,
        num_components,
        stats,
    })
}
