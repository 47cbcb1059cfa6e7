//! Advance: expand a frontier to the neighbors of its items.
//!
//! Push advance runs in two stages. A scan of neighbor-list lengths gives
//! every visited edge a fixed output slot; a load-balance plan then splits
//! the slots into chunks that are expanded in parallel, each worker writing
//! its own disjoint slots. Edges rejected by `cond_edge` leave a hole that a
//! final compaction removes.
//!
//! `LbCull` skips the slot array: workers buffer survivors locally and claim
//! output space with an atomic cursor, optionally filtering in the same pass.

use std::ops::Range;
use std::ptr;
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

use super::filter::{filter, Culler, FilterMode};
use super::Functor;
use crate::error::OperatorError;
use crate::frontier::{Frontier, FrontierKind, StatusBitmap};
use crate::graph::{CsrGraph, EdgeId, VertexId, INVALID_ID};
use crate::load_balance::{build_plan, walk_slots, Chunk, LbParams, LoadBalancePlan, Strategy};
use crate::par;

/// Smallest slot range handed to a worker inside a cooperative chunk.
const MIN_LANE: usize = 512;
/// Capacity of a worker's local buffer before it flushes to the shared output.
const LOCAL_BUFFER: usize = 1024;

/// Input and output frontier kinds of an advance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AdvanceKind {
    V2V,
    V2E,
    E2V,
    E2E,
}

impl AdvanceKind {
    pub fn input(self) -> FrontierKind {
        match self {
            AdvanceKind::V2V | AdvanceKind::V2E => FrontierKind::Vertex,
            AdvanceKind::E2V | AdvanceKind::E2E => FrontierKind::Edge,
        }
    }

    pub fn output(self) -> FrontierKind {
        match self {
            AdvanceKind::V2V | AdvanceKind::E2V => FrontierKind::Vertex,
            AdvanceKind::V2E | AdvanceKind::E2E => FrontierKind::Edge,
        }
    }
}

/// Traversal direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Push,
    Pull,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdvanceConfig {
    pub strategy: Strategy,
    pub lb: LbParams,
    /// Build the reverse adjacency on first pull instead of failing.
    pub auto_build_reverse: bool,
}

impl Default for AdvanceConfig {
    fn default() -> Self {
        Self {
            strategy: Strategy::Auto,
            lb: LbParams::default(),
            auto_build_reverse: true,
        }
    }
}

impl AdvanceConfig {
    pub fn with_strategy(strategy: Strategy) -> Self {
        Self {
            strategy,
            ..Self::default()
        }
    }
}

fn check_kind(operator: &'static str, expected: FrontierKind, f: &Frontier) -> Result<(), OperatorError> {
    if f.kind() != expected {
        return Err(OperatorError::KindMismatch {
            operator,
            expected,
            found: f.kind(),
        });
    }
    Ok(())
}

/// Everything a worker needs to turn an output slot into an edge visit.
struct Expansion<'a, F: ?Sized> {
    g: &'a CsrGraph,
    items: &'a [u32],
    offsets: &'a [usize],
    kind: AdvanceKind,
    f: &'a F,
}

impl<F: Functor + ?Sized> Expansion<'_, F> {
    /// Visits `slots` of `chunk`, calling `emit` with the output id of every
    /// edge that passes `cond_edge` (after `apply_edge`), or `None`.
    #[inline]
    fn visit(&self, inputs: Range<usize>, slots: Range<usize>, mut emit: impl FnMut(usize, Option<u32>)) {
        walk_slots(self.offsets, inputs, slots, |idx, slot| {
            let item = self.items[idx];
            let src: VertexId = match self.kind.input() {
                FrontierKind::Vertex => item,
                FrontierKind::Edge => self.g.edge_target(item),
            };
            let e = self.g.row_offsets()[src as usize] + (slot - self.offsets[idx]);
            let edge = e as EdgeId;
            let dst = self.g.column_indices()[e];
            let out = if self.f.cond_edge(src, dst, edge) {
                self.f.apply_edge(src, dst, edge);
                Some(match self.kind.output() {
                    FrontierKind::Vertex => dst,
                    FrontierKind::Edge => edge,
                })
            } else {
                None
            };
            emit(slot, out);
        });
    }
}

/// Worker ranges for a chunk: its lanes, merged up to [`MIN_LANE`] slots.
fn exec_lanes(chunk: &Chunk) -> Vec<Range<usize>> {
    let len = chunk.output.len();
    if chunk.width <= 1 || len <= MIN_LANE {
        return vec![chunk.output.clone()];
    }
    let stripe = len.div_ceil(chunk.width).max(MIN_LANE);
    (chunk.output.start..chunk.output.end)
        .step_by(stripe)
        .map(|s| s..(s + stripe).min(chunk.output.end))
        .collect()
}

/// Push advance: every edge out of the input items whose `cond_edge` holds
/// contributes its destination (V2V/E2V) or edge id (V2E/E2E) to the output.
///
/// `apply_edge` runs exactly once per passing edge. Under `Strategy::LbCull`
/// the atomic-cursor writer is used; the other strategies write exact slots.
pub fn advance<F: Functor + ?Sized>(
    g: &CsrGraph,
    input: &Frontier,
    kind: AdvanceKind,
    cfg: &AdvanceConfig,
    f: &F,
) -> Result<Frontier, OperatorError> {
    check_kind("advance", kind.input(), input)?;
    if input.is_empty() {
        return Ok(Frontier::new(kind.output()));
    }
    let plan = build_plan(g, input, cfg.strategy, &cfg.lb);
    if plan.strategy == Strategy::LbCull {
        return Ok(expand_culled(g, input, kind, &plan, None, f));
    }
    let slots = expand_slots(g, input, kind, &plan, f);
    Ok(Frontier::from_vec(
        kind.output(),
        par::compact(&slots, |_, &x| x != INVALID_ID),
    ))
}

/// Runs the plan into a slot array of length `total_output`, one entry per
/// visited edge: the output id, or [`INVALID_ID`] where `cond_edge` failed.
pub fn expand_slots<F: Functor + ?Sized>(
    g: &CsrGraph,
    input: &Frontier,
    kind: AdvanceKind,
    plan: &LoadBalancePlan,
    f: &F,
) -> Vec<u32> {
    let mut slots = vec![INVALID_ID; plan.total_output()];
    let ex = Expansion {
        g,
        items: input.items(),
        offsets: &plan.scan.offsets,
        kind,
        f,
    };

    // Chunks tile the slot range, so sorting by start lets us hand each lane a
    // disjoint mutable slice.
    let mut tasks: Vec<(Range<usize>, Range<usize>, &mut [u32])> = Vec::new();
    let mut rest: &mut [u32] = &mut slots;
    let mut cursor = 0usize;
    for ci in plan.chunks_by_output() {
        let chunk = &plan.chunks[ci];
        debug_assert_eq!(chunk.output.start, cursor, "plan chunks must tile the output");
        for lane in exec_lanes(chunk) {
            let (head, tail) = std::mem::take(&mut rest).split_at_mut(lane.len());
            cursor = lane.end;
            tasks.push((chunk.inputs.clone(), lane, head));
            rest = tail;
        }
    }
    debug_assert!(rest.is_empty());

    par::for_each_task(tasks, |(inputs, lane, dst)| {
        let base = lane.start;
        ex.visit(inputs, lane, |slot, out| {
            dst[slot - base] = out.unwrap_or(INVALID_ID);
        });
    });
    slots
}

/// Shared output written through an atomic cursor.
struct Sink {
    ptr: *mut u32,
    cap: usize,
    cursor: AtomicUsize,
}

// Safety: writers only touch the disjoint ranges handed out by `cursor`.
unsafe impl Sync for Sink {}

impl Sink {
    fn append(&self, items: &[u32]) {
        if items.is_empty() {
            return;
        }
        let start = self.cursor.fetch_add(items.len(), Ordering::Relaxed);
        assert!(start + items.len() <= self.cap, "output overflow");
        // Safety: [start, start + len) was reserved exclusively above and lies
        // within the allocation of `cap` elements.
        unsafe { ptr::copy_nonoverlapping(items.as_ptr(), self.ptr.add(start), items.len()) };
    }
}

struct LocalBuffer<'a> {
    sink: &'a Sink,
    items: Vec<u32>,
}

impl LocalBuffer<'_> {
    #[inline]
    fn push(&mut self, id: u32) {
        self.items.push(id);
        if self.items.len() == LOCAL_BUFFER {
            self.sink.append(&self.items);
            self.items.clear();
        }
    }
}

impl Drop for LocalBuffer<'_> {
    fn drop(&mut self) {
        self.sink.append(&self.items);
    }
}

/// Post-advance filtering applied inside the fused pass.
enum Cull<'a> {
    None,
    Exact(&'a StatusBitmap),
    Inexact(&'a StatusBitmap, super::CullConfig),
}

fn expand_culled<F: Functor + ?Sized>(
    g: &CsrGraph,
    input: &Frontier,
    kind: AdvanceKind,
    plan: &LoadBalancePlan,
    mode: Option<&FilterMode>,
    f: &F,
) -> Frontier {
    let total = plan.total_output();
    let mut out: Vec<u32> = vec![0; total];
    let sink = Sink {
        ptr: out.as_mut_ptr(),
        cap: total,
        cursor: AtomicUsize::new(0),
    };
    let universe = match kind.output() {
        FrontierKind::Vertex => g.num_vertices(),
        FrontierKind::Edge => g.num_edges(),
    };
    let bitmap = StatusBitmap::new(if mode.is_some() { universe } else { 0 });
    let cull = match mode {
        None => Cull::None,
        Some(FilterMode::Exact) => Cull::Exact(&bitmap),
        Some(FilterMode::Inexact(cfg)) => Cull::Inexact(&bitmap, *cfg),
    };
    let ex = Expansion {
        g,
        items: input.items(),
        offsets: &plan.scan.offsets,
        kind,
        f,
    };
    let tasks: Vec<(Range<usize>, Range<usize>)> = plan
        .chunks
        .iter()
        .flat_map(|c| exec_lanes(c).into_iter().map(|l| (c.inputs.clone(), l)))
        .collect();

    par::for_each_task_with(
        tasks,
        || LocalBuffer {
            sink: &sink,
            items: Vec::with_capacity(LOCAL_BUFFER),
        },
        |buf, (inputs, lane)| {
            let mut culler = match &cull {
                Cull::Inexact(mask, cfg) => Some(Culler::new(*cfg, Some(mask))),
                _ => None,
            };
            ex.visit(inputs, lane, |_, out| {
                let Some(id) = out else { return };
                let keep = match &cull {
                    Cull::None => true,
                    Cull::Exact(seen) => f.cond_item(id) && seen.set(id),
                    Cull::Inexact(..) => {
                        f.cond_item(id) && !culler.as_mut().is_some_and(|c| c.cull(id))
                    }
                };
                if keep {
                    if mode.is_some() {
                        f.apply_item(id);
                    }
                    buf.push(id);
                }
            });
        },
    );
    let len = sink.cursor.load(Ordering::Relaxed);
    out.truncate(len);
    Frontier::from_vec(kind.output(), out)
}

/// Advance followed by filter. With `Strategy::LbCull` both run in one pass
/// over the plan and the intermediate frontier is never materialized;
/// otherwise the two operators run back to back.
pub fn advance_filter<F: Functor + ?Sized>(
    g: &CsrGraph,
    input: &Frontier,
    kind: AdvanceKind,
    cfg: &AdvanceConfig,
    mode: &FilterMode,
    f: &F,
) -> Result<Frontier, OperatorError> {
    check_kind("advance", kind.input(), input)?;
    if input.is_empty() {
        return Ok(Frontier::new(kind.output()));
    }
    if cfg.strategy == Strategy::LbCull {
        let plan = build_plan(g, input, cfg.strategy, &cfg.lb);
        return Ok(expand_culled(g, input, kind, &plan, Some(mode), f));
    }
    let out = advance(g, input, kind, cfg, f)?;
    Ok(filter(&out, mode, f))
}

/// Pull advance over a frontier of unvisited vertices.
///
/// Each vertex scans its in-neighbors and stops at the first edge whose
/// `cond_edge(in_neighbor, vertex, edge)` holds, running `apply_edge` for
/// that edge only. Returns the vertices that found such an edge and those
/// that did not; together they partition the input.
pub fn advance_pull<F: Functor + ?Sized>(
    g: &CsrGraph,
    unvisited: &Frontier,
    cfg: &AdvanceConfig,
    f: &F,
) -> Result<(Frontier, Frontier), OperatorError> {
    check_kind("pull advance", FrontierKind::Vertex, unvisited)?;
    if !g.has_reverse() && !cfg.auto_build_reverse {
        return Err(OperatorError::MissingReverse);
    }
    let rev = g.reverse();
    let items = unvisited.items();
    let found: Vec<bool> = par::map_slice(items, |&v| {
        for (&u, &e) in rev.in_neighbors(v).iter().zip(rev.in_edge_ids(v)) {
            if f.cond_edge(u, v, e) {
                f.apply_edge(u, v, e);
                return true;
            }
        }
        false
    });
    let active = par::compact(items, |i, _| found[i]);
    let rest = par::compact(items, |i, _| !found[i]);
    Ok((Frontier::vertices(active), Frontier::vertices(rest)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::BuildOptions;
    use crate::operators::{EdgeCond, PassThrough};
    use std::sync::atomic::AtomicU32;

    fn star() -> CsrGraph {
        CsrGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)], BuildOptions::undirected()).unwrap()
    }

    fn k3() -> CsrGraph {
        CsrGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)], BuildOptions::undirected()).unwrap()
    }

    #[test]
    fn star_expansion_every_strategy() {
        let g = star();
        for s in Strategy::CONCRETE.into_iter().chain([Strategy::Auto]) {
            let out = advance(
                &g,
                &Frontier::vertices(vec![0]),
                AdvanceKind::V2V,
                &AdvanceConfig::with_strategy(s),
                &PassThrough,
            )
            .unwrap();
            assert_eq!(out.sorted(), vec![1, 2, 3], "{s}");
        }
    }

    #[test]
    fn empty_input_any_kind() {
        let g = star();
        for kind in [AdvanceKind::V2V, AdvanceKind::V2E] {
            let out = advance(&g, &Frontier::vertices(vec![]), kind, &AdvanceConfig::default(), &PassThrough).unwrap();
            assert!(out.is_empty());
            assert_eq!(out.kind(), kind.output());
        }
        let out = advance(&g, &Frontier::edges(vec![]), AdvanceKind::E2E, &AdvanceConfig::default(), &PassThrough).unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn shared_neighbor_appears_once_per_discovering_edge() {
        let g = k3();
        let visited = [true, true, false];
        let out = advance(
            &g,
            &Frontier::vertices(vec![0, 1]),
            AdvanceKind::V2V,
            &AdvanceConfig::default(),
            &EdgeCond(|_, d, _| !visited[d as usize]),
        )
        .unwrap();
        assert_eq!(out.sorted(), vec![2, 2]);
        let dedup = filter(&out, &FilterMode::Exact, &PassThrough);
        assert_eq!(dedup.items(), &[2]);
    }

    #[test]
    fn kind_mismatch_rejected() {
        let g = star();
        let err = advance(&g, &Frontier::edges(vec![0]), AdvanceKind::V2V, &AdvanceConfig::default(), &PassThrough)
            .unwrap_err();
        assert!(matches!(err, OperatorError::KindMismatch { .. }));
    }

    #[test]
    fn edge_kinds() {
        let g = star();
        // V2E from the center yields its three edge ids.
        let edges = advance(&g, &Frontier::vertices(vec![0]), AdvanceKind::V2E, &AdvanceConfig::default(), &PassThrough)
            .unwrap();
        assert_eq!(edges.kind(), FrontierKind::Edge);
        assert_eq!(edges.sorted(), vec![0, 1, 2]);
        // E2V from edge (0, 1) expands vertex 1, whose only neighbor is 0.
        let back = advance(&g, &Frontier::edges(vec![0]), AdvanceKind::E2V, &AdvanceConfig::default(), &PassThrough)
            .unwrap();
        assert_eq!(back.items(), &[0]);
    }

    struct Counting {
        calls: Vec<AtomicU32>,
    }

    impl Functor for Counting {
        fn apply_edge(&self, _: VertexId, _: VertexId, e: EdgeId) {
            self.calls[e as usize].fetch_add(1, Ordering::Relaxed);
        }
    }

    #[test]
    fn apply_runs_once_per_edge() {
        let g = CsrGraph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)], BuildOptions::undirected()).unwrap();
        for s in Strategy::CONCRETE {
            let c = Counting {
                calls: (0..g.num_edges()).map(|_| AtomicU32::new(0)).collect(),
            };
            advance(&g, &Frontier::all_vertices(6), AdvanceKind::V2V, &AdvanceConfig::with_strategy(s), &c).unwrap();
            assert!(c.calls.iter().all(|x| x.load(Ordering::Relaxed) == 1), "{s}");
        }
    }

    #[test]
    fn fused_marks_each_leaf_once() {
        let g = star();
        let visited: Vec<AtomicU32> = (0..4).map(|_| AtomicU32::new(0)).collect();
        visited[0].store(1, Ordering::Relaxed);
        let f = EdgeCond(|_, d, _| {
            visited[d as usize]
                .compare_exchange(0, 1, Ordering::Relaxed, Ordering::Relaxed)
                .is_ok()
        });
        let out = advance_filter(
            &g,
            &Frontier::vertices(vec![0]),
            AdvanceKind::V2V,
            &AdvanceConfig::with_strategy(Strategy::LbCull),
            &FilterMode::Exact,
            &f,
        )
        .unwrap();
        assert_eq!(out.sorted(), vec![1, 2, 3]);
    }

    #[test]
    fn pull_partitions_unvisited() {
        let g = CsrGraph::from_edges(3, &[(0, 1), (1, 2)], BuildOptions::undirected()).unwrap();
        let visited = [true, false, false];
        let (active, rest) = advance_pull(
            &g,
            &Frontier::vertices(vec![1, 2]),
            &AdvanceConfig::default(),
            &EdgeCond(|u, _, _| visited[u as usize]),
        )
        .unwrap();
        assert_eq!(active.items(), &[1]);
        assert_eq!(rest.items(), &[2]);
    }

    #[test]
    fn pull_without_reverse_can_fail() {
        let g = star();
        let cfg = AdvanceConfig {
            auto_build_reverse: false,
            ..AdvanceConfig::default()
        };
        assert_eq!(
            advance_pull(&g, &Frontier::vertices(vec![1]), &cfg, &PassThrough).unwrap_err(),
            OperatorError::MissingReverse
        );
        g.reverse();
        assert!(advance_pull(&g, &Frontier::vertices(vec![1]), &cfg, &PassThrough).is_ok());
    }
}
