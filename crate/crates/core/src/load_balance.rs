//! Partitioning of frontier expansion work into chunks.
//!
//! Expanding a frontier means visiting every slot of every input item's
//! neighbor list. The exclusive scan of neighbor-list lengths gives each slot
//! a global output position; a plan cuts `[0, total_output)` into contiguous
//! chunks, each tagged with the range of input items it touches and how many
//! logical workers share it. The strategies differ only in where the cuts go:
//!
//! * `ThreadExpand`: one chunk per input item, one worker.
//! * `Twc`: one chunk per input item, sized into item / sub-team / team
//!   classes by neighbor-list length.
//! * `Lb`: equal-size chunks of output slots; sources found by sorted search.
//! * `LbLight`: equal-count chunks of input items.
//! * `LbCull`: `Lb` or `LbLight` (by frontier size), executed fused with a
//!   filter.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::frontier::{Frontier, FrontierKind};
use crate::graph::CsrGraph;
use crate::par;

/// Work-partitioning strategy for advance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    ThreadExpand,
    Twc,
    Lb,
    LbLight,
    LbCull,
    Auto,
}

impl Strategy {
    /// The five concrete strategies.
    pub const CONCRETE: [Strategy; 5] = [
        Strategy::ThreadExpand,
        Strategy::Twc,
        Strategy::Lb,
        Strategy::LbLight,
        Strategy::LbCull,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::ThreadExpand => "thread_expand",
            Strategy::Twc => "twc",
            Strategy::Lb => "lb",
            Strategy::LbLight => "lb_light",
            Strategy::LbCull => "lb_cull",
            Strategy::Auto => "auto",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [Strategy::Auto]
            .into_iter()
            .chain(Strategy::CONCRETE)
            .find(|st| st.name() == s)
            .ok_or_else(|| format!("unknown traversal mode {s:?}"))
    }
}

/// Tunables for plan construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LbParams {
    /// Lists at least this long go to the sub-team class (TWC).
    pub small_cut: usize,
    /// Lists at least this long go to the team class (TWC).
    pub large_cut: usize,
    pub sub_team_width: usize,
    pub team_width: usize,
    /// Output slots per chunk for `Lb`.
    pub output_chunk: usize,
    /// Input items per chunk for `LbLight`.
    pub items_per_chunk: usize,
    /// Frontier size at which the LB family switches from input to output
    /// balancing.
    pub light_threshold: usize,
    /// Average degree at which `Auto` prefers the LB family over TWC.
    pub lb_degree_threshold: f64,
}

impl Default for LbParams {
    fn default() -> Self {
        Self {
            small_cut: 32,
            large_cut: 256,
            sub_team_width: 32,
            team_width: 256,
            output_chunk: 4096,
            items_per_chunk: 256,
            light_threshold: 4096,
            lb_degree_threshold: 5.0,
        }
    }
}

/// Exclusive scan of per-item neighbor-list lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanOffsets {
    /// `len + 1` entries; `offsets[i]` is where item `i`'s list starts.
    pub offsets: Vec<usize>,
    pub total_output: usize,
}

/// Neighbor-list length scan for a frontier. Edge items expand the list of
/// their head vertex.
pub fn compute_scan_offsets(g: &CsrGraph, f: &Frontier) -> ScanOffsets {
    let items = f.items();
    let degrees = match f.kind() {
        FrontierKind::Vertex => par::map_slice(items, |&v| g.degree(v)),
        FrontierKind::Edge => par::map_slice(items, |&e| g.degree(g.edge_target(e))),
    };
    let offsets = par::exclusive_scan(&degrees);
    let total_output = offsets[items.len()];
    ScanOffsets {
        offsets,
        total_output,
    }
}

/// Size class of a chunk, i.e. how many logical workers share it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChunkClass {
    Team,
    SubTeam,
    Item,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chunk {
    /// Output slots covered.
    pub output: Range<usize>,
    /// Input items whose lists intersect `output` (search range for sources).
    pub inputs: Range<usize>,
    pub class: ChunkClass,
    /// Logical workers that split `output` statically.
    pub width: usize,
}

impl Chunk {
    /// Contiguous per-worker slot ranges, in order.
    pub fn lanes(&self) -> impl Iterator<Item = Range<usize>> + '_ {
        let len = self.output.len();
        let stripe = len.div_ceil(self.width.max(1)).max(1);
        (self.output.start..self.output.end)
            .step_by(stripe)
            .map(move |s| s..(s + stripe).min(self.output.end))
    }
}

/// Index `i` in `inputs` whose list holds output slot `slot`:
/// `offsets[i] <= slot < offsets[i + 1]`.
#[inline]
pub fn resolve_source(offsets: &[usize], inputs: Range<usize>, slot: usize) -> usize {
    let window = &offsets[inputs.start..inputs.end];
    inputs.start + window.partition_point(|&o| o <= slot) - 1
}

/// Calls `visit(input_index, global_slot)` for each slot in `slots`, with one
/// sorted search at the start and a forward walk across source boundaries.
#[inline]
pub fn walk_slots(
    offsets: &[usize],
    inputs: Range<usize>,
    slots: Range<usize>,
    mut visit: impl FnMut(usize, usize),
) {
    if slots.is_empty() {
        return;
    }
    let mut src = resolve_source(offsets, inputs, slots.start);
    for slot in slots {
        while offsets[src + 1] <= slot {
            src += 1;
        }
        visit(src, slot);
    }
}

/// A complete partition of one advance step's work.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadBalancePlan {
    pub strategy: Strategy,
    pub scan: ScanOffsets,
    pub chunks: Vec<Chunk>,
}

impl LoadBalancePlan {
    pub fn total_output(&self) -> usize {
        self.scan.total_output
    }

    /// Every `(input item, position in its neighbor list)` pair, in chunk and
    /// lane order, resolved the same way execution resolves them.
    pub fn work_items(&self) -> Vec<(usize, usize)> {
        let offsets = &self.scan.offsets;
        let mut out = Vec::with_capacity(self.total_output());
        for chunk in &self.chunks {
            for lane in chunk.lanes() {
                walk_slots(offsets, chunk.inputs.clone(), lane, |src, slot| {
                    out.push((src, slot - offsets[src]));
                });
            }
        }
        out
    }

    /// Chunk indices ordered by output start.
    pub fn chunks_by_output(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.chunks.len()).collect();
        idx.sort_by_key(|&i| (self.chunks[i].output.start, self.chunks[i].output.end));
        idx
    }
}

fn per_item_chunk(offsets: &[usize], i: usize, class: ChunkClass, width: usize) -> Chunk {
    Chunk {
        output: offsets[i]..offsets[i + 1],
        inputs: i..i + 1,
        class,
        width,
    }
}

/// One chunk per input item.
pub fn plan_thread_expand(scan: ScanOffsets) -> LoadBalancePlan {
    let n = scan.offsets.len() - 1;
    let chunks = (0..n)
        .map(|i| per_item_chunk(&scan.offsets, i, ChunkClass::Item, 1))
        .collect();
    LoadBalancePlan {
        strategy: Strategy::ThreadExpand,
        scan,
        chunks,
    }
}

/// Dynamic grouping into team (`>= large_cut`), sub-team (`>= small_cut`)
/// and per-item classes; chunks are ordered by class, then input order.
pub fn plan_twc(scan: ScanOffsets, params: &LbParams) -> LoadBalancePlan {
    assert!(
        params.small_cut < params.large_cut,
        "small_cut must be below large_cut"
    );
    let offsets = &scan.offsets;
    let n = offsets.len() - 1;
    let class_of = |i: usize| {
        let d = offsets[i + 1] - offsets[i];
        if d >= params.large_cut {
            ChunkClass::Team
        } else if d >= params.small_cut {
            ChunkClass::SubTeam
        } else {
            ChunkClass::Item
        }
    };
    let mut chunks = Vec::with_capacity(n);
    for (class, width) in [
        (ChunkClass::Team, params.team_width),
        (ChunkClass::SubTeam, params.sub_team_width),
        (ChunkClass::Item, 1),
    ] {
        chunks.extend(
            (0..n)
                .filter(|&i| class_of(i) == class)
                .map(|i| per_item_chunk(offsets, i, class, width)),
        );
    }
    LoadBalancePlan {
        strategy: Strategy::Twc,
        scan,
        chunks,
    }
}

/// Output-balanced: chunks of `chunk_size` output slots. Chunk boundaries
/// `0, N, 2N, ...` are located in the offsets by sorted search.
pub fn plan_lb_output(scan: ScanOffsets, chunk_size: usize, team_width: usize) -> LoadBalancePlan {
    assert!(chunk_size >= 1, "chunk size must be positive");
    let total = scan.total_output;
    let n_items = scan.offsets.len() - 1;
    let starts: Vec<usize> = (0..total).step_by(chunk_size).collect();
    let chunks = par::map_slice(&starts, |&start| {
        let end = (start + chunk_size).min(total);
        let first = resolve_source(&scan.offsets, 0..n_items, start);
        let last = resolve_source(&scan.offsets, first..n_items, end - 1);
        Chunk {
            output: start..end,
            inputs: first..last + 1,
            class: ChunkClass::Team,
            width: team_width,
        }
    });
    LoadBalancePlan {
        strategy: Strategy::Lb,
        scan,
        chunks,
    }
}

/// Input-balanced: chunks of `items_per_chunk` consecutive input items whose
/// workers share the chunk's output slots.
pub fn plan_lb_input(scan: ScanOffsets, items_per_chunk: usize, team_width: usize) -> LoadBalancePlan {
    assert!(items_per_chunk >= 1, "items per chunk must be positive");
    let n = scan.offsets.len() - 1;
    let chunks = (0..n)
        .step_by(items_per_chunk)
        .map(|first| {
            let last = (first + items_per_chunk).min(n);
            Chunk {
                output: scan.offsets[first]..scan.offsets[last],
                inputs: first..last,
                class: ChunkClass::Team,
                width: team_width,
            }
        })
        .collect();
    LoadBalancePlan {
        strategy: Strategy::LbLight,
        scan,
        chunks,
    }
}

/// Picks a strategy from average degree and frontier size: below the degree
/// threshold use TWC; otherwise input balancing for frontiers under the size
/// threshold and output balancing at or above it.
pub fn choose_strategy_for(avg_degree: f64, frontier_len: usize, params: &LbParams) -> Strategy {
    if avg_degree < params.lb_degree_threshold {
        Strategy::Twc
    } else if frontier_len < params.light_threshold {
        Strategy::LbLight
    } else {
        Strategy::Lb
    }
}

/// [`choose_strategy_for`] with the default thresholds (degree 5, size 4096).
pub fn choose_strategy(num_edges: usize, num_vertices: usize, frontier_len: usize) -> Strategy {
    let avg = if num_vertices == 0 {
        0.0
    } else {
        num_edges as f64 / num_vertices as f64
    };
    choose_strategy_for(avg, frontier_len, &LbParams::default())
}

/// Builds the plan for `strategy` over `f`. `Auto` is resolved here; `LbCull`
/// yields the LB-family plan it will execute.
pub fn build_plan(g: &CsrGraph, f: &Frontier, strategy: Strategy, params: &LbParams) -> LoadBalancePlan {
    let scan = compute_scan_offsets(g, f);
    let concrete = match strategy {
        Strategy::Auto => choose_strategy_for(g.average_degree(), f.len(), params),
        s => s,
    };
    match concrete {
        Strategy::ThreadExpand => plan_thread_expand(scan),
        Strategy::Twc => plan_twc(scan, params),
        Strategy::Lb => plan_lb_output(scan, params.output_chunk, params.team_width),
        Strategy::LbLight => plan_lb_input(scan, params.items_per_chunk, params.team_width),
        Strategy::LbCull => {
            let mut plan = if f.len() < params.light_threshold {
                plan_lb_input(scan, params.items_per_chunk, params.team_width)
            } else {
                plan_lb_output(scan, params.output_chunk, params.team_width)
            };
            plan.strategy = Strategy::LbCull;
            plan
        }
        Strategy::Auto => unreachable!("resolved above"),
    }
}
