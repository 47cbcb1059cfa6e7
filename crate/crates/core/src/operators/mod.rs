//! Data-centric operators over frontiers.

mod advance;
mod filter;
mod functor;
mod intersect;

pub use advance::{
    advance, advance_filter, advance_pull, expand_slots, AdvanceConfig, AdvanceKind, Direction,
};
pub use filter::{filter, CullConfig, FilterMode};
pub use functor::{EdgeCond, Functor, ItemCond, PassThrough};
pub use intersect::{
    segmented_intersect, segmented_intersect_edges, IntersectPath, Intersections, DEFAULT_INTERSECT_CUT,
};

use crate::frontier::Frontier;
use crate::par;

/// Runs `apply` once for every item of `input`, duplicates included.
pub fn compute<F>(input: &Frontier, apply: F)
where
    F: Fn(u32) + Sync + Send,
{
    let items = input.items();
    par::for_each_index(items.len(), |i| apply(items[i]));
}
