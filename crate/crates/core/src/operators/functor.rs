use crate::graph::{EdgeId, VertexId};

/// User callbacks fused into operator execution.
///
/// Every method may be called concurrently from many workers. The edge pair
/// runs inside advance: `cond_edge` decides whether a visited edge produces
/// output, and `apply_edge` runs for each edge that passed. The item pair
/// runs inside filter on frontier ids (vertex or edge, matching the
/// frontier). Defaults accept everything and do nothing.
pub trait Functor: Sync {
    #[inline]
    fn cond_edge(&self, _src: VertexId, _dst: VertexId, _edge: EdgeId) -> bool {
        true
    }

    #[inline]
    fn apply_edge(&self, _src: VertexId, _dst: VertexId, _edge: EdgeId) {}

    #[inline]
    fn cond_item(&self, _id: u32) -> bool {
        true
    }

    #[inline]
    fn apply_item(&self, _id: u32) {}
}

/// Accepts every edge and item.
#[derive(Debug, Clone, Copy, Default)]
pub struct PassThrough;

impl Functor for PassThrough {}

/// Wraps a closure as an edge condition.
#[derive(Debug, Clone, Copy)]
pub struct EdgeCond<F>(pub F);

impl<F> Functor for EdgeCond<F>
where
    F: Fn(VertexId, VertexId, EdgeId) -> bool + Sync,
{
    #[inline]
    fn cond_edge(&self, src: VertexId, dst: VertexId, edge: EdgeId) -> bool {
        (self.0)(src, dst, edge)
    }
}

/// Wraps a closure as an item condition.
#[derive(Debug, Clone, Copy)]
pub struct ItemCond<F>(pub F);

impl<F> Functor for ItemCond<F>
where
    F: Fn(u32) -> bool + Sync,
{
    #[inline]
    fn cond_item(&self, id: u32) -> bool {
        (self.0)(id)
    }
}
