//! Frontiers, double buffering, and visited bitmaps.

use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::graph::VertexId;
use crate::par;

/// What a frontier's ids refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FrontierKind {
    Vertex,
    Edge,
}

/// A dense list of vertex or edge ids active in one bulk-synchronous step.
///
/// Duplicates are allowed; whether they appear depends on the operator mode
/// that produced the frontier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frontier {
    kind: FrontierKind,
    items: Vec<u32>,
}

impl Frontier {
    pub fn new(kind: FrontierKind) -> Self {
        Self {
            kind,
            items: Vec::new(),
        }
    }

    pub fn with_capacity(kind: FrontierKind, capacity: usize) -> Self {
        Self {
            kind,
            items: Vec::with_capacity(capacity),
        }
    }

    pub fn from_vec(kind: FrontierKind, items: Vec<u32>) -> Self {
        Self { kind, items }
    }

    pub fn vertices(items: impl Into<Vec<VertexId>>) -> Self {
        Self::from_vec(FrontierKind::Vertex, items.into())
    }

    pub fn edges(items: impl Into<Vec<u32>>) -> Self {
        Self::from_vec(FrontierKind::Edge, items.into())
    }

    /// Every vertex `0..n`, ascending.
    pub fn all_vertices(n: usize) -> Self {
        Self::vertices(par::map_index(n, |v| v as VertexId))
    }

    /// Every edge id `0..m`, ascending.
    pub fn all_edges(m: usize) -> Self {
        Self::edges(par::map_index(m, |e| e as u32))
    }

    pub fn kind(&self) -> FrontierKind {
        self.kind
    }

    pub fn items(&self) -> &[u32] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.items.capacity()
    }

    pub fn push(&mut self, id: u32) {
        self.items.push(id);
    }

    pub fn extend_from_slice(&mut self, ids: &[u32]) {
        self.items.extend_from_slice(ids);
    }

    /// Empties the frontier but keeps its allocation.
    pub fn clear(&mut self) {
        self.items.clear();
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.items
    }

    /// Items sorted ascending, for order-insensitive comparisons.
    pub fn sorted(&self) -> Vec<u32> {
        let mut v = self.items.clone();
        v.sort_unstable();
        v
    }
}

/// Input and output frontiers of a bulk-synchronous loop.
#[derive(Debug, Clone)]
pub struct FrontierPair {
    pub input: Frontier,
    pub output: Frontier,
}

impl FrontierPair {
    pub fn new(input: Frontier) -> Self {
        let kind = input.kind();
        Self {
            input,
            output: Frontier::new(kind),
        }
    }

    /// Output becomes the next input; the old input is cleared and reused as
    /// the next output buffer.
    pub fn swap(&mut self) {
        std::mem::swap(&mut self.input, &mut self.output);
        self.output.clear();
        self.output.kind = self.input.kind;
    }
}

/// One bit per vertex, safe to set from many threads.
///
/// Within a traversal bits are only ever set, never cleared.
#[derive(Debug)]
pub struct StatusBitmap {
    words: Vec<AtomicU64>,
    len: usize,
}

impl StatusBitmap {
    pub fn new(len: usize) -> Self {
        Self {
            words: (0..len.div_ceil(64)).map(|_| AtomicU64::new(0)).collect(),
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: u32) -> bool {
        let i = i as usize;
        self.words[i / 64].load(Ordering::Relaxed) & (1 << (i % 64)) != 0
    }

    /// Sets bit `i`; returns true if this call changed it.
    #[inline]
    pub fn set(&self, i: u32) -> bool {
        let i = i as usize;
        let mask = 1u64 << (i % 64);
        self.words[i / 64].fetch_or(mask, Ordering::Relaxed) & mask == 0
    }

    pub fn count_ones(&self) -> usize {
        self.words
            .iter()
            .map(|w| w.load(Ordering::Relaxed).count_ones() as usize)
            .sum()
    }
}

/// Sentinel meaning "not yet reached" in distance and depth labels.
pub const UNVISITED: u32 = u32::MAX;

/// Vertices whose label is still [`UNVISITED`], ascending.
pub fn generate_unvisited_frontier(labels: &[u32]) -> Frontier {
    let ids = par::map_index(labels.len(), |v| v as u32);
    Frontier::vertices(par::compact(&ids, |v, _| labels[v] == UNVISITED))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unvisited_scan() {
        let f = generate_unvisited_frontier(&[0, UNVISITED, UNVISITED, 1]);
        assert_eq!(f.items(), &[1, 2]);
        assert!(generate_unvisited_frontier(&[0, 1, 2]).is_empty());
        assert_eq!(
            generate_unvisited_frontier(&[UNVISITED; 4]).items(),
            &[0, 1, 2, 3]
        );
    }

    #[test]
    fn swap_rotates_buffers() {
        let mut pair = FrontierPair::new(Frontier::vertices(vec![7]));
        pair.output.push(9);
        pair.swap();
        assert_eq!(pair.input.items(), &[9]);
        assert_eq!(pair.output.len(), 0);
        pair.output.push(7);
        pair.swap();
        assert_eq!(pair.input.items(), &[7]);
        assert!(pair.output.is_empty());
    }

    #[test]
    fn bitmap_set_once() {
        let b = StatusBitmap::new(130);
        assert!(b.set(129));
        assert!(!b.set(129));
        assert!(b.get(129));
        assert!(!b.get(128));
        assert_eq!(b.count_ones(), 1);
    }
}
