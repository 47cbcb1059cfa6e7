//! Graph storage: CSR topology with optional weights, a lazily built reverse
//! (CSC) view for pull traversal, and a coordinate-list builder.

mod generate;
mod io;

use std::ops::Range;
use std::sync::OnceLock;

pub use generate::{
    assign_random_weights, generate_rgg, generate_rmat, rgg_default_threshold, rgg_edges,
    rgg_points, RmatParams,
};
pub use io::{
    load_graph, load_matrix_market, parse_edge_list, parse_matrix_market, read_binary,
    write_binary, BINARY_MAGIC, BINARY_VERSION,
};

use crate::error::GraphError;
use crate::par;

/// Vertex identifier.
pub type VertexId = u32;
/// Edge identifier: the position of an edge in `column_indices`.
pub type EdgeId = u32;
/// Integer edge weight.
pub type Weight = u32;

/// Marker for "no vertex" (unset predecessor, culled slot).
pub const INVALID_ID: u32 = u32::MAX;

/// How a coordinate list is turned into CSR.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    /// Add `(v, u)` for every `(u, v)`.
    pub symmetrize: bool,
    pub drop_self_loops: bool,
    /// Collapse parallel edges, keeping the smallest weight.
    pub dedup: bool,
}

impl BuildOptions {
    /// Symmetrized, deduplicated, without self-loops.
    pub const fn undirected() -> Self {
        Self {
            symmetrize: true,
            drop_self_loops: true,
            dedup: true,
        }
    }

    /// Deduplicated directed graph; self-loops kept.
    pub const fn directed() -> Self {
        Self {
            symmetrize: false,
            drop_self_loops: false,
            dedup: true,
        }
    }
}

/// Edge list in structure-of-arrays form.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CooGraph {
    pub num_vertices: usize,
    pub src: Vec<VertexId>,
    pub dst: Vec<VertexId>,
    pub weights: Option<Vec<Weight>>,
}

impl CooGraph {
    pub fn new(num_vertices: usize) -> Self {
        Self {
            num_vertices,
            ..Self::default()
        }
    }

    pub fn from_edges(num_vertices: usize, edges: &[(VertexId, VertexId)]) -> Self {
        Self {
            num_vertices,
            src: edges.iter().map(|e| e.0).collect(),
            dst: edges.iter().map(|e| e.1).collect(),
            weights: None,
        }
    }

    pub fn len(&self) -> usize {
        self.src.len()
    }

    pub fn is_empty(&self) -> bool {
        self.src.is_empty()
    }

    pub fn push(&mut self, src: VertexId, dst: VertexId) {
        self.src.push(src);
        self.dst.push(dst);
        if let Some(w) = &mut self.weights {
            w.push(1);
        }
    }

    pub fn push_weighted(&mut self, src: VertexId, dst: VertexId, weight: Weight) {
        let m = self.src.len();
        self.src.push(src);
        self.dst.push(dst);
        self.weights.get_or_insert_with(|| vec![1; m]).push(weight);
    }

    /// Builds CSR with ascending neighbor lists.
    pub fn to_csr(&self, opts: BuildOptions) -> Result<CsrGraph, GraphError> {
        let n = self.num_vertices;
        if self.dst.len() != self.src.len()
            || self.weights.as_ref().is_some_and(|w| w.len() != self.src.len())
        {
            return Err(GraphError::Invalid("coordinate arrays differ in length".into()));
        }
        for (&u, &v) in self.src.iter().zip(&self.dst) {
            if u as usize >= n || v as usize >= n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: u.max(v) as u64,
                    num_vertices: n,
                });
            }
        }

        let weighted = self.weights.is_some();
        let weight_of = |i: usize| self.weights.as_ref().map_or(1, |w| w[i]);
        let mut triples: Vec<(VertexId, VertexId, Weight)> =
            Vec::with_capacity(self.len() * if opts.symmetrize { 2 } else { 1 });
        for i in 0..self.len() {
            let (u, v) = (self.src[i], self.dst[i]);
            if opts.drop_self_loops && u == v {
                continue;
            }
            triples.push((u, v, weight_of(i)));
            if opts.symmetrize && u != v {
                triples.push((v, u, weight_of(i)));
            }
        }
        par::sort_unstable(&mut triples);
        if opts.dedup {
            // Sorted by weight within (u, v), so the first copy is the lightest.
            triples.dedup_by(|b, a| a.0 == b.0 && a.1 == b.1);
        }

        let m = triples.len();
        if m > u32::MAX as usize {
            return Err(GraphError::TooLarge { edges: m as u64 });
        }
        let mut degrees = vec![0usize; n];
        for t in &triples {
            degrees[t.0 as usize] += 1;
        }
        let row_offsets = par::exclusive_scan(&degrees);
        let column_indices = triples.iter().map(|t| t.1).collect();
        let edge_weights = weighted.then(|| triples.iter().map(|t| t.2).collect());
        Ok(CsrGraph::new_unchecked(
            row_offsets,
            column_indices,
            edge_weights,
            opts.symmetrize,
        ))
    }
}

/// Incoming adjacency, indexed by destination, with back-references to the
/// forward edge ids so per-edge data stays addressable from either side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReverseAdjacency {
    pub row_offsets: Vec<usize>,
    pub column_indices: Vec<VertexId>,
    pub edge_ids: Vec<EdgeId>,
}

impl ReverseAdjacency {
    #[inline]
    pub fn in_neighbors(&self, v: VertexId) -> &[VertexId] {
        let v = v as usize;
        &self.column_indices[self.row_offsets[v]..self.row_offsets[v + 1]]
    }

    #[inline]
    pub fn in_edge_ids(&self, v: VertexId) -> &[EdgeId] {
        let v = v as usize;
        &self.edge_ids[self.row_offsets[v]..self.row_offsets[v + 1]]
    }

    #[inline]
    pub fn in_degree(&self, v: VertexId) -> usize {
        let v = v as usize;
        self.row_offsets[v + 1] - self.row_offsets[v]
    }
}

/// Compressed sparse row graph.
///
/// Immutable once built. The reverse view and the per-edge source array are
/// computed on first use and cached, so a shared `&CsrGraph` is all any
/// primitive needs.
#[derive(Debug, Clone)]
pub struct CsrGraph {
    row_offsets: Vec<usize>,
    column_indices: Vec<VertexId>,
    edge_weights: Option<Vec<Weight>>,
    undirected: bool,
    reverse: OnceLock<ReverseAdjacency>,
    edge_sources: OnceLock<Vec<VertexId>>,
}

impl PartialEq for CsrGraph {
    fn eq(&self, other: &Self) -> bool {
        self.row_offsets == other.row_offsets
            && self.column_indices == other.column_indices
            && self.edge_weights == other.edge_weights
            && self.undirected == other.undirected
    }
}

impl Eq for CsrGraph {}

impl CsrGraph {
    fn new_unchecked(
        row_offsets: Vec<usize>,
        column_indices: Vec<VertexId>,
        edge_weights: Option<Vec<Weight>>,
        undirected: bool,
    ) -> Self {
        Self {
            row_offsets,
            column_indices,
            edge_weights,
            undirected,
            reverse: OnceLock::new(),
            edge_sources: OnceLock::new(),
        }
    }

    /// Assembles a graph from raw CSR arrays after validating them.
    pub fn from_parts(
        row_offsets: Vec<usize>,
        column_indices: Vec<VertexId>,
        edge_weights: Option<Vec<Weight>>,
        undirected: bool,
    ) -> Result<Self, GraphError> {
        let Some(&last) = row_offsets.last() else {
            return Err(GraphError::Invalid("row offsets must have n + 1 entries".into()));
        };
        if row_offsets[0] != 0 {
            return Err(GraphError::Invalid("row offsets must start at 0".into()));
        }
        if row_offsets.windows(2).any(|w| w[0] > w[1]) {
            return Err(GraphError::Invalid("row offsets must be nondecreasing".into()));
        }
        if last != column_indices.len() {
            return Err(GraphError::Invalid(format!(
                "last row offset {last} does not match {} column indices",
                column_indices.len()
            )));
        }
        if column_indices.len() > u32::MAX as usize {
            return Err(GraphError::TooLarge {
                edges: column_indices.len() as u64,
            });
        }
        let n = row_offsets.len() - 1;
        if let Some(&bad) = column_indices.iter().find(|&&c| c as usize >= n) {
            return Err(GraphError::VertexOutOfRange {
                vertex: bad as u64,
                num_vertices: n,
            });
        }
        if let Some(w) = &edge_weights {
            if w.len() != column_indices.len() {
                return Err(GraphError::Invalid("one weight per edge required".into()));
            }
        }
        Ok(Self::new_unchecked(
            row_offsets,
            column_indices,
            edge_weights,
            undirected,
        ))
    }

    /// Convenience constructor from an edge list.
    pub fn from_edges(
        num_vertices: usize,
        edges: &[(VertexId, VertexId)],
        opts: BuildOptions,
    ) -> Result<Self, GraphError> {
        CooGraph::from_edges(num_vertices, edges).to_csr(opts)
    }

    #[inline]
    pub fn num_vertices(&self) -> usize {
        self.row_offsets.len() - 1
    }

    /// Directed edge slots; an undirected edge occupies two.
    #[inline]
    pub fn num_edges(&self) -> usize {
        self.column_indices.len()
    }

    pub fn average_degree(&self) -> f64 {
        match self.num_vertices() {
            0 => 0.0,
            n => self.num_edges() as f64 / n as f64,
        }
    }

    pub fn is_undirected(&self) -> bool {
        self.undirected
    }

    pub fn row_offsets(&self) -> &[usize] {
        &self.row_offsets
    }

    pub fn column_indices(&self) -> &[VertexId] {
        &self.column_indices
    }

    pub fn edge_weights(&self) -> Option<&[Weight]> {
        self.edge_weights.as_deref()
    }

    pub fn is_weighted(&self) -> bool {
        self.edge_weights.is_some()
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        let v = v as usize;
        self.row_offsets[v + 1] - self.row_offsets[v]
    }

    #[inline]
    pub fn edge_range(&self, v: VertexId) -> Range<usize> {
        let v = v as usize;
        self.row_offsets[v]..self.row_offsets[v + 1]
    }

    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.column_indices[self.edge_range(v)]
    }

    /// Head of edge `e`.
    #[inline]
    pub fn edge_target(&self, e: EdgeId) -> VertexId {
        self.column_indices[e as usize]
    }

    /// Weight of edge `e`; unweighted graphs report 1.
    #[inline]
    pub fn weight(&self, e: EdgeId) -> Weight {
        self.edge_weights.as_ref().map_or(1, |w| w[e as usize])
    }

    /// Tail of edge `e`.
    #[inline]
    pub fn edge_source(&self, e: EdgeId) -> VertexId {
        self.edge_sources()[e as usize]
    }

    /// Tail of every edge (the COO row array), built on first use.
    pub fn edge_sources(&self) -> &[VertexId] {
        self.edge_sources.get_or_init(|| {
            let n = self.num_vertices();
            let mut src = vec![0 as VertexId; self.num_edges()];
            let mut rows: Vec<(VertexId, &mut [VertexId])> = Vec::with_capacity(n);
            let mut rest: &mut [VertexId] = &mut src;
            for v in 0..n {
                let (head, tail) = rest.split_at_mut(self.degree(v as VertexId));
                rows.push((v as VertexId, head));
                rest = tail;
            }
            par::for_each_mut(&mut rows, |_, (v, row)| row.fill(*v));
            src
        })
    }

    /// Finds the id of edge `(u, v)` by binary search in `u`'s sorted list.
    pub fn find_edge(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let base = self.row_offsets[u as usize];
        self.neighbors(u)
            .binary_search(&v)
            .ok()
            .map(|i| (base + i) as EdgeId)
    }

    pub fn has_reverse(&self) -> bool {
        self.reverse.get().is_some()
    }

    /// Incoming adjacency, built on first call.
    pub fn reverse(&self) -> &ReverseAdjacency {
        self.reverse.get_or_init(|| self.build_reverse())
    }

    fn build_reverse(&self) -> ReverseAdjacency {
        let n = self.num_vertices();
        let mut in_deg = vec![0usize; n];
        for &c in &self.column_indices {
            in_deg[c as usize] += 1;
        }
        let row_offsets = par::exclusive_scan(&in_deg);
        let mut cursor = row_offsets.clone();
        let m = self.num_edges();
        let mut column_indices = vec![0 as VertexId; m];
        let mut edge_ids = vec![0 as EdgeId; m];
        // Sources are visited in ascending order, so each in-list ends up sorted.
        for u in 0..n {
            for e in self.edge_range(u as VertexId) {
                let v = self.column_indices[e] as usize;
                let slot = cursor[v];
                cursor[v] += 1;
                column_indices[slot] = u as VertexId;
                edge_ids[slot] = e as EdgeId;
            }
        }
        ReverseAdjacency {
            row_offsets,
            column_indices,
            edge_ids,
        }
    }

    /// The transposed graph (CSC of this graph, stored as CSR), weights carried.
    pub fn transpose(&self) -> CsrGraph {
        let rev = self.reverse();
        let weights = self
            .edge_weights
            .as_ref()
            .map(|w| rev.edge_ids.iter().map(|&e| w[e as usize]).collect());
        CsrGraph::new_unchecked(
            rev.row_offsets.clone(),
            rev.column_indices.clone(),
            weights,
            self.undirected,
        )
    }

    pub fn to_coo(&self) -> CooGraph {
        CooGraph {
            num_vertices: self.num_vertices(),
            src: self.edge_sources().to_vec(),
            dst: self.column_indices.clone(),
            weights: self.edge_weights.clone(),
        }
    }

    /// Returns a copy of the topology carrying `weights`.
    pub fn with_weights(&self, weights: Vec<Weight>) -> Result<CsrGraph, GraphError> {
        if weights.len() != self.num_edges() {
            return Err(GraphError::Invalid("one weight per edge required".into()));
        }
        Ok(CsrGraph::new_unchecked(
            self.row_offsets.clone(),
            self.column_indices.clone(),
            Some(weights),
            self.undirected,
        ))
    }

    /// Neighbor lists strictly ascending (sorted, no parallel edges).
    pub fn is_canonical(&self) -> bool {
        (0..self.num_vertices()).all(|v| {
            self.neighbors(v as VertexId)
                .windows(2)
                .all(|w| w[0] < w[1])
        })
    }

    /// Every edge has its mirror.
    pub fn is_symmetric(&self) -> bool {
        let m = self.num_edges();
        let src = self.edge_sources();
        (0..m).all(|e| {
            let (u, v) = (src[e], self.column_indices[e]);
            self.neighbors(v).binary_search(&u).is_ok()
        })
    }
}
