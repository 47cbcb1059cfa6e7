//! Independent reference implementations and random graph families.
//!
//! Nothing here calls into the operators; the oracles read the CSR arrays
//! directly and run plain sequential loops.

#![allow(dead_code)]

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use graphfx_core::graph::{
    assign_random_weights, generate_rgg, generate_rmat, rgg_default_threshold, BuildOptions, CooGraph, CsrGraph,
    RmatParams,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const INF: u32 = u32::MAX;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn serial_bfs(g: &CsrGraph, s: u32) -> Vec<u32> {
    let n = g.num_vertices();
    let mut depth = vec![INF; n];
    depth[s as usize] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for &v in g.neighbors(u) {
            if depth[v as usize] == INF {
                depth[v as usize] = depth[u as usize] + 1;
                q.push_back(v);
            }
        }
    }
    depth
}

pub fn dijkstra(g: &CsrGraph, s: u32) -> Vec<u32> {
    let n = g.num_vertices();
    let mut dist = vec![u64::MAX; n];
    dist[s as usize] = 0;
    let mut heap = BinaryHeap::from([Reverse((0u64, s))]);
    while let Some(Reverse((d, u))) = heap.pop() {
        if d > dist[u as usize] {
            continue;
        }
        let r = g.row_offsets()[u as usize]..g.row_offsets()[u as usize + 1];
        for e in r {
            let v = g.column_indices()[e];
            let w = g.edge_weights().map_or(1, |w| w[e]) as u64;
            if d + w < dist[v as usize] {
                dist[v as usize] = d + w;
                heap.push(Reverse((d + w, v)));
            }
        }
    }
    dist.into_iter().map(|d| if d == u64::MAX { INF } else { d as u32 }).collect()
}

pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Component label per vertex: the smallest vertex id in its component.
pub fn union_find_components(g: &CsrGraph) -> Vec<usize> {
    let n = g.num_vertices();
    let mut uf = UnionFind::new(n);
    for u in 0..n {
        for &v in g.neighbors(u as u32) {
            uf.union(u, v as usize);
        }
    }
    (0..n).map(|v| uf.find(v)).collect()
}

/// Canonical form of a labeling: each label replaced by the first vertex
/// carrying it, so two labelings describe the same partition iff equal.
pub fn canonical_partition<T: Copy + Eq + std::hash::Hash>(labels: &[T]) -> Vec<usize> {
    let mut first = std::collections::HashMap::new();
    labels
        .iter()
        .enumerate()
        .map(|(i, l)| *first.entry(*l).or_insert(i))
        .collect()
}

/// Brandes' dependency accumulation from each source, summed.
pub fn brandes(g: &CsrGraph, sources: &[u32]) -> Vec<f64> {
    let n = g.num_vertices();
    let mut bc = vec![0.0; n];
    for &s in sources {
        let mut stack = Vec::with_capacity(n);
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut sigma = vec![0.0f64; n];
        let mut dist = vec![-1i64; n];
        sigma[s as usize] = 1.0;
        dist[s as usize] = 0;
        let mut q = VecDeque::from([s as usize]);
        while let Some(v) = q.pop_front() {
            stack.push(v);
            for &w in g.neighbors(v as u32) {
                let w = w as usize;
                if dist[w] < 0 {
                    dist[w] = dist[v] + 1;
                    q.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                    preds[w].push(v);
                }
            }
        }
        let mut delta = vec![0.0f64; n];
        while let Some(w) = stack.pop() {
            for &v in &preds[w] {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if w != s as usize {
                bc[w] += delta[w];
            }
        }
    }
    bc
}

/// `k` synchronous power-iteration steps from the uniform vector with
/// uniform redistribution of dangling mass. Builds the dense transition
/// matrix when `n` is small enough.
pub fn power_iteration(g: &CsrGraph, damping: f64, k: usize) -> Vec<f64> {
    let n = g.num_vertices();
    if n == 0 {
        return Vec::new();
    }
    let nf = n as f64;
    let mut r = vec![1.0 / nf; n];
    let deg: Vec<usize> = (0..n).map(|v| g.neighbors(v as u32).len()).collect();
    if n <= 1024 {
        // M[v][u] = 1/deg(u) for u -> v; dangling columns are 1/n.
        let mut m = vec![0.0f64; n * n];
        for u in 0..n {
            if deg[u] == 0 {
                for v in 0..n {
                    m[v * n + u] = 1.0 / nf;
                }
            }
            for &v in g.neighbors(u as u32) {
                m[v as usize * n + u] += 1.0 / deg[u] as f64;
            }
        }
        for _ in 0..k {
            r = (0..n)
                .map(|v| (1.0 - damping) / nf + damping * (0..n).map(|u| m[v * n + u] * r[u]).sum::<f64>())
                .collect();
        }
    } else {
        for _ in 0..k {
            let dangling: f64 = (0..n).filter(|&u| deg[u] == 0).map(|u| r[u]).sum();
            let mut next = vec![(1.0 - damping) / nf + damping * dangling / nf; n];
            for u in 0..n {
                for &v in g.neighbors(u as u32) {
                    next[v as usize] += damping * r[u] / deg[u] as f64;
                }
            }
            r = next;
        }
    }
    r
}

/// Counts `u < v < w` with all three edges, via a dense bit matrix.
pub fn brute_force_triangles(g: &CsrGraph) -> u64 {
    let n = g.num_vertices();
    let words = n.div_ceil(64);
    let mut adj = vec![0u64; n * words];
    for u in 0..n {
        for &v in g.neighbors(u as u32) {
            adj[u * words + v as usize / 64] |= 1 << (v % 64);
        }
    }
    let has = |u: usize, v: usize| adj[u * words + v / 64] >> (v % 64) & 1 == 1;
    let mut count = 0;
    for u in 0..n {
        let higher: Vec<usize> = g.neighbors(u as u32).iter().map(|&v| v as usize).filter(|&v| v > u).collect();
        for (i, &v) in higher.iter().enumerate() {
            for &w in &higher[i + 1..] {
                if has(v, w) {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Every `(input index, position in list)` pair, by nested loops.
pub fn nested_enumeration(g: &CsrGraph, items: &[u32], edge_items: bool) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let v = if edge_items { g.column_indices()[x as usize] } else { x };
        for j in 0..g.neighbors(v).len() {
            out.push((i, j));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    ErdosRenyi,
    Rmat,
    Rgg,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::ErdosRenyi, Family::Rmat, Family::Rgg];

    pub fn name(self) -> &'static str {
        match self {
            Family::ErdosRenyi => "erdos-renyi",
            Family::Rmat => "rmat",
            Family::Rgg => "rgg",
        }
    }
}

pub struct SuiteGraph {
    pub family: Family,
    pub label: String,
    pub graph: CsrGraph,
    /// Same topology with weights in [1, 64].
    pub weighted: CsrGraph,
}

pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> CsrGraph {
    let mut r = rng(seed);
    let mut coo = CooGraph::new(n);
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if r.gen_bool(p) {
                coo.push(u, v);
            }
        }
    }
    coo.to_csr(BuildOptions::undirected()).unwrap()
}

/// The `index`-th graph of a family. Sizes cycle so every family covers
/// small and large instances.
pub fn suite_graph(family: Family, index: usize, seed: u64) -> SuiteGraph {
    let seed = seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ family as u64;
    let (label, graph) = match family {
        Family::ErdosRenyi => {
            let p = if index.is_multiple_of(2) { 0.01 } else { 0.1 };
            let n = 16 + (index * 37) % 1000;
            (format!("n={n} p={p}"), erdos_renyi(n, p, seed))
        }
        Family::Rmat => {
            let scale = 4 + (index % 11) as u32;
            let coo = generate_rmat(scale, 8, RmatParams::graph500(), seed).unwrap();
            (format!("scale={scale} ef=8"), coo.to_csr(BuildOptions::undirected()).unwrap())
        }
        Family::Rgg => {
            let scale = 4 + (index % 11) as u32;
            let t = rgg_default_threshold(scale);
            let coo = generate_rgg(scale, t, seed).unwrap();
            (format!("scale={scale} r={t:.4}"), coo.to_csr(BuildOptions::undirected()).unwrap())
        }
    };
    let weighted = assign_random_weights(&graph, 1, 64, seed.wrapping_add(1)).unwrap();
    SuiteGraph {
        family,
        label,
        graph,
        weighted,
    }
}
