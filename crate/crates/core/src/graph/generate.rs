//! Synthetic graph generators and random edge weights.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CooGraph, CsrGraph, VertexId, Weight};
use crate::error::GraphError;
use crate::par;

/// Edges generated per RNG stream in the R-MAT generator.
const RMAT_CHUNK: usize = 1 << 14;

/// Quadrant probabilities for the recursive matrix generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RmatParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl RmatParams {
    /// The Graph 500 initiator.
    pub const fn graph500() -> Self {
        Self {
            a: 0.57,
            b: 0.19,
            c: 0.19,
            d: 0.05,
        }
    }
}

impl Default for RmatParams {
    fn default() -> Self {
        Self::graph500()
    }
}

/// Generates `edge_factor * 2^scale` directed R-MAT edges over `2^scale`
/// vertices by noise-free recursive quadrant descent.
///
/// Duplicates and self-loops are kept; they are removed when the list is
/// built into CSR. Output depends only on the arguments, not on thread count.
pub fn generate_rmat(
    scale: u32,
    edge_factor: usize,
    params: RmatParams,
    seed: u64,
) -> Result<CooGraph, GraphError> {
    let RmatParams { a, b, c, d } = params;
    let sum = a + b + c + d;
    if (sum - 1.0).abs() > 1e-9 {
        return Err(GraphError::InvalidProbabilities { sum });
    }
    if [a, b, c, d].iter().any(|p| *p < 0.0) {
        return Err(GraphError::InvalidParameter("R-MAT probabilities must be non-negative".into()));
    }
    if !(1..=31).contains(&scale) {
        return Err(GraphError::InvalidParameter(format!("scale {scale} outside 1..=31")));
    }
    let n = 1usize << scale;
    let m = edge_factor
        .checked_mul(n)
        .filter(|&m| m <= u32::MAX as usize)
        .ok_or(GraphError::TooLarge {
            edges: (edge_factor as u64).saturating_mul(n as u64),
        })?;

    let (ab, abc) = (a + b, a + b + c);
    let chunks = m.div_ceil(RMAT_CHUNK);
    let parts: Vec<Vec<(VertexId, VertexId)>> = par::map_index(chunks, |chunk| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(chunk as u64);
        let len = RMAT_CHUNK.min(m - chunk * RMAT_CHUNK);
        (0..len)
            .map(|_| {
                let (mut u, mut v) = (0u32, 0u32);
                for bit in (0..scale).rev() {
                    let r: f64 = rng.gen();
                    let (du, dv) = if r < a {
                        (0, 0)
                    } else if r < ab {
                        (0, 1)
                    } else if r < abc {
                        (1, 0)
                    } else {
                        (1, 1)
                    };
                    u |= du << bit;
                    v |= dv << bit;
                }
                (u, v)
            })
            .collect()
    });
    let edges = par::concat(parts);
    Ok(CooGraph {
        num_vertices: n,
        src: edges.iter().map(|e| e.0).collect(),
        dst: edges.iter().map(|e| e.1).collect(),
        weights: None,
    })
}

/// Distance threshold that scales the connectivity radius with graph size:
/// `0.55 * sqrt(ln n / n)` for `n = 2^scale`. At scale 24 this is 0.000548.
pub fn rgg_default_threshold(scale: u32) -> f64 {
    let n = (1u64 << scale) as f64;
    0.55 * (n.ln() / n).sqrt()
}

/// `2^scale` points drawn uniformly from the unit square.
pub fn rgg_points(scale: u32, seed: u64) -> Vec<(f64, f64)> {
    let n = 1usize << scale;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| (rng.gen::<f64>(), rng.gen::<f64>())).collect()
}

/// All pairs `(i, j)`, `i < j`, at Euclidean distance below `threshold`,
/// sorted ascending. Uses a uniform grid with cells at least `threshold` wide.
pub fn rgg_edges(points: &[(f64, f64)], threshold: f64) -> Vec<(VertexId, VertexId)> {
    let n = points.len();
    if n < 2 {
        return Vec::new();
    }
    let per_side = ((1.0 / threshold).floor() as usize).clamp(1, 1 << 15);
    let cell_of = |p: (f64, f64)| {
        let cx = ((p.0 * per_side as f64) as usize).min(per_side - 1);
        let cy = ((p.1 * per_side as f64) as usize).min(per_side - 1);
        (cx, cy)
    };
    let key = |cx: usize, cy: usize| (cy * per_side + cx) as u64;
    let mut order: Vec<(u64, VertexId)> = points
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let (cx, cy) = cell_of(p);
            (key(cx, cy), i as VertexId)
        })
        .collect();
    par::sort_unstable(&mut order);
    let t2 = threshold * threshold;

    let parts: Vec<Vec<(VertexId, VertexId)>> = par::map_index(n, |i| {
        let p = points[i];
        let (cx, cy) = cell_of(p);
        let mut out = Vec::new();
        for ny in cy.saturating_sub(1)..=(cy + 1).min(per_side - 1) {
            for nx in cx.saturating_sub(1)..=(cx + 1).min(per_side - 1) {
                let k = key(nx, ny);
                let lo = order.partition_point(|e| e.0 < k);
                for &(kk, j) in &order[lo..] {
                    if kk != k {
                        break;
                    }
                    let j = j as usize;
                    if j <= i {
                        continue;
                    }
                    let (dx, dy) = (points[j].0 - p.0, points[j].1 - p.1);
                    if dx * dx + dy * dy < t2 {
                        out.push((i as VertexId, j as VertexId));
                    }
                }
            }
        }
        out.sort_unstable();
        out
    });
    par::concat(parts)
}

/// Random geometric graph on `2^scale` uniform points in the unit square.
/// Each undirected edge appears once, as `(i, j)` with `i < j`.
pub fn generate_rgg(scale: u32, threshold: f64, seed: u64) -> Result<CooGraph, GraphError> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(GraphError::InvalidParameter(format!(
            "threshold {threshold} outside (0, 1)"
        )));
    }
    if scale > 31 {
        return Err(GraphError::InvalidParameter(format!("scale {scale} exceeds 31")));
    }
    let points = rgg_points(scale, seed);
    let edges = rgg_edges(&points, threshold);
    Ok(CooGraph::from_edges(points.len(), &edges))
}

/// Copy of `g` with uniform random integer weights in `[lo, hi]`.
///
/// Mirrored edges `(u, v)` / `(v, u)` receive the same weight.
pub fn assign_random_weights(
    g: &CsrGraph,
    lo: Weight,
    hi: Weight,
    seed: u64,
) -> Result<CsrGraph, GraphError> {
    if lo < 1 || lo > hi {
        return Err(GraphError::InvalidParameter(format!(
            "weight range [{lo}, {hi}] must satisfy 1 <= lo <= hi"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let src = g.edge_sources();
    let mut weights: Vec<Weight> = Vec::with_capacity(g.num_edges());
    for (e, (&u, &v)) in src.iter().zip(g.column_indices()).enumerate() {
        // Rows are visited in ascending order, so the mirror of a u > v edge
        // already has its weight.
        let mirrored = (u > v).then(|| g.find_edge(v, u)).flatten();
        let w = match mirrored {
            Some(back) if (back as usize) < e => weights[back as usize],
            _ => rng.gen_range(lo..=hi),
        };
        weights.push(w);
    }
    g.with_weights(weights)
}
