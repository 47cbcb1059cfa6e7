//! Segmented intersection of neighbor lists.

use std::cmp::Ordering as CmpOrdering;

use serde::{Deserialize, Serialize};

use crate::error::OperatorError;
use crate::frontier::{Frontier, FrontierKind};
use crate::graph::{CsrGraph, VertexId};
use crate::par;

/// Lists shorter than this on both sides are merged; otherwise the shorter
/// list is binary-searched in the longer one.
pub const DEFAULT_INTERSECT_CUT: usize = 64;

const PAIRS_PER_TASK: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IntersectPath {
    TwoSmall,
    SmallLarge,
}

impl IntersectPath {
    pub fn route(len_a: usize, len_b: usize, cut: usize) -> Self {
        if len_a < cut && len_b < cut {
            IntersectPath::TwoSmall
        } else {
            IntersectPath::SmallLarge
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Intersections {
    /// Intersection sets concatenated in pair order.
    pub items: Vec<VertexId>,
    pub counts: Vec<u64>,
    pub total: u64,
}

impl Intersections {
    /// The intersection set of pair `i`.
    pub fn segment(&self, i: usize) -> &[VertexId] {
        let start: u64 = self.counts[..i].iter().sum();
        let start = start as usize;
        &self.items[start..start + self.counts[i] as usize]
    }
}

fn merge_into(a: &[VertexId], b: &[VertexId], out: &mut Vec<VertexId>) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            CmpOrdering::Less => i += 1,
            CmpOrdering::Greater => j += 1,
            CmpOrdering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
}

fn search_into(small: &[VertexId], large: &[VertexId], out: &mut Vec<VertexId>) {
    let mut rest = large;
    for &x in small {
        match rest.binary_search(&x) {
            Ok(p) => {
                out.push(x);
                rest = &rest[p + 1..];
            }
            Err(p) => rest = &rest[p..],
        }
        if rest.is_empty() {
            break;
        }
    }
}

/// Appends `N(a) ∩ N(b)` in ascending order.
pub(crate) fn intersect_lists(a: &[VertexId], b: &[VertexId], cut: usize, out: &mut Vec<VertexId>) {
    debug_assert!(a.windows(2).all(|w| w[0] <= w[1]), "unsorted neighbor list");
    debug_assert!(b.windows(2).all(|w| w[0] <= w[1]), "unsorted neighbor list");
    match IntersectPath::route(a.len(), b.len(), cut) {
        IntersectPath::TwoSmall => merge_into(a, b, out),
        IntersectPath::SmallLarge => {
            let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
            search_into(small, large, out)
        }
    }
}

fn run_pairs(g: &CsrGraph, n: usize, pair: impl Fn(usize) -> (VertexId, VertexId) + Sync + Send, cut: usize) -> Intersections {
    let tasks = n.div_ceil(PAIRS_PER_TASK);
    let parts: Vec<(Vec<VertexId>, Vec<u64>)> = par::map_index(tasks, |t| {
        let range = t * PAIRS_PER_TASK..((t + 1) * PAIRS_PER_TASK).min(n);
        let mut items = Vec::new();
        let mut counts = Vec::with_capacity(range.len());
        for i in range {
            let (u, v) = pair(i);
            let before = items.len();
            intersect_lists(g.neighbors(u), g.neighbors(v), cut, &mut items);
            counts.push((items.len() - before) as u64);
        }
        (items, counts)
    });
    let (items, counts): (Vec<_>, Vec<_>) = parts.into_iter().unzip();
    let counts = par::concat(counts);
    let total = counts.iter().sum();
    Intersections {
        items: par::concat(items),
        counts,
        total,
    }
}

/// Intersects `N(left[i])` with `N(right[i])` for every `i`.
pub fn segmented_intersect(
    g: &CsrGraph,
    left: &Frontier,
    right: &Frontier,
    cut: usize,
) -> Result<Intersections, OperatorError> {
    for f in [left, right] {
        if f.kind() != FrontierKind::Vertex {
            return Err(OperatorError::KindMismatch {
                operator: "segmented intersection",
                expected: FrontierKind::Vertex,
                found: f.kind(),
            });
        }
    }
    if left.len() != right.len() {
        return Err(OperatorError::LengthMismatch {
            left: left.len(),
            right: right.len(),
        });
    }
    let (l, r) = (left.items(), right.items());
    Ok(run_pairs(g, l.len(), |i| (l[i], r[i]), cut))
}

/// Intersects the neighbor lists of both endpoints of every edge in `edges`.
pub fn segmented_intersect_edges(g: &CsrGraph, edges: &Frontier, cut: usize) -> Result<Intersections, OperatorError> {
    if edges.kind() != FrontierKind::Edge {
        return Err(OperatorError::KindMismatch {
            operator: "segmented intersection",
            expected: FrontierKind::Edge,
            found: edges.kind(),
        });
    }
    let items = edges.items();
    let sources = g.edge_sources();
    Ok(run_pairs(
        g,
        items.len(),
        |i| (sources[items[i] as usize], g.edge_target(items[i])),
        cut,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::BuildOptions;

    fn k3() -> CsrGraph {
        CsrGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)], BuildOptions::undirected()).unwrap()
    }

    #[test]
    fn k3_pair() {
        let r = segmented_intersect(&k3(), &Frontier::vertices(vec![0]), &Frontier::vertices(vec![1]), 64).unwrap();
        assert_eq!(r.items, vec![2]);
        assert_eq!(r.counts, vec![1]);
        assert_eq!(r.total, 1);
    }

    #[test]
    fn disjoint_and_self() {
        let g = CsrGraph::from_edges(5, &[(0, 1), (2, 3), (2, 4), (3, 4)], BuildOptions::undirected()).unwrap();
        let r = segmented_intersect(&g, &Frontier::vertices(vec![0, 2]), &Frontier::vertices(vec![2, 2]), 64).unwrap();
        assert_eq!(r.counts, vec![0, 2]);
        assert_eq!(r.segment(1), &[3, 4]);
    }

    #[test]
    fn both_paths_agree() {
        let a: Vec<u32> = (0..500).filter(|x| x % 3 == 0).collect();
        let b: Vec<u32> = (0..500).filter(|x| x % 5 == 0).collect();
        let mut merged = Vec::new();
        let mut searched = Vec::new();
        intersect_lists(&a, &b, usize::MAX, &mut merged);
        intersect_lists(&a, &b, 0, &mut searched);
        assert_eq!(merged, searched);
        assert_eq!(merged, (0..500).filter(|x| x % 15 == 0).collect::<Vec<u32>>());
    }

    #[test]
    fn routing() {
        assert_eq!(IntersectPath::route(3, 63, 64), IntersectPath::TwoSmall);
        assert_eq!(IntersectPath::route(3, 64, 64), IntersectPath::SmallLarge);
    }

    #[test]
    fn edge_frontier_and_errors() {
        let g = k3();
        let r = segmented_intersect_edges(&g, &Frontier::all_edges(g.num_edges()), 64).unwrap();
        assert_eq!(r.counts, vec![1; 6]);
        assert_eq!(r.total, 6);
        assert!(matches!(
            segmented_intersect(&g, &Frontier::vertices(vec![0]), &Frontier::vertices(vec![]), 64),
            Err(OperatorError::LengthMismatch { left: 1, right: 0 })
        ));
        assert!(segmented_intersect_edges(&g, &Frontier::vertices(vec![0]), 64).is_err());
    }
}
