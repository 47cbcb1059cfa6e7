mod common;

use std::collections::HashSet;
use std::sync::atomic::{AtomicU32, Ordering};

use common::*;
use graphfx_core::frontier::{generate_unvisited_frontier, Frontier, UNVISITED};
use graphfx_core::graph::{BuildOptions, CsrGraph, EdgeId, VertexId};
use graphfx_core::load_balance::{compute_scan_offsets, Strategy as Lb};
use graphfx_core::operators::*;
use graphfx_core::priority_queue::{split, NearFarPile};
use graphfx_core::traversal::{decide_from, Direction};
use proptest::prelude::*;

fn graph(max_n: u32) -> impl Strategy<Value = CsrGraph> {
    (1..max_n, any::<bool>()).prop_flat_map(|(n, undirected)| {
        prop::collection::vec((0..n, 0..n), 0..(6 * n as usize)).prop_map(move |edges| {
            let opts = if undirected { BuildOptions::undirected() } else { BuildOptions::directed() };
            CsrGraph::from_edges(n as usize, &edges, opts).unwrap()
        })
    })
}

fn graph_and_frontier(max_n: u32) -> impl Strategy<Value = (CsrGraph, Vec<u32>)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.num_vertices() as u32;
        (Just(g), prop::collection::vec(0..n, 0..(2 * n as usize)))
    })
}

fn all_strategies() -> Vec<Lb> {
    Lb::CONCRETE.into_iter().chain([Lb::Auto]).collect()
}

struct Counting<'a> {
    calls: &'a [AtomicU32],
    keep: &'a (dyn Fn(VertexId, VertexId) -> bool + Sync),
}

impl Functor for Counting<'_> {
    fn cond_edge(&self, s: VertexId, d: VertexId, _: EdgeId) -> bool {
        (self.keep)(s, d)
    }
    fn apply_edge(&self, _: VertexId, _: VertexId, e: EdgeId) {
        self.calls[e as usize].fetch_add(1, Ordering::Relaxed);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn scan_offsets_are_prefix_sums((g, items) in graph_and_frontier(300)) {
        let scan = compute_scan_offsets(&g, &Frontier::vertices(items.clone()));
        prop_assert_eq!(scan.offsets.len(), items.len() + 1);
        let mut acc = 0;
        for (i, &v) in items.iter().enumerate() {
            prop_assert_eq!(scan.offsets[i], acc);
            acc += g.degree(v);
        }
        prop_assert_eq!(scan.total_output, acc);
    }

    #[test]
    fn advance_is_strategy_independent((g, items) in graph_and_frontier(300), salt in any::<u32>()) {
        let keep = move |s: u32, d: u32| !(s ^ d ^ salt).is_multiple_of(3);
        let input = Frontier::vertices(items.clone());
        let mut want: Vec<u32> = items
            .iter()
            .flat_map(|&v| g.neighbors(v).iter().copied().filter(move |&d| keep(v, d)))
            .collect();
        want.sort_unstable();
        for s in all_strategies() {
            let calls: Vec<AtomicU32> = (0..g.num_edges()).map(|_| AtomicU32::new(0)).collect();
            let f = Counting { calls: &calls, keep: &keep };
            let out = advance(&g, &input, AdvanceKind::V2V, &AdvanceConfig::with_strategy(s), &f).unwrap();
            prop_assert_eq!(out.sorted(), want.clone(), "strategy {}", s);
            // apply runs once per (input occurrence, edge) that passed cond.
            let mut expected = vec![0u32; g.num_edges()];
            for &v in &items {
                for e in g.edge_range(v) {
                    if keep(v, g.column_indices()[e]) {
                        expected[e] += 1;
                    }
                }
            }
            let got: Vec<u32> = calls.iter().map(|c| c.load(Ordering::Relaxed)).collect();
            prop_assert_eq!(got, expected, "strategy {}", s);
        }
    }

    #[test]
    fn fused_advance_filter_matches_two_step((g, items) in graph_and_frontier(300), idempotent in any::<bool>()) {
        let input = Frontier::vertices(items);
        let mode = if idempotent { FilterMode::Inexact(CullConfig::default()) } else { FilterMode::Exact };
        let cfg = AdvanceConfig::default();
        let two = filter(&advance(&g, &input, AdvanceKind::V2V, &cfg, &PassThrough).unwrap(), &FilterMode::Exact, &PassThrough);
        let fused = advance_filter(&g, &input, AdvanceKind::V2V, &AdvanceConfig::with_strategy(Lb::LbCull), &mode, &PassThrough).unwrap();
        let a: HashSet<u32> = two.items().iter().copied().collect();
        let b: HashSet<u32> = fused.items().iter().copied().collect();
        prop_assert_eq!(a, b);
        if !idempotent {
            prop_assert_eq!(fused.len(), two.len());
        }
    }

    #[test]
    fn exact_filter_is_idempotent(items in prop::collection::vec(0u32..500, 0..2000), m in 1u32..5) {
        let cond = ItemCond(move |x: u32| x % m != 1);
        let once = filter(&Frontier::vertices(items), &FilterMode::Exact, &cond);
        let twice = filter(&once, &FilterMode::Exact, &cond);
        prop_assert_eq!(once.sorted(), twice.sorted());
    }

    #[test]
    fn intersections_match_brute_force((g, items) in graph_and_frontier(400), cut in 0usize..80) {
        let g = if g.is_undirected() { g } else { g.to_coo().to_csr(BuildOptions::undirected()).unwrap() };
        let right: Vec<u32> = items.iter().rev().copied().collect();
        let got = segmented_intersect(&g, &Frontier::vertices(items.clone()), &Frontier::vertices(right.clone()), cut).unwrap();
        let mut total = 0;
        for (i, (&u, &v)) in items.iter().zip(&right).enumerate() {
            let mut want = Vec::new();
            for &a in g.neighbors(u) {
                for &b in g.neighbors(v) {
                    if a == b {
                        want.push(a);
                    }
                }
            }
            prop_assert_eq!(got.segment(i), &want[..]);
            total += want.len() as u64;
        }
        prop_assert_eq!(got.total, total);
    }

    #[test]
    fn unvisited_frontier_complements_labels(labels in prop::collection::vec(prop_oneof![Just(UNVISITED), 0u32..9], 0..500)) {
        let f = generate_unvisited_frontier(&labels);
        let set = labels.iter().filter(|&&l| l != UNVISITED).count();
        prop_assert_eq!(f.len() + set, labels.len());
        prop_assert!(f.items().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn split_conserves_items(keys in prop::collection::vec(0u64..100, 0..300), threshold in 0u64..120, delta in 1u64..30) {
        let input = Frontier::vertices((0..keys.len() as u32).collect::<Vec<_>>());
        let key = |v: u32| keys[v as usize];
        let (near, far) = split(&input, key, threshold);
        prop_assert!(near.items().iter().all(|&v| key(v) < threshold));
        prop_assert!(far.items().iter().all(|&v| key(v) >= threshold));
        let mut all: Vec<u32> = near.items().iter().chain(far.items()).copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, input.items().to_vec());

        let mut pile = NearFarPile { near: Frontier::vertices(vec![]), far, threshold, delta };
        let mut seen = near.len();
        while !pile.far.is_empty() {
            let before = pile.far.len();
            pile.advance_bucket(key, |_| true).unwrap();
            prop_assert_eq!(pile.near.len() + pile.far.len(), before);
            seen += pile.near.len();
            pile.near = Frontier::vertices(vec![]);
        }
        prop_assert_eq!(seen, keys.len());
    }

    #[test]
    fn raising_do_a_never_switches_earlier(m_f in 0.0f64..1e6, m_u in 0.0f64..1e6, a in 1e-6f64..10.0, factor in 1.0f64..100.0) {
        if decide_from(Direction::Push, m_f, m_u, a * factor, 0.2) == Direction::Pull {
            prop_assert_eq!(decide_from(Direction::Push, m_f, m_u, a, 0.2), Direction::Pull);
        }
    }
}

#[test]
fn inexact_filter_on_large_random_input() {
    use rand::Rng;
    let mut r = rng(5);
    let items: Vec<u32> = (0..100_000).map(|_| r.gen_range(0..20_000)).collect();
    let distinct: HashSet<u32> = items.iter().copied().collect();
    let out = filter(&Frontier::vertices(items.clone()), &FilterMode::Inexact(CullConfig::default()), &PassThrough);
    let got: HashSet<u32> = out.items().iter().copied().collect();
    assert_eq!(got, distinct);
    assert!(out.len() <= items.len());
    assert!(out.len() >= distinct.len());
}
