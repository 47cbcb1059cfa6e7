mod common;

use std::io::Cursor;

use graphfx_core::graph::{
    assign_random_weights, generate_rgg, generate_rmat, parse_matrix_market, read_binary, rgg_edges, rgg_points,
    write_binary, BuildOptions, CooGraph, CsrGraph, RmatParams,
};
use proptest::prelude::*;

fn edge_list(max_n: u32) -> impl Strategy<Value = (usize, Vec<(u32, u32)>)> {
    (1..max_n).prop_flat_map(|n| (Just(n as usize), prop::collection::vec((0..n, 0..n), 0..(4 * n as usize))))
}

fn dense(g: &CsrGraph) -> Vec<bool> {
    let n = g.num_vertices();
    let mut a = vec![false; n * n];
    for u in 0..n {
        for &v in g.neighbors(u as u32) {
            a[u * n + v as usize] = true;
        }
    }
    a
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn degrees_sum_to_m((n, edges) in edge_list(200), undirected in any::<bool>()) {
        let opts = if undirected { BuildOptions::undirected() } else { BuildOptions::directed() };
        let g = CsrGraph::from_edges(n, &edges, opts).unwrap();
        let r = g.row_offsets();
        prop_assert_eq!(r[0], 0);
        prop_assert_eq!(r[n], g.num_edges());
        prop_assert!(r.windows(2).all(|w| w[0] <= w[1]));
        let sum: usize = (0..n as u32).map(|v| g.degree(v)).sum();
        prop_assert_eq!(sum, g.num_edges());
        prop_assert!(g.column_indices().iter().all(|&c| (c as usize) < n));
        prop_assert!(g.is_canonical());
    }

    #[test]
    fn symmetrized_adjacency_equals_transpose((n, edges) in edge_list(120)) {
        let g = CsrGraph::from_edges(n, &edges, BuildOptions::undirected()).unwrap();
        let a = dense(&g);
        for u in 0..n {
            prop_assert!(!a[u * n + u], "self-loop kept");
            for v in 0..n {
                prop_assert_eq!(a[u * n + v], a[v * n + u]);
            }
        }
        let mut want: Vec<(u32, u32)> = edges
            .iter()
            .filter(|(u, v)| u != v)
            .flat_map(|&(u, v)| [(u, v), (v, u)])
            .collect();
        want.sort_unstable();
        want.dedup();
        prop_assert_eq!(g.num_edges(), want.len());
    }

    #[test]
    fn coo_round_trip_and_double_transpose((n, edges) in edge_list(150), undirected in any::<bool>()) {
        let opts = if undirected { BuildOptions::undirected() } else { BuildOptions::directed() };
        let g = CsrGraph::from_edges(n, &edges, opts).unwrap();
        let back = g.to_coo().to_csr(opts).unwrap();
        prop_assert_eq!(&back, &g);
        let tt = g.transpose().transpose();
        prop_assert_eq!(tt.row_offsets(), g.row_offsets());
        prop_assert_eq!(tt.column_indices(), g.column_indices());
        let rev = g.reverse();
        for v in 0..n as u32 {
            for (&u, &e) in rev.in_neighbors(v).iter().zip(rev.in_edge_ids(v)) {
                prop_assert_eq!(g.edge_source(e), u);
                prop_assert_eq!(g.edge_target(e), v);
            }
        }
    }

    #[test]
    fn matrix_market_and_binary_round_trip((n, edges) in edge_list(80), seed in any::<u64>()) {
        let g = CsrGraph::from_edges(n, &edges, BuildOptions::undirected()).unwrap();
        let g = assign_random_weights(&g, 1, 64, seed).unwrap();
        let mut text = format!("%%MatrixMarket matrix coordinate integer general\n{n} {n} {}\n", g.num_edges());
        for u in 0..n as u32 {
            for e in g.edge_range(u) {
                text.push_str(&format!("{} {} {}\n", u + 1, g.column_indices()[e] + 1, g.edge_weights().unwrap()[e]));
            }
        }
        let parsed = parse_matrix_market(Cursor::new(text), true).unwrap();
        prop_assert_eq!(&parsed, &g);

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.bin");
        write_binary(&g, &path).unwrap();
        prop_assert_eq!(read_binary(&path).unwrap(), g);
    }

    #[test]
    fn weights_symmetric_and_in_range((n, edges) in edge_list(100), lo in 1u32..10, span in 0u32..60, seed in any::<u64>()) {
        let g = CsrGraph::from_edges(n, &edges, BuildOptions::undirected()).unwrap();
        let hi = lo + span;
        let w = assign_random_weights(&g, lo, hi, seed).unwrap();
        prop_assert_eq!(&assign_random_weights(&g, lo, hi, seed).unwrap(), &w);
        for u in 0..n as u32 {
            for e in w.edge_range(u) {
                let v = w.column_indices()[e];
                let mirror = w.find_edge(v, u).unwrap();
                prop_assert_eq!(w.weight(e as u32), w.weight(mirror));
                prop_assert!((lo..=hi).contains(&w.weight(e as u32)));
            }
        }
    }

    #[test]
    fn generators_are_pure(scale in 1u32..9, ef in 1usize..8, seed in any::<u64>()) {
        let a = generate_rmat(scale, ef, RmatParams::graph500(), seed).unwrap();
        let b = generate_rmat(scale, ef, RmatParams::graph500(), seed).unwrap();
        prop_assert_eq!(a.len(), ef << scale);
        prop_assert_eq!(&a.src, &b.src);
        prop_assert_eq!(&a.dst, &b.dst);
        prop_assert!(a.src.iter().chain(&a.dst).all(|&v| (v as usize) < 1 << scale));
        let r1 = generate_rgg(scale, 0.3, seed).unwrap();
        let r2 = generate_rgg(scale, 0.3, seed).unwrap();
        prop_assert_eq!(&r1.src, &r2.src);
        prop_assert_eq!(&r1.dst, &r2.dst);
    }
}

#[test]
fn rgg_matches_all_pairs() {
    let points = rgg_points(10, 7);
    let t = 0.1;
    let mut want = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let (dx, dy) = (points[i].0 - points[j].0, points[i].1 - points[j].1);
            if (dx * dx + dy * dy).sqrt() < t {
                want.push((i as u32, j as u32));
            }
        }
    }
    assert_eq!(rgg_edges(&points, t), want);
    let coo: CooGraph = generate_rgg(10, t, 7).unwrap();
    assert_eq!(coo.len(), want.len());
}
