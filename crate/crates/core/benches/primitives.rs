use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use graphfx_core::frontier::Frontier;
use graphfx_core::graph::{assign_random_weights, generate_rmat, BuildOptions, CsrGraph, RmatParams};
use graphfx_core::load_balance::Strategy;
use graphfx_core::operators::{advance, AdvanceConfig, AdvanceKind, PassThrough};
use graphfx_core::par;
use graphfx_core::primitives::*;

const SCALE: u32 = 14;

fn rmat() -> CsrGraph {
    generate_rmat(SCALE, 16, RmatParams::graph500(), 1)
        .unwrap()
        .to_csr(BuildOptions::undirected())
        .unwrap()
}

fn hub(g: &CsrGraph) -> u32 {
    (0..g.num_vertices() as u32).max_by_key(|&v| g.degree(v)).unwrap()
}

/// Runs `f` once on the worker pool and once on the calling thread.
fn both<F: Fn() + Copy>(c: &mut Criterion, group: &str, f: F) {
    let mut g = c.benchmark_group(group);
    g.sample_size(20);
    g.bench_function("parallel", |b| b.iter(f));
    g.bench_function("sequential", |b| b.iter(|| par::sequential(f)));
    g.finish();
}

fn primitives(c: &mut Criterion) {
    let g = rmat();
    let w = assign_random_weights(&g, 1, 64, 2).unwrap();
    let s = hub(&g);
    g.reverse();

    both(c, "bfs", || {
        bfs(&g, s, &BfsOptions::default()).unwrap();
    });
    both(c, "bfs_auto_direction", || {
        let opts = BfsOptions {
            direction: graphfx_core::traversal::DirectionPolicy::Auto,
            ..BfsOptions::default()
        };
        bfs(&g, s, &opts).unwrap();
    });
    both(c, "sssp", || {
        sssp(&w, s, &SsspOptions::default()).unwrap();
    });
    both(c, "bc", || {
        bc(&g, s, &BcOptions::default()).unwrap();
    });
    both(c, "cc", || {
        cc(&g, &CcOptions::default()).unwrap();
    });
    both(c, "pagerank_1_iter", || {
        let opts = PagerankOptions {
            max_iters: 1,
            ..PagerankOptions::default()
        };
        pagerank(&g, &opts).unwrap();
    });
    both(c, "tc", || {
        tc(&g, &TcOptions::default()).unwrap();
    });
}

fn strategies(c: &mut Criterion) {
    let g = rmat();
    let all = Frontier::all_vertices(g.num_vertices());
    let mut group = c.benchmark_group("advance_all_vertices");
    group.sample_size(20);
    for s in Strategy::CONCRETE {
        let cfg = AdvanceConfig::with_strategy(s);
        group.bench_with_input(BenchmarkId::new("parallel", s), &cfg, |b, cfg| {
            b.iter(|| advance(&g, &all, AdvanceKind::V2V, cfg, &PassThrough).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("sequential", s), &cfg, |b, cfg| {
            b.iter(|| par::sequential(|| advance(&g, &all, AdvanceKind::V2V, cfg, &PassThrough).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, primitives, strategies);
criterion_main!(benches);
