use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use tracecut::engine::{embed_bipartite_direct, embed_unipartite};
use tracecut::graph::{AffinityGraph, Objective, ObjectiveSpec};
use tracecut::linalg::{eigh, svd};
use tracecut::oracle::{enumerate_best, random_matrix, random_symmetric_matrix};
use tracecut::rng::SplitMix64;
use tracecut::rounding::{kmeans_rows, RoundingConfig};

fn bench_eigh(c: &mut Criterion) {
    let mut group = c.benchmark_group("eigh_top4");
    for &n in &[16usize, 32, 64] {
        let mut rng = SplitMix64::new(7);
        let m = random_symmetric_matrix(&mut rng, n, -1.0, 1.0);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| eigh(black_box(m), 4).unwrap());
        });
    }
    group.finish();
}

fn bench_svd(c: &mut Criterion) {
    let mut group = c.benchmark_group("svd_top4");
    for &(rows, cols) in &[(32usize, 16usize), (64, 24)] {
        let mut rng = SplitMix64::new(11);
        let m = random_matrix(&mut rng, rows, cols, 0.0, 1.0);
        let label = format!("{rows}x{cols}");
        group.bench_with_input(BenchmarkId::from_parameter(label), &m, |b, m| {
            b.iter(|| svd(black_box(m), 4).unwrap());
        });
    }
    group.finish();
}

fn bench_unipartite_pipeline(c: &mut Criterion) {
    let n = 64;
    let mut rng = SplitMix64::new(13);
    let mut w = random_symmetric_matrix(&mut rng, n, 0.0, 1.0);
    for i in 0..n {
        w[(i, i)] = 0.0;
    }
    let g = AffinityGraph::unipartite(w).unwrap();
    let spec = ObjectiveSpec::new(Objective::NAssoc).unwrap();
    let cfg = RoundingConfig::with_seed(5);
    c.bench_function("unipartite_embed_round_n64_k4", |b| {
        b.iter(|| {
            let e = embed_unipartite(black_box(&g), &spec, 4).unwrap();
            kmeans_rows(&e, 4, &cfg).unwrap()
        });
    });
}

fn bench_bipartite_direct(c: &mut Criterion) {
    let mut rng = SplitMix64::new(17);
    let a = random_matrix(&mut rng, 96, 48, 0.1, 1.0);
    let spec = ObjectiveSpec::new(Objective::NAssoc).unwrap();
    c.bench_function("bipartite_direct_embed_96x48_k4", |b| {
        b.iter(|| embed_bipartite_direct(black_box(&a), &spec, 4).unwrap());
    });
}

fn bench_enumeration(c: &mut Criterion) {
    let n = 10;
    let mut rng = SplitMix64::new(19);
    let mut w = random_symmetric_matrix(&mut rng, n, 0.0, 1.0);
    for i in 0..n {
        w[(i, i)] = 0.0;
    }
    let g = AffinityGraph::unipartite(w).unwrap();
    let spec = ObjectiveSpec::new(Objective::RAssoc).unwrap();
    c.bench_function("enumerate_best_n10_k3", |b| {
        b.iter(|| enumerate_best(black_box(&g), &spec, 3).unwrap());
    });
}

criterion_group!(
    benches,
    bench_eigh,
    bench_svd,
    bench_unipartite_pipeline,
    bench_bipartite_direct,
    bench_enumeration
);
criterion_main!(benches);
