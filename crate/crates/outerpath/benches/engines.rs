//! Engine benchmarks: the subset-DP table fill, sequential versus the
//! rayon layer-synchronous fill (when the `parallel` feature is on), plus
//! the downstream consumers that dominate real runs.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use outerpath::extract::extract_pw2;
use outerpath::extremal::brute_force_ik;
use outerpath::mop::random_mop;
use outerpath::pathwidth::vs_table_sequential;

fn bench_table_fill(c: &mut Criterion) {
    let mut group = c.benchmark_group("vs_table_fill");
    group.sample_size(10);
    for n in [16u32, 20, 22] {
        let g = random_mop(n, 1).unwrap().underlying_graph();
        let adj = g.neighbor_masks().unwrap();
        group.bench_with_input(BenchmarkId::new("sequential", n), &adj, |b, adj| {
            b.iter(|| vs_table_sequential(adj))
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", n), &adj, |b, adj| {
            b.iter(|| outerpath::pathwidth::vs_table_parallel(adj))
        });
    }
    group.finish();
}

fn bench_extract(c: &mut Criterion) {
    let mut group = c.benchmark_group("extract_pw2");
    group.sample_size(10);
    for n in [50u32, 120] {
        let g = random_mop(n, 7).unwrap().underlying_graph();
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| extract_pw2(g).unwrap())
        });
    }
    group.finish();
}

fn bench_ik_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute_force_ik");
    group.sample_size(10);
    let g = random_mop(14, 3).unwrap().underlying_graph();
    group.bench_function("mop14_k2", |b| b.iter(|| brute_force_ik(&g, 2).unwrap()));
    group.finish();
}

criterion_group!(benches, bench_table_fill, bench_extract, bench_ik_oracle);
criterion_main!(benches);
