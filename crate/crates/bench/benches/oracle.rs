use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use graph_coupling::{brute_force_gc, OracleOptions};
use graph_coupling_bench::suite_graphs;

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    for (id, g) in suite_graphs(|n| n <= 6) {
        group.bench_with_input(BenchmarkId::from_parameter(&id), &g, |b, g| {
            b.iter(|| brute_force_gc(black_box(g), &OracleOptions::default()).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, oracle);
criterion_main!(benches);
