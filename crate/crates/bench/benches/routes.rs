use std::hint::black_box;

use busyq_bench::unit_model;
use busyq_core::exact::{
    busy_dist_explicit, busy_dist_explicit_as, busy_dist_matrix, busy_dist_matrix_as, busy_dist_recursion,
    busy_dist_recursion_as,
};
use busyq_core::model::random_model;
use busyq_core::montecarlo::estimate_busy_dist;
use busyq_core::oracle::busy_dist_bruteforce;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn exact_routes(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact");
    for n in [4usize, 8, 12] {
        let m = unit_model(n);
        group.bench_with_input(BenchmarkId::new("recursion", n), &m, |b, m| {
            b.iter(|| busy_dist_recursion(black_box(m)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("matrix", n), &m, |b, m| {
            b.iter(|| busy_dist_matrix(black_box(m)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("explicit", n), &m, |b, m| {
            b.iter(|| busy_dist_explicit(black_box(m)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("oracle", n), &m, |b, m| {
            b.iter(|| busy_dist_bruteforce(black_box(m)).unwrap())
        });
    }
    // Random rates have large denominators; this is the realistic exact cost.
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let m = random_model(10, &mut rng);
    group.bench_function("recursion/random10", |b| b.iter(|| busy_dist_recursion(black_box(&m)).unwrap()));
    group.bench_function("explicit/random10", |b| b.iter(|| busy_dist_explicit(black_box(&m)).unwrap()));
    group.finish();
}

fn float_routes(c: &mut Criterion) {
    let mut group = c.benchmark_group("f64");
    for n in [8usize, 12, 16] {
        let m = unit_model(n);
        group.bench_with_input(BenchmarkId::new("recursion", n), &m, |b, m| {
            b.iter(|| busy_dist_recursion_as::<f64>(black_box(m)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("matrix", n), &m, |b, m| {
            b.iter(|| busy_dist_matrix_as::<f64>(black_box(m)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("explicit", n), &m, |b, m| {
            b.iter(|| busy_dist_explicit_as::<f64>(black_box(m)).unwrap())
        });
    }
    group.finish();
}

fn monte_carlo(c: &mut Criterion) {
    let mut group = c.benchmark_group("montecarlo");
    group.sample_size(10);
    for n in [3usize, 8] {
        let m = unit_model(n);
        group.bench_with_input(BenchmarkId::new("100k", n), &m, |b, m| {
            b.iter(|| estimate_busy_dist(black_box(m), 100_000, 7))
        });
    }
    group.finish();
}

criterion_group!(benches, exact_routes, float_routes, monte_carlo);
criterion_main!(benches);
