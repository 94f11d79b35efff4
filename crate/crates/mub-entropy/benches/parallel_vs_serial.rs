//! Compares the rayon-backed search paths against their sequential
//! references. Both produce bit-identical results; this suite measures the
//! speedup only.

use criterion::{criterion_group, criterion_main, Criterion};

use mub_entropy::mub::{larsen_sweep, larsen_sweep_serial};
use mub_entropy::oracle::{
    search_min_entropy_multi, search_min_entropy_multi_serial, search_min_entropy_single,
    search_min_entropy_single_serial, SearchConfig,
};
use mub_entropy::{MultiBoundQuery, SingleBoundQuery};

fn bench_single_search(c: &mut Criterion) {
    let query = SingleBoundQuery::new(4, 0.35, 0.1).unwrap();
    let config = SearchConfig::new(100_000, 42).unwrap();
    let mut group = c.benchmark_group("single_search_100k");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| search_min_entropy_single(&query, &config).unwrap())
    });
    group.bench_function("serial", |b| {
        b.iter(|| search_min_entropy_single_serial(&query, &config).unwrap())
    });
    group.finish();
}

fn bench_multi_lattice(c: &mut Criterion) {
    let query = MultiBoundQuery::new(3, 1.4, vec![4, 4, 4]).unwrap();
    let mut group = c.benchmark_group("multi_lattice_m3_step2e-3");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| search_min_entropy_multi(&query, 2e-3).unwrap())
    });
    group.bench_function("serial", |b| {
        b.iter(|| search_min_entropy_multi_serial(&query, 2e-3).unwrap())
    });
    group.finish();
}

fn bench_larsen_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("larsen_sweep_d9_500");
    group.sample_size(10);
    group.bench_function("parallel", |b| b.iter(|| larsen_sweep(9, 500, 1).unwrap()));
    group.bench_function("serial", |b| {
        b.iter(|| larsen_sweep_serial(9, 500, 1).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_single_search,
    bench_multi_lattice,
    bench_larsen_sweep
);
criterion_main!(benches);
