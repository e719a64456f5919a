use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use monodromy_bench::family1_logs;
use monodromy_core::certify::run_pipeline;
use monodromy_core::exact::{charpoly, det, minpoly};
use monodromy_core::families::family_dataset;
use monodromy_core::liecore::lie_closure;

fn bench_exact_kernels(c: &mut Criterion) {
    let dataset = family_dataset(1).unwrap();
    let q = dataset.q_form.as_ref().unwrap().matrix().clone();
    let m0 = dataset.big_monodromies["M0"].clone();
    c.bench_function("det_q_7x7", |b| b.iter(|| det(black_box(&q)).unwrap()));
    c.bench_function("charpoly_m0_7x7", |b| {
        b.iter(|| charpoly(black_box(&m0)).unwrap())
    });
    c.bench_function("minpoly_m0_7x7", |b| {
        b.iter(|| minpoly(black_box(&m0)).unwrap())
    });
}

fn bench_lie_closure(c: &mut Criterion) {
    let (n_plus, n_minus, n_inf) = family1_logs();
    let generators = vec![n_plus, n_minus, n_inf];
    c.bench_function("lie_closure_family1", |b| {
        b.iter(|| lie_closure(black_box(&generators), 49).unwrap())
    });
}

fn bench_full_pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("pipeline");
    group.sample_size(10);
    group.bench_function("family1_full", |b| {
        b.iter(|| run_pipeline(black_box(1), None).unwrap())
    });
    group.bench_function("family4_full", |b| {
        b.iter(|| run_pipeline(black_box(4), None).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_exact_kernels,
    bench_lie_closure,
    bench_full_pipeline
);
criterion_main!(benches);
