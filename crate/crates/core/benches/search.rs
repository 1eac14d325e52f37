use std::sync::Arc;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use flatlab_core::cocompletion::{bounded_closure, ClosureConfig};
use flatlab_core::doctrine::{commutation_refute, SearchConfig, ShapeClass};
use flatlab_core::equational::{enumerate_models, theories};
use flatlab_core::fincat::families;
use flatlab_core::par::Parallelism;

const MODES: [(&str, Parallelism); 2] = [("sequential", Parallelism::Sequential), ("parallel", Parallelism::Parallel)];

/// An exhaustive search that finds nothing: the cospan is filtered.
fn commutation(c: &mut Criterion) {
    let base = Arc::new(families::cospan());
    let shape = Arc::new(families::span());
    let mut group = c.benchmark_group("commutation_refute");
    for (name, mode) in MODES {
        let cfg = SearchConfig {
            parallelism: mode,
            ..SearchConfig::default()
        };
        group.bench_with_input(BenchmarkId::new("cospan/span", name), &cfg, |b, cfg| {
            b.iter(|| commutation_refute(&base, &shape, cfg).unwrap())
        });
    }
    group.finish();
}

fn closure(c: &mut Criterion) {
    let base = Arc::new(families::walking_arrow());
    let mut group = c.benchmark_group("bounded_closure");
    for (name, mode) in MODES {
        let cfg = ClosureConfig {
            parallelism: mode,
            ..ClosureConfig::new(1, 3)
        };
        group.bench_with_input(BenchmarkId::new("arrow/all-finite(2)", name), &cfg, |b, cfg| {
            b.iter(|| bounded_closure(&base, &ShapeClass::AllFinite(2), cfg).unwrap())
        });
    }
    group.finish();
}

fn models(c: &mut Criterion) {
    let e = theories::involution();
    let mut group = c.benchmark_group("enumerate_models");
    for (name, mode) in MODES {
        group.bench_with_input(BenchmarkId::new("involution/5", name), &mode, |b, &mode| {
            b.iter(|| enumerate_models(&e, 5, 10_000_000, mode).unwrap())
        });
    }
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10).measurement_time(Duration::from_secs(3));
    targets = commutation, closure, models
}
criterion_main!(benches);
