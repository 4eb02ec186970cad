use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use zassenhaus_bench::{BOUND_POINTS, SERIES_DEGREES};
use zassenhaus_core::{verify_associative, zassenhaus_series, BoundTable};

fn series(c: &mut Criterion) {
    let mut group = c.benchmark_group("series");
    group.sample_size(10);
    for n in SERIES_DEGREES {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| zassenhaus_series(black_box(n)).unwrap())
        });
    }
    group.finish();
}

fn bound_table(c: &mut Criterion) {
    let mut group = c.benchmark_group("bound_table");
    group.sample_size(10);
    for (x, y) in BOUND_POINTS {
        group.bench_with_input(
            BenchmarkId::new("n_max_1000", format!("{x},{y}")),
            &(x, y),
            |b, &(x, y)| b.iter(|| BoundTable::build(black_box(x), black_box(y), 1000).unwrap()),
        );
    }
    group.finish();
}

fn associative(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_associative");
    group.sample_size(10);
    group.bench_function("degree_10", |b| {
        b.iter(|| verify_associative(black_box(10)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, series, bound_table, associative);
criterion_main!(benches);
