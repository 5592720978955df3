use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use gwheel::myhill_nerode::minimize;
use gwheel::wheeler::gdfa_wheeler_order;
use gwheel_bench::{minimize_workload, wheeler_workload};

fn minimization(c: &mut Criterion) {
    let mut group = c.benchmark_group("minimize");
    for states in [10, 50, 200] {
        let g = minimize_workload(states, 3, 5);
        group.bench_with_input(BenchmarkId::from_parameter(states), &states, |b, _| {
            b.iter(|| minimize(black_box(&g)).unwrap())
        });
    }
    group.finish();
}

fn wheeler_test(c: &mut Criterion) {
    let mut group = c.benchmark_group("wheeler_order");
    for states in [10, 30, 60] {
        let (g, _) = wheeler_workload(states, 3, 5);
        group.bench_with_input(BenchmarkId::from_parameter(states), &states, |b, _| {
            b.iter(|| gdfa_wheeler_order(black_box(&g)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, minimization, wheeler_test);
criterion_main!(benches);
