use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use gwheel::fm_index::FmIndex;
use gwheel::gbwt::{build_bwt, decode_bwt};
use gwheel_bench::{patterns, wheeler_workload};

fn build(c: &mut Criterion) {
    let mut group = c.benchmark_group("bwt");
    for states in [10, 30, 100] {
        let (g, order) = wheeler_workload(states, 4, 7);
        group.bench_with_input(BenchmarkId::new("build", states), &states, |b, _| {
            b.iter(|| build_bwt(black_box(&g), &order).unwrap())
        });
        let bwt = build_bwt(&g, &order).unwrap();
        group.bench_with_input(BenchmarkId::new("decode", states), &states, |b, _| {
            b.iter(|| decode_bwt(black_box(&bwt)).unwrap())
        });
    }
    group.finish();
}

fn query(c: &mut Criterion) {
    let mut group = c.benchmark_group("query");
    for r in [1, 2, 4] {
        let (g, order) = wheeler_workload(60, r, 11);
        let idx = FmIndex::build(&g, &order).unwrap();
        let pats = patterns(&g, 100, 3);
        group.bench_with_input(BenchmarkId::new("smlg", r), &r, |b, _| {
            b.iter(|| pats.iter().map(|p| idx.smlg(black_box(p)).len()).sum::<usize>())
        });
        group.bench_with_input(BenchmarkId::new("member", r), &r, |b, _| {
            b.iter(|| pats.iter().filter(|p| idx.member(black_box(p))).count())
        });
    }
    group.finish();
}

criterion_group!(benches, build, query);
criterion_main!(benches);
