use std::hint::black_box;

use abtaut_core::{borel_serre_check, grr_coefficient, named_series, NamedSeries, TautRing};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn ring_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("ring_build");
    group.sample_size(10);
    for g in [4u32, 6, 8] {
        group.bench_with_input(BenchmarkId::from_parameter(g), &g, |b, &g| b.iter(|| TautRing::build(black_box(g)).unwrap()));
    }
    group.finish();
}

fn socle_ratio(c: &mut Criterion) {
    let ring = TautRing::build(6).unwrap();
    let p = ring.polynomial("l1^21").unwrap();
    c.bench_function("socle_ratio_g6", |b| b.iter(|| ring.socle_ratio(black_box(&p)).unwrap()));
}

fn grr(c: &mut Criterion) {
    let mut group = c.benchmark_group("grr_coefficient");
    for g in [5u32, 10, 20] {
        group.bench_with_input(BenchmarkId::from_parameter(g), &g, |b, &g| b.iter(|| grr_coefficient(black_box(g)).unwrap()));
    }
    group.finish();
}

fn borel_serre(c: &mut Criterion) {
    let mut group = c.benchmark_group("borel_serre");
    group.sample_size(10);
    for g in [2usize, 3, 4] {
        group.bench_with_input(BenchmarkId::from_parameter(g), &g, |b, &g| b.iter(|| borel_serre_check(black_box(g)).unwrap()));
    }
    group.finish();
}

fn series(c: &mut Criterion) {
    c.bench_function("todd_dual_gen_40", |b| b.iter(|| named_series(NamedSeries::ToddDualGen, black_box(40))));
}

criterion_group!(benches, ring_build, socle_ratio, grr, borel_serre, series);
criterion_main!(benches);
