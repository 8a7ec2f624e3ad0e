use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use lambda_lab::adams::default_primes;
use lambda_lab::isoclass::{case2_family, iso_solve};
use lambda_lab::symuniv::{product_p, UniversalCap};
use lambda_lab::{AdamsFamily, RingShape};
use lambda_lab_bench::{iso_pair, series, unit_series};

fn compose(c: &mut Criterion) {
    let mut g = c.benchmark_group("compose");
    for r in [8u32, 16, 32] {
        let (f, h) = (series(r, 5), series(r, 3));
        g.bench_with_input(BenchmarkId::from_parameter(r), &r, |b, _| {
            b.iter(|| f.compose1(black_box(&h)).unwrap())
        });
    }
    g.finish();
}

fn comp_inverse(c: &mut Criterion) {
    let mut g = c.benchmark_group("comp_inverse");
    for r in [8u32, 16, 32] {
        let f = unit_series(r, 7);
        g.bench_with_input(BenchmarkId::from_parameter(r), &r, |b, _| {
            b.iter(|| black_box(&f).comp_inverse().unwrap())
        });
    }
    g.finish();
}

fn validate(c: &mut Criterion) {
    let chern = AdamsFamily::chern(RingShape::univariate(8), default_primes()).unwrap();
    let s = case2_family(&5.into(), &14.into(), default_primes()).unwrap();
    c.bench_function("validate/chern_8", |b| b.iter(|| black_box(&chern).validate().unwrap()));
    c.bench_function("validate/case2", |b| b.iter(|| black_box(&s).validate().unwrap()));
}

fn iso(c: &mut Criterion) {
    let (r, s) = iso_pair(1, 22);
    c.bench_function("iso_solve/conjugate", |b| {
        b.iter(|| iso_solve(black_box(&r), black_box(&s), 8).unwrap())
    });
    let (t, _) = iso_pair(5, 22);
    c.bench_function("iso_solve/distinct", |b| {
        b.iter(|| iso_solve(black_box(&r), black_box(&t), 8).unwrap())
    });
}

fn universal(c: &mut Criterion) {
    let mut g = c.benchmark_group("product_p");
    g.sample_size(10);
    for i in 1..=4usize {
        g.bench_with_input(BenchmarkId::from_parameter(i), &i, |b, &i| {
            b.iter(|| product_p(i, UniversalCap::default()).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, compose, comp_inverse, validate, iso, universal);
criterion_main!(benches);
