//! Parallel vs sequential comparison for the row-parallel kernels: the
//! forward and inverse transforms, the series test matrix build, and the
//! modular. Run with `cargo bench -p seqspace`.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use seqspace::duals::{beta_gamma_matrix_par, beta_gamma_matrix_seq};
use seqspace::norms::modular_seq;
use seqspace::triangle::{
    forward_transform_par, forward_transform_seq, inverse_transform_par, inverse_transform_seq,
};
use seqspace::{validate_params, ExponentSequence, FiniteSequence, GeneralizedMeansParams};

fn random_instance(n: usize, seed: u64) -> (GeneralizedMeansParams, FiniteSequence) {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut draw = |lo: f64, hi: f64| rng.gen_range(lo..hi);
    let r: Vec<f64> = (0..n).map(|_| draw(0.5, 2.0)).collect();
    let s: Vec<f64> = (0..n).map(|_| draw(-0.5, 0.5).abs() + 0.1).collect();
    let t: Vec<f64> = (0..n).map(|_| draw(0.5, 2.0)).collect();
    let x: Vec<f64> = (0..n).map(|_| draw(-5.0, 5.0)).collect();
    (
        validate_params(&r, &s, &t).unwrap(),
        FiniteSequence::new(x).unwrap(),
    )
}

fn bench_forward(c: &mut Criterion) {
    let mut group = c.benchmark_group("forward_transform");
    for n in [512usize, 2048] {
        let (params, x) = random_instance(n, 1);
        group.bench_with_input(BenchmarkId::new("seq", n), &n, |b, _| {
            b.iter(|| forward_transform_seq(&params, &x).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("par", n), &n, |b, _| {
            b.iter(|| forward_transform_par(&params, &x).unwrap())
        });
    }
    group.finish();
}

fn bench_inverse(c: &mut Criterion) {
    let mut group = c.benchmark_group("inverse_transform");
    for n in [512usize, 2048] {
        let (params, x) = random_instance(n, 2);
        let y = forward_transform_seq(&params, &x).unwrap();
        group.bench_with_input(BenchmarkId::new("seq", n), &n, |b, _| {
            b.iter(|| inverse_transform_seq(&params, &y).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("par", n), &n, |b, _| {
            b.iter(|| inverse_transform_par(&params, &y).unwrap())
        });
    }
    group.finish();
}

fn bench_series_matrix(c: &mut Criterion) {
    let mut group = c.benchmark_group("series_test_matrix");
    group.sample_size(20);
    for n in [128usize, 256] {
        let (params, a) = random_instance(n, 3);
        group.bench_with_input(BenchmarkId::new("seq", n), &n, |b, _| {
            b.iter(|| beta_gamma_matrix_seq(&params, &a, n).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("par", n), &n, |b, _| {
            b.iter(|| beta_gamma_matrix_par(&params, &a, n).unwrap())
        });
    }
    group.finish();
}

fn bench_modular(c: &mut Criterion) {
    let mut group = c.benchmark_group("modular");
    let n = 2048usize;
    let (params, x) = random_instance(n, 4);
    let p = ExponentSequence::constant(2.0, n).unwrap();
    group.bench_with_input(BenchmarkId::new("seq", n), &n, |b, _| {
        b.iter(|| modular_seq(&params, &p, &x).unwrap())
    });
    group.bench_with_input(BenchmarkId::new("par", n), &n, |b, _| {
        b.iter(|| seqspace::norms::modular(&params, &p, &x).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_forward,
    bench_inverse,
    bench_series_matrix,
    bench_modular
);
criterion_main!(benches);
