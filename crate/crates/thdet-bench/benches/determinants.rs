//! Determinant routes: closed forms against each other and against the LU
//! oracle, in both backends, as n and k grow.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use thdet::{bc_toeplitz_det, be_det, build_th, det_lu, th_det};
use thdet_bench::{exact_symbol, float_symbol};

/// Subset-sum T+H closed form; the term count is 4^k, flat in n.
fn bench_th_det(c: &mut Criterion) {
    let mut group = c.benchmark_group("th_det");
    for k in [1, 2, 3] {
        let sym = float_symbol(k);
        group.bench_with_input(BenchmarkId::new("float_n16_k", k), &sym, |b, sym| {
            b.iter(|| th_det(black_box(sym), 16).unwrap());
        });
    }
    let sym = float_symbol(2);
    for n in [4, 16, 64] {
        group.bench_with_input(BenchmarkId::new("float_k2_n", n), &n, |b, &n| {
            b.iter(|| th_det(black_box(&sym), n).unwrap());
        });
    }
    let exact = exact_symbol(2);
    group.bench_function("exact_k2_n16", |b| {
        b.iter(|| th_det(black_box(&exact), 16).unwrap());
    });
    group.finish();
}

/// Four-set Toeplitz subset sum, same shape as th_det.
fn bench_toeplitz_det(c: &mut Criterion) {
    let mut group = c.benchmark_group("bc_toeplitz_det");
    let sym = float_symbol(2);
    for n in [4, 16, 64] {
        group.bench_with_input(BenchmarkId::new("float_k2_n", n), &n, |b, &n| {
            b.iter(|| bc_toeplitz_det(black_box(&sym), n).unwrap());
        });
    }
    group.finish();
}

/// Brute-force oracle: assemble the section from Fourier coefficients and
/// run LU; cubic in n, the cost the closed forms avoid.
fn bench_lu_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("lu_oracle");
    let sym = float_symbol(2);
    for n in [16, 64] {
        group.bench_with_input(BenchmarkId::new("th_float_n", n), &n, |b, &n| {
            b.iter(|| det_lu(&build_th(black_box(&sym), n).unwrap()).unwrap());
        });
    }
    let exact = exact_symbol(1);
    group.bench_function("th_exact_n12", |b| {
        b.iter(|| det_lu(&build_th(black_box(&exact), 12).unwrap()).unwrap());
    });
    group.finish();
}

/// Operator route with its adaptive truncation window.
fn bench_fredholm(c: &mut Criterion) {
    let mut group = c.benchmark_group("fredholm");
    let sym = float_symbol(2);
    group.bench_function("be_det_k2_n8", |b| {
        b.iter(|| be_det(black_box(&sym), 8, None).unwrap());
    });
    group.finish();
}

criterion_group!(benches, bench_th_det, bench_toeplitz_det, bench_lu_oracle, bench_fredholm);
criterion_main!(benches);
