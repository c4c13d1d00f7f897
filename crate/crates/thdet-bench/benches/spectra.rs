//! Spectral diagnostics: per-cell gap scans and finite-section eigensolves.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use thdet::{eig_cloud, locus_scan, SpectrumKind, Window};
use thdet_bench::float_symbol;

fn bench_locus_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("locus_scan");
    group.sample_size(20);
    let sym = float_symbol(2);
    let window = Window::new(-1.0, 2.0, -1.5, 1.5).unwrap();
    for res in [40, 80] {
        group.bench_with_input(BenchmarkId::new("th_res", res), &res, |b, &res| {
            b.iter(|| {
                locus_scan(black_box(&sym), SpectrumKind::Th, window, res, None).unwrap()
            });
        });
    }
    group.finish();
}

fn bench_eig_cloud(c: &mut Criterion) {
    let mut group = c.benchmark_group("eig_cloud");
    group.sample_size(20);
    let sym = float_symbol(2);
    for n in [30, 60] {
        group.bench_with_input(BenchmarkId::new("th_n", n), &n, |b, &n| {
            b.iter(|| eig_cloud(black_box(&sym), n, SpectrumKind::Th, None).unwrap());
        });
    }
    group.finish();
}

criterion_group!(benches, bench_locus_scan, bench_eig_cloud);
criterion_main!(benches);
