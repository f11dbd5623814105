// Copyright 2026 nmcorr Contributors
// SPDX-License-Identifier: Apache-2.0

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use nmcorr::kernels::{bandedge_q, volterra_q, MemoryKernel};
use nmcorr::TimeGrid;

fn lorentzian(c: &mut Criterion) {
    let mut group = c.benchmark_group("volterra_lorentzian");
    group.sample_size(10);
    for steps in [5_000, 50_000] {
        let grid = TimeGrid::new(50.0, steps).unwrap();
        let kernel = MemoryKernel::lorentzian(1.0, 1.0);
        group.bench_function(format!("{steps}_steps"), |b| b.iter(|| volterra_q(&kernel, black_box(&grid)).unwrap()));
    }
    group.finish();
}

fn band_edge(c: &mut Criterion) {
    let mut group = c.benchmark_group("volterra_band_edge");
    group.sample_size(10);
    let grid = TimeGrid::new(100.0, 10_000).unwrap();
    group.bench_function("10000_steps", |b| b.iter(|| bandedge_q(black_box(-2.0), 1.0, &grid).unwrap()));
    group.finish();
}

criterion_group!(benches, lorentzian, band_edge);
criterion_main!(benches);
