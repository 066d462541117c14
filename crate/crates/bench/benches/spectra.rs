use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mirrorpress_bench::{lorentzian, single_pole, thermal, vacuum};
use mirrorpress_core::fluctuations::{fdt_check, noise_spectrum};
use mirrorpress_core::motion::{susceptibility, susceptibility_spectrum};
use mirrorpress_core::numerics::{hilbert_transform, integrate};
use mirrorpress_core::pressure::single_pole_alpha;
use mirrorpress_core::{FrequencyGrid, QuadratureConfig};
use std::hint::black_box;

fn quadrature(c: &mut Criterion) {
    let cfg = QuadratureConfig::default();
    c.bench_function("gk21 alpha-weighted integrand", |b| {
        b.iter(|| integrate(|u| Ok(u * (1.0 - u) * single_pole_alpha(black_box(3.0), u, 1.0 - u)), 0.0, 1.0, &cfg))
    });
}

fn susceptibility_points(c: &mut Criterion) {
    let cfg = QuadratureConfig::default();
    let m = single_pole(2.0);
    let (vac, th) = (vacuum(), thermal(0.5));
    let mut g = c.benchmark_group("single frequency");
    g.bench_function("chi vacuum", |b| b.iter(|| susceptibility(&m, &vac, black_box(1.3), &cfg)));
    g.bench_function("chi thermal", |b| b.iter(|| susceptibility(&m, &th, black_box(1.3), &cfg)));
    g.bench_function("cff thermal", |b| b.iter(|| noise_spectrum(&m, &th, black_box(1.3), &cfg)));
    g.finish();
}

fn sweeps(c: &mut Criterion) {
    let cfg = QuadratureConfig::default();
    let m = single_pole(10.0);
    let vac = vacuum();
    let mut g = c.benchmark_group("sweep");
    g.sample_size(20);
    for n in [41, 401] {
        let grid = FrequencyGrid::symmetric(5.0, n).unwrap();
        g.bench_with_input(BenchmarkId::new("susceptibility", n), &grid, |b, grid| {
            b.iter(|| susceptibility_spectrum(&m, &vac, grid, &cfg))
        });
    }
    let grid = FrequencyGrid::symmetric(5.0, 41).unwrap();
    g.bench_function("fdt check 41", |b| b.iter(|| fdt_check(&m, &vac, &grid, &cfg)));
    g.finish();
}

fn hilbert(c: &mut Criterion) {
    let mut g = c.benchmark_group("hilbert");
    for n in [1001, 4001] {
        let s = lorentzian(200.0, n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &s, |b, s| b.iter(|| hilbert_transform(s, 1e-2)));
    }
    g.finish();
}

criterion_group!(benches, quadrature, susceptibility_points, sweeps, hilbert);
criterion_main!(benches);
