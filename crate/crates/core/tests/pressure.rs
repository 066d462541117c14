mod common;

use std::f64::consts::PI;

use common::{random_pairs, sp, trapezoid};
use mirrorpress_core::mirror::{MirrorModel, TabulatedMirror};
use mirrorpress_core::numerics::{inverse_fourier_to_time, negative_time_energy_fraction};
use mirrorpress_core::pressure::{
    energy_exchange_kernel, mean_force, mean_force_integrand, symmetry_residuals, unitarity_identities,
};
use mirrorpress_core::state::StationaryState;
use mirrorpress_core::{Complex64, FrequencyGrid, PhysicsContext, QuadratureConfig, Spectrum};

fn ctx() -> PhysicsContext {
    PhysicsContext::default()
}

fn non_unitary_table() -> MirrorModel {
    let w: Vec<f64> = (0..=400).map(|k| 0.1 * k as f64).collect();
    let (s, r): (Vec<_>, Vec<_>) = w
        .iter()
        .map(|&x| {
            let (s, r) = sp(1.0, x);
            (s, r * 1.3)
        })
        .unzip();
    MirrorModel::Tabulated(TabulatedMirror::from_samples(w, s, r).unwrap())
}

#[test]
fn symmetry_suite_on_random_pairs() {
    let models = [MirrorModel::single_pole(1.0).unwrap(), MirrorModel::single_pole(37.0).unwrap(), MirrorModel::Perfect];
    for m in &models {
        for (w, w2) in random_pairs(11, 1000, 40.0) {
            let r = symmetry_residuals(m, w, w2).unwrap();
            assert!(r.max() <= 1e-13, "{m:?} at ({w}, {w2}): {r:?}");
        }
    }
}

#[test]
fn product_identities() {
    let m = MirrorModel::single_pole(1.0).unwrap();
    let p = unitarity_identities(&m, 0.3, 1.7).unwrap();
    assert!(p.left <= 1e-12 && p.right <= 1e-12);
    for (w, w2) in random_pairs(12, 1000, 40.0) {
        assert!(unitarity_identities(&m, w, w2).unwrap().max() <= 1e-12);
    }
    let bad = non_unitary_table();
    let p = unitarity_identities(&bad, 0.3, 1.7).unwrap();
    assert!(p.left > 1e-3 && p.right > 1e-3, "{p:?}");
}

#[test]
fn energy_exchange_at_rest() {
    let m = MirrorModel::single_pole(1.0).unwrap();
    assert!(energy_exchange_kernel(&m, 0.7).unwrap().max_abs() <= 1e-15);
    for k in 0..=400 {
        let w = -20.0 + 0.1 * k as f64;
        assert!(energy_exchange_kernel(&m, w).unwrap().max_abs() <= 1e-12);
    }
    assert!(energy_exchange_kernel(&non_unitary_table(), 0.7).unwrap().max_abs() > 1e-3);
}

#[test]
fn vacuum_and_thermal_mean_force_vanish() {
    let m = MirrorModel::single_pole(1.0).unwrap();
    let cfg = QuadratureConfig::default();
    for st in [StationaryState::vacuum(ctx()), StationaryState::thermal(ctx(), 1.5).unwrap()] {
        for k in 0..=200 {
            let w = -50.0 + 0.5 * k as f64;
            assert!(mean_force_integrand(&m, &st, w).unwrap().abs() <= 1e-12);
        }
        assert!(mean_force(&m, &st, &cfg).unwrap().value.norm() <= 1e-10);
    }
}

/// (ω/4) coth(ω/2T), ħ = 1.
fn weight(t: f64, w: f64) -> f64 {
    if w == 0.0 {
        0.5 * t
    } else {
        0.25 * w / (0.5 * w / t).tanh()
    }
}

#[test]
fn two_temperature_pressure_matches_trapezoid() {
    let (t_phi, t_psi) = (2.0, 0.5);
    let m = MirrorModel::single_pole(1.0).unwrap();
    let st = StationaryState::two_temperature(ctx(), t_phi, t_psi).unwrap();
    let got = mean_force(&m, &st, &QuadratureConfig::default()).unwrap().value.re;
    let span = 80.0 * t_phi;
    let oracle = trapezoid(
        |w| {
            let r2 = sp(1.0, w).1.norm_sqr();
            Complex64::new(2.0 * r2 * (weight(t_phi, w) - weight(t_psi, w)), 0.0)
        },
        -span,
        span,
        320_000,
    )
    .re / (2.0 * PI);
    assert!(got > 0.0, "hotter φ side pushes towards ψ");
    assert!((got - oracle).abs() < 1e-7 * oracle, "{got} vs {oracle}");

    let flipped = StationaryState::two_temperature(ctx(), t_psi, t_phi).unwrap();
    let back = mean_force(&m, &flipped, &QuadratureConfig::default()).unwrap().value.re;
    assert!((back + got).abs() < 1e-12 * got);
}

#[test]
fn transmission_is_retarded() {
    let cutoff = 2.0;
    let grid = FrequencyGrid::symmetric(400.0, 16001).unwrap();
    let m = MirrorModel::single_pole(cutoff).unwrap();
    let spec = Spectrum::from_fn(&grid, "s-1", "test", |w| m.amplitudes(w).unwrap().0 - 1.0);
    let times: Vec<f64> = (0..=2000).map(|k| -5.0 + 0.005 * k as f64).collect();
    let sig = inverse_fourier_to_time(&spec, &times).unwrap();
    assert!(negative_time_energy_fraction(&sig) < 1e-3);
    for (&t, z) in sig.times.iter().zip(&sig.values) {
        if t > 0.1 {
            let exact = -cutoff * (-cutoff * t).exp();
            assert!((z.re - exact).abs() < 2e-3, "t = {t}: {} vs {exact}", z.re);
        }
    }
}
