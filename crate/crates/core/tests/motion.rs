mod common;

use std::f64::consts::PI;

use common::{random_pairs, rel, sp_chi_vacuum_oracle, I};
use mirrorpress_core::mirror::MirrorModel;
use mirrorpress_core::motion::{
    chi_kernel, chi_kernel_double_trace, chi_kernel_vacuum, comoving_covariance_perturbation, comoving_route_kernel,
    comoving_route_raw, lab_route_kernel, lab_route_raw, motional_force, susceptibility, susceptibility_spectrum,
    MotionalForce, TrajectoryPerturbation,
};
use mirrorpress_core::state::StationaryState;
use mirrorpress_core::{Complex64, FrequencyGrid, Mat2, PhysicsContext, QuadratureConfig, Spectrum};

fn ctx() -> PhysicsContext {
    PhysicsContext::default()
}

fn vac() -> StationaryState {
    StationaryState::vacuum(ctx())
}

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

#[test]
fn regular_form_matches_vacuum_closed_form() {
    for m in [MirrorModel::single_pole(1.0).unwrap(), MirrorModel::single_pole(25.0).unwrap(), MirrorModel::Perfect] {
        for (w, w2) in random_pairs(21, 1000, 30.0) {
            let a = chi_kernel(&m, &vac(), w, w2).unwrap();
            let b = chi_kernel_vacuum(&m, ctx(), w, w2).unwrap();
            assert!((a - b).norm() <= 1e-12 * (1.0 + b.norm()), "({w}, {w2}): {a} vs {b}");
        }
    }
}

#[test]
fn regular_form_matches_double_trace_form() {
    let m = MirrorModel::single_pole(3.0).unwrap();
    let states = [vac(), StationaryState::thermal(ctx(), 0.8).unwrap(), StationaryState::two_temperature(ctx(), 2.0, 0.3).unwrap()];
    for st in &states {
        for (w, w2) in random_pairs(22, 1000, 20.0) {
            let a = chi_kernel(&m, st, w, w2).unwrap();
            let b = chi_kernel_double_trace(&m, st, w, w2).unwrap();
            assert!((a - b).norm() <= 1e-12 * (1.0 + b.norm()), "{st:?} ({w}, {w2}): {a} vs {b}");
        }
    }
}

#[test]
fn laboratory_and_comoving_routes_agree() {
    let m = MirrorModel::single_pole(2.0).unwrap();
    let states = [vac(), StationaryState::thermal(ctx(), 1.3).unwrap(), StationaryState::two_temperature(ctx(), 0.2, 4.0).unwrap()];
    for st in &states {
        for (w, w2) in random_pairs(23, 1000, 20.0) {
            let lab = lab_route_kernel(&m, st, w, w2).unwrap();
            let co = comoving_route_kernel(&m, st, w, w2).unwrap();
            let chi = chi_kernel(&m, st, w, w2).unwrap();
            let scale = 1.0 + chi.norm();
            assert!((lab - co).norm() <= 1e-12 * scale, "({w}, {w2}): {lab} vs {co}");
            assert!((lab - chi).norm() <= 1e-12 * scale);
            // The unsymmetrized traces already coincide.
            let (a, b) = (lab_route_raw(&m, st, w, w2).unwrap(), comoving_route_raw(&m, st, w, w2).unwrap());
            assert!((a - b).norm() <= 1e-12 * (1.0 + a.norm()));
        }
    }
}

#[test]
fn comoving_perturbation_examples() {
    let st = vac();
    let dc = comoving_covariance_perturbation(&st, 1.5, 0.5).unwrap();
    let expect = st.cfull(1.5).unwrap() * Mat2::eta() * (-I * 1.5);
    assert_eq!(dc, expect);
    assert!(comoving_covariance_perturbation(&st, 0.0, 1.0).is_err());
}

#[test]
fn perfect_mirror_cubic_law() {
    for w in [0.1, 1.0, 10.0] {
        let chi = susceptibility(&MirrorModel::Perfect, &vac(), w, &cfg()).unwrap();
        let exact = I * w.powi(3) / (6.0 * PI);
        assert!(rel(chi, exact) <= 1e-10, "ω = {w}");
    }
    let hbar = PhysicsContext::new(2.5).unwrap();
    let chi = susceptibility(&MirrorModel::Perfect, &StationaryState::vacuum(hbar), 1.0, &cfg()).unwrap();
    assert!(rel(chi, I * 2.5 / (6.0 * PI)) <= 1e-12);
}

#[test]
fn single_pole_matches_trapezoid_oracle() {
    for (cutoff, w) in [(100.0, 1.0), (1.0, 1.0), (2.0, -3.0), (0.5, 7.0)] {
        let m = MirrorModel::single_pole(cutoff).unwrap();
        let got = susceptibility(&m, &vac(), w, &cfg()).unwrap();
        let oracle = sp_chi_vacuum_oracle(cutoff, w, 100_000);
        assert!(rel(got, oracle) < 1e-8, "Ω = {cutoff}, ω = {w}: {got} vs {oracle}");
    }
    let m = MirrorModel::single_pole(100.0).unwrap();
    let chi = susceptibility(&m, &vac(), 1.0, &cfg()).unwrap();
    assert!(rel(chi, I / (6.0 * PI)) <= 0.02);
}

#[test]
fn convergence_to_cubic_law_is_monotone() {
    let exact = I / (6.0 * PI);
    let errs: Vec<f64> = [10.0, 1e2, 1e3, 1e4]
        .iter()
        .map(|&c| rel(susceptibility(&MirrorModel::single_pole(c).unwrap(), &vac(), 1.0, &cfg()).unwrap(), exact))
        .collect();
    assert!(errs.windows(2).all(|p| p[1] < p[0]), "{errs:?}");
    // Decade sweep in ω/Ω at fixed Ω.
    let m = MirrorModel::single_pole(1.0).unwrap();
    let errs: Vec<f64> = (0..=10)
        .map(|k| {
            let w = 10f64.powf(-(k as f64) / 10.0);
            rel(susceptibility(&m, &vac(), w, &cfg()).unwrap(), I * w.powi(3) / (6.0 * PI))
        })
        .collect();
    assert!(errs.windows(2).all(|p| p[1] < p[0]), "{errs:?}");
}

#[test]
fn susceptibility_is_real_in_time() {
    let grid = FrequencyGrid::symmetric(12.0, 49).unwrap();
    let m = MirrorModel::single_pole(1.7).unwrap();
    let states = [vac(), StationaryState::thermal(ctx(), 0.9).unwrap()];
    for st in &states {
        let spec = susceptibility_spectrum(&m, st, &grid, &cfg()).unwrap();
        let v = spec.values();
        for i in 0..v.len() {
            let j = grid.mirror_index(i);
            assert!((v[j] - v[i].conj()).norm() <= 1e-12 * (1.0 + v[i].norm()), "{st:?} ω = {}", grid.points()[i]);
        }
        assert_eq!(v[grid.len() / 2], if st.is_vacuum() { Complex64::new(0.0, 0.0) } else { v[grid.len() / 2] });
    }
}

#[test]
fn thermal_response_matches_windowed_trapezoid() {
    let m = MirrorModel::single_pole(1.0).unwrap();
    let st = StationaryState::thermal(ctx(), 0.5).unwrap();
    let w = 1.3;
    let got = susceptibility(&m, &st, w, &cfg()).unwrap();
    let span = 40.0 + w;
    let oracle = common::trapezoid(|x| chi_kernel(&m, &st, x, w - x).unwrap(), -span, span, 400_000) / (2.0 * PI);
    assert!(rel(got, oracle) < 1e-7, "{got} vs {oracle}");
}

#[test]
fn oscillation_force_lines() {
    let traj = TrajectoryPerturbation::monochromatic(0.2, 0.75).unwrap();
    let force = motional_force(&MirrorModel::Perfect, &vac(), &traj, &cfg()).unwrap();
    let MotionalForce::Lines(lines) = force else { panic!("expected lines") };
    assert_eq!(lines.len(), 2);
    for line in &lines {
        let exact = 0.1 * I * line.frequency.powi(3) / (6.0 * PI);
        assert!(rel(line.weight, exact) < 1e-12);
    }
    assert!((lines[0].weight - lines[1].weight.conj()).norm() < 1e-15);
    // δF(t) = 2 Re(w e^{−2iω₀t}) = (δq₀/2)(2ω₀)³/3π · sin(2ω₀t) = (ħ/6π) δq‴(t)
    let t = 0.37;
    let f_t = 2.0 * (lines[0].weight * Complex64::from_polar(1.0, -1.5 * t)).re;
    let jerk = 0.2 * 1.5f64.powi(3) * (1.5 * t).sin();
    assert!((f_t - jerk / (6.0 * PI)).abs() < 1e-14);
}

#[test]
fn tabulated_trajectory_force() {
    let grid = FrequencyGrid::symmetric(3.0, 31).unwrap();
    let m = MirrorModel::single_pole(2.0).unwrap();
    let zero = TrajectoryPerturbation::tabulated(Spectrum::from_fn(&grid, "dq", "test", |_| Complex64::new(0.0, 0.0))).unwrap();
    let MotionalForce::Spectrum(f) = motional_force(&m, &vac(), &zero, &cfg()).unwrap() else { panic!() };
    assert!(f.values().iter().all(|z| z.norm() == 0.0));
    let dq = TrajectoryPerturbation::tabulated(Spectrum::from_fn(&grid, "dq", "test", |w| {
        Complex64::new((-w * w).exp(), 0.3 * w)
    }))
    .unwrap();
    let MotionalForce::Spectrum(f) = motional_force(&m, &vac(), &dq, &cfg()).unwrap() else { panic!() };
    let v = f.values();
    for i in 0..v.len() {
        assert!((v[grid.mirror_index(i)] - v[i].conj()).norm() <= 1e-13);
    }
}
