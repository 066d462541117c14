use std::f64::consts::PI;

use mirrorpress_core::mirror::MirrorModel;
use mirrorpress_core::motion::jerk_susceptibility_spectrum;
use mirrorpress_core::numerics::causality::{causality_report, time_grid};
use mirrorpress_core::state::StationaryState;
use mirrorpress_core::{Complex64, FrequencyGrid, PhysicsContext, QuadratureConfig, Spectrum};

fn grid() -> FrequencyGrid {
    FrequencyGrid::symmetric(200.0, 8001).unwrap()
}

#[test]
fn single_pole_response_is_causal() {
    let st = StationaryState::vacuum(PhysicsContext::default());
    let m = MirrorModel::single_pole(2.0).unwrap();
    let k = jerk_susceptibility_spectrum(&m, &st, &grid(), &QuadratureConfig::default()).unwrap();
    let rep = causality_report(&k, &time_grid(10.0, 2001), 1e-2).unwrap();
    assert!(rep.negative_time_fraction < 1e-3, "{rep:?}");
    assert!(rep.kk_residual <= 1e-2, "{rep:?}");
}

#[test]
fn pure_cubic_response_fails() {
    let cubic = Spectrum::from_fn(&grid(), "cubic", "test", |_| Complex64::new(1.0 / (6.0 * PI), 0.0));
    let rep = causality_report(&cubic, &time_grid(10.0, 2001), 1e-2).unwrap();
    assert!(rep.negative_time_fraction >= 1e-3, "{rep:?}");
    assert!(rep.kk_residual > 1e-2, "{rep:?}");
}

#[test]
fn thermal_jerk_form_is_rejected() {
    let st = StationaryState::thermal(PhysicsContext::default(), 1.0).unwrap();
    let m = MirrorModel::single_pole(2.0).unwrap();
    let g = FrequencyGrid::symmetric(2.0, 5).unwrap();
    assert!(jerk_susceptibility_spectrum(&m, &st, &g, &QuadratureConfig::default()).is_err());
}
