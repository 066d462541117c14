//! Benchmark workloads.

use mirrorpress_core::mirror::MirrorModel;
use mirrorpress_core::state::StationaryState;
use mirrorpress_core::{Complex64, FrequencyGrid, PhysicsContext, Spectrum};

pub fn single_pole(cutoff: f64) -> MirrorModel {
    MirrorModel::single_pole(cutoff).expect("positive cutoff")
}

pub fn vacuum() -> StationaryState {
    StationaryState::vacuum(PhysicsContext::default())
}

pub fn thermal(temperature: f64) -> StationaryState {
    StationaryState::thermal(PhysicsContext::default(), temperature).expect("positive temperature")
}

/// Causal Lorentzian `1/(1 − iω)` on a symmetric grid of `count` points.
pub fn lorentzian(max: f64, count: usize) -> Spectrum {
    let grid = FrequencyGrid::symmetric(max, count).expect("valid grid");
    Spectrum::from_fn(&grid, "lorentzian", "bench", |w| Complex64::new(1.0, w) / (1.0 + w * w))
}
