//! Integration ranges for the frequency convolutions.

use crate::error::{Error, Result};
use crate::mirror::MirrorModel;
use crate::numerics::QuadratureConfig;
use crate::state::StationaryState;

/// Occupancy factors above vacuum fall as `e^{−ħ|ω|/T}`; 80 scales leave
/// less than 1e−34 of the peak.
const WINDOW_SCALES: f64 = 80.0;

/// Half-width of the window for infinite-support integrals.
pub(crate) fn window(model: &MirrorModel, state: &StationaryState, cfg: &QuadratureConfig, what: &str) -> Result<f64> {
    if let Some(w) = cfg.window {
        return Ok(w);
    }
    if !model.is_transparent() {
        return Err(Error::Refused(format!(
            "{what} for the {} model extends to infinite frequency; supply an explicit window",
            model.name()
        )));
    }
    let scale = state
        .excitation_scale()
        .or(model.characteristic_frequency())
        .unwrap_or(1.0);
    Ok(WINDOW_SCALES * scale)
}

/// Breakpoints for `∫ dω′ K[ω′, ω − ω′]`: the kernel changes character at
/// ω′ = 0 and ω′ = ω. Vacuum kernels vanish outside `[min(0, ω), max(0, ω)]`.
pub(crate) fn convolution_breakpoints(
    model: &MirrorModel,
    state: &StationaryState,
    omega: f64,
    cfg: &QuadratureConfig,
    what: &str,
) -> Result<Vec<f64>> {
    let (lo, hi) = (omega.min(0.0), omega.max(0.0));
    if state.is_vacuum() {
        return Ok(if lo == hi { vec![] } else { vec![lo, hi] });
    }
    let w = window(model, state, cfg, what)?;
    let mut pts = vec![lo - w, lo];
    if hi > lo {
        pts.push(hi);
    }
    pts.push(hi + w);
    Ok(pts)
}
