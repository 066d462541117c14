use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::Result;
use crate::spectral::Spectrum;

use super::fourier::{inverse_fourier_to_time, negative_time_energy_fraction};
use super::hilbert::hilbert_transform;

/// Dispersion-relation mismatch of a complex spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct KkResidual {
    /// `‖Re f − H[Im f]‖ / ‖Re f‖` over `|ω| ≤ max/2`.
    pub relative_l2: f64,
    pub warning: Option<String>,
}

/// Compares `Re f` with the transform of `Im f` over the inner half of the
/// grid, where the edge tails matter least. A causal response with a
/// vanishing high-frequency limit gives a small residual.
pub fn kk_residual(spectrum: &Spectrum, tail_tol: f64) -> Result<KkResidual> {
    let im = spectrum.map(format!("Im {}", spectrum.label), |_, z| Complex64::new(z.im, 0.0));
    let h = hilbert_transform(&im, tail_tol)?;
    let half = 0.5 * spectrum.grid().max_abs();
    let mut num = 0.0;
    let mut den = 0.0;
    for ((w, z), (_, g)) in spectrum.iter().zip(h.spectrum.iter()) {
        if w.abs() <= half {
            num += (z.re - g.re).powi(2);
            den += z.re.powi(2);
        }
    }
    let relative_l2 = if den > 0.0 {
        (num / den).sqrt()
    } else if num > 0.0 {
        f64::INFINITY
    } else {
        0.0
    };
    Ok(KkResidual {
        relative_l2,
        warning: h.warning,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CausalityReport {
    pub negative_time_fraction: f64,
    pub kk_residual: f64,
    /// Coefficient `A` of the `iA/ω` tail added beyond the grid.
    pub tail_coefficient: f64,
    pub warnings: Vec<String>,
}

/// Symmetric time grid of `count` points on `[−t_max, t_max]`.
pub fn time_grid(t_max: f64, count: usize) -> Vec<f64> {
    let n = count.max(3) | 1;
    let half = (n / 2) as f64;
    (0..n).map(|k| t_max * (k as f64 - half) / half).collect()
}

/// Default `t_max`: a quarter of the alias-free period, at most 10.
pub fn default_time_span(spectrum: &Spectrum) -> f64 {
    let w = spectrum.grid().points();
    let step = w.windows(2).map(|p| p[1] - p[0]).fold(0.0, f64::max);
    (0.5 * PI / step).min(10.0)
}

pub fn causality_report(spectrum: &Spectrum, times: &[f64], tail_tol: f64) -> Result<CausalityReport> {
    let signal = inverse_fourier_to_time(spectrum, times)?;
    let kk = kk_residual(spectrum, tail_tol)?;
    let warnings = signal.warning.iter().chain(kk.warning.iter()).cloned().collect();
    Ok(CausalityReport {
        negative_time_fraction: negative_time_energy_fraction(&signal),
        kk_residual: kk.relative_l2,
        tail_coefficient: signal.tail_coefficient,
        warnings,
    })
}
