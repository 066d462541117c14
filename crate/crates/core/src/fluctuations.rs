//! Force noise on a motionless mirror, the commutator spectral density and
//! the fluctuation–dissipation check.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mirror::MirrorModel;
use crate::motion::{chi_kernel, susceptibility};
use crate::numerics::{hilbert_transform, integrate_segments, HilbertResult, QuadratureConfig};
use crate::pressure::{force_kernel, ForceKernel};
use crate::spectral::{FrequencyGrid, PhysicsContext, Spectrum, TwoFreqKernel};
use crate::state::{StateKind, StationaryState};
use crate::support::convolution_breakpoints;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `C_FF[ω, ω′] = 2 Tr[𝓕 (ω²c[ω]) 𝓕† (ω′²c[ω′])ᵀ]` with `𝓕 = 𝓕[ω, ω′]`.
pub fn cff_kernel(model: &MirrorModel, state: &StationaryState, omega: f64, omega2: f64) -> Result<Complex64> {
    let f = force_kernel(model, omega, omega2)?;
    let a = state.omega_sq_cfull(omega);
    let b = state.omega_sq_cfull(omega2).transpose();
    Ok(2.0 * (f * a * f.dagger() * b).trace())
}

/// Vacuum closed form `ħ² θ(ω)θ(ω′) ωω′ (α + α*)`.
pub fn cff_kernel_vacuum(model: &MirrorModel, ctx: PhysicsContext, omega: f64, omega2: f64) -> Result<Complex64> {
    if omega <= 0.0 || omega2 <= 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let alpha = ForceKernel::new(model).alpha(omega, omega2)?;
    let h = ctx.hbar();
    Ok(Complex64::new(h * h * omega * omega2 * 2.0 * alpha.re, 0.0))
}

/// `ξ_FF[ω, ω′] = (C_FF[ω, ω′] − C_FF[−ω′, −ω]) / 2ħ`.
pub fn commutator_kernel(model: &MirrorModel, state: &StationaryState, omega: f64, omega2: f64) -> Result<Complex64> {
    let c1 = cff_kernel(model, state, omega, omega2)?;
    let c2 = cff_kernel(model, state, -omega2, -omega)?;
    Ok((c1 - c2) / (2.0 * state.hbar()))
}

/// `ξ_FF[ω, ω′] = (χ[ω, ω′] − χ[−ω, −ω′]) / 2i`.
pub fn commutator_kernel_from_chi(
    model: &MirrorModel,
    state: &StationaryState,
    omega: f64,
    omega2: f64,
) -> Result<Complex64> {
    let a = chi_kernel(model, state, omega, omega2)?;
    let b = chi_kernel(model, state, -omega, -omega2)?;
    Ok((a - b) / (2.0 * I))
}

#[derive(Debug, Clone, Copy)]
pub struct CffKernel<'a> {
    pub model: &'a MirrorModel,
    pub state: &'a StationaryState,
}

impl TwoFreqKernel for CffKernel<'_> {
    type Output = Complex64;

    fn eval(&self, omega: f64, omega2: f64) -> Result<Complex64> {
        cff_kernel(self.model, self.state, omega, omega2)
    }
}

/// A real spectrum value with the imaginary part left over by quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealEstimate {
    pub value: f64,
    pub imag_residual: f64,
    pub error: f64,
}

fn convolve(
    model: &MirrorModel,
    state: &StationaryState,
    omega: f64,
    cfg: &QuadratureConfig,
    what: &str,
    kernel: impl Fn(f64, f64) -> Result<Complex64>,
) -> Result<RealEstimate> {
    cfg.validate()?;
    let pts = convolution_breakpoints(model, state, omega, cfg, what)?;
    if pts.is_empty() {
        return Ok(RealEstimate {
            value: 0.0,
            imag_residual: 0.0,
            error: 0.0,
        });
    }
    let est = integrate_segments(|x| kernel(x, omega - x), &pts, cfg)?.scale(1.0 / (2.0 * PI));
    if est.value.im.abs() > 1e-9 * est.value.norm().max(cfg.abs_tol) {
        log::debug!("{what} at ω = {omega}: imaginary residual {:e}", est.value.im);
    }
    Ok(RealEstimate {
        value: est.value.re,
        imag_residual: est.value.im,
        error: est.error,
    })
}

/// `C_FF[ω] = ∫ dω′/2π C_FF[ω′, ω − ω′]`.
pub fn noise_spectrum(model: &MirrorModel, state: &StationaryState, omega: f64, cfg: &QuadratureConfig) -> Result<RealEstimate> {
    convolve(model, state, omega, cfg, "noise spectrum", |a, b| cff_kernel(model, state, a, b))
}

/// `ξ_FF[ω] = ∫ dω′/2π ξ_FF[ω′, ω − ω′]` from the commutator kernel.
pub fn commutator_spectrum(
    model: &MirrorModel,
    state: &StationaryState,
    omega: f64,
    cfg: &QuadratureConfig,
) -> Result<RealEstimate> {
    convolve(model, state, omega, cfg, "commutator spectrum", |a, b| {
        commutator_kernel(model, state, a, b)
    })
}

/// Closed-form perfect-mirror vacuum noise `ħ² θ(ω) ω³ / 3π`.
pub fn perfect_mirror_noise(ctx: PhysicsContext, omega: f64) -> f64 {
    if omega > 0.0 {
        ctx.hbar().powi(2) * omega.powi(3) / (3.0 * PI)
    } else {
        0.0
    }
}

/// Closed-form perfect-mirror vacuum spectral density `ħω³ / 6π`.
pub fn perfect_mirror_spectral_density(ctx: PhysicsContext, omega: f64) -> f64 {
    ctx.hbar() * omega.powi(3) / (6.0 * PI)
}

fn sweep<T: Send>(grid: &FrequencyGrid, f: impl Fn(f64) -> Result<T> + Sync) -> Result<Vec<T>> {
    let results: Vec<Result<T>> = grid.points().par_iter().map(|&w| f(w).map_err(|e| e.at_frequency(w))).collect();
    results.into_iter().collect()
}

/// Three evaluations of ξ_FF[ω] on a symmetric grid.
#[derive(Debug, Clone)]
pub struct FdtReport {
    pub grid: FrequencyGrid,
    /// Integral of the commutator kernel.
    pub xi_commutator: Vec<f64>,
    /// `(C_FF[ω] − C_FF[−ω]) / 2ħ`.
    pub xi_noise: Vec<f64>,
    /// `(χ[ω] − χ[−ω]) / 2i`.
    pub xi_chi: Vec<f64>,
    pub cff: Vec<f64>,
    pub chi: Vec<Complex64>,
    /// Max pairwise deviation between the three routes.
    pub max_deviation: f64,
    /// Max |ξ_FF| over the grid.
    pub peak: f64,
    /// `max_deviation / peak`.
    pub relative_deviation: f64,
    /// Largest imaginary leftover of the real spectra, relative to `peak`.
    pub imag_residual: f64,
    /// For a single temperature T: `max |C_FF[−ω] − e^{−ħω/T} C_FF[ω]|` over
    /// ω > 0, relative to the peak of C_FF.
    pub detailed_balance: Option<f64>,
}

pub fn fdt_check(model: &MirrorModel, state: &StationaryState, grid: &FrequencyGrid, cfg: &QuadratureConfig) -> Result<FdtReport> {
    if !grid.is_symmetric() {
        return Err(Error::invalid("fluctuation–dissipation check needs a symmetric grid"));
    }
    let hbar = state.hbar();
    let rows = sweep(grid, |w| {
        let a = commutator_spectrum(model, state, w, cfg)?;
        let c = noise_spectrum(model, state, w, cfg)?;
        let chi = susceptibility(model, state, w, cfg)?;
        Ok((a, c, chi))
    })?;
    let n = grid.len();
    let xi_commutator: Vec<f64> = rows.iter().map(|r| r.0.value).collect();
    let cff: Vec<f64> = rows.iter().map(|r| r.1.value).collect();
    let chi: Vec<Complex64> = rows.iter().map(|r| r.2).collect();
    let xi_noise: Vec<f64> = (0..n).map(|i| (cff[i] - cff[grid.mirror_index(i)]) / (2.0 * hbar)).collect();
    let xi_chi: Vec<f64> = (0..n).map(|i| ((chi[i] - chi[grid.mirror_index(i)]) / (2.0 * I)).re).collect();

    let mut max_deviation: f64 = 0.0;
    let mut peak: f64 = 0.0;
    for i in 0..n {
        let (a, b, c) = (xi_commutator[i], xi_noise[i], xi_chi[i]);
        max_deviation = max_deviation.max((a - b).abs()).max((a - c).abs()).max((b - c).abs());
        peak = peak.max(a.abs()).max(b.abs()).max(c.abs());
    }
    let imag = rows
        .iter()
        .map(|r| r.0.imag_residual.abs().max(r.1.imag_residual.abs()))
        .fold(0.0, f64::max);
    let relative = |x: f64, p: f64| if p > 0.0 { x / p } else { x };

    let detailed_balance = match state.kind() {
        StateKind::Thermal { temperature } => {
            let cpeak = cff.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let worst = (0..n)
                .filter(|&i| grid.points()[i] > 0.0)
                .map(|i| {
                    let w = grid.points()[i];
                    (cff[grid.mirror_index(i)] - (-hbar * w / temperature).exp() * cff[i]).abs()
                })
                .fold(0.0, f64::max);
            Some(relative(worst, cpeak))
        }
        _ => None,
    };
    Ok(FdtReport {
        grid: grid.clone(),
        xi_commutator,
        xi_noise,
        xi_chi,
        cff,
        chi,
        max_deviation,
        peak,
        relative_deviation: relative(max_deviation, peak),
        imag_residual: relative(imag, peak),
        detailed_balance,
    })
}

/// Noise, spectral density and dispersive part on one grid.
#[derive(Debug, Clone)]
pub struct NoiseResult<'a> {
    pub cff_kernel: CffKernel<'a>,
    pub cff_spectrum: Spectrum,
    /// From the commutator kernel.
    pub xi_spectrum: Spectrum,
    /// `Re χ[ω]`.
    pub xi_tilde_spectrum: Spectrum,
    /// Relative deviation between `ξ_FF` and `Im χ`.
    pub fdt_residual: f64,
}

pub fn noise_analysis<'a>(
    model: &'a MirrorModel,
    state: &'a StationaryState,
    grid: &FrequencyGrid,
    cfg: &QuadratureConfig,
) -> Result<NoiseResult<'a>> {
    let rows = sweep(grid, |w| {
        Ok((
            noise_spectrum(model, state, w, cfg)?,
            commutator_spectrum(model, state, w, cfg)?,
            susceptibility(model, state, w, cfg)?,
        ))
    })?;
    let real = |v: f64| Complex64::new(v, 0.0);
    let prov = format!("{} mirror, {} state", model.name(), state.name());
    let cff_spectrum = Spectrum::new(grid.clone(), rows.iter().map(|r| real(r.0.value)).collect(), "cff", prov.clone())?;
    let xi_spectrum = Spectrum::new(grid.clone(), rows.iter().map(|r| real(r.1.value)).collect(), "xiff", prov.clone())?;
    let xi_tilde_spectrum = Spectrum::new(grid.clone(), rows.iter().map(|r| real(r.2.re)).collect(), "xiff_tilde", prov)?;
    let mut dev: f64 = 0.0;
    let mut peak: f64 = 0.0;
    for r in &rows {
        dev = dev.max((r.1.value - r.2.im).abs());
        peak = peak.max(r.1.value.abs());
    }
    Ok(NoiseResult {
        cff_kernel: CffKernel { model, state },
        cff_spectrum,
        xi_spectrum,
        xi_tilde_spectrum,
        fdt_residual: if peak > 0.0 { dev / peak } else { dev },
    })
}

/// Dispersive part from the spectral density of a vacuum response,
/// `ξ̃(ω) = ω³ H[ξ(ω′)/ω′³](ω)`, using the jerk-normalized form so the
/// transform sees a decaying input. The ω = 0 sample of `ξ/ω³` is
/// extrapolated from its two neighbours (the ratio is even).
pub fn dispersive_part(xi: &Spectrum, tail_tol: f64) -> Result<HilbertResult> {
    let grid = xi.grid();
    if !grid.is_symmetric() {
        return Err(Error::invalid("dispersive part needs a symmetric grid"));
    }
    let w = grid.points();
    let v = xi.values();
    let mut ratio: Vec<Complex64> = w
        .iter()
        .zip(v)
        .map(|(&x, z)| if x == 0.0 { Complex64::new(0.0, 0.0) } else { Complex64::new(z.re / x.powi(3), 0.0) })
        .collect();
    if let Some(c) = w.iter().position(|&x| x == 0.0) {
        if c + 2 >= w.len() {
            return Err(Error::invalid("grid too short to extrapolate ξ/ω³ at zero"));
        }
        let (h1, h2) = (w[c + 1], w[c + 2]);
        let (f1, f2) = (ratio[c + 1].re, ratio[c + 2].re);
        // f(h) = f0 + k h² fitted through both neighbours.
        let f0 = (f1 * h2 * h2 - f2 * h1 * h1) / (h2 * h2 - h1 * h1);
        ratio[c] = Complex64::new(f0, 0.0);
    }
    let input = Spectrum::new(grid.clone(), ratio, format!("{}/w^3", xi.label), xi.provenance.clone())?;
    let h = hilbert_transform(&input, tail_tol)?;
    let spectrum = h.spectrum.map("xi_tilde", |x, z| z * x.powi(3));
    Ok(HilbertResult { spectrum, ..h })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vac() -> StationaryState {
        StationaryState::vacuum(PhysicsContext::default())
    }

    #[test]
    fn vacuum_kernel_examples() {
        let ctx = PhysicsContext::default();
        assert_eq!(cff_kernel_vacuum(&MirrorModel::Perfect, ctx, 1.0, 1.0).unwrap(), Complex64::new(4.0, 0.0));
        assert_eq!(cff_kernel(&MirrorModel::Perfect, &vac(), 1.0, 1.0).unwrap(), Complex64::new(4.0, 0.0));
        let m = MirrorModel::single_pole(1.0).unwrap();
        assert_eq!(cff_kernel(&m, &vac(), -1.0, 2.0).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(commutator_kernel(&m, &vac(), 1.5, -1.5).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn negative_frequency_noise_is_exactly_zero() {
        let m = MirrorModel::single_pole(4.0).unwrap();
        let cfg = QuadratureConfig::default();
        for w in [-3.0, -0.01] {
            assert_eq!(noise_spectrum(&m, &vac(), w, &cfg).unwrap().value, 0.0);
        }
        assert_eq!(noise_spectrum(&m, &vac(), 0.0, &cfg).unwrap().value, 0.0);
    }

    #[test]
    fn fdt_needs_symmetric_grid() {
        let g = FrequencyGrid::uniform(-1.0, 2.0, 7).unwrap();
        let m = MirrorModel::single_pole(4.0).unwrap();
        assert!(fdt_check(&m, &vac(), &g, &QuadratureConfig::default()).is_err());
    }

    #[test]
    fn perfect_closed_forms() {
        let ctx = PhysicsContext::default();
        assert!((perfect_mirror_noise(ctx, 1.0) - 2.0 * perfect_mirror_spectral_density(ctx, 1.0)).abs() < 1e-16);
        assert_eq!(perfect_mirror_noise(ctx, -1.0), 0.0);
    }
}
