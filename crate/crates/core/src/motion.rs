//! First-order response of the mean force to a small displacement of the
//! mirror: the scattering change δS, the susceptibility kernel χ[ω, ω′] along
//! several routes, and χ[ω].

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mirror::MirrorModel;
use crate::numerics::{integrate_segments, QuadEstimate, QuadratureConfig};
use crate::pressure::{force_kernel, ForceKernel};
use crate::spectral::{FrequencyGrid, Mat2, PhysicsContext, Spectrum, TwoFreqKernel};
use crate::squeezing::delta_cout;
use crate::state::StationaryState;
use crate::support::convolution_breakpoints;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Displacement of the mirror about rest.
#[derive(Debug, Clone)]
pub enum TrajectoryPerturbation {
    /// `δq(t) = amplitude · cos(2 · half_frequency · t)`.
    Monochromatic { amplitude: f64, half_frequency: f64 },
    /// Sampled `δq[ω]` on a symmetric grid.
    Tabulated(Spectrum),
}

impl TrajectoryPerturbation {
    pub fn monochromatic(amplitude: f64, half_frequency: f64) -> Result<Self> {
        if !amplitude.is_finite() || !(half_frequency.is_finite() && half_frequency > 0.0) {
            return Err(Error::invalid(format!(
                "oscillation needs finite amplitude and positive frequency, got {amplitude}, {half_frequency}"
            )));
        }
        Ok(TrajectoryPerturbation::Monochromatic {
            amplitude,
            half_frequency,
        })
    }

    /// Requires a symmetric grid and `δq[−ω] = δq[ω]*`.
    pub fn tabulated(spectrum: Spectrum) -> Result<Self> {
        let grid = spectrum.grid();
        if !grid.is_symmetric() {
            return Err(Error::invalid("tabulated displacement needs a symmetric grid"));
        }
        let v = spectrum.values();
        let scale = spectrum.max_abs();
        for i in 0..v.len() {
            let j = grid.mirror_index(i);
            if (v[j] - v[i].conj()).norm() > 1e-12 * scale {
                return Err(Error::invalid(format!(
                    "displacement spectrum is not real in time at ω = {}",
                    grid.points()[i]
                )));
            }
        }
        Ok(TrajectoryPerturbation::Tabulated(spectrum))
    }

    /// Spectral lines `(frequency, weight of 2πδ)` of the monochromatic kind.
    pub fn lines(&self) -> Option<[(f64, f64); 2]> {
        match self {
            TrajectoryPerturbation::Monochromatic { amplitude, half_frequency } => {
                let w = 2.0 * half_frequency;
                Some([(w, 0.5 * amplitude), (-w, 0.5 * amplitude)])
            }
            TrajectoryPerturbation::Tabulated(_) => None,
        }
    }
}

/// `δS[ω, ω′] = iω′ (S̄[ω]η − ηS̄[ω′])` per unit `δq[ω − ω′]`.
pub fn delta_smatrix(model: &MirrorModel, omega: f64, omega2: f64) -> Result<Mat2> {
    let eta = Mat2::eta();
    Ok((model.smatrix(omega)? * eta - eta * model.smatrix(omega2)?) * (I * omega2))
}

/// χ[ω, ω′] in the anticommutator form, written with `ω²c₊` so that the
/// kernel is finite at zero frequency:
/// `iω′ Tr[𝓕 (ω²c₊[ω]) η] + iω Tr[𝓕 η (ω′²c₊[−ω′])]`.
pub fn chi_kernel(model: &MirrorModel, state: &StationaryState, omega: f64, omega2: f64) -> Result<Complex64> {
    let f = force_kernel(model, omega, omega2)?;
    let eta = Mat2::eta();
    let a = (f * state.omega_sq_cplus(omega) * eta).trace();
    let b = (f * eta * state.omega_sq_cplus(-omega2)).trace();
    Ok(I * omega2 * a + I * omega * b)
}

fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Vacuum closed form `(iħ/2) ωω′ (ε(ω) + ε(ω′)) α[ω, ω′]`.
pub fn chi_kernel_vacuum(model: &MirrorModel, ctx: PhysicsContext, omega: f64, omega2: f64) -> Result<Complex64> {
    let eps = sign(omega) + sign(omega2);
    if eps == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let alpha = ForceKernel::new(model).alpha(omega, omega2)?;
    Ok(0.5 * ctx.hbar() * omega * omega2 * eps * I * alpha)
}

/// Symmetrized two-term form with the full covariance c; singular at zero
/// frequency.
pub fn chi_kernel_double_trace(
    model: &MirrorModel,
    state: &StationaryState,
    omega: f64,
    omega2: f64,
) -> Result<Complex64> {
    let half = |w: f64, w2: f64| -> Result<Complex64> {
        let f = force_kernel(model, w, w2)?;
        let eta = Mat2::eta();
        let inner = state.cfull(w)? * eta * (I * w) + eta * state.cfull(-w2)? * (I * w2);
        Ok((f * inner).trace())
    };
    Ok(0.5 * omega * omega2 * (half(omega, omega2)? + half(omega2, omega)?))
}

/// Laboratory route: `ωω′ Tr[η δC_out[ω, ω′]]`, before symmetrization.
pub fn lab_route_raw(model: &MirrorModel, state: &StationaryState, omega: f64, omega2: f64) -> Result<Complex64> {
    Ok(omega * omega2 * (Mat2::eta() * delta_cout(model, state, omega, omega2)?).trace())
}

/// Laboratory route symmetrized in (ω, ω′).
pub fn lab_route_kernel(model: &MirrorModel, state: &StationaryState, omega: f64, omega2: f64) -> Result<Complex64> {
    Ok(0.5 * (lab_route_raw(model, state, omega, omega2)? + lab_route_raw(model, state, omega2, omega)?))
}

/// Apparent change of the input covariance in the comoving frame,
/// `−iω c[ω] η − iω′ η c[−ω′]`, per unit `δq[ω + ω′]`.
pub fn comoving_covariance_perturbation(state: &StationaryState, omega: f64, omega2: f64) -> Result<Mat2> {
    let eta = Mat2::eta();
    Ok(state.cfull(omega)? * eta * (-I * omega) + eta * state.cfull(-omega2)? * (-I * omega2))
}

/// Comoving route: `−ωω′ Tr[𝓕[ω, ω′] δC̄_in[ω, ω′]]`, before symmetrization.
pub fn comoving_route_raw(
    model: &MirrorModel,
    state: &StationaryState,
    omega: f64,
    omega2: f64,
) -> Result<Complex64> {
    let f = force_kernel(model, omega, omega2)?;
    let dc = comoving_covariance_perturbation(state, omega, omega2)?;
    Ok(-omega * omega2 * (f * dc).trace())
}

pub fn comoving_route_kernel(
    model: &MirrorModel,
    state: &StationaryState,
    omega: f64,
    omega2: f64,
) -> Result<Complex64> {
    Ok(0.5
        * (comoving_route_raw(model, state, omega, omega2)? + comoving_route_raw(model, state, omega2, omega)?))
}

/// [`chi_kernel`] as a two-frequency kernel.
#[derive(Debug, Clone, Copy)]
pub struct ChiKernel<'a> {
    pub model: &'a MirrorModel,
    pub state: &'a StationaryState,
}

impl TwoFreqKernel for ChiKernel<'_> {
    type Output = Complex64;

    fn eval(&self, omega: f64, omega2: f64) -> Result<Complex64> {
        chi_kernel(self.model, self.state, omega, omega2)
    }
}

/// `χ[ω] = ∫ dω′/2π χ[ω′, ω − ω′]` with its error estimate.
///
/// Vacuum kernels vanish outside `[min(0, ω), max(0, ω)]`, so χ[0] = 0.
/// Other states are integrated over a window; see [`QuadratureConfig::window`].
pub fn susceptibility_estimate(
    model: &MirrorModel,
    state: &StationaryState,
    omega: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadEstimate> {
    cfg.validate()?;
    let pts = convolution_breakpoints(model, state, omega, cfg, "susceptibility")?;
    if pts.is_empty() {
        return Ok(QuadEstimate::zero());
    }
    let est = integrate_segments(|x| chi_kernel(model, state, x, omega - x), &pts, cfg)?;
    Ok(est.scale(1.0 / (2.0 * PI)))
}

pub fn susceptibility(model: &MirrorModel, state: &StationaryState, omega: f64, cfg: &QuadratureConfig) -> Result<Complex64> {
    susceptibility_estimate(model, state, omega, cfg).map(|e| e.value)
}

/// Jerk-normalized vacuum response `χ[ω] / (iω³) = ħ ∫₀¹ du/2π u(1−u) α[ωu, ω(1−u)]`.
///
/// Bounded at every frequency, including ω = 0, and tending to zero at high
/// frequency for a transparent mirror. Only defined for vacuum: thermal
/// responses are not O(ω³) at low frequency.
pub fn jerk_susceptibility(model: &MirrorModel, state: &StationaryState, omega: f64, cfg: &QuadratureConfig) -> Result<Complex64> {
    cfg.validate()?;
    if !state.is_vacuum() {
        return Err(Error::invalid(format!(
            "jerk-normalized response is defined for vacuum only, not {}",
            state.name()
        )));
    }
    let k = ForceKernel::new(model);
    let hbar = state.hbar();
    let est = integrate_segments(
        |u| Ok(u * (1.0 - u) * k.alpha(omega * u, omega * (1.0 - u))?),
        &[0.0, 0.5, 1.0],
        cfg,
    )?;
    Ok(est.value * (hbar / (2.0 * PI)))
}

fn sweep(grid: &FrequencyGrid, f: impl Fn(f64) -> Result<Complex64> + Sync) -> Result<Vec<Complex64>> {
    let results: Vec<Result<Complex64>> = grid.points().par_iter().map(|&w| f(w).map_err(|e| e.at_frequency(w))).collect();
    results.into_iter().collect()
}

pub fn susceptibility_spectrum(
    model: &MirrorModel,
    state: &StationaryState,
    grid: &FrequencyGrid,
    cfg: &QuadratureConfig,
) -> Result<Spectrum> {
    let values = sweep(grid, |w| susceptibility(model, state, w, cfg))?;
    Spectrum::new(
        grid.clone(),
        values,
        "chi",
        format!("susceptibility, {} mirror, {} state", model.name(), state.name()),
    )
}

pub fn jerk_susceptibility_spectrum(
    model: &MirrorModel,
    state: &StationaryState,
    grid: &FrequencyGrid,
    cfg: &QuadratureConfig,
) -> Result<Spectrum> {
    let values = sweep(grid, |w| jerk_susceptibility(model, state, w, cfg))?;
    Spectrum::new(
        grid.clone(),
        values,
        "chi/(i w^3)",
        format!("jerk-normalized susceptibility, {} mirror, vacuum", model.name()),
    )
}

/// A spectral line of the mean force, `⟨δF⟩ = 2π Σ weight δ(ω − frequency)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceLine {
    pub frequency: f64,
    pub weight: Complex64,
}

#[derive(Debug, Clone)]
pub enum MotionalForce {
    Lines(Vec<ForceLine>),
    Spectrum(Spectrum),
}

/// `⟨δF[ω]⟩ = χ[ω] δq[ω]`, as lines for an oscillation and pointwise on the
/// displacement grid otherwise.
pub fn motional_force(
    model: &MirrorModel,
    state: &StationaryState,
    traj: &TrajectoryPerturbation,
    cfg: &QuadratureConfig,
) -> Result<MotionalForce> {
    match traj {
        TrajectoryPerturbation::Monochromatic { .. } => {
            let lines = traj.lines().unwrap();
            let mut out = Vec::with_capacity(2);
            for (frequency, weight) in lines {
                let chi = susceptibility(model, state, frequency, cfg).map_err(|e| e.at_frequency(frequency))?;
                out.push(ForceLine {
                    frequency,
                    weight: chi * weight,
                });
            }
            Ok(MotionalForce::Lines(out))
        }
        TrajectoryPerturbation::Tabulated(dq) => {
            let chi = susceptibility_spectrum(model, state, dq.grid(), cfg)?;
            let values = chi.values().iter().zip(dq.values()).map(|(c, q)| c * q).collect();
            Ok(MotionalForce::Spectrum(Spectrum::new(
                dq.grid().clone(),
                values,
                "force",
                format!("mean motional force, {} mirror, {} state", model.name(), state.name()),
            )?))
        }
    }
}

/// Closed-form perfect-mirror vacuum susceptibility `iħω³/6π`.
pub fn perfect_mirror_susceptibility(ctx: PhysicsContext, omega: f64) -> Complex64 {
    I * ctx.hbar() * omega.powi(3) / (6.0 * PI)
}
