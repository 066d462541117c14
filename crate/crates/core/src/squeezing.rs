//! Motional change of the output covariance and its line structure for an
//! oscillating mirror.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mirror::MirrorModel;
use crate::motion::TrajectoryPerturbation;
use crate::pressure::force_kernel;
use crate::spectral::{FrequencyGrid, Mat2, PhysicsContext, TwoFreqKernel};
use crate::state::StationaryState;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `δC_out[ω, ω′]` per unit `δq[ω + ω′]` for a stationary input:
///
/// `−iω′ (S̄[ω]η − ηS̄[−ω′]) c[−ω′] S̄[ω′] − iω S̄[ω] c[ω] (ηS̄[ω′] − S̄[−ω]η)`.
pub fn delta_cout(model: &MirrorModel, state: &StationaryState, omega: f64, omega2: f64) -> Result<Mat2> {
    let eta = Mat2::eta();
    let s1 = model.smatrix(omega)?;
    let s2 = model.smatrix(omega2)?;
    let s2n = model.smatrix(-omega2)?;
    let s1n = model.smatrix(-omega)?;
    let c2 = state.cfull(-omega2)?;
    let c1 = state.cfull(omega)?;
    let first = (s1 * eta - eta * s2n) * c2 * s2 * (-I * omega2);
    let second = s1 * c1 * (eta * s2 - s1n * eta) * (-I * omega);
    Ok(first + second)
}

/// Vacuum closed form `(iħ/2)(θ(ω) − θ(−ω′)) 𝓕[ω′, ω]`.
pub fn delta_cout_vacuum(model: &MirrorModel, ctx: PhysicsContext, omega: f64, omega2: f64) -> Result<Mat2> {
    if omega == 0.0 || omega2 == 0.0 {
        return Err(Error::SingularFrequency { quantity: "δC_out" });
    }
    let step = |x: f64| if x > 0.0 { 1.0 } else { 0.0 };
    let sign = step(omega) - step(-omega2);
    if sign == 0.0 {
        return Ok(Mat2::zero());
    }
    Ok(force_kernel(model, omega2, omega)? * (0.5 * ctx.hbar() * sign * I))
}

/// [`delta_cout`] as a two-frequency kernel.
#[derive(Debug, Clone, Copy)]
pub struct SqueezeKernel<'a> {
    pub model: &'a MirrorModel,
    pub state: &'a StationaryState,
}

impl TwoFreqKernel for SqueezeKernel<'_> {
    type Output = Mat2;

    fn eval(&self, omega: f64, omega2: f64) -> Result<Mat2> {
        delta_cout(self.model, self.state, omega, omega2)
    }
}

/// One sample of δC_out on a line `ω + ω′ = ±2ω₀`.
#[derive(Debug, Clone, PartialEq)]
pub struct SqueezeLine {
    pub omega: f64,
    pub omega2: f64,
    /// `ω + ω′`, either `2ω₀` or `−2ω₀`.
    pub line: f64,
    pub same_sign: bool,
    /// δC_out times the line weight δq₀/2.
    pub delta_cout: Mat2,
    /// Covariance of the field derivatives, `−ωω′ δC_out` (same weight).
    pub derivative_covariance: Mat2,
    /// Max-entry norm of `derivative_covariance`.
    pub magnitude: f64,
}

/// Samples δC_out along both lines `ω + ω′ = ±2ω₀` at each grid frequency ω.
/// Points where ω or ω′ is zero are skipped, since c is singular there.
pub fn oscillation_squeeze_lines(
    model: &MirrorModel,
    state: &StationaryState,
    osc: &TrajectoryPerturbation,
    grid: &FrequencyGrid,
) -> Result<Vec<SqueezeLine>> {
    let (amplitude, half_frequency) = match osc {
        TrajectoryPerturbation::Monochromatic { amplitude, half_frequency } => (*amplitude, *half_frequency),
        TrajectoryPerturbation::Tabulated(_) => {
            return Err(Error::invalid("squeeze lines need a monochromatic oscillation"));
        }
    };
    let weight = 0.5 * amplitude;
    let mut out = Vec::with_capacity(2 * grid.len());
    for line in [2.0 * half_frequency, -2.0 * half_frequency] {
        for &w in grid.points() {
            let w2 = line - w;
            if w == 0.0 || w2 == 0.0 {
                continue;
            }
            let dc = delta_cout(model, state, w, w2)? * weight;
            let dd = dc * (-w * w2);
            out.push(SqueezeLine {
                omega: w,
                omega2: w2,
                line,
                same_sign: w.signum() == w2.signum(),
                delta_cout: dc,
                derivative_covariance: dd,
                magnitude: dd.max_abs(),
            });
        }
    }
    Ok(out)
}

/// `ωω′ 𝓕[ω, ω′]`, whose contraction with the input covariance gives the
/// secular part of the effective interaction, per unit `δq[−ω − ω′]`.
pub fn secular_hamiltonian_kernel(model: &MirrorModel, omega: f64, omega2: f64) -> Result<Mat2> {
    Ok(force_kernel(model, omega, omega2)? * (omega * omega2))
}

/// Spectral density of the secular expectation on the line ω + ω′ = 0,
/// `−ω² Tr[𝓕(ω, −ω) c[ω]]`, regular at ω = 0.
pub fn secular_expectation_density(model: &MirrorModel, state: &StationaryState, omega: f64) -> Result<f64> {
    let f = force_kernel(model, omega, -omega)?;
    Ok(-(f * state.omega_sq_cfull(omega)).trace().re)
}
