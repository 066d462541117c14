//! Force kernel of a motionless mirror, its identities, and the mean
//! radiation pressure of a stationary state.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::Result;
use crate::mirror::MirrorModel;
use crate::numerics::{integrate_segments, QuadEstimate, QuadratureConfig};
use crate::spectral::{Mat2, TwoFreqKernel};
use crate::state::StationaryState;
use crate::support::window;

/// `𝓕[ω, ω′] = η − S̄[ω′] η S̄[ω]` of a model.
#[derive(Debug, Clone, Copy)]
pub struct ForceKernel<'a> {
    model: &'a MirrorModel,
}

impl<'a> ForceKernel<'a> {
    pub fn new(model: &'a MirrorModel) -> Self {
        ForceKernel { model }
    }

    pub fn model(&self) -> &MirrorModel {
        self.model
    }

    pub fn matrix(&self, omega: f64, omega2: f64) -> Result<Mat2> {
        let s1 = self.model.smatrix(omega)?;
        let s2 = self.model.smatrix(omega2)?;
        Ok(Mat2::eta() - s2 * Mat2::eta() * s1)
    }

    /// `α = 1 − s s′ + r r′`, the diagonal entry.
    pub fn alpha(&self, omega: f64, omega2: f64) -> Result<Complex64> {
        let (s, r) = self.model.amplitudes(omega)?;
        let (s2, r2) = self.model.amplitudes(omega2)?;
        Ok(1.0 - s * s2 + r * r2)
    }

    /// `β = s r′ − r s′`, the off-diagonal entry.
    pub fn beta(&self, omega: f64, omega2: f64) -> Result<Complex64> {
        let (s, r) = self.model.amplitudes(omega)?;
        let (s2, r2) = self.model.amplitudes(omega2)?;
        Ok(s * r2 - r * s2)
    }

    /// `𝒢[ω, ω′] = I − S̄[ω′] S̄[ω]`.
    pub fn energy_exchange(&self, omega: f64, omega2: f64) -> Result<Mat2> {
        let s1 = self.model.smatrix(omega)?;
        let s2 = self.model.smatrix(omega2)?;
        Ok(Mat2::identity() - s2 * s1)
    }
}

impl TwoFreqKernel for ForceKernel<'_> {
    type Output = Mat2;

    fn eval(&self, omega: f64, omega2: f64) -> Result<Mat2> {
        self.matrix(omega, omega2)
    }
}

pub fn force_kernel(model: &MirrorModel, omega: f64, omega2: f64) -> Result<Mat2> {
    ForceKernel::new(model).matrix(omega, omega2)
}

/// Closed form of α for the single-pole mirror.
pub fn single_pole_alpha(cutoff: f64, omega: f64, omega2: f64) -> Complex64 {
    let i = Complex64::i();
    cutoff * (i * (omega + omega2) - 2.0 * cutoff) / ((omega + i * cutoff) * (omega2 + i * cutoff))
}

/// `𝒢(ω, −ω)`, which vanishes for real unitary models.
pub fn energy_exchange_kernel(model: &MirrorModel, omega: f64) -> Result<Mat2> {
    ForceKernel::new(model).energy_exchange(omega, -omega)
}

/// Max-entry residuals of the transpose/η and adjoint rules of 𝓕.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetryResiduals {
    /// `‖𝓕[ω,ω′]ᵀ − 𝓕[ω′,ω]‖`
    pub transpose: f64,
    /// `‖𝓕[ω′,ω] − η𝓕[ω,ω′]η‖`
    pub eta_conjugation: f64,
    /// `‖𝓕[ω,ω′]† − 𝓕[−ω′,−ω]‖`
    pub adjoint: f64,
}

impl SymmetryResiduals {
    pub fn max(&self) -> f64 {
        self.transpose.max(self.eta_conjugation).max(self.adjoint)
    }
}

pub fn symmetry_residuals(model: &MirrorModel, omega: f64, omega2: f64) -> Result<SymmetryResiduals> {
    let k = ForceKernel::new(model);
    let f = k.matrix(omega, omega2)?;
    let swapped = k.matrix(omega2, omega)?;
    let reflected = k.matrix(-omega2, -omega)?;
    let eta = Mat2::eta();
    Ok(SymmetryResiduals {
        transpose: (f.transpose() - swapped).max_abs(),
        eta_conjugation: (swapped - eta * f * eta).max_abs(),
        adjoint: (f.dagger() - reflected).max_abs(),
    })
}

/// Residuals of the product rules that follow from unitarity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductResiduals {
    /// `‖𝓕𝓕† − (𝓕η + η𝓕†)‖`
    pub left: f64,
    /// `‖𝓕†𝓕 − (η𝓕 + 𝓕†η)‖`
    pub right: f64,
}

impl ProductResiduals {
    pub fn max(&self) -> f64 {
        self.left.max(self.right)
    }
}

pub fn unitarity_identities(model: &MirrorModel, omega: f64, omega2: f64) -> Result<ProductResiduals> {
    let f = force_kernel(model, omega, omega2)?;
    let fd = f.dagger();
    let eta = Mat2::eta();
    Ok(ProductResiduals {
        left: (f * fd - (f * eta + eta * fd)).max_abs(),
        right: (fd * f - (eta * f + fd * eta)).max_abs(),
    })
}

/// `ω² Tr[𝓕(ω, −ω) c₊[ω]] / 2π`, the spectral density of the mean force.
pub fn mean_force_integrand(model: &MirrorModel, state: &StationaryState, omega: f64) -> Result<f64> {
    let f = force_kernel(model, omega, -omega)?;
    Ok((f * state.omega_sq_cplus(omega)).trace().re / (2.0 * PI))
}

/// Mean radiation pressure on the motionless mirror.
///
/// The integrand vanishes identically when `c₊ ∝ I`. Otherwise it is
/// integrated over a window that the occupancy decay makes effectively
/// infinite; models without high-frequency transparency need an explicit
/// window.
pub fn mean_force(model: &MirrorModel, state: &StationaryState, cfg: &QuadratureConfig) -> Result<QuadEstimate> {
    cfg.validate()?;
    let w = window(model, state, cfg, "mean force")?;
    integrate_segments(
        |x| mean_force_integrand(model, state, x).map(|v| Complex64::new(v, 0.0)),
        &[-w, 0.0, w],
        cfg,
    )
}
