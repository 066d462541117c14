//! Radiation pressure on a partly transmitting mirror scattering a scalar
//! field in 1+1 dimensions.
//!
//! The crate evaluates, for stationary input fields, the force kernel of a
//! motionless mirror, its mean radiation pressure and force-noise spectra,
//! the susceptibility of the mean force to a small displacement of the
//! mirror, and the motional change of the output field covariance. Each
//! quantity is available along more than one algebraic route so that the
//! fluctuation–dissipation relation, frame independence and causality can be
//! checked numerically.
//!
//! Conventions: `f(t) = ∫ dω/2π f[ω] e^{−iωt}`, c = 1, ħ carried by
//! [`PhysicsContext`]. Row/column 0 of every [`Mat2`] is the right-moving
//! component φ, row/column 1 the left-moving component ψ.

pub mod error;
pub mod fluctuations;
pub mod mirror;
pub mod motion;
pub mod numerics;
pub mod pressure;
pub mod spectral;
pub mod squeezing;
pub mod state;
mod support;

pub use error::{Error, Result};
pub use spectral::{FnKernel, FrequencyGrid, Mat2, PhysicsContext, Spectrum, TwoFreqKernel};
pub use fluctuations::{FdtReport, NoiseResult, RealEstimate};
pub use mirror::{MirrorModel, TabulatedMirror, ValidationReport, ValidationTolerances};
pub use motion::TrajectoryPerturbation;
pub use numerics::{CausalityReport, QuadEstimate, QuadratureConfig};
pub use pressure::ForceKernel;
pub use squeezing::{SqueezeKernel, SqueezeLine};
pub use state::{StateKind, StationaryState};
pub use num_complex::Complex64;
