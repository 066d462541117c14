//! Quadrature, principal-value dispersion transforms and real-line inverse
//! Fourier transforms.

pub mod causality;
mod fourier;
mod hilbert;
mod quadrature;

pub use causality::{causality_report, kk_residual, CausalityReport, KkResidual};
pub use fourier::{inverse_fourier_to_time, negative_time_energy_fraction, sine_integral, TimeSignal};
pub use hilbert::{hilbert_transform, HilbertResult};
pub use quadrature::{integrate, integrate_segments, pairwise_sum, QuadEstimate, QuadratureConfig};
