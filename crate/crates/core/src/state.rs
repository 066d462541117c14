//! Stationary input states, described by the anticommutator spectrum `c₊[ω]`.
//!
//! The commutator part `c₋[ω] = Iħ/4ω` is the same for every state, and
//! `c = c₊ + c₋`. Both parts are singular at ω = 0, so the kernels use the
//! regular products `ω²c₊[ω]` and `ω²c[ω]` instead.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::spectral::{Mat2, PhysicsContext};

/// User-supplied `ω ↦ ω²c₊[ω]` rule.
pub type CplusRule = Arc<dyn Fn(f64) -> Mat2 + Send + Sync>;

#[derive(Clone)]
pub enum StateKind {
    Vacuum,
    /// Both components at temperature `T` (energy units).
    Thermal { temperature: f64 },
    /// φ at `t_phi`, ψ at `t_psi`; a zero temperature means that component is in vacuum.
    TwoTemperature { t_phi: f64, t_psi: f64 },
    Custom { label: String, omega_sq_cplus: CplusRule, frequency_scale: f64 },
}

impl fmt::Debug for StateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateKind::Vacuum => write!(f, "Vacuum"),
            StateKind::Thermal { temperature } => write!(f, "Thermal({temperature})"),
            StateKind::TwoTemperature { t_phi, t_psi } => write!(f, "TwoTemperature({t_phi}, {t_psi})"),
            StateKind::Custom { label, frequency_scale, .. } => {
                write!(f, "Custom({label}, scale {frequency_scale})")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct StationaryState {
    kind: StateKind,
    ctx: PhysicsContext,
}

fn check_temperature(t: f64, name: &str, allow_zero: bool) -> Result<()> {
    let ok = t.is_finite() && (t > 0.0 || (allow_zero && t == 0.0));
    if ok {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name} must be {}, got {t}", if allow_zero { "≥ 0" } else { "> 0" })))
    }
}

impl StationaryState {
    pub fn vacuum(ctx: PhysicsContext) -> Self {
        StationaryState { kind: StateKind::Vacuum, ctx }
    }

    pub fn thermal(ctx: PhysicsContext, temperature: f64) -> Result<Self> {
        check_temperature(temperature, "temperature", false)?;
        Ok(StationaryState {
            kind: StateKind::Thermal { temperature },
            ctx,
        })
    }

    pub fn two_temperature(ctx: PhysicsContext, t_phi: f64, t_psi: f64) -> Result<Self> {
        check_temperature(t_phi, "φ temperature", true)?;
        check_temperature(t_psi, "ψ temperature", true)?;
        Ok(StationaryState {
            kind: StateKind::TwoTemperature { t_phi, t_psi },
            ctx,
        })
    }

    /// State with a user rule for `ω²c₊[ω]`.
    ///
    /// The rule is probed at `±probes` and must give finite, Hermitian,
    /// positive semidefinite values with `c₊[ω] = c₊[−ω]ᵀ`. `frequency_scale`
    /// is the decay scale used to choose integration windows.
    pub fn custom(
        ctx: PhysicsContext,
        label: impl Into<String>,
        omega_sq_cplus: CplusRule,
        frequency_scale: f64,
        probes: &[f64],
    ) -> Result<Self> {
        if !(frequency_scale.is_finite() && frequency_scale > 0.0) {
            return Err(Error::invalid("custom state frequency scale must be positive"));
        }
        for &w in probes {
            let a = omega_sq_cplus(w);
            let b = omega_sq_cplus(-w);
            let scale = a.max_abs().max(1e-300);
            if !a.is_finite() {
                return Err(Error::invalid(format!("custom c₊ is not finite at ω = {w}")));
            }
            if (a - a.dagger()).max_abs() > 1e-12 * scale {
                return Err(Error::invalid(format!("custom c₊ is not Hermitian at ω = {w}")));
            }
            if a.min_hermitian_eigenvalue() < -1e-12 * scale {
                return Err(Error::invalid(format!("custom c₊ is not positive at ω = {w}")));
            }
            if (a - b.transpose()).max_abs() > 1e-12 * scale {
                return Err(Error::invalid(format!("custom c₊ violates c₊[ω] = c₊[−ω]ᵀ at ω = {w}")));
            }
        }
        Ok(StationaryState {
            kind: StateKind::Custom {
                label: label.into(),
                omega_sq_cplus,
                frequency_scale,
            },
            ctx,
        })
    }

    pub fn kind(&self) -> &StateKind {
        &self.kind
    }

    pub fn context(&self) -> PhysicsContext {
        self.ctx
    }

    pub fn hbar(&self) -> f64 {
        self.ctx.hbar()
    }

    pub fn is_vacuum(&self) -> bool {
        matches!(self.kind, StateKind::Vacuum)
    }

    pub fn name(&self) -> String {
        match &self.kind {
            StateKind::Vacuum => "vacuum".into(),
            StateKind::Thermal { .. } => "thermal".into(),
            StateKind::TwoTemperature { .. } => "two-temperature".into(),
            StateKind::Custom { label, .. } => format!("custom:{label}"),
        }
    }

    /// Largest temperature, 0 for vacuum.
    pub fn max_temperature(&self) -> f64 {
        match &self.kind {
            StateKind::Vacuum | StateKind::Custom { .. } => 0.0,
            StateKind::Thermal { temperature } => *temperature,
            StateKind::TwoTemperature { t_phi, t_psi } => t_phi.max(*t_psi),
        }
    }

    /// Frequency beyond which the excitation above vacuum is negligible, or
    /// `None` for vacuum.
    pub fn excitation_scale(&self) -> Option<f64> {
        match &self.kind {
            StateKind::Vacuum => None,
            StateKind::Custom { frequency_scale, .. } => Some(*frequency_scale),
            _ => {
                let t = self.max_temperature();
                (t > 0.0).then(|| t / self.hbar())
            }
        }
    }

    /// `ω²c₊[ω]`, finite at every frequency for the built-in states.
    pub fn omega_sq_cplus(&self, omega: f64) -> Mat2 {
        let hbar = self.hbar();
        match &self.kind {
            StateKind::Vacuum => Mat2::scalar(0.25 * hbar * omega.abs()),
            StateKind::Thermal { temperature } => Mat2::scalar(thermal_weight(hbar, *temperature, omega)),
            StateKind::TwoTemperature { t_phi, t_psi } => {
                Mat2::diag_real(thermal_weight(hbar, *t_phi, omega), thermal_weight(hbar, *t_psi, omega))
            }
            StateKind::Custom { omega_sq_cplus, .. } => omega_sq_cplus(omega),
        }
    }

    /// `ω²c[ω] = ω²c₊[ω] + Iħω/4`.
    pub fn omega_sq_cfull(&self, omega: f64) -> Mat2 {
        self.omega_sq_cplus(omega) + Mat2::scalar(0.25 * self.hbar() * omega)
    }

    pub fn cplus(&self, omega: f64) -> Result<Mat2> {
        nonzero(omega, "c₊")?;
        Ok(self.omega_sq_cplus(omega).scale_real(1.0 / (omega * omega)))
    }

    /// `c₋[ω] = Iħ/4ω`.
    pub fn cminus(&self, omega: f64) -> Result<Mat2> {
        nonzero(omega, "c₋")?;
        Ok(Mat2::scalar(0.25 * self.hbar() / omega))
    }

    pub fn cfull(&self, omega: f64) -> Result<Mat2> {
        nonzero(omega, "c")?;
        match self.kind {
            // Exact zero at negative frequency, not a rounding residue.
            StateKind::Vacuum => Ok(if omega > 0.0 {
                Mat2::scalar(0.5 * self.hbar() / omega)
            } else {
                Mat2::zero()
            }),
            _ => Ok(self.cplus(omega)? + self.cminus(omega)?),
        }
    }
}

fn nonzero(omega: f64, quantity: &'static str) -> Result<()> {
    if omega == 0.0 {
        Err(Error::SingularFrequency { quantity })
    } else if !omega.is_finite() {
        Err(Error::invalid(format!("frequency must be finite, got {omega}")))
    } else {
        Ok(())
    }
}

/// `(ħω/4) coth(ħω/2T)`, equal to `T/2` at ω = 0 and to `ħ|ω|/4` at T = 0.
pub fn thermal_weight(hbar: f64, temperature: f64, omega: f64) -> f64 {
    if temperature == 0.0 {
        return 0.25 * hbar * omega.abs();
    }
    let x = 0.5 * hbar * omega / temperature;
    let x_coth_x = if x.abs() < 1e-4 {
        1.0 + x * x / 3.0
    } else {
        x / x.tanh()
    };
    0.5 * temperature * x_coth_x
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn ctx() -> PhysicsContext {
        PhysicsContext::default()
    }

    #[test]
    fn vacuum_values() {
        let v = StationaryState::vacuum(ctx());
        assert_eq!(v.cplus(2.0).unwrap(), Mat2::scalar(0.125));
        assert_eq!(v.cplus(-2.0).unwrap(), Mat2::scalar(0.125));
        assert_eq!(v.cfull(1.0).unwrap(), Mat2::scalar(0.5));
        assert_eq!(v.cfull(-1.0).unwrap(), Mat2::zero());
        assert!(matches!(v.cplus(0.0), Err(Error::SingularFrequency { .. })));
    }

    #[test]
    fn commutator_part_is_universal() {
        let states = [
            StationaryState::vacuum(ctx()),
            StationaryState::thermal(ctx(), 0.7).unwrap(),
            StationaryState::two_temperature(ctx(), 0.2, 3.0).unwrap(),
        ];
        for st in &states {
            for w in [-3.0, -0.1, 0.4, 5.0] {
                let d = st.cfull(w).unwrap() - st.cplus(w).unwrap();
                assert!((d - Mat2::scalar(0.25 / w)).max_abs() < 1e-15);
            }
        }
    }

    #[test]
    fn thermal_regular_at_zero() {
        assert_eq!(thermal_weight(1.0, 0.8, 0.0), 0.4);
        let a = thermal_weight(1.0, 0.8, 1e-9);
        assert!((a - 0.4).abs() < 1e-15);
        let b = thermal_weight(1.0, 0.8, 2.0e-4);
        let exact = 0.25 * 2.0e-4 / (0.5 * 2.0e-4 / 0.8f64).tanh();
        assert!((b - exact).abs() < 1e-13);
    }

    #[test]
    fn rejects_bad_temperatures() {
        assert!(StationaryState::thermal(ctx(), 0.0).is_err());
        assert!(StationaryState::thermal(ctx(), -1.0).is_err());
        assert!(StationaryState::two_temperature(ctx(), 0.0, 1.0).is_ok());
        assert!(StationaryState::two_temperature(ctx(), f64::NAN, 1.0).is_err());
    }

    #[test]
    fn custom_invariants_checked() {
        let good: CplusRule = Arc::new(|w: f64| Mat2::diag_real(0.25 * w.abs() + 1.0, 0.25 * w.abs()));
        assert!(StationaryState::custom(ctx(), "good", good, 1.0, &[0.5, 2.0]).is_ok());
        let negative: CplusRule = Arc::new(|_| Mat2::diag_real(1.0, -1.0));
        assert!(StationaryState::custom(ctx(), "neg", negative, 1.0, &[1.0]).is_err());
        let odd: CplusRule = Arc::new(|_| {
            let off = Complex64::new(0.0, 1.0);
            Mat2::new(Complex64::new(2.0, 0.0), off, -off, Complex64::new(2.0, 0.0))
        });
        // Hermitian and positive, but c₊[ω] ≠ c₊[−ω]ᵀ
        assert!(StationaryState::custom(ctx(), "odd", odd, 1.0, &[1.0]).is_err());
    }
}
