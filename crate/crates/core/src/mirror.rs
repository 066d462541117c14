//! Mirror S-matrices `[[s, r], [r, s]]` and their validation.

use std::io::Read;
use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::numerics::kk_residual;
use crate::spectral::{FrequencyGrid, Mat2, Spectrum};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Frequency-dependent scattering amplitudes of a motionless mirror.
#[derive(Debug, Clone, PartialEq)]
pub enum MirrorModel {
    /// `s = ω/(ω + iΩ)`, `r = −iΩ/(ω + iΩ)`.
    SinglePole { cutoff: f64 },
    /// `s = 0`, `r = −1` at every frequency.
    Perfect,
    Tabulated(TabulatedMirror),
}

impl MirrorModel {
    pub fn single_pole(cutoff: f64) -> Result<Self> {
        if !(cutoff.is_finite() && cutoff > 0.0) {
            return Err(Error::invalid(format!("cutoff must be positive and finite, got {cutoff}")));
        }
        Ok(MirrorModel::SinglePole { cutoff })
    }

    pub fn name(&self) -> &'static str {
        match self {
            MirrorModel::SinglePole { .. } => "single-pole",
            MirrorModel::Perfect => "perfect",
            MirrorModel::Tabulated(_) => "table",
        }
    }

    /// Transmission and reflection amplitudes `(s, r)`.
    pub fn amplitudes(&self, omega: f64) -> Result<(Complex64, Complex64)> {
        if !omega.is_finite() {
            return Err(Error::invalid(format!("frequency must be finite, got {omega}")));
        }
        match self {
            MirrorModel::SinglePole { cutoff } => {
                let d = Complex64::new(omega, *cutoff);
                Ok((omega / d, -I * *cutoff / d))
            }
            MirrorModel::Perfect => Ok((Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0))),
            MirrorModel::Tabulated(t) => t.amplitudes(omega),
        }
    }

    pub fn smatrix(&self, omega: f64) -> Result<Mat2> {
        let (s, r) = self.amplitudes(omega)?;
        Ok(Mat2::symmetric(s, r))
    }

    /// Whether `s → 1`, `r → 0` at high frequency is guaranteed by construction.
    /// Tabulated models cover a finite range and are never declared transparent.
    pub fn is_transparent(&self) -> bool {
        matches!(self, MirrorModel::SinglePole { .. })
    }

    /// Reflection cutoff, when the model has one.
    pub fn characteristic_frequency(&self) -> Option<f64> {
        match self {
            MirrorModel::SinglePole { cutoff } => Some(*cutoff),
            _ => None,
        }
    }

    /// Largest |ω| at which the model can be evaluated.
    pub fn max_frequency(&self) -> f64 {
        match self {
            MirrorModel::Tabulated(t) => t.max_frequency(),
            _ => f64::INFINITY,
        }
    }
}

/// Mirror sampled at ω ≥ 0 and interpolated by natural cubic splines.
///
/// Negative frequencies are served as `s(−ω) = s(ω)*`, so reality holds
/// exactly whatever the samples are.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedMirror {
    omegas: Vec<f64>,
    parts: [Spline; 4],
}

#[derive(Debug, Deserialize)]
struct Row {
    omega: f64,
    re_s: f64,
    im_s: f64,
    re_r: f64,
    im_r: f64,
}

impl TabulatedMirror {
    pub fn from_samples(omegas: Vec<f64>, s: Vec<Complex64>, r: Vec<Complex64>) -> Result<Self> {
        if omegas.len() != s.len() || omegas.len() != r.len() {
            return Err(Error::Table("column lengths differ".into()));
        }
        if omegas.len() < 3 {
            return Err(Error::Table("need at least 3 rows".into()));
        }
        if omegas[0] < 0.0 {
            return Err(Error::Table(format!("frequencies must be ≥ 0, first row has {}", omegas[0])));
        }
        for k in 1..omegas.len() {
            if !(omegas[k] > omegas[k - 1]) {
                return Err(Error::Table(format!(
                    "frequencies must be strictly ascending (row {} has {} after {})",
                    k + 1,
                    omegas[k],
                    omegas[k - 1]
                )));
            }
        }
        if s.iter().chain(&r).any(|z| !z.is_finite()) || omegas.iter().any(|w| !w.is_finite()) {
            return Err(Error::Table("non-finite entry".into()));
        }

        // Knots on the reflected grid; the value at −ω is the conjugate, which
        // makes real parts even and imaginary parts odd across zero.
        let start = usize::from(omegas[0] == 0.0);
        let mut x: Vec<f64> = omegas[start..].iter().rev().map(|w| -w).collect();
        x.extend_from_slice(&omegas);
        let reflect = |vals: &[f64], parity: f64| -> Vec<f64> {
            let mut y: Vec<f64> = vals[start..].iter().rev().map(|v| parity * v).collect();
            y.extend_from_slice(vals);
            y
        };
        let re_s: Vec<f64> = s.iter().map(|z| z.re).collect();
        let im_s: Vec<f64> = s.iter().map(|z| z.im).collect();
        let re_r: Vec<f64> = r.iter().map(|z| z.re).collect();
        let im_r: Vec<f64> = r.iter().map(|z| z.im).collect();
        let parts = [
            Spline::natural(&x, &reflect(&re_s, 1.0)),
            Spline::natural(&x, &reflect(&im_s, -1.0)),
            Spline::natural(&x, &reflect(&re_r, 1.0)),
            Spline::natural(&x, &reflect(&im_r, -1.0)),
        ];
        Ok(TabulatedMirror { omegas, parts })
    }

    /// Reads `omega,re_s,im_s,re_r,im_r` rows.
    pub fn from_csv_reader(reader: impl Read) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).comment(Some(b'#')).from_reader(reader);
        let headers = rdr.headers().map_err(|e| Error::Table(e.to_string()))?.clone();
        let expected = ["omega", "re_s", "im_s", "re_r", "im_r"];
        if headers.iter().collect::<Vec<_>>() != expected {
            return Err(Error::Table(format!("header must be {}", expected.join(","))));
        }
        let (mut w, mut s, mut r) = (Vec::new(), Vec::new(), Vec::new());
        for (k, row) in rdr.deserialize::<Row>().enumerate() {
            let row = row.map_err(|e| Error::Table(format!("row {}: {e}", k + 1)))?;
            w.push(row.omega);
            s.push(Complex64::new(row.re_s, row.im_s));
            r.push(Complex64::new(row.re_r, row.im_r));
        }
        Self::from_samples(w, s, r)
    }

    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|e| Error::Table(format!("{}: {e}", path.display())))?;
        Self::from_csv_reader(file)
    }

    pub fn omegas(&self) -> &[f64] {
        &self.omegas
    }

    pub fn max_frequency(&self) -> f64 {
        *self.omegas.last().unwrap()
    }

    pub fn amplitudes(&self, omega: f64) -> Result<(Complex64, Complex64)> {
        let (lo, hi) = (self.omegas[0], self.max_frequency());
        let a = omega.abs();
        if a > hi || (a < lo && lo > 0.0) {
            return Err(Error::OutOfRange { omega, min: lo, max: hi });
        }
        let [rs, is, rr, ir] = &self.parts;
        let s = Complex64::new(rs.eval(a), is.eval(a));
        let r = Complex64::new(rr.eval(a), ir.eval(a));
        if omega < 0.0 {
            Ok((s.conj(), r.conj()))
        } else {
            Ok((s, r))
        }
    }
}

/// Natural cubic spline through (x, y).
#[derive(Debug, Clone, PartialEq)]
struct Spline {
    x: Vec<f64>,
    y: Vec<f64>,
    m: Vec<f64>,
}

impl Spline {
    fn natural(x: &[f64], y: &[f64]) -> Self {
        let n = x.len();
        let mut m = vec![0.0; n];
        if n > 2 {
            // Tridiagonal solve for the interior second derivatives.
            let mut c = vec![0.0; n];
            let mut d = vec![0.0; n];
            for i in 1..n - 1 {
                let h0 = x[i] - x[i - 1];
                let h1 = x[i + 1] - x[i];
                let a = h0 / 6.0;
                let b = (h0 + h1) / 3.0;
                let cc = h1 / 6.0;
                let rhs = (y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0;
                let denom = b - a * c[i - 1];
                c[i] = cc / denom;
                d[i] = (rhs - a * d[i - 1]) / denom;
            }
            for i in (1..n - 1).rev() {
                m[i] = d[i] - c[i] * m[i + 1];
            }
        }
        Spline { x: x.to_vec(), y: y.to_vec(), m }
    }

    fn eval(&self, t: f64) -> f64 {
        let x = &self.x;
        let k = match x.partition_point(|&v| v <= t) {
            0 => 0,
            p if p >= x.len() => x.len() - 2,
            p => p - 1,
        };
        let h = x[k + 1] - x[k];
        let a = (x[k + 1] - t) / h;
        let b = (t - x[k]) / h;
        a * self.y[k]
            + b * self.y[k + 1]
            + ((a * a * a - a) * self.m[k] + (b * b * b - b) * self.m[k + 1]) * h * h / 6.0
    }
}

/// Thresholds for [`validate_model`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationTolerances {
    /// Reality, unitarity and symmetry residuals.
    pub algebraic: f64,
    /// Relative L² dispersion-relation residual.
    pub causality: f64,
    /// Deviation of S from I far above every model scale.
    pub transparency: f64,
}

impl Default for ValidationTolerances {
    fn default() -> Self {
        ValidationTolerances {
            algebraic: 1e-12,
            causality: 1e-2,
            transparency: 1e-6,
        }
    }
}

/// One residual against its threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Check {
    pub residual: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl Check {
    fn new(residual: f64, threshold: f64) -> Self {
        Check {
            residual,
            threshold,
            passed: residual <= threshold,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub model: String,
    pub reality: Check,
    pub unitarity: Check,
    pub symmetry: Check,
    /// Dispersion-relation residual of `s − 1`.
    pub causality_s: Check,
    /// Dispersion-relation residual of `r`.
    pub causality_r: Check,
    /// `None` when the model has no high-frequency behaviour to test.
    pub transparency: Option<Check>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn checks(&self) -> Vec<(&'static str, Check)> {
        let mut out = vec![
            ("reality", self.reality),
            ("unitarity", self.unitarity),
            ("symmetry", self.symmetry),
            ("causality_s", self.causality_s),
            ("causality_r", self.causality_r),
        ];
        if let Some(t) = self.transparency {
            out.push(("transparency", t));
        }
        out
    }

    pub fn passed(&self) -> bool {
        self.checks().iter().all(|(_, c)| c.passed)
    }
}

/// Checks reality, unitarity and symmetry on `grid`, dispersion relations of
/// `s − 1` and `r` on a symmetric grid of the same span, and the
/// high-frequency limit.
///
/// Physics violations are reported, not returned as errors; errors come only
/// from evaluating a table outside its range.
pub fn validate_model(model: &MirrorModel, grid: &FrequencyGrid, tol: &ValidationTolerances) -> Result<ValidationReport> {
    let mut reality: f64 = 0.0;
    let mut unitarity: f64 = 0.0;
    let mut symmetry: f64 = 0.0;
    for &w in grid.points() {
        let s = model.smatrix(w)?;
        let s_neg = model.smatrix(-w)?;
        reality = reality.max((s_neg - s.conj()).max_abs());
        unitarity = unitarity.max((s * s.dagger() - Mat2::identity()).max_abs());
        symmetry = symmetry.max((s - s.transpose()).max_abs());
    }

    let span = grid.max_abs();
    if span <= 0.0 {
        return Err(Error::invalid("validation grid must extend beyond ω = 0"));
    }
    let count = (grid.len().max(2001)) | 1;
    let kk_grid = FrequencyGrid::symmetric(span, count)?;
    let s_minus_one = sample(model, &kk_grid, "s-1", |s, _| s - 1.0)?;
    let refl = sample(model, &kk_grid, "r", |_, r| r)?;
    let mut warnings = Vec::new();
    let ks = kk_residual(&s_minus_one, tol.causality)?;
    let kr = kk_residual(&refl, tol.causality)?;
    warnings.extend(ks.warning.clone());
    warnings.extend(kr.warning.clone());

    let transparency = match model {
        MirrorModel::Tabulated(_) => None,
        _ => {
            let scale = model.characteristic_frequency().unwrap_or(1.0).max(span).max(1.0);
            let probe = 1e8 * scale;
            let dev = (model.smatrix(probe)? - Mat2::identity())
                .max_abs()
                .max((model.smatrix(-probe)? - Mat2::identity()).max_abs());
            Some(Check::new(dev, tol.transparency))
        }
    };

    Ok(ValidationReport {
        model: model.name().to_string(),
        reality: Check::new(reality, tol.algebraic),
        unitarity: Check::new(unitarity, tol.algebraic),
        symmetry: Check::new(symmetry, tol.algebraic),
        causality_s: Check::new(ks.relative_l2, tol.causality),
        causality_r: Check::new(kr.relative_l2, tol.causality),
        transparency,
        warnings,
    })
}

fn sample(
    model: &MirrorModel,
    grid: &FrequencyGrid,
    label: &str,
    f: impl Fn(Complex64, Complex64) -> Complex64,
) -> Result<Spectrum> {
    let values = grid
        .points()
        .iter()
        .map(|&w| model.amplitudes(w).map(|(s, r)| f(s, r)))
        .collect::<Result<Vec<_>>>()?;
    Spectrum::new(grid.clone(), values, label, format!("{} amplitudes", model.name()))
}
