//! Value types shared by every analysis: 2×2 complex matrices over the
//! counterpropagating (φ, ψ) basis, frequency grids, two-frequency kernels and
//! sampled spectra.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// 2×2 complex matrix. Row/column 0 is the φ (right-moving) component,
/// row/column 1 the ψ (left-moving) component.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct Mat2 {
    pub m: [[Complex64; 2]; 2],
}

impl Mat2 {
    pub const fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Mat2 { m: [[a, b], [c, d]] }
    }

    pub const fn zero() -> Self {
        Mat2::new(ZERO, ZERO, ZERO, ZERO)
    }

    pub const fn identity() -> Self {
        Mat2::new(ONE, ZERO, ZERO, ONE)
    }

    /// Signature matrix η = diag(1, −1).
    pub const fn eta() -> Self {
        Mat2::new(ONE, ZERO, ZERO, Complex64::new(-1.0, 0.0))
    }

    pub const fn diag(a: Complex64, d: Complex64) -> Self {
        Mat2::new(a, ZERO, ZERO, d)
    }

    pub fn diag_real(a: f64, d: f64) -> Self {
        Mat2::diag(Complex64::new(a, 0.0), Complex64::new(d, 0.0))
    }

    pub fn scalar(x: f64) -> Self {
        Mat2::diag_real(x, x)
    }

    /// Symmetric matrix `[[diag, off], [off, diag]]`, the shape of every
    /// built-in S-matrix.
    pub const fn symmetric(diag: Complex64, off: Complex64) -> Self {
        Mat2::new(diag, off, off, diag)
    }

    pub fn transpose(&self) -> Self {
        let [[a, b], [c, d]] = self.m;
        Mat2::new(a, c, b, d)
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn dagger(&self) -> Self {
        self.transpose().conj()
    }

    pub fn trace(&self) -> Complex64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        let [[a, b], [c, d]] = self.m;
        Mat2::new(f(a), f(b), f(c), f(d))
    }

    pub fn scale(&self, k: Complex64) -> Self {
        self.map(|z| z * k)
    }

    pub fn scale_real(&self, k: f64) -> Self {
        self.map(|z| z * k)
    }

    /// Max-entry norm, used for every identity residual in the crate.
    pub fn max_abs(&self) -> f64 {
        self.m
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn entries(&self) -> [Complex64; 4] {
        let [[a, b], [c, d]] = self.m;
        [a, b, c, d]
    }

    /// Smallest eigenvalue of the Hermitian part; ≥ 0 means positive semidefinite.
    pub fn min_hermitian_eigenvalue(&self) -> f64 {
        let h = (*self + self.dagger()).scale_real(0.5);
        let a = h.m[0][0].re;
        let d = h.m[1][1].re;
        let b = h.m[0][1].norm();
        let mean = 0.5 * (a + d);
        let half_gap = (0.25 * (a - d) * (a - d) + b * b).sqrt();
        mean - half_gap
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1]
        )
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let mut out = self;
        out += rhs;
        out
    }
}

impl AddAssign for Mat2 {
    fn add_assign(&mut self, rhs: Mat2) {
        for i in 0..2 {
            for j in 0..2 {
                self.m[i][j] += rhs.m[i][j];
            }
        }
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        self + (-rhs)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.map(|z| -z)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let a = &self.m;
        let b = &rhs.m;
        let mut out = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        out
    }
}

impl Mul<Complex64> for Mat2 {
    type Output = Mat2;
    fn mul(self, k: Complex64) -> Mat2 {
        self.scale(k)
    }
}

impl Mul<f64> for Mat2 {
    type Output = Mat2;
    fn mul(self, k: f64) -> Mat2 {
        self.scale_real(k)
    }
}

/// Physical scales. Speeds are in units of c = 1; ħ sets the size of vacuum
/// fluctuations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicsContext {
    hbar: f64,
}

impl PhysicsContext {
    pub fn new(hbar: f64) -> Result<Self> {
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::invalid(format!("hbar must be positive, got {hbar}")));
        }
        Ok(PhysicsContext { hbar })
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }
}

impl Default for PhysicsContext {
    fn default() -> Self {
        PhysicsContext { hbar: 1.0 }
    }
}

/// Strictly increasing list of real frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    points: Vec<f64>,
    uniform_spacing: Option<f64>,
}

impl FrequencyGrid {
    pub fn from_points(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::invalid("frequency grid is empty"));
        }
        if points.iter().any(|w| !w.is_finite()) {
            return Err(Error::invalid("frequency grid contains non-finite values"));
        }
        if points.windows(2).any(|p| p[1] <= p[0]) {
            return Err(Error::invalid("frequency grid must be strictly increasing"));
        }
        Ok(FrequencyGrid {
            points,
            uniform_spacing: None,
        })
    }

    /// `count` evenly spaced points from `min` to `max` inclusive.
    pub fn uniform(min: f64, max: f64, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::invalid("grid count must be at least 2"));
        }
        if !(min.is_finite() && max.is_finite() && max > min) {
            return Err(Error::invalid(format!("invalid grid range {min}:{max}")));
        }
        let step = (max - min) / (count - 1) as f64;
        // Built from both ends so that symmetric ranges are symmetric bit for bit.
        let points: Vec<f64> = (0..count)
            .map(|i| {
                let j = count - 1 - i;
                if i <= j {
                    min + step * i as f64
                } else {
                    max - step * j as f64
                }
            })
            .collect();
        let mut grid = FrequencyGrid::from_points(points)?;
        grid.uniform_spacing = Some(step);
        Ok(grid)
    }

    /// Uniform grid on [−max, max]; with an odd count it contains 0.
    pub fn symmetric(max: f64, count: usize) -> Result<Self> {
        let mut grid = FrequencyGrid::uniform(-max, max, count)?;
        let n = grid.points.len();
        for i in 0..n / 2 {
            let w = grid.points[n - 1 - i];
            grid.points[i] = -w;
        }
        if n % 2 == 1 {
            grid.points[n / 2] = 0.0;
        }
        Ok(grid)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.points[0]
    }

    pub fn max(&self) -> f64 {
        *self.points.last().expect("grid is never empty")
    }

    pub fn max_abs(&self) -> f64 {
        self.min().abs().max(self.max().abs())
    }

    pub fn spacing(&self) -> Option<f64> {
        self.uniform_spacing
    }

    /// True when −ω is a grid point (bit-exact) for every grid point ω.
    pub fn is_symmetric(&self) -> bool {
        let n = self.points.len();
        (0..n).all(|i| self.points[i] == -self.points[n - 1 - i])
    }

    /// Index of the grid point −ω_i, when the grid is symmetric.
    pub fn mirror_index(&self, i: usize) -> usize {
        self.points.len() - 1 - i
    }
}

/// A kernel K[ω, ω′] of two frequencies.
pub trait TwoFreqKernel {
    type Output;
    fn eval(&self, omega: f64, omega2: f64) -> Result<Self::Output>;
}

/// Wraps a closure as a [`TwoFreqKernel`].
pub struct FnKernel<F>(pub F);

impl<F, T> TwoFreqKernel for FnKernel<F>
where
    F: Fn(f64, f64) -> Result<T>,
{
    type Output = T;
    fn eval(&self, omega: f64, omega2: f64) -> Result<T> {
        (self.0)(omega, omega2)
    }
}

/// Complex values sampled on a [`FrequencyGrid`], labelled with what they are
/// and where they came from.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    grid: FrequencyGrid,
    values: Vec<Complex64>,
    pub label: String,
    pub provenance: String,
}

impl Spectrum {
    pub fn new(
        grid: FrequencyGrid,
        values: Vec<Complex64>,
        label: impl Into<String>,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::invalid(format!(
                "spectrum has {} values for {} grid points",
                values.len(),
                grid.len()
            )));
        }
        Ok(Spectrum {
            grid,
            values,
            label: label.into(),
            provenance: provenance.into(),
        })
    }

    pub fn from_fn(
        grid: &FrequencyGrid,
        label: impl Into<String>,
        provenance: impl Into<String>,
        f: impl Fn(f64) -> Complex64,
    ) -> Self {
        let values = grid.points().iter().map(|&w| f(w)).collect();
        Spectrum {
            grid: grid.clone(),
            values,
            label: label.into(),
            provenance: provenance.into(),
        }
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn real_parts(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.re).collect()
    }

    pub fn imag_parts(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.im).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, Complex64)> + '_ {
        self.grid.points().iter().copied().zip(self.values.iter().copied())
    }

    pub fn map(&self, label: impl Into<String>, f: impl Fn(f64, Complex64) -> Complex64) -> Self {
        Spectrum {
            grid: self.grid.clone(),
            values: self.iter().map(|(w, z)| f(w, z)).collect(),
            label: label.into(),
            provenance: self.provenance.clone(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}
