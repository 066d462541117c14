use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::Spectrum;

/// Samples of a time-domain signal.
#[derive(Debug, Clone)]
pub struct TimeSignal {
    pub times: Vec<f64>,
    pub values: Vec<Complex64>,
    /// Leading `iA/ω` tail coefficient used for the out-of-grid correction.
    pub tail_coefficient: f64,
    pub warning: Option<String>,
}

/// `f(t) = ∫ dω/2π f[ω] e^{−iωt}` for a spectrum on a symmetric grid.
///
/// The grid part is a trapezoid sum. A real time signal with a step at t = 0
/// has a spectrum decaying as `iA/ω`; the part of that tail outside the grid
/// is added in closed form, `(A/π) sgn(t) (π/2 − Si(Ω_max |t|))`, with A
/// read off the edge samples.
pub fn inverse_fourier_to_time(spectrum: &Spectrum, times: &[f64]) -> Result<TimeSignal> {
    let grid = spectrum.grid();
    let w = grid.points();
    let n = w.len();
    if n < 3 {
        return Err(Error::invalid("inverse transform needs at least 3 grid points"));
    }
    if !grid.is_symmetric() {
        return Err(Error::invalid("inverse transform needs a symmetric grid"));
    }
    let f = spectrum.values();
    let cutoff = w[n - 1];
    let tail_coefficient = 0.5 * (w[n - 1] * f[n - 1].im + w[0] * f[0].im);

    let weights: Vec<f64> = (0..n)
        .map(|j| {
            let left = if j > 0 { w[j] - w[j - 1] } else { 0.0 };
            let right = if j + 1 < n { w[j + 1] - w[j] } else { 0.0 };
            0.5 * (left + right)
        })
        .collect();
    let max_step = w.windows(2).map(|p| p[1] - p[0]).fold(0.0, f64::max);

    let values = times
        .iter()
        .map(|&t| {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..n {
                acc += f[j] * Complex64::from_polar(weights[j], -w[j] * t);
            }
            acc /= 2.0 * PI;
            if t != 0.0 {
                let tail = tail_coefficient / PI * t.signum() * (0.5 * PI - sine_integral(cutoff * t.abs()));
                acc += tail;
            }
            acc
        })
        .collect();

    let t_span = times.iter().fold(0.0f64, |m, &t| m.max(t.abs()));
    let period = 2.0 * PI / max_step;
    let warning = (2.0 * t_span > period).then(|| {
        format!("time window ±{t_span} exceeds the alias-free period {period:.4} of the frequency grid")
    });
    Ok(TimeSignal {
        times: times.to_vec(),
        values,
        tail_coefficient,
        warning,
    })
}

/// Fraction of `∫|f(t)|² dt` carried by t < 0 (trapezoid in t).
pub fn negative_time_energy_fraction(signal: &TimeSignal) -> f64 {
    let t = &signal.times;
    let e: Vec<f64> = signal.values.iter().map(|z| z.norm_sqr()).collect();
    let mut negative = 0.0;
    let mut total = 0.0;
    for k in 1..t.len() {
        let piece = 0.5 * (t[k] - t[k - 1]) * (e[k] + e[k - 1]);
        total += piece;
        if t[k] < 0.0 {
            negative += piece;
        }
    }
    if total > 0.0 {
        negative / total
    } else {
        0.0
    }
}

/// Sine integral Si(x) = ∫₀^x sin(u)/u du.
pub fn sine_integral(x: f64) -> f64 {
    let t = x.abs();
    let value = if t <= 2.0 {
        // Taylor series; terms fall off quickly for t ≤ 2.
        let t2 = t * t;
        let mut term = t;
        let mut sum = t;
        let mut k = 0usize;
        loop {
            k += 1;
            let m = (2 * k) as f64;
            term *= -t2 / (m * (m + 1.0));
            let add = term / (m + 1.0);
            sum += add;
            if add.abs() <= 1e-17 * sum.abs() || k > 60 {
                break;
            }
        }
        sum
    } else {
        // Lentz continued fraction for E1(it).
        let tiny = 1e-300;
        let mut b = Complex64::new(1.0, t);
        let mut c = Complex64::new(1.0 / tiny, 0.0);
        let mut d = Complex64::new(1.0, 0.0) / b;
        let mut h = d;
        for i in 2..1000 {
            let a = -((i - 1) as f64).powi(2);
            b += 2.0;
            d = Complex64::new(1.0, 0.0) / (d * a + b);
            c = b + c.inv() * a;
            let del = c * d;
            h *= del;
            if (del - 1.0).norm() < 1e-16 {
                break;
            }
        }
        h *= Complex64::new(t.cos(), -t.sin());
        0.5 * PI + h.im
    };
    value.copysign(x)
}
