use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::Spectrum;

/// Output of [`hilbert_transform`].
#[derive(Debug, Clone)]
pub struct HilbertResult {
    pub spectrum: Spectrum,
    /// Largest contribution of the modelled tails beyond the grid.
    pub tail_estimate: f64,
    pub warning: Option<String>,
}

/// Principal-value dispersion transform
/// `g(ω) = (1/π) P∫ f(ω′) / (ω′ − ω) dω′` of a real spectrum on a symmetric grid.
///
/// The singular point is handled by subtracting `f(ω)`: the remaining
/// integrand is regular, with value `f′(ω)` at `ω′ = ω`, and is integrated by
/// the trapezoid rule on the grid; the subtracted part integrates to a log.
/// Beyond the grid the input is modelled as `c/ω′` with `c` fixed by the edge
/// samples, and that tail is added analytically. A warning is attached when
/// the tail exceeds `tail_tol` relative to the peak of the input.
///
/// The two endpoint outputs are copied from their neighbours, since the
/// log term diverges there.
pub fn hilbert_transform(input: &Spectrum, tail_tol: f64) -> Result<HilbertResult> {
    let grid = input.grid();
    let w = grid.points();
    let n = w.len();
    if n < 5 {
        return Err(Error::invalid("dispersion transform needs at least 5 grid points"));
    }
    if !grid.is_symmetric() {
        return Err(Error::invalid("dispersion transform needs a symmetric grid"));
    }
    let peak = input.max_abs();
    if input.values().iter().any(|z| z.im.abs() > 1e-12 * peak.max(f64::MIN_POSITIVE)) {
        return Err(Error::invalid(format!(
            "dispersion transform input '{}' must be real-valued",
            input.label
        )));
    }
    let f = input.real_parts();
    let deriv = derivative(w, &f);
    let (a, b) = (w[0], w[n - 1]);
    let c_left = a * f[0];
    let c_right = b * f[n - 1];

    let mut out = vec![0.0; n];
    let mut tail_estimate: f64 = 0.0;
    for i in 1..n - 1 {
        let x = w[i];
        let fi = f[i];
        let g = |j: usize| if j == i { deriv[i] } else { (f[j] - fi) / (w[j] - x) };
        let mut integral = 0.0;
        let mut prev = g(0);
        for j in 1..n {
            let cur = g(j);
            integral += 0.5 * (w[j] - w[j - 1]) * (prev + cur);
            prev = cur;
        }
        integral += fi * ((b - x) / (x - a)).ln();
        let tail = c_right * right_tail(x, b) + c_left * left_tail(x, a);
        tail_estimate = tail_estimate.max(tail.abs() / std::f64::consts::PI);
        out[i] = (integral + tail) / std::f64::consts::PI;
    }
    out[0] = out[1];
    out[n - 1] = out[n - 2];

    let warning = (tail_estimate > tail_tol * peak).then(|| {
        format!(
            "grid span ±{b} leaves a tail contribution of {tail_estimate:.3e} \
             (peak input {peak:.3e})"
        )
    });
    let values = out.into_iter().map(|v| Complex64::new(v, 0.0)).collect();
    let spectrum = Spectrum::new(
        grid.clone(),
        values,
        format!("dispersion[{}]", input.label),
        format!("principal-value transform of {}", input.provenance),
    )?;
    Ok(HilbertResult {
        spectrum,
        tail_estimate,
        warning,
    })
}

/// ∫_b^∞ dω′ / (ω′(ω′ − x)) for x < b.
fn right_tail(x: f64, b: f64) -> f64 {
    if x == 0.0 {
        1.0 / b
    } else {
        -(-x / b).ln_1p() / x
    }
}

/// ∫_{−∞}^a dω′ / (ω′(ω′ − x)) for x > a, a < 0.
fn left_tail(x: f64, a: f64) -> f64 {
    if x == 0.0 {
        -1.0 / a
    } else {
        (-x / a).ln_1p() / x
    }
}

/// Three-point derivative on a possibly non-uniform grid.
fn derivative(w: &[f64], f: &[f64]) -> Vec<f64> {
    let n = w.len();
    let mut d = vec![0.0; n];
    for i in 1..n - 1 {
        let h0 = w[i] - w[i - 1];
        let h1 = w[i + 1] - w[i];
        d[i] = (f[i + 1] * h0 * h0 - f[i - 1] * h1 * h1 + f[i] * (h1 * h1 - h0 * h0))
            / (h0 * h1 * (h0 + h1));
    }
    d[0] = (f[1] - f[0]) / (w[1] - w[0]);
    d[n - 1] = (f[n - 1] - f[n - 2]) / (w[n - 1] - w[n - 2]);
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::FrequencyGrid;

    fn interior_max_error(got: &Spectrum, exact: impl Fn(f64) -> f64, span: f64) -> f64 {
        got.iter()
            .filter(|(w, _)| w.abs() <= span)
            .map(|(w, z)| (z.re - exact(w)).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn lorentzian_pair() {
        let grid = FrequencyGrid::symmetric(400.0, 16001).unwrap();
        let xi = Spectrum::from_fn(&grid, "xi", "test", |w| Complex64::new(w / (1.0 + w * w), 0.0));
        let h = hilbert_transform(&xi, 1e-2).unwrap();
        let err = interior_max_error(&h.spectrum, |w| 1.0 / (1.0 + w * w), 10.0);
        assert!(err < 2e-4, "max error {err:e}");
    }

    #[test]
    fn odd_input_gives_even_output() {
        let grid = FrequencyGrid::symmetric(50.0, 2001).unwrap();
        let xi = Spectrum::from_fn(&grid, "xi", "test", |w| Complex64::new(w * (-w * w).exp(), 0.0));
        let h = hilbert_transform(&xi, 1e-2).unwrap();
        let v = h.spectrum.real_parts();
        let n = v.len();
        for i in 0..n {
            assert!((v[i] - v[n - 1 - i]).abs() < 1e-13, "index {i}");
        }
        assert!(h.warning.is_none());
    }

    #[test]
    fn applied_twice_negates() {
        let grid = FrequencyGrid::symmetric(400.0, 16001).unwrap();
        let f = |w: f64| w / (1.0 + w * w);
        let xi = Spectrum::from_fn(&grid, "xi", "test", |w| Complex64::new(f(w), 0.0));
        let once = hilbert_transform(&xi, 1e-2).unwrap().spectrum;
        let twice = hilbert_transform(&once, 1e-2).unwrap().spectrum;
        let mut num = 0.0;
        let mut den = 0.0;
        for (w, z) in twice.iter().filter(|(w, _)| w.abs() <= 100.0) {
            num += (z.re + f(w)).powi(2);
            den += f(w).powi(2);
        }
        assert!((num / den).sqrt() < 1e-2);
    }

    #[test]
    fn short_grid_warns() {
        let grid = FrequencyGrid::symmetric(2.0, 201).unwrap();
        let xi = Spectrum::from_fn(&grid, "xi", "test", |w| Complex64::new(w / (1.0 + w * w), 0.0));
        let h = hilbert_transform(&xi, 1e-3).unwrap();
        assert!(h.warning.is_some());
    }

    #[test]
    fn rejects_complex_and_asymmetric_input() {
        let grid = FrequencyGrid::symmetric(2.0, 21).unwrap();
        let z = Spectrum::from_fn(&grid, "z", "test", |w| Complex64::new(w, 1.0));
        assert!(hilbert_transform(&z, 1e-3).is_err());
        let grid = FrequencyGrid::uniform(-2.0, 3.0, 21).unwrap();
        let z = Spectrum::from_fn(&grid, "z", "test", |w| Complex64::new(w, 0.0));
        assert!(hilbert_transform(&z, 1e-3).is_err());
    }
}
