#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Hand-coded single-pole amplitudes.
pub fn sp(cutoff: f64, w: f64) -> (Complex64, Complex64) {
    let d = Complex64::new(w, cutoff);
    (w / d, -I * cutoff / d)
}

/// Single-pole α in closed form.
pub fn sp_alpha(cutoff: f64, w: f64, w2: f64) -> Complex64 {
    cutoff * (I * (w + w2) - 2.0 * cutoff) / ((w + I * cutoff) * (w2 + I * cutoff))
}

/// Composite trapezoid on [a, b] with n intervals.
pub fn trapezoid(f: impl Fn(f64) -> Complex64, a: f64, b: f64, n: usize) -> Complex64 {
    let h = (b - a) / n as f64;
    let mut acc = 0.5 * (f(a) + f(b));
    for k in 1..n {
        acc += f(a + h * k as f64);
    }
    acc * h
}

/// Vacuum χ[ω] of the single-pole mirror by trapezoid, ħ = 1.
pub fn sp_chi_vacuum_oracle(cutoff: f64, w: f64, n: usize) -> Complex64 {
    if w == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let integral = trapezoid(|x| x * (w - x) * sp_alpha(cutoff, x, w - x), 0.0, w, n);
    I * integral / (2.0 * PI)
}

/// Vacuum C_FF[ω] of the single-pole mirror by trapezoid, ħ = 1.
pub fn sp_cff_vacuum_oracle(cutoff: f64, w: f64, n: usize) -> f64 {
    if w <= 0.0 {
        return 0.0;
    }
    let integral = trapezoid(|x| Complex64::new(x * (w - x) * 2.0 * sp_alpha(cutoff, x, w - x).re, 0.0), 0.0, w, n);
    integral.re / (2.0 * PI)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random nonzero frequency pairs in [−span, span]².
pub fn random_pairs(seed: u64, count: usize, span: f64) -> Vec<(f64, f64)> {
    let mut r = rng(seed);
    let mut draw = || loop {
        let x: f64 = r.gen_range(-span..span);
        if x.abs() > 1e-3 {
            return x;
        }
    };
    (0..count).map(|_| (draw(), draw())).collect()
}

pub fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}
