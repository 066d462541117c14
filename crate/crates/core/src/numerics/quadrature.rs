use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerances and limits for adaptive quadrature.
///
/// `window` bounds infinite-support integrands to [−W, W] (measured from the
/// kernel's own breakpoints); when absent, callers pick W from the decay of
/// the integrand or refuse.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    pub window: Option<f64>,
}

impl QuadratureConfig {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize) -> Result<Self> {
        let cfg = QuadratureConfig {
            abs_tol,
            rel_tol,
            max_subdivisions,
            window: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_window(mut self, window: f64) -> Result<Self> {
        if !(window.is_finite() && window > 0.0) {
            return Err(Error::invalid(format!("window must be positive, got {window}")));
        }
        self.window = Some(window);
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::invalid("quadrature tolerances must be positive"));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::invalid("max_subdivisions must be at least 1"));
        }
        Ok(())
    }

    /// Same limits with the absolute tolerance rescaled, for integrands whose
    /// natural size is known in advance.
    pub fn scaled(&self, scale: f64) -> Self {
        let mut out = *self;
        if scale.is_finite() && scale > 0.0 {
            out.abs_tol *= scale;
        }
        out
    }
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-13,
            rel_tol: 1e-12,
            max_subdivisions: 4000,
            window: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadEstimate {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
}

impl QuadEstimate {
    pub fn zero() -> Self {
        QuadEstimate {
            value: Complex64::new(0.0, 0.0),
            error: 0.0,
            evaluations: 0,
        }
    }

    pub fn scale(self, k: f64) -> Self {
        QuadEstimate {
            value: self.value * k,
            error: self.error * k.abs(),
            evaluations: self.evaluations,
        }
    }
}

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689,
    0.973_906_528_517_171_720_077_964_012_084,
    0.930_157_491_355_708_226_001_207_180_060,
    0.865_063_366_688_984_510_732_096_688_423,
    0.780_817_726_586_416_897_063_717_578_345,
    0.679_409_568_299_024_406_234_327_365_115,
    0.562_757_134_668_604_683_339_000_099_273,
    0.433_395_394_129_247_190_799_265_943_166,
    0.294_392_862_701_460_198_131_126_603_104,
    0.148_874_338_981_631_210_884_826_001_130,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062,
    0.032_558_162_307_964_727_478_818_972_459,
    0.054_755_896_574_351_996_031_381_300_245,
    0.075_039_674_810_919_952_767_043_140_916,
    0.093_125_454_583_697_605_535_065_465_083,
    0.109_387_158_802_297_641_899_210_590_326,
    0.123_491_976_262_065_851_077_208_218_024,
    0.134_709_217_311_473_325_928_054_001_772,
    0.142_775_938_577_060_080_797_094_273_139,
    0.147_739_104_901_338_491_374_841_515_972,
    0.149_445_554_002_916_905_664_936_468_390,
];
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7, 9.
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893,
    0.149_451_349_150_580_593_145_776_339_658,
    0.219_086_362_515_982_043_995_534_934_228,
    0.269_266_719_309_996_355_091_226_921_569,
    0.295_524_224_714_752_870_173_892_994_651,
];

struct Segment {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn kronrod21<F>(f: &F, a: f64, b: f64) -> Result<Segment>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut kronrod = fc * WGK[10];
    let mut gauss = Complex64::new(0.0, 0.0);
    for j in 0..10 {
        let dx = half * XGK[j];
        let pair = f(center - dx)? + f(center + dx)?;
        kronrod += pair * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).norm();
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::invalid(format!("integrand is not finite on [{a}, {b}]")));
    }
    Ok(Segment { a, b, value, error })
}

/// Adaptive Gauss–Kronrod integral of a complex integrand over [a, b].
pub fn integrate<F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<QuadEstimate>
where
    F: Fn(f64) -> Result<Complex64>,
{
    integrate_segments(f, &[a, b], cfg)
}

/// As [`integrate`], with the range pre-split at the given increasing
/// breakpoints (first and last entries are the limits). Kinks of the
/// integrand belong in the breakpoint list.
pub fn integrate_segments<F>(f: F, breakpoints: &[f64], cfg: &QuadratureConfig) -> Result<QuadEstimate>
where
    F: Fn(f64) -> Result<Complex64>,
{
    cfg.validate()?;
    if breakpoints.len() < 2 {
        return Err(Error::invalid("integration needs at least two limits"));
    }
    if breakpoints.iter().any(|x| !x.is_finite()) {
        return Err(Error::invalid("integration limits must be finite"));
    }
    if breakpoints.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::invalid("integration limits must be increasing"));
    }

    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    for w in breakpoints.windows(2) {
        if w[1] > w[0] {
            heap.push(kronrod21(&f, w[0], w[1])?);
            evaluations += 21;
        }
    }
    if heap.is_empty() {
        return Ok(QuadEstimate {
            value: Complex64::new(0.0, 0.0),
            error: 0.0,
            evaluations: 0,
        });
    }

    let mut subdivisions = heap.len();
    loop {
        let total: Complex64 = heap.iter().map(|s| s.value).sum();
        let error: f64 = heap.iter().map(|s| s.error).sum();
        let target = cfg.abs_tol.max(cfg.rel_tol * total.norm());
        if error <= target {
            break;
        }
        let worst = heap.pop().expect("heap is non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        let unsplittable = !(mid > worst.a && mid < worst.b);
        if subdivisions >= cfg.max_subdivisions || unsplittable {
            heap.push(worst);
            let mut segs = heap.into_vec();
            segs.sort_by(|x, y| x.a.total_cmp(&y.a));
            let estimate = pairwise_sum(&segs.iter().map(|s| s.value).collect::<Vec<_>>());
            return Err(Error::NonConvergence {
                a: breakpoints[0],
                b: *breakpoints.last().unwrap(),
                estimate,
                error,
                subdivisions,
            });
        }
        heap.push(kronrod21(&f, worst.a, mid)?);
        heap.push(kronrod21(&f, mid, worst.b)?);
        evaluations += 42;
        subdivisions += 1;
    }

    let mut segs = heap.into_vec();
    segs.sort_by(|x, y| x.a.total_cmp(&y.a));
    let values: Vec<Complex64> = segs.iter().map(|s| s.value).collect();
    Ok(QuadEstimate {
        value: pairwise_sum(&values),
        error: segs.iter().map(|s| s.error).sum(),
        evaluations,
    })
}

/// Pairwise (cascade) summation in index order.
pub fn pairwise_sum(values: &[Complex64]) -> Complex64 {
    match values.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => values[0],
        n if n <= 8 => values.iter().sum(),
        n => {
            let (lo, hi) = values.split_at(n / 2);
            pairwise_sum(lo) + pairwise_sum(hi)
        }
    }
}
