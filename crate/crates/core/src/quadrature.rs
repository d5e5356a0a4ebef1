//! Globally adaptive Gauss–Kronrod (10/21-point) quadrature on finite
//! intervals, and a semi-infinite variant built on the compactifying map
//! `r = s·t/(1−t)`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_evals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-14,
            rel_tol: 0.0,
            max_evals: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    /// Sum of the per-interval Kronrod error estimates.
    pub error: f64,
    pub evaluations: usize,
}

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_969_806_366,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for the odd-indexed Kronrod nodes
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

const EVALS_PER_RULE: usize = 21;

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
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
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = 0.0;
    let mut fv = [0.0; 20];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv[2 * j] = f1;
        fv[2 * j + 1] = f2;
        kronrod += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        asc += WGK[j] * ((fv[2 * j] - mean).abs() + (fv[2 * j + 1] - mean).abs());
    }
    let value = kronrod * half;
    let res_asc = asc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if !value.is_finite() {
        error = f64::INFINITY;
    }
    Segment { a, b, value, error }
}

/// Integrate `f` over `[a, b]`, with optional interior breakpoints that seed
/// the initial partition.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    opts: &QuadOptions,
) -> Result<QuadResult> {
    if !(a < b) {
        return Err(Error::domain(format!(
            "empty integration interval [{a}, {b}]"
        )));
    }
    let mut points: Vec<f64> = std::iter::once(a)
        .chain(breakpoints.iter().copied().filter(|&p| p > a && p < b))
        .chain(std::iter::once(b))
        .collect();
    points.sort_by(f64::total_cmp);
    points.dedup();

    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    let mut value = 0.0;
    let mut error = 0.0;
    for w in points.windows(2) {
        let seg = gauss_kronrod(&f, w[0], w[1]);
        evaluations += EVALS_PER_RULE;
        value += seg.value;
        error += seg.error;
        heap.push(seg);
    }

    loop {
        let target = opts.abs_tol.max(opts.rel_tol * value.abs());
        if error <= target {
            break;
        }
        if !error.is_finite() {
            return Err(Error::Convergence {
                achieved_error: error,
                target,
                evaluations,
            });
        }
        if evaluations + 2 * EVALS_PER_RULE > opts.max_evals {
            return Err(Error::Convergence {
                achieved_error: error,
                target,
                evaluations,
            });
        }
        let worst = heap.pop().expect("partition is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // interval exhausted at machine resolution
            return Err(Error::Convergence {
                achieved_error: error,
                target,
                evaluations,
            });
        }
        let left = gauss_kronrod(&f, worst.a, mid);
        let right = gauss_kronrod(&f, mid, worst.b);
        evaluations += 2 * EVALS_PER_RULE;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        if heap.len() % 64 == 0 {
            // refresh the running sums so cancellation does not accumulate
            value = heap.iter().map(|s| s.value).sum();
            error = heap.iter().map(|s| s.error).sum();
        }
    }

    let value = heap.iter().map(|s| s.value).sum();
    let error = heap.iter().map(|s| s.error).sum();
    Ok(QuadResult {
        value,
        error,
        evaluations,
    })
}

/// Integrate `f` over `[0, ∞)` through `r = scale·t/(1−t)`. Breakpoints are
/// given in `r`.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(
    f: F,
    scale: f64,
    breakpoints: &[f64],
    opts: &QuadOptions,
) -> Result<QuadResult> {
    let mapped = |t: f64| {
        let s = 1.0 - t;
        let r = scale * t / s;
        let v = f(r);
        if v == 0.0 {
            0.0
        } else {
            v * scale / (s * s)
        }
    };
    let tb: Vec<f64> = breakpoints.iter().map(|&r| r / (r + scale)).collect();
    integrate(mapped, 0.0, 1.0, &tb, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_and_trig() {
        let opts = QuadOptions::default();
        let r = integrate(|x| x * x, 0.0, 3.0, &[], &opts).unwrap();
        assert!((r.value - 9.0).abs() < 1e-13);
        let r = integrate(f64::sin, 0.0, std::f64::consts::PI, &[], &opts).unwrap();
        assert!((r.value - 2.0).abs() < 1e-14);
    }

    #[test]
    fn integrable_endpoint_singularity() {
        let opts = QuadOptions {
            abs_tol: 1e-12,
            ..Default::default()
        };
        let r = integrate(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, &[], &opts).unwrap();
        assert!((r.value - 2.0).abs() < 1e-11, "{r:?}");
    }

    #[test]
    fn semi_infinite_gamma_integrals() {
        let opts = QuadOptions::default();
        let r = integrate_semi_infinite(|x: f64| (-x).exp(), 1.0, &[], &opts).unwrap();
        assert!((r.value - 1.0).abs() < 1e-14);
        let r = integrate_semi_infinite(|x: f64| x.powi(4) * (-x).exp(), 2.0, &[], &opts).unwrap();
        assert!((r.value - 24.0).abs() < 1e-12);
    }

    #[test]
    fn sharp_feature_resolved_with_breakpoint() {
        // ∫₀^∞ b/(x² + b²) dx = π/2
        let b = 1e-4;
        let opts = QuadOptions {
            abs_tol: 1e-12,
            ..Default::default()
        };
        let r = integrate_semi_infinite(|x: f64| b / (x * x + b * b), 1.0, &[b], &opts).unwrap();
        assert!(
            (r.value - std::f64::consts::FRAC_PI_2).abs() < 1e-10,
            "{r:?}"
        );
    }

    #[test]
    fn budget_exhaustion_reports_diagnostic() {
        let opts = QuadOptions {
            abs_tol: 1e-300,
            rel_tol: 0.0,
            max_evals: 500,
        };
        let err = integrate(|x: f64| (50.0 * x).sin(), 0.0, 10.0, &[], &opts).unwrap_err();
        match err {
            Error::Convergence {
                evaluations,
                achieved_error,
                ..
            } => {
                assert!(evaluations <= 500);
                assert!(achieved_error > 0.0);
            }
            other => panic!("unexpected {other}"),
        }
    }
}
