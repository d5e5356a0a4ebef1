//! Neumann-type expansions in `J_m` for the upper part of the argument range,
//! where the ascending series cancel past double-double precision.
//!
//! ```text
//! (π/2) Y₀ = (ln(x/2) + γ) J₀ − 2 Σ_{k≥1} (−1)^k J_{2k} / k
//! (π/2) Y₁ = (ln(x/2) + γ) J₁ − J₀/x + Σ_{k≥1} (−1)^k (J_{2k−1} − J_{2k+1}) / k
//!       H₀ = (4/π) Σ_{k≥0} J_{2k+1} / (2k+1)
//!       H₁ = (2/π)(1 − J₀) + (4/π) Σ_{k≥1} J_{2k} / (4k² − 1)
//! ```

use std::f64::consts::{FRAC_2_PI, FRAC_PI_2, PI};

use super::EULER_GAMMA;

/// `J₀(x), …, J_M(x)` by Miller's backward recurrence normalised with
/// `J₀ + 2 Σ J_{2k} = 1`. `M` is chosen well past the turning point.
pub(crate) fn bessel_j_sequence(x: f64) -> Vec<f64> {
    let top = 2 * ((x.abs() as usize + 80) / 2);
    let mut j = vec![0.0; top + 2];
    j[top] = 1e-300;
    for m in (1..=top).rev() {
        j[m - 1] = (2.0 * m as f64 / x) * j[m] - j[m + 1];
        if j[m - 1].abs() > 1e250 {
            for v in j.iter_mut().skip(m - 1) {
                *v *= 1e-250;
            }
        }
    }
    let norm: f64 = j[0] + 2.0 * j.iter().skip(2).step_by(2).sum::<f64>();
    j.truncate(top);
    for v in &mut j {
        *v /= norm;
    }
    j
}

pub(crate) fn y0_y1(x: f64) -> (f64, f64) {
    let j = bessel_j_sequence(x);
    let log_term = (0.5 * x).ln() + EULER_GAMMA;
    let mut s0 = 0.0;
    let mut s1 = 0.0;
    for k in 1..(j.len() - 1) / 2 {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let kf = k as f64;
        s0 += sign * j[2 * k] / kf;
        s1 += sign * (j[2 * k - 1] - j[2 * k + 1]) / kf;
    }
    let y0 = FRAC_2_PI * (log_term * j[0] - 2.0 * s0);
    let y1 = FRAC_2_PI * (log_term * j[1] - j[0] / x + s1);
    (y0, y1)
}

pub(crate) fn struve_h0(x: f64) -> f64 {
    let j = bessel_j_sequence(x);
    let s: f64 = (0..(j.len() - 1) / 2)
        .map(|k| j[2 * k + 1] / (2 * k + 1) as f64)
        .sum();
    4.0 / PI * s
}

pub(crate) fn struve_h1(x: f64) -> f64 {
    let j = bessel_j_sequence(x);
    let s: f64 = (1..j.len() / 2)
        .map(|k| {
            let kf = k as f64;
            j[2 * k] / (4.0 * kf * kf - 1.0)
        })
        .sum();
    (1.0 - j[0] + 2.0 * s) / FRAC_PI_2
}
