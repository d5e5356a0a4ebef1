//! Bessel functions of the second kind for integer order.
//!
//! `Y₀` and `Y₁` come from their ascending series with the logarithmic term,
//! summed in double-double so the alternating terms stay below the result's
//! precision for moderate x.
//! cancel without eating the result. Beyond x = 20 the Neumann expansions
//! in `J_m` take over. Higher orders use the forward
//! recurrence `Y_{k+1} = (2k/x) Y_k − Y_{k−1}`, which is stable for `Y`.

use std::f64::consts::{FRAC_2_PI, PI};

use super::combinatorics::binomial;
use super::dd::DoubleDouble;
use super::{neumann, EULER_GAMMA, NEUMANN_THRESHOLD};
use crate::error::{Error, Result};

/// Upper end of the argument range covered by the series evaluation.
pub const MAX_SERIES_ARG: f64 = 50.0;

pub const MAX_ORDER: u32 = 64;

pub const MAX_DERIVATIVE_ORDER: u32 = 32;

const MAX_TERMS: usize = 400;

fn check_arg(x: f64) -> Result<()> {
    if !(x > 0.0) {
        return Err(Error::domain(format!(
            "Bessel argument must be positive, got {x}"
        )));
    }
    if x > MAX_SERIES_ARG {
        return Err(Error::Precision(format!(
            "series evaluation of Y is limited to x <= {MAX_SERIES_ARG}, got {x}"
        )));
    }
    Ok(())
}

/// `(Y₀(x), Y₁(x))` for `0 < x <= 50`, no argument checks.
fn y0_y1(x: f64) -> (f64, f64) {
    if x > NEUMANN_THRESHOLD {
        neumann::y0_y1(x)
    } else {
        y0_y1_series(x)
    }
}

pub(crate) fn y0_y1_series(x: f64) -> (f64, f64) {
    let q = DoubleDouble::product(x, x).scale(0.25);

    // a_k = q^k / (k!)²  and  c_k = (x/2)^{2k+1} / (k! (k+1)!)
    let mut a = DoubleDouble::from_f64(1.0);
    let mut c = DoubleDouble::from_f64(0.5 * x);
    let mut j0 = a;
    let mut j1 = c;
    let mut s0 = DoubleDouble::ZERO;
    // T = Σ (−1)^k (H_k + H_{k+1}) c_k
    let mut t1 = c;
    let mut harmonic = DoubleDouble::ZERO;

    for k in 1..MAX_TERMS {
        let kf = k as f64;
        a = (a * q).div_f64(kf * kf);
        c = (c * q).div_f64(kf * (kf + 1.0));
        harmonic = harmonic + DoubleDouble::recip(kf);
        let next_harmonic = harmonic + DoubleDouble::recip(kf + 1.0);
        let h_sum_c = (harmonic + next_harmonic) * c;
        if k % 2 == 1 {
            j0 = j0 - a;
            j1 = j1 - c;
            s0 = s0 + harmonic * a;
            t1 = t1 - h_sum_c;
        } else {
            j0 = j0 + a;
            j1 = j1 + c;
            s0 = s0 - harmonic * a;
            t1 = t1 + h_sum_c;
        }
        if kf * kf > q.hi && a.abs_hi() < 1e-34 && h_sum_c.abs_hi() < 1e-34 {
            break;
        }
    }

    let log_term = DoubleDouble::from_f64((0.5 * x).ln() + EULER_GAMMA);
    let y0 = (log_term * j0 + s0).scale(FRAC_2_PI).to_f64();
    let y1 = (log_term * j1).scale(FRAC_2_PI) - t1.scale(1.0 / PI);
    let y1 = y1.to_f64() - FRAC_2_PI / x;
    (y0, y1)
}

/// `Y₀(x), …, Y_kmax(x)`.
pub fn bessel_y_sequence(kmax: u32, x: f64) -> Result<Vec<f64>> {
    if kmax > MAX_ORDER {
        return Err(Error::domain(format!("order {kmax} exceeds {MAX_ORDER}")));
    }
    check_arg(x)?;
    let (y0, y1) = y0_y1(x);
    let mut seq = Vec::with_capacity(kmax as usize + 1);
    seq.push(y0);
    if kmax >= 1 {
        seq.push(y1);
    }
    for k in 1..kmax as usize {
        let next = (2.0 * k as f64 / x) * seq[k] - seq[k - 1];
        if !next.is_finite() {
            return Err(Error::Precision(format!(
                "recurrence for Y_{} overflowed at x = {x} (|Y_{k}| = {:e})",
                k + 1,
                seq[k].abs()
            )));
        }
        seq.push(next);
    }
    Ok(seq)
}

/// Bessel function of the second kind `Y_k(x)` for integer `0 <= k <= 64`, `x > 0`.
pub fn bessel_y(k: u32, x: f64) -> Result<f64> {
    Ok(bessel_y_sequence(k, x)?[k as usize])
}

/// `Y_m(x)` for any integer `m`, via `Y_{−m} = (−1)^m Y_m`.
pub fn bessel_y_signed(m: i64, x: f64) -> Result<f64> {
    let order = u32::try_from(m.unsigned_abs())
        .map_err(|_| Error::domain(format!("order {m} out of range")))?;
    let y = bessel_y(order, x)?;
    Ok(if m < 0 && order % 2 == 1 { -y } else { y })
}

/// `d^k Y₀ / dx^k`, written as the finite combination
/// `2^{−k} Σ_{l=0}^{k} (−1)^l C(k, l) Y_{2l−k}(x)`.
pub fn bessel_y0_derivative(k: u32, x: f64) -> Result<f64> {
    if k > MAX_DERIVATIVE_ORDER {
        return Err(Error::domain(format!(
            "derivative order {k} exceeds {MAX_DERIVATIVE_ORDER}"
        )));
    }
    let seq = bessel_y_sequence(k, x)?;
    let kk = k as i64;
    let mut sum = 0.0;
    for l in 0..=kk {
        let order = 2 * l - kk;
        let m = order.unsigned_abs() as usize;
        let y = if order < 0 && m % 2 == 1 {
            -seq[m]
        } else {
            seq[m]
        };
        let c = binomial(kk, l)?;
        let c: f64 = c.to_string().parse().expect("binomial fits in f64");
        if l % 2 == 0 {
            sum += c * y;
        } else {
            sum -= c * y;
        }
    }
    Ok(sum / 2f64.powi(k as i32))
}
