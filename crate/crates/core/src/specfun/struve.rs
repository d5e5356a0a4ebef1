use std::f64::consts::FRAC_2_PI;

use super::dd::DoubleDouble;
use super::{neumann, NEUMANN_THRESHOLD};
use crate::error::{Error, Result};

const MAX_ARG: f64 = 50.0;
const MAX_TERMS: usize = 400;

/// `H₀` for any real `|x| <= 50` (odd in `x`).
///
/// `H₀(x) = (2/π) Σ (−1)^k x^{2k+1} / ((2k+1)!!)²`
pub(crate) fn struve_h0_series(x: f64) -> f64 {
    if x.abs() > NEUMANN_THRESHOLD {
        return x.signum() * neumann::struve_h0(x.abs());
    }
    let x2 = DoubleDouble::product(x, x);
    let mut term = DoubleDouble::from_f64(x);
    let mut sum = term;
    for k in 1..MAX_TERMS {
        let odd = (2 * k + 1) as f64;
        term = -(term * x2).div_f64(odd * odd);
        sum = sum + term;
        if (k as f64) > x.abs() && term.abs_hi() < 1e-34 {
            break;
        }
    }
    sum.scale(FRAC_2_PI).to_f64()
}

/// `H₁(x) = (2/π) Σ (−1)^k x^{2k+2} / ((2k+1)!! (2k+3)!!)`
fn struve_h1_series(x: f64) -> f64 {
    let x2 = DoubleDouble::product(x, x);
    let mut term = x2.div_f64(3.0);
    let mut sum = term;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        term = -(term * x2).div_f64((2.0 * kf + 1.0) * (2.0 * kf + 3.0));
        sum = sum + term;
        if kf > x.abs() && term.abs_hi() < 1e-34 {
            break;
        }
    }
    sum.scale(FRAC_2_PI).to_f64()
}

/// Struve function `H_ν(x)` for `ν ∈ {0, 1}` and `0 < x <= 50`.
pub fn struve_h(nu: u32, x: f64) -> Result<f64> {
    if nu > 1 {
        return Err(Error::Unsupported(format!("Struve function of order {nu}")));
    }
    if !(x > 0.0 && x <= MAX_ARG) {
        return Err(Error::domain(format!(
            "Struve argument must lie in (0, {MAX_ARG}], got {x}"
        )));
    }
    Ok(match nu {
        0 => struve_h0_series(x),
        _ if x > NEUMANN_THRESHOLD => neumann::struve_h1(x),
        _ => struve_h1_series(x),
    })
}
