//! First-order shift of hydrogen `ns` levels under the deformed algebra.
//!
//! In Coulomb units the perturbation reads
//!
//! ```text
//! V = (β̃′/2) p⁴ + (α̃/4) [(1/r)p² + p²(1/r)] − [1/√(r² + b̃²) − 1/r],
//! α̃ = 2β̃ − β̃′,  b̃ = √α̃
//! ```
//!
//! so the whole problem is three expectation values. The kinetic pieces are
//! closed forms from [`crate::hydrogen`]. The soft-core piece is exact as a
//! double sum over Laguerre coefficients of `ζ^k d^k[H₀ − Y₀]/dζ^k` with
//! `ζ = 2b̃/n` and `k = 2n − i − j` ([`softcore_closed_full`]). Expanding `Y₀`
//! for small `ζ` and dropping `H₀` gives the linear-order form
//! ([`softcore_expansion`]):
//!
//! ```text
//! ⟨1/√(r² + b̃²)⟩ ≈ 1/n² + (α̃/n³)(ln(α̃/n²) + 2γ + 1) + c_n α̃
//! ```
//!
//! The `(i, j) = (n−1, n−1)` term of the double sum is the only one with a
//! logarithm. Every other term has `k >= 3` and contributes
//! `(−1)^k [(k−1)! − (k−3)! ζ²/2]` ([`BracketReading::SeriesDerived`]). The
//! alternative bracket `(−1)^k [(k−1)! + (k−2)! + k(k−3)! ζ²/4]`
//! ([`BracketReading::Alternative`]) does not vanish at zero deformation for
//! `n >= 2`. It also misses the quadrature oracle at `n = 3, 4`.
//!
//! The `H₀` terms start at `ζ³`. The linear-order result therefore differs
//! from the exact matrix element by `O(α̃^{3/2})`, not `O(α̃² ln α̃)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hydrogen::{
    expectation_closed, expectation_quadrature, softcore_shift_quadrature, Observable, SLevel,
};
use crate::numdiff::richardson_derivative;
pub use crate::specfun::EULER_GAMMA;
use crate::specfun::{bessel_y0_derivative, binomial, factorial, struve_h0_series};

/// Above this `ζ = 2b̃/n` the linear-order expansion is no longer trusted.
pub const LINEAR_REGIME_ZETA: f64 = 1e-2;

/// Largest `n` accepted by [`softcore_closed_full`].
pub const CLOSED_FULL_MAX_N: u32 = 8;
pub const CLOSED_FULL_ZETA_RANGE: (f64, f64) = (1e-6, 0.5);

/// Dimensionless deformation parameters `β̃ = ħ²β/a²`, `β̃′ = ħ²β′/a²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeformationParams {
    beta_t: f64,
    beta_prime_t: f64,
    alpha_t: f64,
}

impl DeformationParams {
    /// Requires `β̃, β̃′ >= 0` and `2β̃ − β̃′ >= 0`. A negative `α̃` within a few
    /// ulps of zero (e.g. from `η = 1/3` in floating point) is snapped to 0.
    pub fn new(beta_t: f64, beta_prime_t: f64) -> Result<Self> {
        if !(beta_t >= 0.0 && beta_t.is_finite())
            || !(beta_prime_t >= 0.0 && beta_prime_t.is_finite())
        {
            return Err(Error::domain(format!(
                "deformation parameters must be finite and non-negative, got ({beta_t}, {beta_prime_t})"
            )));
        }
        let mut alpha_t = 2.0 * beta_t - beta_prime_t;
        if alpha_t < 0.0 {
            if -alpha_t <= 8.0 * f64::EPSILON * (2.0 * beta_t + beta_prime_t) {
                alpha_t = 0.0;
            } else {
                return Err(Error::domain(format!(
                    "2β̃ − β̃′ must be non-negative, got {alpha_t:e}"
                )));
            }
        }
        Ok(Self {
            beta_t,
            beta_prime_t,
            alpha_t,
        })
    }

    pub fn zero() -> Self {
        Self {
            beta_t: 0.0,
            beta_prime_t: 0.0,
            alpha_t: 0.0,
        }
    }

    /// Parameters with `β̃′ = 0` whose soft-core length gives `ζ` at `level`.
    pub fn from_zeta(level: SLevel, zeta: f64) -> Result<Self> {
        let b = 0.5 * zeta * level.nf();
        Self::new(0.5 * b * b, 0.0)
    }

    pub fn beta_t(&self) -> f64 {
        self.beta_t
    }

    pub fn beta_prime_t(&self) -> f64 {
        self.beta_prime_t
    }

    /// `α̃ = 2β̃ − β̃′`.
    pub fn alpha_t(&self) -> f64 {
        self.alpha_t
    }

    /// Soft-core length `b̃ = √α̃` in Bohr radii.
    pub fn b_t(&self) -> f64 {
        self.alpha_t.sqrt()
    }

    pub fn zeta(&self, level: SLevel) -> f64 {
        2.0 * self.b_t() / level.nf()
    }

    pub fn scaled(&self, s: f64) -> Result<Self> {
        Self::new(s * self.beta_t, s * self.beta_prime_t)
    }
}

/// First-order shift of an `ns` level in `e²/a`.
///
/// `p4_term + anticommutator_term` is the closed-form group
/// `(1/n³)[(2β̃+β̃′)/(l+½) − (β̃+β̃′)/n]` with `l = 0`. `softcore_term` is
/// `−(⟨1/√(r²+b̃²)⟩ − ⟨1/r⟩)` minus its logarithmic part. That logarithmic
/// part, `−(α̃/n³)(ln(α̃/n²) + 2γ + 1)`, is reported as `log_term`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrectionBreakdown {
    pub p4_term: f64,
    pub anticommutator_term: f64,
    pub softcore_term: f64,
    pub log_term: f64,
    pub total: f64,
}

/// How each non-leading term of the truncated soft-core double sum is
/// expanded to first order in `ζ²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketReading {
    /// `(k−1)! − (k−3)! ζ²/2`, from the small-argument series of `Y₀`.
    SeriesDerived,
    /// `(k−1)! + (k−2)! + k(k−3)! ζ²/4`.
    Alternative,
}

/// Exact coefficients of the truncated double sum
/// `n!⁻³ (n−1)! Σ′ w_i w_j (−1)^k [bracket]`, split as
/// `constant + alpha_coefficient · α̃`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSum {
    pub constant: BigRational,
    pub alpha_coefficient: BigRational,
}

fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

fn fact(n: i64) -> BigInt {
    factorial(n).expect("factorial argument within exact range")
}

/// `(n−1)! / (n!)³`
fn prefactor(n: i64) -> BigRational {
    let nf = fact(n);
    ratio(fact(n - 1), &nf * &nf * &nf)
}

/// `w_i = C(n−1, i) C(n, i) i!`
fn laguerre_weights(n: i64) -> Vec<BigInt> {
    (0..n)
        .map(|i| binomial(n - 1, i).expect("i <= n-1") * binomial(n, i).expect("i <= n") * fact(i))
        .collect()
}

pub fn truncated_sum(level: SLevel, reading: BracketReading) -> TruncatedSum {
    let n = level.n() as i64;
    let w = laguerre_weights(n);
    let pref = prefactor(n);
    let n2 = int(n * n);
    let mut constant = BigRational::zero();
    let mut alpha = BigRational::zero();
    for i in 0..n {
        for j in 0..n {
            if i == n - 1 && j == n - 1 {
                continue;
            }
            let k = 2 * n - i - j;
            let weight = &w[i as usize] * &w[j as usize];
            let weight = if k % 2 == 0 { weight } else { -weight };
            let (c0, ca) = match reading {
                BracketReading::SeriesDerived => (
                    BigRational::from_integer(fact(k - 1)),
                    ratio(-int(2) * fact(k - 3), n2.clone()),
                ),
                BracketReading::Alternative => (
                    BigRational::from_integer(fact(k - 1) + fact(k - 2)),
                    ratio(int(k) * fact(k - 3), n2.clone()),
                ),
            };
            let weight = BigRational::from_integer(weight);
            constant += &weight * c0;
            alpha += &weight * ca;
        }
    }
    TruncatedSum {
        constant: &pref * constant,
        alpha_coefficient: &pref * alpha,
    }
}

/// `(n−1)!/(n!)³ · n²[(n−1)!]² = 1/n`, the constant of the pulled-out term.
fn leading_constant(level: SLevel) -> BigRational {
    let n = level.n() as i64;
    let f = fact(n - 1);
    prefactor(n) * BigRational::from_integer(int(n * n) * &f * &f)
}

fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().expect("rational converts to f64")
}

/// `(α̃/n³)(ln(α̃/n²) + 2γ + 1)`, with the `α̃ → 0` limit taken as 0.
fn log_piece(level: SLevel, alpha: f64) -> f64 {
    if alpha == 0.0 {
        return 0.0;
    }
    let n = level.nf();
    alpha / (n * n * n) * ((alpha / (n * n)).ln() + 2.0 * EULER_GAMMA + 1.0)
}

/// Linear-order (`b̃²`, `b̃² ln b̃`) approximation of `⟨1/√(r² + b̃²)⟩`.
/// Returns exactly `1/n²` at `α̃ = 0`.
pub fn softcore_expansion(level: SLevel, params: &DeformationParams) -> f64 {
    let sum = truncated_sum(level, BracketReading::SeriesDerived);
    let constant = leading_constant(level) + &sum.constant;
    let alpha = params.alpha_t();
    to_f64(&constant) + log_piece(level, alpha) + to_f64(&sum.alpha_coefficient) * alpha
}

/// Exact `⟨1/√(r² + b̃²)⟩` from the double sum over
/// `ζ^k d^k[H₀(ζ) − Y₀(ζ)]/dζ^k`. The `Y₀` derivatives use the finite Bessel
/// combination and the `H₀` derivatives use Richardson-extrapolated central
/// differences. Only meant for validation, on `1e−6 <= ζ <= 0.5`, `n <= 8`.
pub fn softcore_closed_full(level: SLevel, params: &DeformationParams) -> Result<f64> {
    let n = level.n() as i64;
    if level.n() > CLOSED_FULL_MAX_N {
        return Err(Error::domain(format!(
            "full soft-core closed form supports n <= {CLOSED_FULL_MAX_N}, got {n}"
        )));
    }
    let zeta = params.zeta(level);
    let (lo, hi) = CLOSED_FULL_ZETA_RANGE;
    if !(zeta >= lo && zeta <= hi) {
        return Err(Error::domain(format!(
            "ζ = {zeta:e} outside [{lo:e}, {hi}]"
        )));
    }

    let kmax = 2 * n as u32;
    let mut derivative = vec![0.0; kmax as usize + 1];
    for k in 2..=kmax {
        let h0 = richardson_derivative(struve_h0_series, zeta, k, 1.0);
        if !(h0.error * zeta.powi(k as i32) <= 1e-13) {
            return Err(Error::Precision(format!(
                "order-{k} derivative of H₀ at ζ = {zeta} did not converge (error {:e})",
                h0.error
            )));
        }
        derivative[k as usize] = h0.value - bessel_y0_derivative(k, zeta)?;
    }

    let w: Vec<f64> = laguerre_weights(n)
        .iter()
        .map(|c| c.to_f64().unwrap())
        .collect();
    let mut sum = 0.0;
    for i in 0..n as usize {
        for j in 0..n as usize {
            let k = 2 * n as usize - i - j;
            sum += w[i] * w[j] * zeta.powi(k as i32) * derivative[k];
        }
    }
    Ok(std::f64::consts::FRAC_PI_2 * to_f64(&prefactor(n)) * sum)
}

/// Termwise first-order correction `⟨ns|V|ns⟩` in `e²/a`.
pub fn correction_ns(level: SLevel, params: &DeformationParams) -> CorrectionBreakdown {
    let zeta = params.zeta(level);
    if zeta >= LINEAR_REGIME_ZETA {
        log::warn!(
            "ζ = {zeta:e} for {level} is outside the linear regime (ζ < {LINEAR_REGIME_ZETA:e})"
        );
    }
    let alpha = params.alpha_t();
    let p4_term = 0.5 * params.beta_prime_t() * expectation_closed(level, Observable::P4);
    let anticommutator_term = 0.25 * alpha * expectation_closed(level, Observable::AnticommInvRP2);

    let sum = truncated_sum(level, BracketReading::SeriesDerived);
    let inv_r = BigRational::new(int(1), int((level.n() * level.n()) as i64));
    // constant part of ⟨1/r⟩ − ⟨soft-core⟩; zero identically
    let restored = inv_r - leading_constant(level) - &sum.constant;
    let softcore_term = to_f64(&restored) - to_f64(&sum.alpha_coefficient) * alpha;
    let log_term = -log_piece(level, alpha);

    CorrectionBreakdown {
        p4_term,
        anticommutator_term,
        softcore_term,
        log_term,
        total: p4_term + anticommutator_term + softcore_term + log_term,
    }
}

/// Closed-form shift written out term by term, including the constant pair
/// `1/n² − 1/n` and the truncated double sum under the chosen bracket. The
/// constants are combined exactly before conversion.
pub fn correction_closed_form(
    level: SLevel,
    params: &DeformationParams,
    reading: BracketReading,
) -> f64 {
    let n = level.nf();
    let nn = level.n() as i64;
    let l_half = 0.5;
    let kinetic = ((2.0 * params.beta_t() + params.beta_prime_t()) / l_half
        - (params.beta_t() + params.beta_prime_t()) / n)
        / (n * n * n);
    let sum = truncated_sum(level, reading);
    let pair = BigRational::new(int(1), int(nn * nn)) - BigRational::new(int(1), int(nn));
    let constant = pair - &sum.constant;
    let alpha = params.alpha_t();
    kinetic + to_f64(&constant) - log_piece(level, alpha) - to_f64(&sum.alpha_coefficient) * alpha
}

/// The closed form exactly as it is usually quoted, with the
/// [`BracketReading::Alternative`] bracket. Diagnostic only: it carries a
/// deformation-independent remainder for `n >= 2`.
pub fn correction_literal(level: SLevel, params: &DeformationParams) -> f64 {
    correction_closed_form(level, params, BracketReading::Alternative)
}

/// `Δ₂^ml = 8ΔE_2s − ΔE_1s = (β̃+β̃′)/2 − (2β̃−β̃′)(3/2 − ln 4)` in `e²/a`.
pub fn delta2_ml(params: &DeformationParams) -> f64 {
    0.5 * (params.beta_t() + params.beta_prime_t()) - params.alpha_t() * (1.5 - 4f64.ln())
}

/// `⟨ns|V|ns⟩` assembled from quadratures only: `⟨p⁴⟩` and the
/// anticommutator through `p²ψ = 2(E + 1/r)ψ`, the soft-core shift through
/// its exact kernel. Nothing from the closed forms above is used.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureCorrection {
    pub p4_term: f64,
    pub anticommutator_term: f64,
    pub softcore_term: f64,
    pub total: f64,
}

pub fn correction_quadrature(
    level: SLevel,
    params: &DeformationParams,
) -> Result<QuadratureCorrection> {
    let p4_term = if params.beta_prime_t() == 0.0 {
        0.0
    } else {
        0.5 * params.beta_prime_t() * expectation_quadrature(level, Observable::P4)?
    };
    let alpha = params.alpha_t();
    let (anticommutator_term, softcore_term) = if alpha == 0.0 {
        (0.0, 0.0)
    } else {
        (
            0.25 * alpha * expectation_quadrature(level, Observable::AnticommInvRP2)?,
            -softcore_shift_quadrature(level, params.b_t())?,
        )
    };
    Ok(QuadratureCorrection {
        p4_term,
        anticommutator_term,
        softcore_term,
        total: p4_term + anticommutator_term + softcore_term,
    })
}
