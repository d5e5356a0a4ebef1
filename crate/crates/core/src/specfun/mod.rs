//! Special functions on the positive real axis: integer-order `Y_k`, Struve
//! `H₀`/`H₁`, the finite-sum representation of `d^k Y₀/dx^k`, and exact
//! factorials and binomials.
//!
//! Everything here is a pure function of its arguments.

mod bessel;
mod combinatorics;
pub(crate) mod dd;
mod neumann;
mod struve;

pub use bessel::{
    bessel_y, bessel_y0_derivative, bessel_y_sequence, bessel_y_signed, MAX_DERIVATIVE_ORDER,
    MAX_ORDER, MAX_SERIES_ARG,
};
pub use combinatorics::{binomial, factorial, MAX_EXACT_ARG};
pub use struve::struve_h;
pub(crate) use struve::struve_h0_series;

/// Above this argument `Y₀`, `Y₁`, `H₀`, `H₁` switch from ascending series to
/// Neumann expansions in `J_m`.
const NEUMANN_THRESHOLD: f64 = 20.0;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_61;
