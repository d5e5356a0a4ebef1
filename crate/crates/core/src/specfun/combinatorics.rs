use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

/// Largest argument for which exact combinatorics are provided.
pub const MAX_EXACT_ARG: i64 = 64;

pub fn factorial(n: i64) -> Result<BigInt> {
    if !(0..=MAX_EXACT_ARG).contains(&n) {
        return Err(Error::domain(format!(
            "factorial argument {n} outside 0..={MAX_EXACT_ARG}"
        )));
    }
    Ok((1..=n).fold(BigInt::one(), |acc, i| acc * i))
}

/// Exact binomial coefficient `C(n, k)`.
pub fn binomial(n: i64, k: i64) -> Result<BigInt> {
    if n < 0 || k < 0 || k > n || n > MAX_EXACT_ARG {
        return Err(Error::domain(format!(
            "binomial({n}, {k}) requires 0 <= k <= n <= {MAX_EXACT_ARG}"
        )));
    }
    let k = k.min(n - k);
    // each partial product is itself a binomial coefficient, so the division is exact
    Ok((0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1)))
}
