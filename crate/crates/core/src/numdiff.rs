//! Higher-order derivatives by Richardson-extrapolated central differences.

/// A numerical estimate with its estimated absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

const MAX_LEVELS: usize = 16;
const STEP_RATIO: f64 = 1.4;

/// Central difference of order `k` with step `h`:
/// `h^{−k} Σ_j (−1)^j C(k, j) f(x + (k/2 − j) h)`, accurate to `O(h²)`.
pub fn central_difference<F: Fn(f64) -> f64>(f: &F, x: f64, k: u32, h: f64) -> f64 {
    let mut sum = 0.0;
    let mut c = 1.0;
    for j in 0..=k {
        let offset = (0.5 * k as f64 - j as f64) * h;
        let term = c * f(x + offset);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        c = c * (k - j) as f64 / (j + 1) as f64;
    }
    sum / h.powi(k as i32)
}

/// `d^k f / dx^k` at `x`, starting from step `h0` and shrinking it by 1.4 per level. The stencil
/// spans `x ± k·h0/2`, so `f` must be smooth there.
///
/// Each tableau column removes one more even power of `h`; the estimate with
/// the smallest error bound wins, and the sweep stops once round-off makes
/// the diagonal diverge.
pub fn richardson_derivative<F: Fn(f64) -> f64>(f: F, x: f64, k: u32, h0: f64) -> Estimate {
    if k == 0 {
        return Estimate {
            value: f(x),
            error: 0.0,
        };
    }
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(MAX_LEVELS);
    let mut best = Estimate {
        value: f64::NAN,
        error: f64::INFINITY,
    };
    let mut h = h0;
    for i in 0..MAX_LEVELS {
        let mut row = Vec::with_capacity(i + 1);
        row.push(central_difference(&f, x, k, h));
        let mut factor = 1.0;
        for m in 1..=i {
            factor *= STEP_RATIO * STEP_RATIO;
            let prev = &table[i - 1];
            let value = row[m - 1] + (row[m - 1] - prev[m - 1]) / (factor - 1.0);
            let err = (value - row[m - 1]).abs().max((value - prev[m - 1]).abs());
            if err <= best.error {
                best = Estimate { value, error: err };
            }
            row.push(value);
        }
        if i >= 2 {
            let diverging = (row[i] - table[i - 1][i - 1]).abs() >= 2.0 * best.error;
            if diverging {
                break;
            }
        }
        table.push(row);
        h /= STEP_RATIO;
    }
    best
}
