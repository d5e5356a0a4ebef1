//! Undeformed hydrogen `s` states in Coulomb units (`ħ = m = e = a = 1`),
//! their closed-form expectation values, and the radial quadrature oracle
//! that every closed form in this crate is checked against.
//!
//! Momentum observables are evaluated on eigenstates through the
//! Schrödinger equation, `p²ψ = 2(E + 1/r)ψ`, so `⟨p⁴⟩ = ‖p²ψ‖²` and the
//! anticommutator `⟨(1/r)p² + p²(1/r)⟩ = 2⟨(1/r) p²ψ⟩` reduce to ordinary
//! radial integrals.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_semi_infinite, QuadOptions, QuadResult};

/// Largest principal quantum number accepted anywhere in the crate.
pub const MAX_N: u32 = 20;

/// An `ns` level, `1 <= n <= 20`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SLevel(u32);

impl SLevel {
    pub fn new(n: u32) -> Result<Self> {
        if !(1..=MAX_N).contains(&n) {
            return Err(Error::domain(format!(
                "principal quantum number {n} outside 1..={MAX_N}"
            )));
        }
        Ok(Self(n))
    }

    pub fn n(self) -> u32 {
        self.0
    }

    pub(crate) fn nf(self) -> f64 {
        self.0 as f64
    }
}

impl fmt::Display for SLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}s", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Observable {
    InvR,
    InvR2,
    P2,
    P4,
    /// `(1/r)p² + p²(1/r)`
    AnticommInvRP2,
    Energy,
}

impl Observable {
    pub const ALL: [Observable; 6] = [
        Observable::InvR,
        Observable::InvR2,
        Observable::P2,
        Observable::P4,
        Observable::AnticommInvRP2,
        Observable::Energy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Observable::InvR => "inv_r",
            Observable::InvR2 => "inv_r2",
            Observable::P2 => "p2",
            Observable::P4 => "p4",
            Observable::AnticommInvRP2 => "anticomm_invr_p2",
            Observable::Energy => "energy",
        }
    }
}

impl FromStr for Observable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Observable::ALL
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| Error::Unsupported(format!("observable `{s}`")))
    }
}

/// Bohr energy `E_n = −1/(2n²)`.
pub fn energy(level: SLevel) -> f64 {
    -0.5 / (level.nf() * level.nf())
}

/// `⟨1/r²⟩ = 1/(n³ (l + ½))`. Only `l = 0` enters the `s`-level machinery.
pub fn inv_r2_closed(n: u32, l: u32) -> f64 {
    let n = n as f64;
    1.0 / (n * n * n * (l as f64 + 0.5))
}

pub fn expectation_closed(level: SLevel, observable: Observable) -> f64 {
    let n = level.nf();
    let e = energy(level);
    let inv_r = 1.0 / (n * n);
    let inv_r2 = inv_r2_closed(level.n(), 0);
    match observable {
        Observable::InvR => inv_r,
        Observable::InvR2 => inv_r2,
        Observable::P2 => inv_r,
        Observable::P4 => 4.0 * (e * e + 2.0 * e * inv_r + inv_r2),
        Observable::AnticommInvRP2 => 4.0 * (e * inv_r + inv_r2),
        Observable::Energy => e,
    }
}

/// Associated Laguerre polynomial `L^1_m(x)` by its three-term recurrence.
fn laguerre1(m: u32, x: f64) -> f64 {
    let mut prev = 1.0;
    if m == 0 {
        return prev;
    }
    let mut cur = 2.0 - x;
    for k in 1..m {
        let k = k as f64;
        let next = ((2.0 * k + 2.0 - x) * cur - (k + 1.0) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

fn radial_unchecked(n: u32, r: f64) -> f64 {
    let nf = n as f64;
    2.0 / nf.powf(2.5) * (-r / nf).exp() * laguerre1(n - 1, 2.0 * r / nf)
}

/// `R_{n0}(r)` in units of `a^{−3/2}`, normalised so `∫ R² r² dr = 1` and
/// positive at the origin (`R_{n0}(0) = 2 n^{−3/2}`).
pub fn radial_wavefunction(level: SLevel, r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(Error::domain(format!(
            "radius must be non-negative, got {r}"
        )));
    }
    Ok(radial_unchecked(level.n(), r))
}

/// `∫₀^∞ R_{n0}(r)² kernel(r) r² dr` with explicit breakpoints (in `r`) and
/// tolerances.
pub fn quadrature_radial_with<F: Fn(f64) -> f64>(
    level: SLevel,
    kernel: F,
    breakpoints: &[f64],
    opts: &QuadOptions,
) -> Result<QuadResult> {
    let n = level.n();
    let cutoff = 400.0 * level.nf();
    let density = |r: f64| {
        if r > cutoff {
            return 0.0;
        }
        let radial = radial_unchecked(n, r);
        radial * radial * r * r * kernel(r)
    };
    integrate_semi_infinite(density, level.nf(), breakpoints, opts)
}

/// `∫₀^∞ R_{n0}(r)² kernel(r) r² dr` to an absolute tolerance of 1e−14.
pub fn quadrature_radial<F: Fn(f64) -> f64>(level: SLevel, kernel: F) -> Result<f64> {
    Ok(quadrature_radial_with(level, kernel, &[], &QuadOptions::default())?.value)
}

/// Quadrature counterpart of [`expectation_closed`].
pub fn expectation_quadrature(level: SLevel, observable: Observable) -> Result<f64> {
    let e = energy(level);
    match observable {
        Observable::InvR => quadrature_radial(level, |r| 1.0 / r),
        Observable::InvR2 => quadrature_radial(level, |r| 1.0 / (r * r)),
        Observable::P2 => quadrature_radial(level, |r| 2.0 * (e + 1.0 / r)),
        Observable::P4 => quadrature_radial(level, |r| {
            let p2 = 2.0 * (e + 1.0 / r);
            p2 * p2
        }),
        Observable::AnticommInvRP2 => quadrature_radial(level, |r| 2.0 * (2.0 * (e + 1.0 / r)) / r),
        Observable::Energy => quadrature_radial(level, |r| (e + 1.0 / r) - 1.0 / r),
    }
}

/// `1/√(r² + b²) − 1/r` without cancellation.
fn softcore_shift_kernel(r: f64, b: f64) -> f64 {
    let s = (r * r + b * b).sqrt();
    -b * b / (r * s * (r + s))
}

/// `⟨1/√(r² + b²)⟩ − ⟨1/r⟩` by quadrature, integrating the difference kernel
/// directly so small `b` loses no digits.
pub fn softcore_shift_quadrature(level: SLevel, b: f64) -> Result<f64> {
    if !(b >= 0.0) {
        return Err(Error::domain(format!(
            "soft-core length must be non-negative, got {b}"
        )));
    }
    if b == 0.0 {
        return Ok(0.0);
    }
    let breaks: Vec<f64> = [b, 10.0 * b, 100.0 * b]
        .into_iter()
        .filter(|&r| r < 1.0)
        .collect();
    let opts = QuadOptions {
        abs_tol: (1e-14 * b * b).max(1e-300),
        rel_tol: 1e-12,
        ..Default::default()
    };
    Ok(quadrature_radial_with(level, |r| softcore_shift_kernel(r, b), &breaks, &opts)?.value)
}

/// `⟨1/√(r² + b²)⟩` (in `e²/a` per unit `e²`) by quadrature.
pub fn softcore_quadrature(level: SLevel, b: f64) -> Result<f64> {
    let shift = softcore_shift_quadrature(level, b)?;
    Ok(quadrature_radial(level, |r| 1.0 / r)? + shift)
}
