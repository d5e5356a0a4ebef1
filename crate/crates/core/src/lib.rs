//! First-order energy shifts of hydrogen `ns` levels under a deformed
//! Heisenberg algebra with a minimal length, together with the quadrature
//! oracles that check every closed form and the spectroscopy pipeline that
//! turns Lamb-shift data into an upper bound on the minimal length.
//!
//! All atomic-side quantities are expressed in Coulomb units: energies in
//! `e²/a`, lengths in Bohr radii, squared momenta in `ħ²/a²`. SI values only
//! appear in [`minlength`], behind injected [`minlength::PhysicalConstants`].

#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod hydrogen;
pub mod minlength;
pub mod numdiff;
pub mod perturbation;
pub mod quadrature;
pub mod specfun;

pub use error::{Error, Result};
