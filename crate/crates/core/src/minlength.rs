//! From Lamb-shift data to an upper bound on the minimal length.
//!
//! The state-independent parts of the Lamb shift cancel in
//! `Δ₂ = 8 L(2s) − L(1s)`. Requiring the deformation-induced analogue
//! `Δ₂^ml = (e²/a) ξ² [½ − (3η − 1)(3/2 − ln 4)]` to stay below the
//! experiment − theory discrepancy bounds `ξ = Δx_min / a` for every mixing
//! parameter `η = β/(β + β′) ∈ [1/3, 1]`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hydrogen::SLevel;
use crate::perturbation::{correction_ns, delta2_ml, DeformationParams};

pub const ETA_MIN: f64 = 1.0 / 3.0;
pub const ETA_MAX: f64 = 1.0;

const DEFAULT_DATASET: &str = include_str!("../data/lamb_shift.toml");

/// A central value with a one-sigma uncertainty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Measured {
    pub value: f64,
    pub uncertainty: f64,
}

impl Measured {
    pub fn new(value: f64, uncertainty: f64) -> Self {
        Self { value, uncertainty }
    }
}

/// Lamb-shift inputs in kHz.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LambShiftDataset {
    pub l1s_khz: Measured,
    pub l2s_khz: Measured,
    pub delta2_theor_khz: Measured,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DatasetFile {
    l1s_khz: f64,
    l1s_unc_khz: f64,
    l2s_khz: f64,
    l2s_unc_khz: f64,
    delta2_theor_khz: f64,
    delta2_theor_unc_khz: f64,
}

impl LambShiftDataset {
    /// The bundled dataset: 1s and 2s Lamb shifts with the matching
    /// theoretical `Δ₂`.
    pub fn bundled() -> Self {
        Self::parse(DEFAULT_DATASET).expect("bundled dataset is valid")
    }

    /// Parse the flat `key = value` format (keys `l1s_khz`, `l1s_unc_khz`,
    /// `l2s_khz`, `l2s_unc_khz`, `delta2_theor_khz`, `delta2_theor_unc_khz`).
    pub fn parse(text: &str) -> Result<Self> {
        let raw: DatasetFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let data = Self {
            l1s_khz: Measured::new(raw.l1s_khz, raw.l1s_unc_khz),
            l2s_khz: Measured::new(raw.l2s_khz, raw.l2s_unc_khz),
            delta2_theor_khz: Measured::new(raw.delta2_theor_khz, raw.delta2_theor_unc_khz),
        };
        data.validate()?;
        Ok(data)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, m) in [
            ("l1s_khz", self.l1s_khz),
            ("l2s_khz", self.l2s_khz),
            ("delta2_theor_khz", self.delta2_theor_khz),
        ] {
            if !(m.value > 0.0 && m.value.is_finite()) {
                return Err(Error::Parse(format!(
                    "{name} must be positive, got {}",
                    m.value
                )));
            }
            if !(m.uncertainty >= 0.0 && m.uncertainty.is_finite()) {
                return Err(Error::Parse(format!(
                    "uncertainty of {name} must be non-negative, got {}",
                    m.uncertainty
                )));
            }
        }
        Ok(())
    }
}

/// Scale factors between Coulomb units and SI.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicalConstants {
    /// Bohr radius in meters.
    pub bohr_radius_m: f64,
    /// Frequency equivalent of `e²/a` (twice the Rydberg frequency), in Hz.
    pub coulomb_unit_hz: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            bohr_radius_m: 5.291_772_109_03e-11,
            coulomb_unit_hz: 6.579_683_920_502e15,
        }
    }
}

impl PhysicalConstants {
    pub fn new(bohr_radius_m: f64, coulomb_unit_hz: f64) -> Result<Self> {
        let c = Self {
            bohr_radius_m,
            coulomb_unit_hz,
        };
        c.validate()?;
        Ok(c)
    }

    /// Same flat `key = value` format as the dataset, keys `bohr_radius_m`
    /// and `coulomb_unit_hz`.
    pub fn parse(text: &str) -> Result<Self> {
        let c: Self = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    fn validate(&self) -> Result<()> {
        if !(self.bohr_radius_m > 0.0 && self.bohr_radius_m.is_finite())
            || !(self.coulomb_unit_hz > 0.0 && self.coulomb_unit_hz.is_finite())
        {
            return Err(Error::Parse(format!(
                "physical constants must be positive: {self:?}"
            )));
        }
        Ok(())
    }

    pub fn ceu_to_khz(&self, energy: f64) -> f64 {
        energy * self.coulomb_unit_hz * 1e-3
    }

    pub fn khz_to_ceu(&self, khz: f64) -> f64 {
        khz * 1e3 / self.coulomb_unit_hz
    }
}

/// The `(η, ξ)` parametrisation: `η = β/(β+β′)`, `ξ = Δx_min/a = √(β̃+β̃′)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EtaXi {
    eta: f64,
    xi: f64,
}

impl EtaXi {
    pub fn new(eta: f64, xi: f64) -> Result<Self> {
        check_eta(eta)?;
        if !(xi >= 0.0 && xi.is_finite()) {
            return Err(Error::domain(format!("ξ must be non-negative, got {xi}")));
        }
        Ok(Self { eta, xi })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    /// `β̃ = η ξ²`, `β̃′ = (1 − η) ξ²`.
    pub fn to_params(&self) -> Result<DeformationParams> {
        let xi2 = self.xi * self.xi;
        DeformationParams::new(self.eta * xi2, (1.0 - self.eta) * xi2)
    }

    /// Inverse of [`EtaXi::to_params`]; undefined at zero deformation.
    pub fn from_params(params: &DeformationParams) -> Result<Self> {
        let sum = params.beta_t() + params.beta_prime_t();
        if sum == 0.0 {
            return Err(Error::domain("η is undefined at zero deformation"));
        }
        Self::new(params.beta_t() / sum, sum.sqrt())
    }
}

fn check_eta(eta: f64) -> Result<()> {
    if !(ETA_MIN..=ETA_MAX).contains(&eta) {
        return Err(Error::domain(format!("η = {eta} outside [1/3, 1]")));
    }
    Ok(())
}

/// `1 − (3η − 1)(3 − 2 ln 4)`, positive on the whole η domain
/// (1 at η = 1/3, ≈ 0.545177 at η = 1).
pub fn bound_denominator(eta: f64) -> f64 {
    1.0 - (3.0 * eta - 1.0) * (3.0 - 2.0 * 4f64.ln())
}

/// `8 L(2s) − L(1s)` with its quadrature-summed uncertainty.
pub fn delta2_exprt(data: &LambShiftDataset) -> Measured {
    let value = 8.0 * data.l2s_khz.value - data.l1s_khz.value;
    let uncertainty = (8.0 * data.l2s_khz.uncertainty).hypot(data.l1s_khz.uncertainty);
    Measured::new(value, uncertainty)
}

/// The room left for a deformation-induced shift.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Discrepancy {
    pub value_khz: f64,
    pub uncertainty_khz: f64,
    /// Theory lies above experiment, so no non-negative `Δ₂^ml` fits under
    /// the budget.
    pub vacuous: bool,
}

pub fn discrepancy(data: &LambShiftDataset) -> Discrepancy {
    let exprt = delta2_exprt(data);
    let theor = data.delta2_theor_khz;
    let value_khz = exprt.value - theor.value;
    Discrepancy {
        value_khz,
        uncertainty_khz: exprt.uncertainty.hypot(theor.uncertainty),
        vacuous: value_khz < 0.0,
    }
}

/// `ξ` such that `Δ₂^ml(η, ξ)` equals the budget.
pub fn xi_bound(eta: f64, budget_khz: f64, constants: &PhysicalConstants) -> Result<f64> {
    check_eta(eta)?;
    if !(budget_khz >= 0.0) {
        return Err(Error::domain(format!(
            "budget must be non-negative, got {budget_khz} kHz"
        )));
    }
    let denominator = bound_denominator(eta);
    debug_assert!(denominator > 0.0);
    Ok((2.0 * constants.khz_to_ceu(budget_khz) / denominator).sqrt())
}

/// Upper bound on `Δx_min` in meters for mixing parameter `η`.
pub fn min_length(eta: f64, budget_khz: f64, constants: &PhysicalConstants) -> Result<f64> {
    Ok(xi_bound(eta, budget_khz, constants)? * constants.bohr_radius_m)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub eta: f64,
    pub xi: f64,
    pub delta_x_min_m: f64,
    pub vacuous: bool,
}

/// Uniform grid over `η ∈ [1/3, 1]`, endpoints included exactly.
pub fn eta_grid(points: usize) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::domain(format!(
            "a sweep needs at least 2 points, got {points}"
        )));
    }
    let last = points - 1;
    Ok((0..points)
        .map(|i| match i {
            0 => ETA_MIN,
            i if i == last => ETA_MAX,
            i => ETA_MIN + (ETA_MAX - ETA_MIN) * i as f64 / last as f64,
        })
        .collect())
}

/// The bound curve `Δx_min(η)`. With a vacuous discrepancy the budget is
/// clamped to zero and every row is flagged.
pub fn sweep(
    data: &LambShiftDataset,
    constants: &PhysicalConstants,
    points: usize,
) -> Result<Vec<SweepRow>> {
    let budget = discrepancy(data);
    let budget_khz = budget.value_khz.max(0.0);
    eta_grid(points)?
        .into_iter()
        .map(|eta| {
            let xi = xi_bound(eta, budget_khz, constants)?;
            Ok(SweepRow {
                eta,
                xi,
                delta_x_min_m: xi * constants.bohr_radius_m,
                vacuous: budget.vacuous,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConsistencyReport {
    /// `8ΔE_2s − ΔE_1s` from the termwise corrections, in `e²/a`.
    pub from_corrections_ceu: f64,
    pub from_corrections_khz: f64,
    /// Closed-form `Δ₂^ml`, in kHz.
    pub closed_form_khz: f64,
    /// Experiment − theory discrepancy, in kHz.
    pub budget_khz: f64,
    pub rel_dev_closed_form: f64,
    pub rel_dev_budget: f64,
}

fn rel_dev(value: f64, reference: f64) -> f64 {
    if value == reference {
        0.0
    } else {
        ((value - reference) / reference).abs()
    }
}

/// Compare `8ΔE_2s − ΔE_1s` built from the level corrections against the
/// closed-form `Δ₂^ml` and against the data budget.
pub fn consistency_check(
    params: &DeformationParams,
    data: &LambShiftDataset,
    constants: &PhysicalConstants,
) -> ConsistencyReport {
    let level = |n| SLevel::new(n).expect("levels 1 and 2 are valid");
    let e1 = correction_ns(level(1), params).total;
    let e2 = correction_ns(level(2), params).total;
    let from_corrections_ceu = 8.0 * e2 - e1;
    let from_corrections_khz = constants.ceu_to_khz(from_corrections_ceu);
    let closed_form_khz = constants.ceu_to_khz(delta2_ml(params));
    let budget_khz = discrepancy(data).value_khz;
    ConsistencyReport {
        from_corrections_ceu,
        from_corrections_khz,
        closed_form_khz,
        budget_khz,
        rel_dev_closed_form: rel_dev(from_corrections_khz, closed_form_khz),
        rel_dev_budget: rel_dev(from_corrections_khz, budget_khz),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dataset(l1: f64, l2: f64, theor: f64) -> LambShiftDataset {
        LambShiftDataset {
            l1s_khz: Measured::new(l1, 22.0),
            l2s_khz: Measured::new(l2, 6.5),
            delta2_theor_khz: Measured::new(theor, 0.05),
        }
    }

    #[test]
    fn bundled_values() {
        let d = LambShiftDataset::bundled();
        assert_eq!(d.l1s_khz, Measured::new(8_172_840.0, 22.0));
        assert_eq!(d.l2s_khz, Measured::new(1_045_009.4, 6.5));
        assert_eq!(d.delta2_theor_khz, Measured::new(187_225.70, 0.05));
    }

    #[test]
    fn experimental_difference() {
        let e = delta2_exprt(&LambShiftDataset::bundled());
        assert!((e.value - 187_235.2).abs() < 1e-6);
        // √((8·6.5)² + 22²) = √3188
        assert!((e.uncertainty - 3188f64.sqrt()).abs() < 1e-12);
        assert!((e.uncertainty - 56.4).abs() < 0.1);
        let zero = dataset(0.0, 0.0, 1.0);
        assert_eq!(delta2_exprt(&zero).value, 0.0);
    }

    #[test]
    fn discrepancy_cases() {
        let d = discrepancy(&LambShiftDataset::bundled());
        assert!((d.value_khz - 9.5).abs() < 1e-6);
        assert!(!d.vacuous);
        let exprt = delta2_exprt(&LambShiftDataset::bundled()).value;
        let balanced = dataset(8_172_840.0, 1_045_009.4, exprt);
        assert_eq!(discrepancy(&balanced).value_khz, 0.0);
        let over = dataset(8_172_840.0, 1_045_009.4, exprt + 3.0);
        let d = discrepancy(&over);
        assert!(d.value_khz < 0.0 && d.vacuous);
    }

    #[test]
    fn denominator_endpoints() {
        assert_eq!(bound_denominator(ETA_MIN), 1.0);
        assert!((bound_denominator(1.0) - 0.545_177_444_479_562_5).abs() < 1e-15);
    }

    #[test]
    fn min_length_errors() {
        let c = PhysicalConstants::default();
        assert!(min_length(0.3, 9.5, &c).is_err());
        assert!(min_length(1.01, 9.5, &c).is_err());
        assert!(min_length(0.5, -1.0, &c).is_err());
        assert_eq!(min_length(0.7, 0.0, &c).unwrap(), 0.0);
    }

    #[test]
    fn sweep_grid_contract() {
        let rows = sweep(
            &LambShiftDataset::bundled(),
            &PhysicalConstants::default(),
            3,
        )
        .unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0].eta, 1.0 / 3.0);
        assert_eq!(rows[2].eta, 1.0);
        assert!((rows[1].eta - 2.0 / 3.0).abs() < 1e-15);
        assert!(rows
            .windows(2)
            .all(|w| w[1].delta_x_min_m > w[0].delta_x_min_m));
        assert!(sweep(
            &LambShiftDataset::bundled(),
            &PhysicalConstants::default(),
            1
        )
        .is_err());
    }

    #[test]
    fn vacuous_budget_flags_every_row() {
        let exprt = delta2_exprt(&LambShiftDataset::bundled()).value;
        let over = dataset(8_172_840.0, 1_045_009.4, exprt + 3.0);
        let rows = sweep(&over, &PhysicalConstants::default(), 4).unwrap();
        assert!(rows.iter().all(|r| r.vacuous && r.xi == 0.0));
    }

    #[test]
    fn eta_xi_mapping() {
        let ex = EtaXi::new(0.5, 1e-3).unwrap();
        let p = ex.to_params().unwrap();
        assert!((p.beta_t() + p.beta_prime_t() - 1e-6).abs() < 1e-20);
        let back = EtaXi::from_params(&p).unwrap();
        assert!((back.eta() - 0.5).abs() < 1e-15 && (back.xi() - 1e-3).abs() < 1e-18);
        assert_eq!(
            EtaXi::new(1.0 / 3.0, 2e-3)
                .unwrap()
                .to_params()
                .unwrap()
                .alpha_t(),
            0.0
        );
        assert!(EtaXi::new(2.0, 1e-6).is_err());
        assert!(EtaXi::from_params(&DeformationParams::zero()).is_err());
    }

    #[test]
    fn dataset_parsing() {
        let text = "l1s_khz = 1\nl1s_unc_khz = 0\nl2s_khz = 2.5\nl2s_unc_khz = 0.1\n\
                    delta2_theor_khz = 3\ndelta2_theor_unc_khz = 0.2\n";
        let d = LambShiftDataset::parse(text).unwrap();
        assert_eq!(d.l2s_khz, Measured::new(2.5, 0.1));
        assert!(matches!(
            LambShiftDataset::parse("l1s_khz = 1"),
            Err(Error::Parse(_))
        ));
        let negative = text.replace("l2s_unc_khz = 0.1", "l2s_unc_khz = -0.1");
        assert!(LambShiftDataset::parse(&negative).is_err());
        let extra = format!("{text}bogus = 1\n");
        assert!(LambShiftDataset::parse(&extra).is_err());
    }

    #[test]
    fn constants_parsing() {
        let c = PhysicalConstants::parse("bohr_radius_m = 5.3e-11\ncoulomb_unit_hz = 6.6e15\n")
            .unwrap();
        assert_eq!(c.bohr_radius_m, 5.3e-11);
        assert!(PhysicalConstants::parse("bohr_radius_m = 0\ncoulomb_unit_hz = 1\n").is_err());
        assert!(PhysicalConstants::new(1.0, -1.0).is_err());
    }

    #[test]
    fn zero_params_consistency() {
        let r = consistency_check(
            &DeformationParams::zero(),
            &LambShiftDataset::bundled(),
            &PhysicalConstants::default(),
        );
        assert_eq!(r.from_corrections_khz, 0.0);
        assert_eq!(r.closed_form_khz, 0.0);
        assert_eq!(r.rel_dev_closed_form, 0.0);
    }
}
