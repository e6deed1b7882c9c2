//! Closed-form timing and separation bounds.
//!
//! Inputs and outputs are Planck-normalized: masses in m_P, lengths in l_P,
//! times in t_P, charges in q_P, so that `c = ħ = G = 1` and the pair
//! coupling is `K = m_A m_B` (gravity) or `K = q_A q_B` (Coulomb).
//!
//! Two probe models are covered. In the displacement model Bob releases a
//! trapped test mass and waits until the differential pull of Alice's two
//! paths has shifted it by the trap's confinement length. In the phase model
//! Bob runs his own interferometer and waits until the two conditional
//! phases differ by π.

use std::cmp::Ordering;
use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::search;

/// Default far-field threshold for `R ≫ d` (and for every other "≫").
pub const DEFAULT_MUCH_GREATER: f64 = 100.0;

/// Grid density for the brute-force stage of [`optimize_eta`].
pub const ETA_GRID_POINTS: usize = 1_000_001;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Coupling {
    Gravity,
    /// Charges in Planck units; only the magnitude of `q_a q_b` enters.
    Coulomb { q_a: f64, q_b: f64 },
}

/// Far-field leading-order form or exact two-point form of a difference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expansion {
    /// `K d / R³` for forces, `K t d / R²` for phases.
    LeadingOrder,
    /// `K (1/R² − 1/(R+d)²)` for forces, `K t (1/R − 1/(R+d))` for phases.
    Exact,
}

/// One Alice/Bob configuration, Planck-normalized.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScenarioParams {
    /// Mass of Alice's interfering particle.
    pub m_a: f64,
    /// Mass of Bob's probe.
    pub m_b: f64,
    /// Separation of Alice's two paths.
    pub d: f64,
    /// Alice–Bob distance.
    pub r: f64,
    pub coupling: Coupling,
    /// Minimum trap confinement ΔX_min. `None` means l_P for gravity and
    /// "not supplied" for Coulomb.
    pub delta_x_min: Option<f64>,
    /// Threshold used for every "≫" comparison.
    pub r_over_d_min: f64,
    /// Multiplier on the detectability threshold `δx = ΔX_min` (1 = equality).
    pub slack: f64,
    /// Allow formulas that need `R ≫ d` to run outside that range.
    pub override_validity: bool,
}

impl ScenarioParams {
    pub fn gravity(m_a: f64, m_b: f64, d: f64, r: f64) -> Self {
        Self {
            m_a,
            m_b,
            d,
            r,
            coupling: Coupling::Gravity,
            delta_x_min: None,
            r_over_d_min: DEFAULT_MUCH_GREATER,
            slack: 1.0,
            override_validity: false,
        }
    }

    pub fn with_r(mut self, r: f64) -> Self {
        self.r = r;
        self
    }

    pub fn with_override(mut self) -> Self {
        self.override_validity = true;
        self
    }

    pub fn with_coupling(mut self, coupling: Coupling) -> Self {
        self.coupling = coupling;
        self
    }

    pub fn with_delta_x_min(mut self, dx: f64) -> Self {
        self.delta_x_min = Some(dx);
        self
    }

    pub fn validate(&self) -> Result<()> {
        positive(self.m_a, "mass: m_a")?;
        positive(self.m_b, "mass: m_b")?;
        positive(self.d, "length: d")?;
        positive(self.r, "length: r")?;
        positive(self.r_over_d_min, "threshold: r_over_d_min")?;
        positive(self.slack, "slack")?;
        if let Some(dx) = self.delta_x_min {
            positive(dx, "length: delta_x_min")?;
        }
        if let Coupling::Coulomb { q_a, q_b } = self.coupling {
            if !(q_a.is_finite() && q_b.is_finite()) || q_a == 0.0 || q_b == 0.0 {
                return Err(Error::invalid("coulomb coupling needs nonzero finite charges"));
            }
        }
        Ok(())
    }

    /// Pair coupling K in units of ħc.
    pub fn coupling_strength(&self) -> f64 {
        match self.coupling {
            Coupling::Gravity => self.m_a * self.m_b,
            Coupling::Coulomb { q_a, q_b } => (q_a * q_b).abs(),
        }
    }

    pub fn geometry_valid(&self) -> bool {
        self.r / self.d >= self.r_over_d_min
    }

    fn require_geometry(&self) -> Result<()> {
        if self.geometry_valid() || self.override_validity {
            Ok(())
        } else {
            Err(Error::GeometryOverrideRequired { ratio: self.r / self.d, min: self.r_over_d_min })
        }
    }

    fn confinement(&self) -> Result<f64> {
        match (self.delta_x_min, self.coupling) {
            (Some(dx), _) => Ok(dx),
            (None, Coupling::Gravity) => Ok(1.0),
            (None, Coupling::Coulomb { .. }) => Err(Error::MissingConfinement),
        }
    }

    /// `K d / (m_B ΔX_min · slack)`: the time scale that replaces `m_A d / (m_P c)`
    /// in every displacement-model bound. Equals `m_A d` for default gravity.
    pub fn displacement_scale(&self) -> Result<f64> {
        // gravity: m_A d exactly, so that boundary comparisons against
        // r_max_displacement = m_A d / 2 are not disturbed by m_B / m_B
        let per_probe_mass = match self.coupling {
            Coupling::Gravity => self.m_a,
            Coupling::Coulomb { .. } => self.coupling_strength() / self.m_b,
        };
        Ok(per_probe_mass * self.d / (self.confinement()? * self.slack))
    }
}

fn positive(v: f64, what: &str) -> Result<()> {
    if !v.is_finite() {
        return Err(Error::invalid(format!("non-finite {what}")));
    }
    if v <= 0.0 {
        return Err(Error::invalid(format!("nonpositive {what}")));
    }
    Ok(())
}

fn check_eta(eta: f64) -> Result<()> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::invalid(format!("eta = {eta} outside (0, 1)")));
    }
    Ok(())
}

/// One-way light-crossing minimum for `T_A + T_B`: `R/c`.
pub fn one_way_ta_tb_bound(r: f64) -> Result<f64> {
    positive(r, "length: r")?;
    Ok(r)
}

/// Round-trip minimum for `T_A + T_B`: `2R/c`.
pub fn round_trip_ta_tb_bound(r: f64) -> Result<f64> {
    positive(r, "length: r")?;
    Ok(2.0 * r)
}

/// `1/R² − 1/(R+d)²` without cancellation.
fn inverse_square_difference(r: f64, d: f64) -> f64 {
    let rd = r + d;
    d * (2.0 * r + d) / (r * r * rd * rd)
}

/// `1/R − 1/(R+d)` without cancellation.
fn inverse_difference(r: f64, d: f64) -> f64 {
    d / (r * (r + d))
}

/// Difference between the forces on Bob's probe for Alice's two paths.
pub fn differential_force(p: &ScenarioParams, mode: Expansion) -> Result<f64> {
    p.validate()?;
    p.require_geometry()?;
    let k = p.coupling_strength();
    Ok(match mode {
        Expansion::LeadingOrder => k * p.d / (p.r * p.r * p.r),
        Expansion::Exact => k * inverse_square_difference(p.r, p.d),
    })
}

/// Relative shift `dF t² / (2 m_B)` of the two probe branches after time `t`.
pub fn displacement_shift(df: f64, m_b: f64, t: f64) -> Result<f64> {
    if !(df.is_finite() && t.is_finite()) || df < 0.0 || t < 0.0 {
        return Err(Error::invalid("force and time must be finite and non-negative"));
    }
    positive(m_b, "mass: m_b")?;
    Ok(df * t * t / (2.0 * m_b))
}

/// Bob's release time at which the leading-order shift equals the
/// confinement length: `T_B = sqrt(2 ΔX_min R³ / (G m_A d))`.
pub fn tb_displacement(p: &ScenarioParams) -> Result<f64> {
    p.validate()?;
    p.require_geometry()?;
    // R sqrt(2R / scale) is exactly R when R = scale / 2, and below R
    // exactly when 2R < scale
    Ok(p.r * (2.0 * p.r / p.displacement_scale()?).sqrt())
}

/// `T_B = 4 η³ m_A d / (m_P c)`: the release time when `T_B = η · 2R/c`.
pub fn tb_eta(eta: f64, m_a: f64, d: f64) -> Result<f64> {
    check_eta(eta)?;
    positive(m_a, "mass: m_a")?;
    positive(d, "length: d")?;
    Ok(4.0 * eta.powi(3) * m_a * d)
}

/// Distance at which `T_B = η · 2R/c` is consistent with the release time:
/// `R = 2 η² m_A d / m_P`.
pub fn r_for_eta(eta: f64, m_a: f64, d: f64) -> Result<f64> {
    check_eta(eta)?;
    positive(m_a, "mass: m_a")?;
    positive(d, "length: d")?;
    Ok(2.0 * eta * eta * m_a * d)
}

/// `T_A > 4 (η² − η³) m_A d / (m_P c)`.
pub fn ta_lower_bound(eta: f64, m_a: f64, d: f64) -> Result<f64> {
    check_eta(eta)?;
    positive(m_a, "mass: m_a")?;
    positive(d, "length: d")?;
    Ok(eta_objective(eta) * m_a * d)
}

/// The displacement-model budget split at one value of η.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EtaPoint {
    pub eta: f64,
    /// `R(η) = 2 η² · scale`.
    pub r: f64,
    /// `T_B = 4 η³ · scale = η · 2R/c`.
    pub tb: f64,
    /// `T_A > 4 (η² − η³) · scale = 2R/c − T_B`.
    pub ta_lower_bound: f64,
}

/// [`tb_eta`], [`r_for_eta`] and [`ta_lower_bound`] with `m_A d` replaced by
/// the scenario's [`ScenarioParams::displacement_scale`].
pub fn eta_point(p: &ScenarioParams, eta: f64) -> Result<EtaPoint> {
    p.validate()?;
    check_eta(eta)?;
    let scale = p.displacement_scale()?;
    Ok(EtaPoint {
        eta,
        r: 2.0 * eta * eta * scale,
        tb: 4.0 * eta.powi(3) * scale,
        ta_lower_bound: eta_objective(eta) * scale,
    })
}

/// `4 (η² − η³)`.
pub fn eta_objective(eta: f64) -> f64 {
    4.0 * eta * eta * (1.0 - eta)
}

/// Sign-exact ordering of `eta_objective(a)` against `eta_objective(b)`.
///
/// `f(a) − f(b) = 4 (a − b) (a + b − a² − ab − b²)`, and the second factor is
/// evaluated as `a(1 − a) + b(1 − b) − ab`, which keeps its sign correct down
/// to roughly one ulp of separation from the stationary point.
fn eta_objective_cmp(a: f64, b: f64) -> Ordering {
    let shape = a * (1.0 - a) + b * (1.0 - b) - a * b;
    ((a - b) * shape).total_cmp(&0.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EtaOptimum {
    pub eta_star: f64,
    /// `4 (η*² − η*³)`.
    pub coefficient: f64,
    /// Maximizer of the brute-force grid alone.
    pub grid_eta: f64,
    pub method: String,
}

/// Maximize `4 (η² − η³)` over `(0, 1)`: dense grid scan, then golden-section
/// refinement inside the neighbouring grid cells.
pub fn optimize_eta() -> EtaOptimum {
    let (grid_eta, _) = search::grid_argmax(eta_objective, 0.0, 1.0, ETA_GRID_POINTS);
    let cell = 1.0 / (ETA_GRID_POINTS - 1) as f64;
    let lo = (grid_eta - 2.0 * cell).max(0.0);
    let hi = (grid_eta + 2.0 * cell).min(1.0);
    let eta_star = search::golden_section_max_by(eta_objective_cmp, lo, hi, 1e-15);
    EtaOptimum {
        eta_star,
        coefficient: eta_objective(eta_star),
        grid_eta,
        method: format!("grid scan ({ETA_GRID_POINTS} points) + golden-section (xtol 1e-15)"),
    }
}

/// `T_A > (16/27) m_A d / (m_P c)`, the η-maximized round-trip bound.
pub fn ta_min_round_trip(m_a: f64, d: f64) -> Result<f64> {
    positive(m_a, "mass: m_a")?;
    positive(d, "length: d")?;
    Ok(16.0 / 27.0 * m_a * d)
}

/// The earlier one-way bound, smaller by a factor of eight.
pub fn ta_min_one_way(m_a: f64, d: f64) -> Result<f64> {
    Ok(ta_min_round_trip(m_a, d)? / 8.0)
}

/// Largest Alice–Bob distance for a back-reaction-free displacement
/// measurement: `R ≤ m_A d / (2 m_P)`.
pub fn r_max_displacement(m_a: f64, d: f64) -> Result<f64> {
    positive(m_a, "mass: m_a")?;
    positive(d, "length: d")?;
    Ok(m_a * d / 2.0)
}

/// Phase difference between Bob's two conditional states after time `t`.
pub fn phase_difference(p: &ScenarioParams, t: f64, mode: Expansion) -> Result<f64> {
    p.validate()?;
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::invalid("time must be finite and non-negative"));
    }
    let k = p.coupling_strength();
    Ok(match mode {
        Expansion::LeadingOrder => k * t * p.d / (p.r * p.r),
        Expansion::Exact => k * t * inverse_difference(p.r, p.d),
    })
}

/// Time at which the phase difference reaches π.
pub fn tb_phase(p: &ScenarioParams, mode: Expansion) -> Result<f64> {
    p.validate()?;
    let k = p.coupling_strength();
    Ok(match mode {
        Expansion::LeadingOrder => PI * p.r * p.r / (k * p.d),
        Expansion::Exact => PI * p.r * (p.r + p.d) / (k * p.d),
    })
}

/// `R < m_A m_B d / (π m_P²)`.
pub fn r_max_phase(m_a: f64, m_b: f64, d: f64) -> Result<f64> {
    positive(m_a, "mass: m_a")?;
    positive(m_b, "mass: m_b")?;
    positive(d, "length: d")?;
    Ok(m_a * m_b * d / PI)
}

/// A bound value with the relation that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tagged {
    pub value: f64,
    pub provenance: &'static str,
}

impl Tagged {
    fn new(value: f64, provenance: &'static str) -> Self {
        Self { value, provenance }
    }
}

pub mod provenance {
    pub const ONE_WAY: &str = "T_A + T_B > R/c";
    pub const ROUND_TRIP: &str = "T_A + T_B > 2R/c";
    pub const TB_DISPLACEMENT: &str = "T_B = sqrt(2 dX_min R^3 / (G m_A d))";
    pub const TA_MIN_ROUND_TRIP: &str = "T_A > (16/27) m_A d / (m_P c)";
    pub const TA_MIN_ONE_WAY: &str = "T_A > (2/27) m_A d / (m_P c)";
    pub const R_MAX_DISPLACEMENT: &str = "R < m_A d / (2 m_P)";
    pub const TB_PHASE_EXACT: &str = "T_B = pi hbar R (R+d) / (G m_A m_B d)";
    pub const TB_PHASE_APPROX: &str = "T_B = pi hbar R^2 / (G m_A m_B d)";
    pub const R_MAX_PHASE: &str = "R < m_A m_B d / (pi m_P^2)";
    pub const M_A_RATIO: &str = "m_A / m_P";
    pub const M_B_RATIO: &str = "m_B / m_P";
    pub const MASS_PRODUCT: &str = "m_A m_B / m_P^2";
    pub const COUPLING: &str = "K / (hbar c)";
}

/// Which probe models a report covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Models {
    Displacement,
    Phase,
    #[default]
    Both,
}

impl Models {
    pub fn displacement(self) -> bool {
        matches!(self, Models::Displacement | Models::Both)
    }

    pub fn phase(self) -> bool {
        matches!(self, Models::Phase | Models::Both)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FeasibilityFlags {
    /// `R/d ≥ r_over_d_min`.
    pub geometry_valid: bool,
    /// `R < r_max_displacement`.
    pub displacement_backreaction_free: Option<bool>,
    /// `R < r_max_phase`.
    pub phase_backreaction_free: Option<bool>,
    pub m_a_much_greater_than_planck: bool,
    pub m_b_much_greater_than_planck: bool,
    pub mass_product_much_greater_than_planck: bool,
    pub coupling_much_greater_than_unity: bool,
}

/// Every bound for one scenario. All times in t_P, lengths in l_P.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub one_way_ta_tb_min: Tagged,
    pub round_trip_ta_tb_min: Tagged,
    pub tb_displacement: Option<Tagged>,
    pub ta_min_round_trip: Option<Tagged>,
    pub ta_min_one_way: Option<Tagged>,
    pub r_max_displacement: Option<Tagged>,
    pub tb_phase_exact: Option<Tagged>,
    pub tb_phase_approx: Option<Tagged>,
    pub r_max_phase: Option<Tagged>,
    pub m_a_over_mp: Tagged,
    pub m_b_over_mp: Tagged,
    pub mass_product_over_mp2: Tagged,
    pub coupling_strength: Tagged,
    pub flags: FeasibilityFlags,
}

impl BoundsReport {
    /// Numeric fields in a fixed order, `None` where the model was not run.
    pub fn numeric_fields(&self) -> Vec<(&'static str, Option<f64>)> {
        let v = |t: &Option<Tagged>| t.map(|t| t.value);
        vec![
            ("one_way_ta_tb_min", Some(self.one_way_ta_tb_min.value)),
            ("round_trip_ta_tb_min", Some(self.round_trip_ta_tb_min.value)),
            ("tb_displacement", v(&self.tb_displacement)),
            ("ta_min_round_trip", v(&self.ta_min_round_trip)),
            ("ta_min_one_way", v(&self.ta_min_one_way)),
            ("r_max_displacement", v(&self.r_max_displacement)),
            ("tb_phase_exact", v(&self.tb_phase_exact)),
            ("tb_phase_approx", v(&self.tb_phase_approx)),
            ("r_max_phase", v(&self.r_max_phase)),
            ("m_a_over_mp", Some(self.m_a_over_mp.value)),
            ("m_b_over_mp", Some(self.m_b_over_mp.value)),
            ("mass_product_over_mp2", Some(self.mass_product_over_mp2.value)),
            ("coupling_strength", Some(self.coupling_strength.value)),
        ]
    }

    pub fn flag_fields(&self) -> Vec<(&'static str, Option<bool>)> {
        let f = &self.flags;
        vec![
            ("geometry_valid", Some(f.geometry_valid)),
            ("displacement_backreaction_free", f.displacement_backreaction_free),
            ("phase_backreaction_free", f.phase_backreaction_free),
            ("m_a_much_greater_than_planck", Some(f.m_a_much_greater_than_planck)),
            ("m_b_much_greater_than_planck", Some(f.m_b_much_greater_than_planck)),
            ("mass_product_much_greater_than_planck", Some(f.mass_product_much_greater_than_planck)),
            ("coupling_much_greater_than_unity", Some(f.coupling_much_greater_than_unity)),
        ]
    }
}

/// Both models; fails for Coulomb coupling without an explicit ΔX_min.
pub fn feasibility_report(p: &ScenarioParams) -> Result<BoundsReport> {
    feasibility_report_for(p, Models::Both)
}

/// Collect the bounds of the selected models.
///
/// The far-field formulas are evaluated even when `R/d` is below the
/// threshold; the report says so through `flags.geometry_valid`.
pub fn feasibility_report_for(p: &ScenarioParams, models: Models) -> Result<BoundsReport> {
    p.validate()?;
    let q = ScenarioParams { override_validity: true, ..*p };
    let threshold = p.r_over_d_min;
    let k = p.coupling_strength();

    let mut tb_disp = None;
    let mut ta_rt = None;
    let mut ta_ow = None;
    let mut r_disp = None;
    let mut disp_free = None;
    if models.displacement() {
        let scale = q.displacement_scale()?;
        let tb = tb_displacement(&q)?;
        let ta = 16.0 / 27.0 * scale;
        let r_max = scale / 2.0;
        tb_disp = Some(Tagged::new(tb, provenance::TB_DISPLACEMENT));
        ta_rt = Some(Tagged::new(ta, provenance::TA_MIN_ROUND_TRIP));
        ta_ow = Some(Tagged::new(ta / 8.0, provenance::TA_MIN_ONE_WAY));
        r_disp = Some(Tagged::new(r_max, provenance::R_MAX_DISPLACEMENT));
        disp_free = Some(p.r < r_max);
    }

    let mut tb_exact = None;
    let mut tb_approx = None;
    let mut r_phase = None;
    let mut phase_free = None;
    if models.phase() {
        let r_max = k * p.d / PI;
        tb_exact = Some(Tagged::new(tb_phase(&q, Expansion::Exact)?, provenance::TB_PHASE_EXACT));
        tb_approx = Some(Tagged::new(tb_phase(&q, Expansion::LeadingOrder)?, provenance::TB_PHASE_APPROX));
        r_phase = Some(Tagged::new(r_max, provenance::R_MAX_PHASE));
        phase_free = Some(p.r < r_max);
    }

    let product = p.m_a * p.m_b;
    Ok(BoundsReport {
        one_way_ta_tb_min: Tagged::new(one_way_ta_tb_bound(p.r)?, provenance::ONE_WAY),
        round_trip_ta_tb_min: Tagged::new(round_trip_ta_tb_bound(p.r)?, provenance::ROUND_TRIP),
        tb_displacement: tb_disp,
        ta_min_round_trip: ta_rt,
        ta_min_one_way: ta_ow,
        r_max_displacement: r_disp,
        tb_phase_exact: tb_exact,
        tb_phase_approx: tb_approx,
        r_max_phase: r_phase,
        m_a_over_mp: Tagged::new(p.m_a, provenance::M_A_RATIO),
        m_b_over_mp: Tagged::new(p.m_b, provenance::M_B_RATIO),
        mass_product_over_mp2: Tagged::new(product, provenance::MASS_PRODUCT),
        coupling_strength: Tagged::new(k, provenance::COUPLING),
        flags: FeasibilityFlags {
            geometry_valid: p.geometry_valid(),
            displacement_backreaction_free: disp_free,
            phase_backreaction_free: phase_free,
            m_a_much_greater_than_planck: p.m_a >= threshold,
            m_b_much_greater_than_planck: p.m_b >= threshold,
            mass_product_much_greater_than_planck: product >= threshold,
            coupling_much_greater_than_unity: k >= threshold,
        },
    })
}
