//! Gaussian-wavepacket oracle for Bob's probe.
//!
//! Bob's test particle starts in the ground state of a narrow trap. Once the
//! trap is released each branch (conditioned on Alice's path) moves under a
//! constant force `K/R²` or `K/(R+d)²`, optionally with the tidal gradient
//! `2K/r³` of the same source. The Hamiltonian is at most quadratic, so every
//! branch stays a pure Gaussian and is propagated in closed form: the mean
//! follows the classical trajectory, the covariance follows the symplectic
//! map, and the phase picks up the classical action plus the metaplectic
//! (Gouy) phase of the width evolution.
//!
//! Units are Planck-normalized (ħ = 1).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::bounds::{phase_difference, Expansion, ScenarioParams};
use crate::error::{Error, Result};
use crate::search::first_crossing;

/// Default near-orthogonality threshold on |⟨ψ_L|ψ_R⟩|.
pub const DEFAULT_EPS: f64 = 0.01;

/// Bracketing stops once `t` exceeds this many light-crossing times.
pub const BRACKET_LIMIT_CROSSINGS: f64 = 1e6;

/// Relative bisection tolerance for orthogonalization times.
pub const TIME_RTOL: f64 = 1e-9;

/// Heisenberg floor `(ħ/2)²`.
const HEISENBERG_DET: f64 = 0.25;

/// Symmetric phase-space covariance `[[xx, xp], [xp, pp]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Covariance {
    pub xx: f64,
    pub xp: f64,
    pub pp: f64,
}

impl Covariance {
    pub fn det(&self) -> f64 {
        self.xx * self.pp - self.xp * self.xp
    }

    /// Rounding allowance for `det`, which cancels badly for strongly
    /// sheared states.
    fn det_slack(&self) -> f64 {
        1e-9 * HEISENBERG_DET + 8.0 * f64::EPSILON * (self.xx * self.pp).abs()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.xx > 0.0 && self.pp > 0.0 && self.det() > -self.det_slack()
    }

    /// `det ≥ (ħ/2)²` up to relative 1e-9 and rounding.
    pub fn satisfies_heisenberg(&self) -> bool {
        self.det() >= HEISENBERG_DET - self.det_slack()
    }

    fn is_pure(&self) -> bool {
        (self.det() - HEISENBERG_DET).abs() <= self.det_slack()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianState {
    pub mean_x: f64,
    pub mean_p: f64,
    pub cov: Covariance,
    /// Phase of the wavefunction at `mean_x`, in radians.
    pub phase: f64,
}

impl GaussianState {
    /// Minimum-uncertainty state at rest at the origin with width `sigma_x`.
    pub fn minimum_uncertainty(sigma_x: f64) -> Result<Self> {
        if !(sigma_x.is_finite() && sigma_x > 0.0) {
            return Err(Error::invalid("nonpositive width"));
        }
        let sigma_p = 0.5 / sigma_x;
        Ok(Self {
            mean_x: 0.0,
            mean_p: 0.0,
            cov: Covariance { xx: sigma_x * sigma_x, xp: 0.0, pp: sigma_p * sigma_p },
            phase: 0.0,
        })
    }

    pub fn sigma_x(&self) -> f64 {
        self.cov.xx.sqrt()
    }

    pub fn sigma_p(&self) -> f64 {
        self.cov.pp.sqrt()
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.mean_x, self.mean_p, self.cov.xx, self.cov.xp, self.cov.pp, self.phase]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::invalid("non-finite Gaussian state"));
        }
        if !self.cov.is_positive_definite() {
            return Err(Error::NotPositiveDefinite);
        }
        if !self.cov.satisfies_heisenberg() {
            return Err(Error::NotPure { det: self.cov.det() });
        }
        Ok(())
    }

    /// Complex width `α` of `exp(−α (x − x̄)²)`.
    fn alpha(&self) -> Complex64 {
        Complex64::new(1.0, -2.0 * self.cov.xp) / (4.0 * self.cov.xx)
    }

    /// `ψ(x) = (2π σ_x²)^{-1/4} exp(−α (x − x̄)² + i p̄ (x − x̄) + i θ)`.
    pub fn wavefunction(&self, x: f64) -> Complex64 {
        let norm = (2.0 * PI * self.cov.xx).powf(-0.25);
        let dx = x - self.mean_x;
        let exponent = -self.alpha() * dx * dx + Complex64::i() * (self.mean_p * dx + self.phase);
        norm * exponent.exp()
    }
}

/// Trap ground state: `σ_x = sqrt(ħ/(2mω))`, `σ_p = ħ/(2σ_x)`.
pub fn ground_state(m: f64, omega: f64) -> Result<GaussianState> {
    if !(m.is_finite() && m > 0.0) {
        return Err(Error::invalid("nonpositive mass"));
    }
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::invalid("nonpositive trap frequency"));
    }
    GaussianState::minimum_uncertainty((0.5 / (m * omega)).sqrt())
}

/// Trap frequency whose ground state has width `sigma_x`.
pub fn trap_frequency_for_width(m: f64, sigma_x: f64) -> f64 {
    0.5 / (m * sigma_x * sigma_x)
}

/// `sinh(z)/z`.
fn sinhc(z: f64) -> f64 {
    if z.abs() < 1e-4 {
        1.0 + z * z / 6.0
    } else {
        z.sinh() / z
    }
}

/// `2 (cosh z − 1) / z²`.
fn coshc(z: f64) -> f64 {
    let s = sinhc(0.5 * z);
    s * s
}

/// `6 (sinh z − z) / z³`.
fn sinh_remainder(z: f64) -> f64 {
    if z.abs() < 1e-2 {
        let z2 = z * z;
        1.0 + z2 / 20.0 + z2 * z2 / 840.0
    } else {
        6.0 * (z.sinh() - z) / (z * z * z)
    }
}

/// Evolve under `H = p²/(2m) − F x − κ x²/2` for time `t` (κ ≥ 0: tidal
/// stretching along the source axis; κ = 0: constant force only).
pub fn evolve_quadratic(s: &GaussianState, force: f64, kappa: f64, m: f64, t: f64) -> Result<GaussianState> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::invalid("negative or non-finite evolution time"));
    }
    if !(m.is_finite() && m > 0.0) {
        return Err(Error::invalid("nonpositive mass"));
    }
    if !(force.is_finite() && kappa.is_finite() && kappa >= 0.0) {
        return Err(Error::invalid("force must be finite and the gradient non-negative"));
    }
    let z = (kappa / m).sqrt() * t;
    let (sc, cc, rc) = (sinhc(z), coshc(z), sinh_remainder(z));
    let cosh = 1.0 + 0.5 * z * z * cc;
    let tm = t / m;
    // symplectic map [[a, b], [c, a]]
    let (a, b, c) = (cosh, tm * sc, kappa * t * sc);

    let (x0, p0) = (s.mean_x, s.mean_p);
    let x_t = x0 * a + p0 * b + 0.5 * force * t * tm * cc;
    let p_t = x0 * c + p0 * a + force * t * sc;
    let x_integral = x0 * t * sc + 0.5 * p0 * t * tm * cc + force * t * t * tm * rc / 6.0;
    let action = 0.5 * (x_t * p_t - x0 * p0) + 0.5 * force * x_integral;

    let v = s.cov;
    let cov = Covariance {
        xx: a * a * v.xx + 2.0 * a * b * v.xp + b * b * v.pp,
        xp: a * c * v.xx + (a * a + b * c) * v.xp + a * b * v.pp,
        pp: c * c * v.xx + 2.0 * a * c * v.xp + a * a * v.pp,
    };
    // metaplectic factor (a + b λ₀)^{-1/2}, λ₀ = 2iα₀
    let lambda0 = 2.0 * Complex64::i() * s.alpha();
    let gouy = -0.5 * (a + b * lambda0).arg();

    Ok(GaussianState { mean_x: x_t, mean_p: p_t, cov, phase: s.phase + action + gouy })
}

/// Free flight plus a constant force `F`.
pub fn evolve_constant_force(s: &GaussianState, force: f64, m: f64, t: f64) -> Result<GaussianState> {
    evolve_quadratic(s, force, 0.0, m, t)
}

/// `ln |⟨a|b⟩|` and `arg ⟨a|b⟩` for two pure Gaussian states.
fn log_overlap(a: &GaussianState, b: &GaussianState) -> Result<(f64, f64)> {
    for s in [a, b] {
        s.validate()?;
        if !s.cov.is_pure() {
            return Err(Error::NotPure { det: s.cov.det() });
        }
    }
    let (alpha_a, alpha_b) = (a.alpha(), b.alpha());
    let sum = alpha_a.conj() + alpha_b;
    let dx = b.mean_x - a.mean_x;
    let dp = b.mean_p - a.mean_p;
    let lin = 2.0 * alpha_b * dx + Complex64::i() * dp;
    let exponent = lin * lin / (4.0 * sum) - alpha_b * dx * dx
        + Complex64::i() * (b.phase - a.phase - b.mean_p * dx);
    // (2π σ_a²)^{-1/4} (2π σ_b²)^{-1/4} sqrt(π / sum)
    let prefactor = (Complex64::new(PI, 0.0) / sum).sqrt() / (2.0 * PI * (a.cov.xx * b.cov.xx).sqrt()).sqrt();
    let log_mag = if a.cov == b.cov {
        // the prefactor is exactly one in magnitude here
        exponent.re
    } else {
        exponent.re + prefactor.norm().ln()
    };
    Ok((log_mag.min(0.0), exponent.im + prefactor.arg()))
}

/// Inner product `⟨a|b⟩` of two pure Gaussian states.
pub fn overlap(a: &GaussianState, b: &GaussianState) -> Result<Complex64> {
    let (log_mag, arg) = log_overlap(a, b)?;
    Ok(Complex64::from_polar(log_mag.exp(), arg))
}

/// Probe branches conditioned on Alice's two paths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BranchPair {
    pub left: GaussianState,
    pub right: GaussianState,
    #[serde(serialize_with = "serialize_complex")]
    pub overlap: Complex64,
}

fn serialize_complex<S: serde::Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("Complex", 2)?;
    st.serialize_field("re", &z.re)?;
    st.serialize_field("im", &z.im)?;
    st.end()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleConfig {
    /// Initial trap width σ₀ (default l_P).
    pub sigma0: f64,
    /// Near-orthogonality threshold.
    pub eps: f64,
    /// Include the tidal gradient `2K/r³` of each branch.
    pub tidal: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { sigma0: 1.0, eps: DEFAULT_EPS, tidal: false }
    }
}

impl OracleConfig {
    fn validate(&self) -> Result<()> {
        if !(self.sigma0.is_finite() && self.sigma0 > 0.0) {
            return Err(Error::invalid("nonpositive sigma0"));
        }
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return Err(Error::invalid("eps outside (0, 1)"));
        }
        Ok(())
    }
}

/// Both branches at time `t` after trap release.
///
/// The source is held fixed; the left branch sees Alice's particle at
/// distance R, the right one at R + d. Both forces point toward Alice.
pub fn branch_pair(p: &ScenarioParams, cfg: &OracleConfig, t: f64) -> Result<BranchPair> {
    p.validate()?;
    cfg.validate()?;
    let k = p.coupling_strength();
    let start = ground_state(p.m_b, trap_frequency_for_width(p.m_b, cfg.sigma0))?;
    let branch = |dist: f64| {
        let kappa = if cfg.tidal { 2.0 * k / dist.powi(3) } else { 0.0 };
        evolve_quadratic(&start, -k / (dist * dist), kappa, p.m_b, t)
    };
    let left = branch(p.r)?;
    let right = branch(p.r + p.d)?;
    Ok(BranchPair { left, right, overlap: overlap(&left, &right)? })
}

/// Smallest release time after which `|⟨ψ_L|ψ_R⟩| ≤ eps`.
pub fn orthogonalization_time(p: &ScenarioParams, sigma0: f64, eps: f64) -> Result<f64> {
    orthogonalization_time_with(p, &OracleConfig { sigma0, eps, tidal: false })
}

pub fn orthogonalization_time_with(p: &ScenarioParams, cfg: &OracleConfig) -> Result<f64> {
    p.validate()?;
    cfg.validate()?;
    let ln_eps = cfg.eps.ln();
    let crossed = |t: f64| {
        branch_pair(p, cfg, t)
            .and_then(|bp| log_overlap(&bp.left, &bp.right))
            .map(|(log_mag, _)| log_mag <= ln_eps)
    };
    first_crossing(crossed, 1e-12 * p.r, BRACKET_LIMIT_CROSSINGS * p.r, TIME_RTOL)
}

/// Time at which the branch means, separated by `δx(t)`, become
/// distinguishable by their position distributions alone:
/// `exp(−δx² / (8 σ_x(t)²)) ≤ eps`. Found by bisection on evolved states.
pub fn position_distinguishability_time(p: &ScenarioParams, sigma0: f64, eps: f64) -> Result<f64> {
    let cfg = OracleConfig { sigma0, eps, tidal: false };
    p.validate()?;
    cfg.validate()?;
    let threshold = -8.0 * eps.ln();
    let crossed = |t: f64| {
        branch_pair(p, &cfg, t)
            .map(|bp| {
                let dx = bp.right.mean_x - bp.left.mean_x;
                dx * dx / bp.left.cov.xx >= threshold
            })
    };
    first_crossing(crossed, 1e-12 * p.r, f64::MAX / 4.0, TIME_RTOL)
}

/// Closed-form inversion of the position-only criterion for free spreading:
/// with `a = ΔF/m_B`, `(a t²/2)² = T (σ₀² + t²/(4 m_B² σ₀²))`, `T = −8 ln eps`,
/// solved as a quadratic in `t²`.
pub fn position_distinguishability_closed_form(p: &ScenarioParams, sigma0: f64, eps: f64) -> Result<f64> {
    p.validate()?;
    OracleConfig { sigma0, eps, tidal: false }.validate()?;
    let k = p.coupling_strength();
    let rd = p.r + p.d;
    let accel = k * p.d * (2.0 * p.r + p.d) / (p.r * p.r * rd * rd) / p.m_b;
    let threshold = -8.0 * eps.ln();
    let qa = 0.25 * accel * accel;
    let qb = threshold / (4.0 * p.m_b * p.m_b * sigma0 * sigma0);
    let qc = threshold * sigma0 * sigma0;
    let y = (qb + (qb * qb + 4.0 * qa * qc).sqrt()) / (2.0 * qa);
    Ok(y.sqrt())
}

/// Bob's interferometer branches: the near beam collects `φ_L` (or
/// `φ_L + Δφ`), the far beam is phase-inert.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseBranchPair {
    pub phi_l: f64,
    pub delta_phi: f64,
    /// `|cos(Δφ/2)| = |(e^{iΔφ} + 1)/2|`.
    pub overlap_magnitude: f64,
}

pub fn phase_evolution(p: &ScenarioParams, t: f64) -> Result<PhaseBranchPair> {
    let delta_phi = phase_difference(p, t, Expansion::Exact)?;
    let phi_l = p.coupling_strength() * t / (p.r + p.d);
    Ok(PhaseBranchPair { phi_l, delta_phi, overlap_magnitude: (0.5 * delta_phi).cos().abs() })
}

/// First zero of `cos(Δφ(t)/2)`, located by bracketing and bisection.
pub fn phase_orthogonalization_time(p: &ScenarioParams) -> Result<f64> {
    p.validate()?;
    let crossed = |t: f64| {
        phase_evolution(p, t)
            .map(|b| (0.5 * b.delta_phi).cos() <= 0.0)
    };
    first_crossing(crossed, 1e-12 * p.r, f64::MAX / 4.0, 1e-14)
}

/// One row of a displacement-model time series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DisplacementSample {
    pub t: f64,
    pub mean_x_l: f64,
    pub mean_x_r: f64,
    pub sigma_x: f64,
    pub overlap_magnitude: f64,
}

/// One row of a phase-model time series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseSample {
    pub t: f64,
    pub delta_phi: f64,
    pub overlap_magnitude: f64,
}

/// Sample times `t_max · i / steps`, `i = 0..=steps`; a single zero when
/// `t_max = 0`. Each time is evaluated directly, never by stepping.
pub fn sample_times(t_max: f64, steps: usize) -> Result<Vec<f64>> {
    if !(t_max.is_finite() && t_max >= 0.0) {
        return Err(Error::invalid("t_max must be finite and non-negative"));
    }
    if steps == 0 {
        return Err(Error::invalid("steps must be at least 1"));
    }
    if t_max == 0.0 {
        return Ok(vec![0.0]);
    }
    Ok((0..=steps).map(|i| t_max * i as f64 / steps as f64).collect())
}

pub fn displacement_series(
    p: &ScenarioParams,
    cfg: &OracleConfig,
    t_max: f64,
    steps: usize,
) -> Result<Vec<DisplacementSample>> {
    sample_times(t_max, steps)?
        .into_iter()
        .map(|t| {
            let bp = branch_pair(p, cfg, t)?;
            Ok(DisplacementSample {
                t,
                mean_x_l: bp.left.mean_x,
                mean_x_r: bp.right.mean_x,
                sigma_x: bp.left.sigma_x(),
                overlap_magnitude: bp.overlap.norm().min(1.0),
            })
        })
        .collect()
}

pub fn phase_series(p: &ScenarioParams, t_max: f64, steps: usize) -> Result<Vec<PhaseSample>> {
    sample_times(t_max, steps)?
        .into_iter()
        .map(|t| {
            let b = phase_evolution(p, t)?;
            Ok(PhaseSample { t, delta_phi: b.delta_phi, overlap_magnitude: b.overlap_magnitude })
        })
        .collect()
}
