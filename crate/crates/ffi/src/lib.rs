//! C ABI over `cib`.
//!
//! Scenarios and reports are opaque heap handles created and destroyed
//! through this interface. Every fallible function returns a [`CibStatus`];
//! on failure a human-readable message is available from
//! [`cib_last_error_message`] on the same thread. All quantities crossing the
//! boundary are Planck-normalized unless the function name says otherwise.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use cib::bounds::{self, BoundsReport, Coupling, Expansion, Models, ScenarioParams};
use cib::causal::{self, Boundary, Schedule};
use cib::dynamics;
use cib::units::{self, Dimension};
use cib::Error;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CibStatus {
    Ok = 0,
    InvalidInput = 1,
    NoConvergence = 2,
    NullPointer = 3,
    MissingConfinement = 4,
    GeometryOverrideRequired = 5,
    DimensionMismatch = 6,
    NotPositiveDefinite = 7,
    NotPure = 8,
    /// The requested report field was not computed for the chosen models.
    Unavailable = 9,
    Panic = 10,
}

/// Which probe models a report covers.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CibModels {
    Displacement = 0,
    Phase = 1,
    Both = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CibDimension {
    Dimensionless = 0,
    Length = 1,
    Mass = 2,
    Time = 3,
    Charge = 4,
}

/// Numeric fields of a bounds report.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CibReportField {
    OneWayTaTbMin = 0,
    RoundTripTaTbMin = 1,
    TbDisplacement = 2,
    TaMinRoundTrip = 3,
    TaMinOneWay = 4,
    RMaxDisplacement = 5,
    TbPhaseExact = 6,
    TbPhaseApprox = 7,
    RMaxPhase = 8,
    MAOverMp = 9,
    MBOverMp = 10,
    MassProductOverMp2 = 11,
    CouplingStrength = 12,
}

/// Boolean flags of a bounds report.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CibReportFlag {
    GeometryValid = 0,
    DisplacementBackreactionFree = 1,
    PhaseBackreactionFree = 2,
    MAMuchGreaterThanPlanck = 3,
    MBMuchGreaterThanPlanck = 4,
    MassProductMuchGreaterThanPlanck = 5,
    CouplingMuchGreaterThanUnity = 6,
}

/// Opaque scenario handle.
pub struct CibScenario {
    params: ScenarioParams,
}

/// Opaque bounds report handle.
pub struct CibReport {
    report: BoundsReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> CibStatus {
    match e {
        Error::InvalidInput(_) => CibStatus::InvalidInput,
        Error::DimensionMismatch { .. } => CibStatus::DimensionMismatch,
        Error::GeometryOverrideRequired { .. } => CibStatus::GeometryOverrideRequired,
        Error::MissingConfinement => CibStatus::MissingConfinement,
        Error::NotPositiveDefinite => CibStatus::NotPositiveDefinite,
        Error::NotPure { .. } => CibStatus::NotPure,
        Error::NoConvergence(_) => CibStatus::NoConvergence,
    }
}

/// Run `f`, translating errors and panics into status codes.
fn guard<F: FnOnce() -> Result<(), CibStatus>>(f: F) -> CibStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CibStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_last_error("internal panic".into());
            CibStatus::Panic
        }
    }
}

fn fail(e: Error) -> CibStatus {
    let s = status_of(&e);
    set_last_error(e.to_string());
    s
}

fn null(what: &str) -> CibStatus {
    set_last_error(format!("null pointer: {what}"));
    CibStatus::NullPointer
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), CibStatus> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn scenario_ref<'a>(s: *const CibScenario) -> Result<&'a CibScenario, CibStatus> {
    s.as_ref().ok_or_else(|| null("scenario"))
}

unsafe fn scenario_mut<'a>(s: *mut CibScenario) -> Result<&'a mut CibScenario, CibStatus> {
    s.as_mut().ok_or_else(|| null("scenario"))
}

fn dimension(d: CibDimension) -> Dimension {
    match d {
        CibDimension::Dimensionless => Dimension::DIMENSIONLESS,
        CibDimension::Length => Dimension::LENGTH,
        CibDimension::Mass => Dimension::MASS,
        CibDimension::Time => Dimension::TIME,
        CibDimension::Charge => Dimension::CHARGE,
    }
}

fn models(m: CibModels) -> Models {
    match m {
        CibModels::Displacement => Models::Displacement,
        CibModels::Phase => Models::Phase,
        CibModels::Both => Models::Both,
    }
}

/// Message for the most recent failure on this thread, or NULL.
///
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn cib_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cib_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Create a gravitational scenario. Masses in m_P, lengths in l_P.
#[no_mangle]
pub unsafe extern "C" fn cib_scenario_new(m_a: f64, m_b: f64, d: f64, r: f64, out: *mut *mut CibScenario) -> CibStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let params = ScenarioParams::gravity(m_a, m_b, d, r);
        params.validate().map_err(fail)?;
        write(out, Box::into_raw(Box::new(CibScenario { params })), "out")
    })
}

/// Destroy a scenario. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn cib_scenario_free(s: *mut CibScenario) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Switch to Coulomb coupling with charges in q_P.
#[no_mangle]
pub unsafe extern "C" fn cib_scenario_set_coulomb(s: *mut CibScenario, q_a: f64, q_b: f64) -> CibStatus {
    guard(|| {
        let sc = scenario_mut(s)?;
        let next = sc.params.with_coupling(Coupling::Coulomb { q_a, q_b });
        next.validate().map_err(fail)?;
        sc.params = next;
        Ok(())
    })
}

/// Set the minimum trap confinement ΔX_min (l_P).
#[no_mangle]
pub unsafe extern "C" fn cib_scenario_set_delta_x_min(s: *mut CibScenario, dx: f64) -> CibStatus {
    guard(|| {
        let sc = scenario_mut(s)?;
        let next = sc.params.with_delta_x_min(dx);
        next.validate().map_err(fail)?;
        sc.params = next;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn cib_scenario_set_r(s: *mut CibScenario, r: f64) -> CibStatus {
    guard(|| {
        let sc = scenario_mut(s)?;
        let next = sc.params.with_r(r);
        next.validate().map_err(fail)?;
        sc.params = next;
        Ok(())
    })
}

/// Allow the far-field formulas below the `R/d` threshold.
#[no_mangle]
pub unsafe extern "C" fn cib_scenario_set_override_validity(s: *mut CibScenario, enabled: bool) -> CibStatus {
    guard(|| {
        scenario_mut(s)?.params.override_validity = enabled;
        Ok(())
    })
}

/// Build a feasibility report. Free it with [`cib_report_free`].
#[no_mangle]
pub unsafe extern "C" fn cib_report_new(s: *const CibScenario, which: CibModels, out: *mut *mut CibReport) -> CibStatus {
    guard(|| {
        let sc = scenario_ref(s)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let report = bounds::feasibility_report_for(&sc.params, models(which)).map_err(fail)?;
        write(out, Box::into_raw(Box::new(CibReport { report })), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn cib_report_free(r: *mut CibReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Read one numeric field. Returns `Unavailable` when the field's model was
/// not part of the report.
#[no_mangle]
pub unsafe extern "C" fn cib_report_get(r: *const CibReport, field: CibReportField, out: *mut f64) -> CibStatus {
    guard(|| {
        let rep = &r.as_ref().ok_or_else(|| null("report"))?.report;
        match rep.numeric_fields()[field as usize] {
            (_, Some(v)) => write(out, v, "out"),
            (name, None) => {
                set_last_error(format!("field {name} not computed for this model selection"));
                Err(CibStatus::Unavailable)
            }
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn cib_report_flag(r: *const CibReport, flag: CibReportFlag, out: *mut bool) -> CibStatus {
    guard(|| {
        let rep = &r.as_ref().ok_or_else(|| null("report"))?.report;
        match rep.flag_fields()[flag as usize] {
            (_, Some(v)) => write(out, v, "out"),
            (name, None) => {
                set_last_error(format!("flag {name} not computed for this model selection"));
                Err(CibStatus::Unavailable)
            }
        }
    })
}

/// Maximize the η objective; writes η* and the coefficient (16/27).
#[no_mangle]
pub unsafe extern "C" fn cib_optimize_eta(eta_star: *mut f64, coefficient: *mut f64) -> CibStatus {
    guard(|| {
        if eta_star.is_null() || coefficient.is_null() {
            return Err(null("out"));
        }
        let opt = bounds::optimize_eta();
        write(eta_star, opt.eta_star, "eta_star")?;
        write(coefficient, opt.coefficient, "coefficient")
    })
}

/// Round-trip no-signalling verdict for one schedule (Planck times).
#[no_mangle]
pub unsafe extern "C" fn cib_check_no_signalling(
    r: f64,
    t_a: f64,
    t_b: f64,
    non_strict: bool,
    ok: *mut bool,
    margin: *mut f64,
) -> CibStatus {
    guard(|| {
        if ok.is_null() || margin.is_null() {
            return Err(null("out"));
        }
        let s = Schedule::new(r, t_a, t_b).map_err(fail)?;
        let boundary = if non_strict { Boundary::NonStrict } else { Boundary::Strict };
        let v = causal::check_no_signalling_with(&s, boundary);
        write(ok, v.no_signalling_ok, "ok")?;
        write(margin, v.margin, "margin")
    })
}

#[no_mangle]
pub unsafe extern "C" fn cib_tb_displacement(s: *const CibScenario, out: *mut f64) -> CibStatus {
    guard(|| {
        let sc = scenario_ref(s)?;
        let v = bounds::tb_displacement(&sc.params).map_err(fail)?;
        write(out, v, "out")
    })
}

/// Phase-model measurement time; `exact` selects the unexpanded form.
#[no_mangle]
pub unsafe extern "C" fn cib_tb_phase(s: *const CibScenario, exact: bool, out: *mut f64) -> CibStatus {
    guard(|| {
        let sc = scenario_ref(s)?;
        let mode = if exact { Expansion::Exact } else { Expansion::LeadingOrder };
        let v = bounds::tb_phase(&sc.params, mode).map_err(fail)?;
        write(out, v, "out")
    })
}

/// Gaussian-oracle time for the probe overlap to fall to `eps`.
#[no_mangle]
pub unsafe extern "C" fn cib_orthogonalization_time(s: *const CibScenario, sigma0: f64, eps: f64, out: *mut f64) -> CibStatus {
    guard(|| {
        let sc = scenario_ref(s)?;
        let v = dynamics::orthogonalization_time(&sc.params, sigma0, eps).map_err(fail)?;
        write(out, v, "out")
    })
}

/// Convert an SI value to Planck units.
#[no_mangle]
pub unsafe extern "C" fn cib_to_planck(value_si: f64, dim: CibDimension, out: *mut f64) -> CibStatus {
    guard(|| {
        let q = units::make_quantity(value_si, dimension(dim)).map_err(fail)?;
        write(out, units::to_planck(&q), "out")
    })
}

/// Convert a Planck-normalized value to SI.
#[no_mangle]
pub unsafe extern "C" fn cib_from_planck(value: f64, dim: CibDimension, out: *mut f64) -> CibStatus {
    guard(|| {
        let q = units::from_planck(value, dimension(dim)).map_err(fail)?;
        write(out, q.value(), "out")
    })
}
