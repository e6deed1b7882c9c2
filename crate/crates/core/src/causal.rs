//! 1+1 Minkowski bookkeeping for the Alice/Bob timing argument.
//!
//! All coordinates are Planck-normalized (c = 1) in the common rest frame of
//! Alice (at x = 0) and Bob (at x = R). Bob decides at t = 0; Alice holds her
//! superposition from t = -R and recombines at t = -R + T_A + T_B.

use serde::Serialize;

use crate::error::{Error, Result};

/// Relative noise floor for classifying an interval as lightlike.
pub const LIGHTLIKE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Event {
    pub t: f64,
    pub x: f64,
    pub label: String,
}

impl Event {
    pub fn new(t: f64, x: f64, label: impl Into<String>) -> Self {
        Self { t, x, label: label.into() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IntervalClass {
    Timelike,
    Lightlike,
    Spacelike,
}

/// Classify the separation of two events by `s² = Δt² − Δx²`.
///
/// An interval is lightlike when `|s²| ≤ 1e-12 · max(1, Δt², Δx²)`; below unit
/// separations this is the plain absolute threshold.
pub fn interval_class(e1: &Event, e2: &Event) -> (IntervalClass, f64) {
    let dt = e2.t - e1.t;
    let dx = e2.x - e1.x;
    let s2 = dt * dt - dx * dx;
    let scale = 1f64.max(dt * dt).max(dx * dx);
    let class = if s2.abs() <= LIGHTLIKE_TOLERANCE * scale {
        IntervalClass::Lightlike
    } else if s2 > 0.0 {
        IntervalClass::Timelike
    } else {
        IntervalClass::Spacelike
    };
    (class, s2)
}

/// `e1` can influence `e2`: `e2` lies in or on the future light cone of `e1`.
pub fn causally_precedes(e1: &Event, e2: &Event) -> bool {
    e2.t - e1.t >= (e2.x - e1.x).abs()
}

/// Time at which the source state was seen by an observer at distance `r`.
pub fn retarded_source_time(t_obs: f64, r: f64) -> f64 {
    t_obs - r
}

/// Bob's measurement completes before its own disturbance can reach Alice.
pub fn backreaction_free(t_b: f64, r: f64) -> bool {
    t_b < r
}

/// Timing of one Alice/Bob run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Schedule {
    /// Alice–Bob separation R.
    pub r: f64,
    /// Alice's recombination duration T_A.
    pub t_a: f64,
    /// Bob's measurement duration T_B.
    pub t_b: f64,
}

impl Schedule {
    pub fn new(r: f64, t_a: f64, t_b: f64) -> Result<Self> {
        if !(r.is_finite() && t_a.is_finite() && t_b.is_finite()) {
            return Err(Error::invalid("non-finite schedule entry"));
        }
        if r <= 0.0 {
            return Err(Error::invalid("nonpositive distance"));
        }
        if t_a < 0.0 || t_b < 0.0 {
            return Err(Error::invalid("negative duration"));
        }
        Ok(Self { r, t_a, t_b })
    }

    /// Total duration T_A + T_B, the quantity both causality conditions test.
    pub fn total(&self) -> f64 {
        self.t_a + self.t_b
    }
}

pub const A_CREATE: &str = "A_create";
pub const B_DECIDE: &str = "B_decide";
pub const B_MEASURE_DONE: &str = "B_measure_done";
pub const A_SIGNAL_ARRIVAL: &str = "A_signal_arrival";
pub const A_RECOMBINE_DONE: &str = "A_recombine_done";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timeline {
    pub events: Vec<Event>,
}

impl Timeline {
    pub fn event(&self, label: &str) -> Option<&Event> {
        self.events.iter().find(|e| e.label == label)
    }

    fn time_of(&self, label: &str) -> f64 {
        self.event(label).map(|e| e.t).expect("timeline carries all five events")
    }

    /// `A_recombine_done.t − A_signal_arrival.t` read off the events.
    pub fn margin(&self) -> f64 {
        self.time_of(A_RECOMBINE_DONE) - self.time_of(A_SIGNAL_ARRIVAL)
    }
}

pub fn build_timeline(s: &Schedule) -> Timeline {
    let r = s.r;
    Timeline {
        events: vec![
            Event::new(-r, 0.0, A_CREATE),
            Event::new(0.0, r, B_DECIDE),
            Event::new(s.t_b, r, B_MEASURE_DONE),
            Event::new(r, 0.0, A_SIGNAL_ARRIVAL),
            Event::new(-r + s.total(), 0.0, A_RECOMBINE_DONE),
        ],
    }
}

/// Whether a run that exactly meets a bound counts as consistent.
///
/// Both causality inequalities are strict, so `Strict` is the default;
/// `NonStrict` exists for sensitivity studies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    #[default]
    Strict,
    NonStrict,
}

impl Boundary {
    fn accepts(self, margin: f64) -> bool {
        match self {
            Boundary::Strict => margin > 0.0,
            Boundary::NonStrict => margin >= 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CausalVerdict {
    pub no_signalling_ok: bool,
    pub margin: f64,
    pub explanation: String,
}

/// Round-trip condition `T_A + T_B > 2R/c`: Alice must not be able to
/// complete her recombination before light from Bob's decision reaches her.
pub fn check_no_signalling(s: &Schedule) -> CausalVerdict {
    check_no_signalling_with(s, Boundary::Strict)
}

pub fn check_no_signalling_with(s: &Schedule, boundary: Boundary) -> CausalVerdict {
    // Evaluated as a single subtraction so that the sign of `margin` agrees
    // exactly with the comparison T_A + T_B vs 2R.
    let margin = s.total() - 2.0 * s.r;
    let ok = boundary.accepts(margin);
    let explanation = if ok {
        format!("recombination completes {margin:e} t_P after light from Bob's decision arrives")
    } else {
        format!(
            "recombination completes {:e} t_P before (or as) light from Bob's decision arrives; \
             Alice could learn Bob's choice",
            -margin
        )
    };
    CausalVerdict { no_signalling_ok: ok, margin, explanation }
}

/// One-way condition `T_A + T_B > R/c`, the weaker light-crossing criterion.
pub fn check_one_way(s: &Schedule, boundary: Boundary) -> CausalVerdict {
    let margin = s.total() - s.r;
    let ok = boundary.accepts(margin);
    let explanation = if ok {
        format!("T_A + T_B exceeds one light-crossing time by {margin:e} t_P")
    } else {
        format!("T_A + T_B falls {:e} t_P short of one light-crossing time", -margin)
    };
    CausalVerdict { no_signalling_ok: ok, margin, explanation }
}
