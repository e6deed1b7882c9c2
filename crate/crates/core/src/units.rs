//! Dimension-tagged quantities and SI <-> Planck normalization.
//!
//! Every other module computes in Planck-normalized reals (c = ħ = G = 1,
//! with charge measured in `q_P = sqrt(4π ε₀ ħ c)` so that the Coulomb pair
//! coupling `q_A q_B / (4π ε₀)` is normalized exactly like `G m_A m_B`).
//! SI values only appear at I/O boundaries.
//!
//! Constants are CODATA 2018:
//!
//! | symbol | value              | unit          |
//! |--------|--------------------|---------------|
//! | ħ      | 1.054571817e-34    | J s           |
//! | c      | 299792458          | m s^-1        |
//! | G      | 6.67430e-11        | m^3 kg^-1 s^-2|
//! | ε₀     | 8.8541878128e-12   | F m^-1        |

use std::f64::consts::PI;
use std::{fmt, ops};

use serde::Serialize;

use crate::error::{Error, Result};

/// reduced Planck constant (J s)
pub const HBAR: f64 = 1.054571817e-34;
/// speed of light in vacuum (m s^-1)
pub const C: f64 = 2.99792458e8;
/// Newtonian gravitational constant (m^3 kg^-1 s^-2)
pub const G: f64 = 6.67430e-11;
/// vacuum permittivity (F m^-1)
pub const EPS0: f64 = 8.8541878128e-12;

/// Exponents of the four base dimensions (length, mass, time, charge).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct Dimension {
    pub length: i8,
    pub mass: i8,
    pub time: i8,
    pub charge: i8,
}

impl Dimension {
    pub const fn new(length: i8, mass: i8, time: i8, charge: i8) -> Self {
        Self { length, mass, time, charge }
    }

    pub const DIMENSIONLESS: Self = Self::new(0, 0, 0, 0);
    pub const LENGTH: Self = Self::new(1, 0, 0, 0);
    pub const MASS: Self = Self::new(0, 1, 0, 0);
    pub const TIME: Self = Self::new(0, 0, 1, 0);
    pub const CHARGE: Self = Self::new(0, 0, 0, 1);
    pub const VELOCITY: Self = Self::new(1, 0, -1, 0);
    pub const MOMENTUM: Self = Self::new(1, 1, -1, 0);
    pub const FORCE: Self = Self::new(1, 1, -2, 0);
    pub const ACTION: Self = Self::new(2, 1, -1, 0);
    pub const FREQUENCY: Self = Self::new(0, 0, -1, 0);

    pub fn powi(self, n: i8) -> Self {
        Self::new(self.length * n, self.mass * n, self.time * n, self.charge * n)
    }

    fn halved(self) -> Option<Self> {
        let all_even = [self.length, self.mass, self.time, self.charge]
            .iter()
            .all(|e| e % 2 == 0);
        all_even.then(|| Self::new(self.length / 2, self.mass / 2, self.time / 2, self.charge / 2))
    }

    /// SI symbol of the dimension's coherent unit, e.g. `m kg s^-2`.
    pub fn si_symbol(self) -> String {
        let parts: Vec<String> = [("m", self.length), ("kg", self.mass), ("s", self.time), ("C", self.charge)]
            .iter()
            .filter(|(_, e)| *e != 0)
            .map(|(u, e)| if *e == 1 { u.to_string() } else { format!("{u}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }
}

impl ops::Mul for Dimension {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.length + rhs.length,
            self.mass + rhs.mass,
            self.time + rhs.time,
            self.charge + rhs.charge,
        )
    }
}

impl ops::Div for Dimension {
    type Output = Self;

    fn div(self, rhs: Self) -> Self {
        Self::new(
            self.length - rhs.length,
            self.mass - rhs.mass,
            self.time - rhs.time,
            self.charge - rhs.charge,
        )
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.si_symbol())
    }
}

/// A finite SI value tagged with its dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quantity {
    value: f64,
    dim: Dimension,
}

impl Quantity {
    pub fn new(value: f64, dim: Dimension) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::invalid(format!("non-finite value {value} for {dim}")));
        }
        Ok(Self { value, dim })
    }

    /// SI value in the coherent unit of `dim`.
    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn checked_add(&self, rhs: &Quantity) -> Result<Quantity> {
        self.same_dim(rhs)?;
        Quantity::new(self.value + rhs.value, self.dim)
    }

    pub fn checked_sub(&self, rhs: &Quantity) -> Result<Quantity> {
        self.same_dim(rhs)?;
        Quantity::new(self.value - rhs.value, self.dim)
    }

    pub fn checked_mul(&self, rhs: &Quantity) -> Result<Quantity> {
        Quantity::new(self.value * rhs.value, self.dim * rhs.dim)
    }

    pub fn checked_div(&self, rhs: &Quantity) -> Result<Quantity> {
        if rhs.value == 0.0 {
            return Err(Error::invalid("division by a zero quantity"));
        }
        Quantity::new(self.value / rhs.value, self.dim / rhs.dim)
    }

    pub fn scale(&self, factor: f64) -> Result<Quantity> {
        Quantity::new(self.value * factor, self.dim)
    }

    pub fn powi(&self, n: i8) -> Result<Quantity> {
        Quantity::new(self.value.powi(n.into()), self.dim.powi(n))
    }

    pub fn sqrt(&self) -> Result<Quantity> {
        let dim = self
            .dim
            .halved()
            .ok_or_else(|| Error::invalid(format!("square root of odd dimension {}", self.dim)))?;
        if self.value < 0.0 {
            return Err(Error::invalid("square root of a negative quantity"));
        }
        Quantity::new(self.value.sqrt(), dim)
    }

    fn same_dim(&self, rhs: &Quantity) -> Result<()> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: rhs.dim });
        }
        Ok(())
    }
}

pub fn make_quantity(value: f64, dim: Dimension) -> Result<Quantity> {
    Quantity::new(value, dim)
}

pub fn planck_mass_si() -> f64 {
    (HBAR * C / G).sqrt()
}

pub fn planck_length_si() -> f64 {
    (HBAR * G / (C * C * C)).sqrt()
}

pub fn planck_time_si() -> f64 {
    planck_length_si() / C
}

pub fn planck_charge_si() -> f64 {
    (4.0 * PI * EPS0 * HBAR * C).sqrt()
}

/// SI size of the Planck unit of `dim`.
pub fn planck_scale(dim: Dimension) -> f64 {
    planck_length_si().powi(dim.length.into())
        * planck_mass_si().powi(dim.mass.into())
        * planck_time_si().powi(dim.time.into())
        * planck_charge_si().powi(dim.charge.into())
}

/// Express `q` as a multiple of the Planck unit of its dimension.
pub fn to_planck(q: &Quantity) -> f64 {
    q.value / planck_scale(q.dim)
}

pub fn from_planck(x: f64, dim: Dimension) -> Result<Quantity> {
    if !x.is_finite() {
        return Err(Error::invalid(format!("non-finite Planck value {x}")));
    }
    Quantity::new(x * planck_scale(dim), dim)
}

/// The fundamental constants as tagged quantities.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Constants {
    pub g: Quantity,
    pub c: Quantity,
    pub hbar: Quantity,
    pub eps0: Quantity,
    pub planck_mass: Quantity,
    pub planck_length: Quantity,
    pub planck_time: Quantity,
    pub planck_charge: Quantity,
}

impl Constants {
    pub fn codata2018() -> Self {
        let q = |value, dim| Quantity { value, dim };
        Self {
            g: q(G, Dimension::new(3, -1, -2, 0)),
            c: q(C, Dimension::VELOCITY),
            hbar: q(HBAR, Dimension::ACTION),
            eps0: q(EPS0, Dimension::new(-3, -1, 2, 2)),
            planck_mass: q(planck_mass_si(), Dimension::MASS),
            planck_length: q(planck_length_si(), Dimension::LENGTH),
            planck_time: q(planck_time_si(), Dimension::TIME),
            planck_charge: q(planck_charge_si(), Dimension::CHARGE),
        }
    }
}

/// Unit suffixes accepted on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitSuffix {
    Kilogram,
    Metre,
    Second,
    Coulomb,
    PlanckMass,
    PlanckLength,
    PlanckTime,
}

impl UnitSuffix {
    // two-letter suffixes first so that "mp" is not read as "m"
    const TABLE: [(&'static str, UnitSuffix); 7] = [
        ("kg", UnitSuffix::Kilogram),
        ("mp", UnitSuffix::PlanckMass),
        ("lp", UnitSuffix::PlanckLength),
        ("tp", UnitSuffix::PlanckTime),
        ("m", UnitSuffix::Metre),
        ("s", UnitSuffix::Second),
        ("C", UnitSuffix::Coulomb),
    ];

    pub fn dimension(self) -> Dimension {
        match self {
            UnitSuffix::Kilogram | UnitSuffix::PlanckMass => Dimension::MASS,
            UnitSuffix::Metre | UnitSuffix::PlanckLength => Dimension::LENGTH,
            UnitSuffix::Second | UnitSuffix::PlanckTime => Dimension::TIME,
            UnitSuffix::Coulomb => Dimension::CHARGE,
        }
    }

    pub fn is_planck(self) -> bool {
        matches!(self, UnitSuffix::PlanckMass | UnitSuffix::PlanckLength | UnitSuffix::PlanckTime)
    }
}

/// Default interpretation of a bare number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UnitSystem {
    #[default]
    Si,
    Planck,
}

/// Parse `<number>[suffix]`, e.g. `1e6mp`, `2.5e-3m`, `0.1s`, `3`.
///
/// A bare number is read in the coherent unit of `expected` under `system`.
/// A suffix of the wrong dimension is rejected.
pub fn parse_quantity(text: &str, expected: Dimension, system: UnitSystem) -> Result<Quantity> {
    let (q, _) = parse_with_planck(text, expected, system)?;
    Ok(q)
}

/// Like [`parse_quantity`], also returning the Planck-normalized value.
///
/// Planck-denominated input is returned unchanged rather than through a
/// SI round trip, so `1e6mp` yields exactly `1e6`.
pub fn parse_with_planck(text: &str, expected: Dimension, system: UnitSystem) -> Result<(Quantity, f64)> {
    let trimmed = text.trim();
    let (number, suffix) = UnitSuffix::TABLE
        .iter()
        .find_map(|(s, u)| trimmed.strip_suffix(s).map(|n| (n, Some(*u))))
        .unwrap_or((trimmed, None));
    let x: f64 = number
        .parse()
        .map_err(|_| Error::invalid(format!("cannot parse number in '{text}'")))?;
    if !x.is_finite() {
        return Err(Error::invalid(format!("non-finite value in '{text}'")));
    }
    let planck = match suffix {
        Some(u) if u.dimension() != expected => {
            return Err(Error::DimensionMismatch { left: expected, right: u.dimension() })
        }
        Some(u) => u.is_planck(),
        None => system == UnitSystem::Planck,
    };
    if planck {
        Ok((from_planck(x, expected)?, x))
    } else {
        let q = Quantity::new(x, expected)?;
        Ok((q, to_planck(&q)))
    }
}
