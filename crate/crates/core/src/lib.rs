//! Causality, timing and separation bounds for mass and charge
//! interferometry, each paired with an independent numerical check.
//!
//! - [`units`]: dimension-tagged quantities and SI <-> Planck conversion.
//! - [`causal`]: 1+1 light-cone bookkeeping for the Alice/Bob timeline.
//! - [`bounds`]: closed-form bounds and the aggregate feasibility report.
//! - [`dynamics`]: Gaussian-wavepacket oracle for Bob's probe.
//! - [`cli`]: the `cib` command-line front end.
//!
//! Everything below the I/O layer works in Planck-normalized units.

pub mod bounds;
pub mod causal;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod search;
pub mod units;

pub use error::{Error, Result};
