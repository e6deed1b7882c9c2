//! One-dimensional search primitives: grid scan, golden-section and bisection.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// 1/φ, the golden-section interval shrink factor.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Scan `points` evenly spaced abscissae on `[lo, hi]` (endpoints included)
/// and return the one with the largest `f`. Ties keep the earliest point.
pub fn grid_argmax<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, points: usize) -> (f64, f64) {
    assert!(points >= 2 && lo < hi);
    let step = (hi - lo) / (points - 1) as f64;
    let mut best = (lo, f(lo));
    for i in 1..points {
        let x = if i == points - 1 { hi } else { lo + step * i as f64 };
        let y = f(x);
        if y > best.1 {
            best = (x, y);
        }
    }
    best
}

/// Golden-section search for the maximizer of a unimodal function on
/// `[lo, hi]`, driven only by pairwise comparisons.
///
/// `cmp(a, b)` must return the ordering of `f(a)` relative to `f(b)`.
/// Passing a comparison that is exact in sign (rather than comparing two
/// rounded function values) lets the search resolve the argmax far below
/// the `sqrt(eps)` flatness limit of a smooth maximum.
pub fn golden_section_max_by<C>(cmp: C, mut lo: f64, mut hi: f64, xtol: f64) -> f64
where
    C: Fn(f64, f64) -> Ordering,
{
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    // 200 iterations shrink any finite bracket below one ulp
    for _ in 0..200 {
        if hi - lo <= xtol {
            break;
        }
        if cmp(x1, x2) == Ordering::Less {
            lo = x1;
            x1 = x2;
            x2 = lo + INV_PHI * (hi - lo);
        } else {
            hi = x2;
            x2 = x1;
            x1 = hi - INV_PHI * (hi - lo);
        }
    }
    0.5 * (lo + hi)
}

/// Golden-section maximization comparing rounded function values.
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, xtol: f64) -> f64 {
    golden_section_max_by(|a, b| f(a).total_cmp(&f(b)), lo, hi, xtol)
}

/// Smallest `t` in `(0, ∞)` with `pred(t)` true, for a predicate that is
/// false near zero and stays true once it turns true.
///
/// The bracket is found by doubling from `t_start` up to `t_limit`; the
/// boundary is then bisected until the bracket is below `rtol` relative.
pub fn first_crossing<P: Fn(f64) -> Result<bool>>(pred: P, t_start: f64, t_limit: f64, rtol: f64) -> Result<f64> {
    if !(t_start > 0.0 && t_start.is_finite()) {
        return Err(Error::invalid("bracket start must be positive and finite"));
    }
    let mut lo = 0.0;
    let mut hi = t_start;
    while !pred(hi)? {
        lo = hi;
        hi *= 2.0;
        if hi > t_limit || !hi.is_finite() {
            return Err(Error::NoConvergence(format!(
                "no crossing found below t = {t_limit:e}"
            )));
        }
    }
    bisect(&pred, lo, hi, rtol)
}

fn bisect<P: Fn(f64) -> Result<bool>>(pred: &P, mut lo: f64, mut hi: f64, rtol: f64) -> Result<f64> {
    for _ in 0..2000 {
        if hi - lo <= rtol * hi {
            return Ok(hi);
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Ok(hi);
        }
        if pred(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Err(Error::NoConvergence("bisection did not reach tolerance".into()))
}
