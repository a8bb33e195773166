//! G-topological operators on interval unions.
//!
//! Hull formulas: the ordinary limit and statistical convergence both give
//! the ordinary closure; Cesàro summability gives the closed convex hull
//! (open at infinite ends). Everything else is derived from the hull.

mod connected;

pub use connected::{continuous_image, is_g_connected, union_with_common_point, ConnectednessReport, LawCheck};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::methods::MethodSpec;
use crate::realsets::RSet;

/// Fixed-point iteration budget for closure and interior.
pub const ITERATION_GUARD: usize = 8;

/// `[A]_G`, the set of G-limits of A-valued sequences in the domain.
pub fn hull(m: &MethodSpec, a: &RSet) -> Result<RSet> {
    match m.factor() {
        MethodSpec::Lim | MethodSpec::Statistical => Ok(a.closure()),
        MethodSpec::Cesaro => Ok(a.convex_closure()),
        other => Err(Error::unsupported(format!(
            "{other} has no closed-form hull; use the achievability oracle"
        ))),
    }
}

/// `(A)_G = ℝ ∖ [ℝ ∖ A]_G`.
pub fn kernel(m: &MethodSpec, a: &RSet) -> Result<RSet> {
    Ok(hull(m, &a.complement())?.complement())
}

pub fn is_g_closed(m: &MethodSpec, a: &RSet) -> Result<bool> {
    Ok(hull(m, a)? == *a)
}

pub fn is_g_open(m: &MethodSpec, a: &RSet) -> Result<bool> {
    Ok(a.is_subset(&kernel(m, a)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedPoint {
    pub set: RSet,
    /// Operator applications that changed the set.
    pub iterations: usize,
}

fn fixed_point(start: RSet, op: impl Fn(&RSet) -> Result<RSet>, what: &str) -> Result<FixedPoint> {
    let mut cur = start;
    for iterations in 0..=ITERATION_GUARD {
        let next = op(&cur)?;
        if next == cur {
            return Ok(FixedPoint { set: cur, iterations });
        }
        cur = next;
    }
    Err(Error::Internal(format!(
        "{what} did not stabilize within {ITERATION_GUARD} iterations (non-idempotent hull beyond guard)"
    )))
}

/// Smallest G-closed superset, by iterating the hull. The hull is monotone,
/// so the fixed point lies inside every G-closed superset.
pub fn g_closure(m: &MethodSpec, a: &RSet) -> Result<FixedPoint> {
    fixed_point(a.clone(), |s| hull(m, s), "G-closure")
}

/// Largest G-open subset, by iterating the kernel from `A`.
pub fn g_interior(m: &MethodSpec, a: &RSet) -> Result<FixedPoint> {
    fixed_point(a.clone(), |s| Ok(kernel(m, s)?.intersect(s)), "G-interior")
}

pub fn is_g_dense(m: &MethodSpec, a: &RSet) -> Result<bool> {
    Ok(g_closure(m, a)?.set.is_reals())
}

/// Whether `F = K ∩ A` for some G-closed `K`; the G-closure of `F` is the
/// smallest candidate.
pub fn is_relatively_g_closed(m: &MethodSpec, f: &RSet, a: &RSet) -> Result<bool> {
    if !f.is_subset(a) {
        return Err(Error::precondition(format!("{f} is not a subset of {a}")));
    }
    Ok(g_closure(m, f)?.set.intersect(a) == *f)
}
