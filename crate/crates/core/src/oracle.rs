//! Brute-force achievability oracle for hull formulas.
//!
//! Builds explicit sequences whose terms provably lie in `A`, evaluates
//! them term by term in floating point up to `N`, and asks which grid points
//! they reach. It never consults the hull formulas except to label grid
//! points as claimed-inside or claimed-outside.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::methods::MethodSpec;
use crate::rat::{ExtRat, Rat};
use crate::realsets::RSet;
use crate::topology::hull;

pub const N_TERMS: u64 = 100_000;
pub const INSIDE_TOL: f64 = 1e-6;
pub const OUTSIDE_TOL: f64 = 1e-3;
/// Largest approach offset.
const APPROACH_WIDTH: i64 = 32;
/// Mixing period for two-point Cesàro mixtures; divides `N/2`.
const MIX_PERIOD: u64 = 16;

/// An A-valued sequence with a membership certificate.
#[derive(Clone, Debug)]
enum Construction {
    Const(Rat),
    /// `target + width·2^(-n)`; terms lie strictly between `target` and
    /// `target + width/2` inclusive of the latter.
    Approach { target: Rat, width: Rat },
    /// `high(n)` when `n mod period < k`, else `low(n)`.
    Mix {
        high: Box<Construction>,
        low: Box<Construction>,
        k: u64,
        period: u64,
    },
}

impl Construction {
    fn term(&self, n: u64) -> f64 {
        match self {
            Construction::Const(v) => v.to_f64(),
            Construction::Approach { target, width } => target.to_f64() + width.to_f64() * (-(n as f64)).exp2(),
            Construction::Mix { high, low, k, period } => {
                if n % period < *k {
                    high.term(n)
                } else {
                    low.term(n)
                }
            }
        }
    }

    /// Exact check that every term lies in `a`.
    fn certify(&self, a: &RSet) -> bool {
        match self {
            Construction::Const(v) => a.contains(v),
            Construction::Approach { target, width } => {
                let far = target + width / Rat::int(2);
                let span = if width.is_positive() {
                    RSet::interval(target.clone().into(), false, far.into(), true)
                } else {
                    RSet::interval(far.into(), true, target.clone().into(), false)
                };
                !width.is_zero() && span.is_subset(a)
            }
            Construction::Mix { high, low, k, period } => {
                (*k == 0 || high.certify(a)) && (k == period || low.certify(a))
            }
        }
    }

    fn describe(&self) -> String {
        match self {
            Construction::Const(v) => format!("const {v}"),
            Construction::Approach { target, width } => format!("{target} + ({width})*2^-n"),
            Construction::Mix { high, low, k, period } => {
                format!("mix[{k}/{period}]({} | {})", high.describe(), low.describe())
            }
        }
    }
}

/// Partial G-evaluation with a settling test; `None` when the partial
/// values do not settle.
fn partial_eval(m: &MethodSpec, c: &Construction, n: u64) -> Option<f64> {
    let half = n / 2;
    match m.factor() {
        MethodSpec::Lim => {
            let last = c.term(n);
            let settled = (half..=n).step_by(97).all(|k| (c.term(k) - last).abs() <= 1e-9);
            settled.then_some(last)
        }
        MethodSpec::Cesaro => {
            let (mut sum, mut comp) = (0.0f64, 0.0f64);
            let mut at_half = 0.0;
            for k in 1..=n {
                let y = c.term(k) - comp;
                let t = sum + y;
                comp = (t - sum) - y;
                sum = t;
                if k == half {
                    at_half = sum / half as f64;
                }
            }
            let mean = sum / n as f64;
            ((mean - at_half).abs() <= INSIDE_TOL).then_some(mean)
        }
        MethodSpec::Statistical => {
            let mut window: Vec<f64> = (half + 1..=n).map(|k| c.term(k)).collect();
            window.sort_by(f64::total_cmp);
            let median = window[window.len() / 2];
            let close = window.iter().filter(|v| (*v - median).abs() <= INSIDE_TOL).count();
            (close as f64 >= 0.99 * window.len() as f64).then_some(median)
        }
        _ => None,
    }
}

/// Constants and one-sided approaches at every finite endpoint, plus an
/// interior point of each component.
fn basic_constructions(a: &RSet) -> Vec<Construction> {
    let mut out = Vec::new();
    let cap = Rat::new(1, APPROACH_WIDTH);
    for iv in a.intervals() {
        if iv.is_singleton() {
            out.push(Construction::Const(iv.lo().finite().expect("finite").clone()));
            continue;
        }
        let inner = match (iv.lo(), iv.hi()) {
            (ExtRat::Finite(l), ExtRat::Finite(h)) => (l + h) / Rat::int(2),
            (ExtRat::Finite(l), _) => l + Rat::one(),
            (_, ExtRat::Finite(h)) => h - Rat::one(),
            _ => Rat::zero(),
        };
        out.push(Construction::Const(inner));
        let len = match (iv.lo(), iv.hi()) {
            (ExtRat::Finite(l), ExtRat::Finite(h)) => (h - l).min(cap.clone()),
            _ => cap.clone(),
        };
        if let ExtRat::Finite(l) = iv.lo() {
            if iv.lo_closed() {
                out.push(Construction::Const(l.clone()));
            }
            out.push(Construction::Approach {
                target: l.clone(),
                width: len.clone(),
            });
        }
        if let ExtRat::Finite(h) = iv.hi() {
            if iv.hi_closed() {
                out.push(Construction::Const(h.clone()));
            }
            out.push(Construction::Approach {
                target: h.clone(),
                width: -&len,
            });
        }
    }
    out
}

fn target(c: &Construction) -> Rat {
    match c {
        Construction::Const(v) | Construction::Approach { target: v, .. } => v.clone(),
        Construction::Mix { .. } => unreachable!("mixes are built from basic constructions"),
    }
}

/// Divisors of `N/2`, so mixing periods divide both evaluation points.
fn half_divisors() -> Vec<u64> {
    let half = N_TERMS / 2;
    (1..=half).filter(|d| half.is_multiple_of(*d)).collect()
}

/// Sequences that mix a base value with rare large values from an
/// unbounded component, aimed at grid point `t`.
fn ray_mixes(a: &RSet, bases: &[Construction], grid: &[Rat]) -> Vec<Construction> {
    let divisors = half_divisors();
    let mut out = Vec::new();
    for base in bases {
        let b = target(base);
        for t in grid {
            if *t == b {
                continue;
            }
            // With period D, the mean is b + (H - b)/D, so H = b + D(t - b).
            for &d in divisors.iter().skip(1) {
                let h = &b + Rat::from(d) * (t - &b);
                if a.contains(&h) {
                    out.push(Construction::Mix {
                        high: Box::new(Construction::Const(h)),
                        low: Box::new(base.clone()),
                        k: 1,
                        period: d,
                    });
                    break;
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleMiss {
    pub point: Rat,
    pub claimed_inside: bool,
    /// Closest achieved value and the construction reaching it.
    pub nearest: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleOutcome {
    pub method: String,
    pub set: RSet,
    pub hull: RSet,
    pub grid_points: usize,
    pub inside: usize,
    pub outside: usize,
    pub constructions: usize,
    pub misses: Vec<OracleMiss>,
}

impl OracleOutcome {
    pub fn agrees(&self) -> bool {
        self.misses.is_empty()
    }
}

/// The grid: 21 points at steps of one sixteenth of the finite bounding
/// range, from two steps below to two steps above.
pub fn grid(a: &RSet) -> Vec<Rat> {
    let ends = a.endpoints();
    let (lo, hi) = match (ends.first(), ends.last()) {
        (Some(l), Some(h)) if l != h => (l.clone(), h.clone()),
        (Some(p), _) => (p - Rat::one(), p + Rat::one()),
        _ => (Rat::int(-1), Rat::one()),
    };
    let step = (&hi - &lo) / Rat::int(16);
    (-2..=18i64).map(|k| &lo + &step * Rat::int(k)).collect()
}

pub fn check_hull(m: &MethodSpec, a: &RSet) -> Result<OracleOutcome> {
    let claimed = hull(m, a)?;
    let points = grid(a);
    let basics = basic_constructions(a);
    let mut all: Vec<Construction> = basics.clone();
    for p in &points {
        all.push(Construction::Const(p.clone()));
    }
    if matches!(m.factor(), MethodSpec::Cesaro) && !basics.is_empty() {
        // Two-point mixtures between the extreme basic constructions.
        let lowest = basics.iter().map(target).min().expect("nonempty");
        let highest = basics.iter().map(target).max().expect("nonempty");
        let lows: Vec<&Construction> = basics.iter().filter(|c| target(c) == lowest).collect();
        let highs: Vec<&Construction> = basics.iter().filter(|c| target(c) == highest).collect();
        for lo in &lows {
            for hi in &highs {
                for k in 1..MIX_PERIOD {
                    all.push(Construction::Mix {
                        high: Box::new((*hi).clone()),
                        low: Box::new((*lo).clone()),
                        k,
                        period: MIX_PERIOD,
                    });
                }
            }
        }
        let consts: Vec<Construction> = basics.iter().filter(|c| matches!(c, Construction::Const(_))).cloned().collect();
        all.extend(ray_mixes(a, &consts, &points));
    }
    let mut reached: Vec<(f64, String)> = Vec::new();
    for c in &all {
        if !c.certify(a) {
            continue;
        }
        if let Some(v) = partial_eval(m, c, N_TERMS) {
            reached.push((v, c.describe()));
        }
    }
    let mut misses = Vec::new();
    let (mut inside, mut outside) = (0, 0);
    for p in &points {
        let t = p.to_f64();
        let nearest = reached
            .iter()
            .min_by(|x, y| (x.0 - t).abs().total_cmp(&(y.0 - t).abs()));
        let dist = nearest.map_or(f64::INFINITY, |(v, _)| (v - t).abs());
        let claimed_inside = claimed.contains(p);
        let ok = if claimed_inside {
            inside += 1;
            dist <= INSIDE_TOL
        } else {
            outside += 1;
            dist > OUTSIDE_TOL
        };
        if !ok {
            misses.push(OracleMiss {
                point: p.clone(),
                claimed_inside,
                nearest: nearest.map(|(v, d)| format!("{v} via {d}")),
            });
        }
    }
    if reached.iter().any(|(v, _)| !v.is_finite()) {
        return Err(Error::Internal("oracle produced a non-finite value".into()));
    }
    Ok(OracleOutcome {
        method: m.to_string(),
        set: a.clone(),
        hull: claimed,
        grid_points: points.len(),
        inside,
        outside,
        constructions: all.len(),
        misses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i(n: i64) -> Rat {
        Rat::int(n)
    }

    #[test]
    fn spec_examples_agree() {
        let cases = [
            (MethodSpec::Lim, RSet::open(i(0), i(1))),
            (MethodSpec::Cesaro, RSet::points([i(0), i(1)])),
            (MethodSpec::Statistical, RSet::open(i(0), i(1)).union(&RSet::point(i(3)))),
            (MethodSpec::Cesaro, RSet::point(i(0)).union(&RSet::above(i(5), true))),
            (MethodSpec::Cesaro, RSet::below(i(-1), false).union(&RSet::above(i(2), false))),
        ];
        for (m, a) in cases {
            let out = check_hull(&m, &a).unwrap();
            assert!(out.agrees(), "{m} {a}: {:?}", out.misses);
            assert!(out.inside > 0);
        }
    }

    #[test]
    fn wrong_hull_would_be_caught() {
        // Cesàro mixtures of 0 and 1 land strictly inside (0,1), which a
        // closure-only hull would label as outside.
        let a = RSet::points([i(0), i(1)]);
        let out = check_hull(&MethodSpec::Cesaro, &a).unwrap();
        assert_eq!(out.hull, RSet::closed(i(0), i(1)));
        let lim = check_hull(&MethodSpec::Lim, &a).unwrap();
        assert!(lim.agrees());
        assert_eq!(lim.inside, 2);
    }
}
