//! Finite unions of intervals of the real line with exact rational endpoints.
//!
//! Every [`RSet`] is kept normalized: its intervals are sorted, pairwise
//! disjoint and non-adjacent, so structural equality is set equality.
//! Unbounded intervals are ordinary values; `±∞` endpoints are always open.
//! A singleton `{a}` is the degenerate closed interval `[a,a]`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rat::{ExtRat, Rat};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    lo: ExtRat,
    lo_closed: bool,
    hi: ExtRat,
    hi_closed: bool,
}

fn add_ext(a: &ExtRat, b: &ExtRat) -> ExtRat {
    match (a, b) {
        (ExtRat::Finite(x), ExtRat::Finite(y)) => ExtRat::Finite(x + y),
        (ExtRat::NegInf, _) | (_, ExtRat::NegInf) => ExtRat::NegInf,
        _ => ExtRat::PosInf,
    }
}

/// Order of lower endpoints: smaller value first, closed before open.
fn cmp_lower(a: (&ExtRat, bool), b: (&ExtRat, bool)) -> Ordering {
    a.0.cmp(b.0).then_with(|| b.1.cmp(&a.1))
}

/// Order of upper endpoints: smaller value first, open before closed.
fn cmp_upper(a: (&ExtRat, bool), b: (&ExtRat, bool)) -> Ordering {
    a.0.cmp(b.0).then_with(|| a.1.cmp(&b.1))
}

impl Interval {
    /// Builds an interval, returning `None` when it is empty. Infinite
    /// endpoints are forced open.
    pub fn new(lo: ExtRat, lo_closed: bool, hi: ExtRat, hi_closed: bool) -> Option<Interval> {
        let lo_closed = lo_closed && lo.is_finite();
        let hi_closed = hi_closed && hi.is_finite();
        match lo.cmp(&hi) {
            Ordering::Greater => None,
            Ordering::Equal if !(lo_closed && hi_closed) => None,
            _ => Some(Interval {
                lo,
                lo_closed,
                hi,
                hi_closed,
            }),
        }
    }

    pub fn closed(lo: Rat, hi: Rat) -> Option<Interval> {
        Interval::new(lo.into(), true, hi.into(), true)
    }

    pub fn open(lo: Rat, hi: Rat) -> Option<Interval> {
        Interval::new(lo.into(), false, hi.into(), false)
    }

    pub fn point(p: Rat) -> Interval {
        Interval::new(p.clone().into(), true, p.into(), true).expect("degenerate closed interval")
    }

    pub fn lo(&self) -> &ExtRat {
        &self.lo
    }

    pub fn hi(&self) -> &ExtRat {
        &self.hi
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn is_singleton(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, p: &Rat) -> bool {
        let above = match &self.lo {
            ExtRat::NegInf => true,
            ExtRat::PosInf => false,
            ExtRat::Finite(l) => l < p || (self.lo_closed && l == p),
        };
        let below = match &self.hi {
            ExtRat::PosInf => true,
            ExtRat::NegInf => false,
            ExtRat::Finite(h) => p < h || (self.hi_closed && h == p),
        };
        above && below
    }

    fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lo, lo_closed) =
            if cmp_lower((&self.lo, self.lo_closed), (&other.lo, other.lo_closed)) == Ordering::Less {
                (other.lo.clone(), other.lo_closed)
            } else {
                (self.lo.clone(), self.lo_closed)
            };
        let (hi, hi_closed) =
            if cmp_upper((&self.hi, self.hi_closed), (&other.hi, other.hi_closed)) == Ordering::Less {
                (self.hi.clone(), self.hi_closed)
            } else {
                (other.hi.clone(), other.hi_closed)
            };
        Interval::new(lo, lo_closed, hi, hi_closed)
    }

    fn minkowski(&self, other: &Interval) -> Interval {
        Interval::new(
            add_ext(&self.lo, &other.lo),
            self.lo_closed && other.lo_closed,
            add_ext(&self.hi, &other.hi),
            self.hi_closed && other.hi_closed,
        )
        .expect("sum of nonempty intervals is nonempty")
    }

    fn negate(&self) -> Interval {
        Interval {
            lo: -&self.hi,
            lo_closed: self.hi_closed,
            hi: -&self.lo,
            hi_closed: self.lo_closed,
        }
    }

    fn scale(&self, a: &Rat) -> Interval {
        debug_assert!(a.is_positive());
        let mul = |e: &ExtRat| match e {
            ExtRat::Finite(x) => ExtRat::Finite(x * a),
            other => other.clone(),
        };
        Interval {
            lo: mul(&self.lo),
            lo_closed: self.lo_closed,
            hi: mul(&self.hi),
            hi_closed: self.hi_closed,
        }
    }

    fn with_closed_ends(&self) -> Interval {
        Interval::new(self.lo.clone(), true, self.hi.clone(), true).expect("closing keeps it nonempty")
    }

    fn with_open_ends(&self) -> Option<Interval> {
        Interval::new(self.lo.clone(), false, self.hi.clone(), false)
    }

    /// Distance from `p` to the closure of this interval.
    fn distance(&self, p: &Rat) -> Rat {
        if let ExtRat::Finite(l) = &self.lo {
            if p < l {
                return l - p;
            }
        }
        if let ExtRat::Finite(h) = &self.hi {
            if p > h {
                return p - h;
            }
        }
        Rat::zero()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_singleton() {
            return write!(f, "{{{}}}", self.lo);
        }
        let open = if self.lo_closed { '[' } else { '(' };
        let close = if self.hi_closed { ']' } else { ')' };
        write!(f, "{open}{},{}{close}", self.lo, self.hi)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite union of intervals over ℝ, always in normalized form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RSet {
    intervals: Vec<Interval>,
}

impl RSet {
    pub fn empty() -> RSet {
        RSet::default()
    }

    pub fn reals() -> RSet {
        RSet {
            intervals: vec![Interval::new(ExtRat::NegInf, false, ExtRat::PosInf, false).unwrap()],
        }
    }

    pub fn point(p: Rat) -> RSet {
        RSet {
            intervals: vec![Interval::point(p)],
        }
    }

    pub fn points<I: IntoIterator<Item = Rat>>(points: I) -> RSet {
        RSet::from_intervals(points.into_iter().map(Interval::point))
    }

    pub fn closed(lo: Rat, hi: Rat) -> RSet {
        RSet::from_intervals(Interval::closed(lo, hi))
    }

    pub fn open(lo: Rat, hi: Rat) -> RSet {
        RSet::from_intervals(Interval::open(lo, hi))
    }

    pub fn interval(lo: ExtRat, lo_closed: bool, hi: ExtRat, hi_closed: bool) -> RSet {
        RSet::from_intervals(Interval::new(lo, lo_closed, hi, hi_closed))
    }

    /// `(-∞, hi)` or `(-∞, hi]`.
    pub fn below(hi: Rat, closed: bool) -> RSet {
        RSet::interval(ExtRat::NegInf, false, hi.into(), closed)
    }

    /// `(lo, ∞)` or `[lo, ∞)`.
    pub fn above(lo: Rat, closed: bool) -> RSet {
        RSet::interval(lo.into(), closed, ExtRat::PosInf, false)
    }

    /// Normalizes an arbitrary collection of intervals: sort, then merge
    /// overlapping or touching pieces.
    pub fn from_intervals<I: IntoIterator<Item = Interval>>(intervals: I) -> RSet {
        let mut items: Vec<Interval> = intervals.into_iter().collect();
        items.sort_by(|a, b| {
            cmp_lower((&a.lo, a.lo_closed), (&b.lo, b.lo_closed))
                .then_with(|| cmp_upper((&a.hi, a.hi_closed), (&b.hi, b.hi_closed)))
        });
        let mut out: Vec<Interval> = Vec::with_capacity(items.len());
        for iv in items {
            if let Some(cur) = out.last_mut() {
                let touches = match iv.lo.cmp(&cur.hi) {
                    Ordering::Less => true,
                    Ordering::Equal => cur.hi_closed || iv.lo_closed,
                    Ordering::Greater => false,
                };
                if touches {
                    if cmp_upper((&iv.hi, iv.hi_closed), (&cur.hi, cur.hi_closed)) == Ordering::Greater {
                        cur.hi = iv.hi;
                        cur.hi_closed = iv.hi_closed;
                    }
                    continue;
                }
            }
            out.push(iv);
        }
        RSet { intervals: out }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn is_reals(&self) -> bool {
        *self == RSet::reals()
    }

    pub fn contains(&self, p: &Rat) -> bool {
        self.intervals.iter().any(|iv| iv.contains(p))
    }

    pub fn union(&self, other: &RSet) -> RSet {
        RSet::from_intervals(self.intervals.iter().chain(&other.intervals).cloned())
    }

    pub fn intersect(&self, other: &RSet) -> RSet {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.intervals.len() && j < other.intervals.len() {
            let (a, b) = (&self.intervals[i], &other.intervals[j]);
            if let Some(x) = a.intersect(b) {
                out.push(x);
            }
            if cmp_upper((&a.hi, a.hi_closed), (&b.hi, b.hi_closed)) == Ordering::Less {
                i += 1;
            } else {
                j += 1;
            }
        }
        RSet::from_intervals(out)
    }

    /// Complement relative to ℝ.
    pub fn complement(&self) -> RSet {
        let mut out = Vec::with_capacity(self.intervals.len() + 1);
        let mut lo = ExtRat::NegInf;
        let mut lo_closed = false;
        for iv in &self.intervals {
            if let Some(gap) = Interval::new(lo, lo_closed, iv.lo.clone(), !iv.lo_closed) {
                out.push(gap);
            }
            lo = iv.hi.clone();
            lo_closed = !iv.hi_closed;
        }
        if let Some(gap) = Interval::new(lo, lo_closed, ExtRat::PosInf, false) {
            out.push(gap);
        }
        RSet { intervals: out }
    }

    pub fn difference(&self, other: &RSet) -> RSet {
        self.intersect(&other.complement())
    }

    pub fn is_subset(&self, other: &RSet) -> bool {
        self.difference(other).is_empty()
    }

    /// Ordinary connected components, in increasing order.
    pub fn components(&self) -> Vec<RSet> {
        self.intervals
            .iter()
            .map(|iv| RSet {
                intervals: vec![iv.clone()],
            })
            .collect()
    }

    pub fn component_count(&self) -> usize {
        self.intervals.len()
    }

    /// Infimum, or `None` for the empty set.
    pub fn inf(&self) -> Option<ExtRat> {
        self.intervals.first().map(|iv| iv.lo.clone())
    }

    /// Supremum, or `None` for the empty set.
    pub fn sup(&self) -> Option<ExtRat> {
        self.intervals.last().map(|iv| iv.hi.clone())
    }

    pub fn is_bounded(&self) -> bool {
        match (self.inf(), self.sup()) {
            (Some(lo), Some(hi)) => lo.is_finite() && hi.is_finite(),
            _ => true,
        }
    }

    /// Minkowski sum `{a + b : a ∈ A, b ∈ B}`. A sum endpoint is closed iff
    /// both contributing endpoints are closed and finite.
    pub fn sum(&self, other: &RSet) -> RSet {
        let mut pieces = Vec::with_capacity(self.intervals.len() * other.intervals.len());
        for a in &self.intervals {
            for b in &other.intervals {
                pieces.push(a.minkowski(b));
            }
        }
        RSet::from_intervals(pieces)
    }

    /// `-A`.
    pub fn negate(&self) -> RSet {
        RSet {
            intervals: self.intervals.iter().rev().map(Interval::negate).collect(),
        }
    }

    /// `g + A`.
    pub fn translate(&self, g: &Rat) -> RSet {
        self.sum(&RSet::point(g.clone()))
    }

    /// Image under `x ↦ a·x + b`.
    pub fn affine_image(&self, a: &Rat, b: &Rat) -> RSet {
        if self.is_empty() {
            return RSet::empty();
        }
        if a.is_zero() {
            return RSet::point(b.clone());
        }
        let scaled = if a.is_positive() {
            RSet::from_intervals(self.intervals.iter().map(|iv| iv.scale(a)))
        } else {
            RSet::from_intervals(self.negate().intervals.iter().map(|iv| iv.scale(&-a)))
        };
        scaled.translate(b)
    }

    /// Ordinary (Euclidean) closure.
    pub fn closure(&self) -> RSet {
        RSet::from_intervals(self.intervals.iter().map(Interval::with_closed_ends))
    }

    /// Ordinary interior.
    pub fn interior(&self) -> RSet {
        RSet::from_intervals(self.intervals.iter().filter_map(Interval::with_open_ends))
    }

    pub fn is_closed(&self) -> bool {
        self.closure() == *self
    }

    pub fn is_open(&self) -> bool {
        self.interior() == *self
    }

    pub fn is_connected_ordinary(&self) -> bool {
        self.intervals.len() <= 1
    }

    /// Smallest closed interval containing the set, intersected with ℝ
    /// (unbounded ends stay open).
    pub fn convex_closure(&self) -> RSet {
        match (self.inf(), self.sup()) {
            (Some(lo), Some(hi)) => RSet::interval(lo, true, hi, true),
            _ => RSet::empty(),
        }
    }

    /// Distance from `p` to the closure of the set; `None` for the empty set.
    pub fn distance(&self, p: &Rat) -> Option<Rat> {
        self.intervals.iter().map(|iv| iv.distance(p)).min()
    }

    /// One-sided Hausdorff excess `sup_{x ∈ self} dist(x, inner)`.
    /// `None` means the excess is infinite.
    pub fn excess_over(&self, inner: &RSet) -> Option<Rat> {
        if self.is_empty() {
            return Some(Rat::zero());
        }
        if inner.is_empty() {
            return None;
        }
        let c = inner.closure();
        let unbounded_below = matches!(c.inf(), Some(ExtRat::NegInf));
        let unbounded_above = matches!(c.sup(), Some(ExtRat::PosInf));
        let midpoints: Vec<Rat> = c
            .intervals
            .windows(2)
            .filter_map(|w| match (&w[0].hi, &w[1].lo) {
                (ExtRat::Finite(a), ExtRat::Finite(b)) => Some((a + b) / Rat::int(2)),
                _ => None,
            })
            .collect();
        let mut worst = Rat::zero();
        for iv in &self.intervals {
            if (iv.lo == ExtRat::NegInf && !unbounded_below) || (iv.hi == ExtRat::PosInf && !unbounded_above) {
                return None;
            }
            let closed = iv.with_closed_ends();
            let candidates = [iv.lo.finite().cloned(), iv.hi.finite().cloned()]
                .into_iter()
                .flatten()
                .chain(midpoints.iter().filter(|m| closed.contains(m)).cloned());
            for x in candidates {
                let d = c.distance(&x).expect("inner set is nonempty");
                if d > worst {
                    worst = d;
                }
            }
        }
        Some(worst)
    }

    /// Every finite endpoint, in increasing order without repeats.
    pub fn endpoints(&self) -> Vec<Rat> {
        let mut out: Vec<Rat> = Vec::new();
        for iv in &self.intervals {
            for e in [&iv.lo, &iv.hi] {
                if let ExtRat::Finite(x) = e {
                    if out.last() != Some(x) {
                        out.push(x.clone());
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for RSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("empty");
        }
        if self.is_reals() {
            return f.write_str("R");
        }
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                f.write_str(" u ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for RSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RSet({self})")
    }
}

impl Serialize for RSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.intervals.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<RSet, D::Error> {
        let raw: Vec<Interval> = Vec::deserialize(deserializer)?;
        let checked = raw
            .into_iter()
            .map(|iv| {
                Interval::new(iv.lo, iv.lo_closed, iv.hi, iv.hi_closed)
                    .ok_or_else(|| serde::de::Error::custom("empty or inverted interval"))
            })
            .collect::<Result<Vec<_>, D::Error>>()?;
        Ok(RSet::from_intervals(checked))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }
    fn i(n: i64) -> Rat {
        Rat::int(n)
    }

    #[test]
    fn union_merges_adjacent() {
        let a = RSet::closed(i(0), i(1));
        let b = RSet::open(i(1), i(2));
        let u = a.union(&b);
        assert_eq!(u, RSet::interval(i(0).into(), true, i(2).into(), false));
        assert_eq!(u.to_string(), "[0,2)");
    }

    #[test]
    fn open_pieces_sharing_an_endpoint_stay_apart() {
        let u = RSet::open(i(0), i(1)).union(&RSet::open(i(1), i(2)));
        assert_eq!(u.component_count(), 2);
        assert!(!u.contains(&i(1)));
        assert_eq!(u.complement().intersect(&RSet::closed(i(0), i(2))), RSet::points([i(0), i(1), i(2)]));
    }

    #[test]
    fn complement_of_rays() {
        let a = RSet::below(i(0), false).union(&RSet::above(i(1), false));
        assert_eq!(a.complement(), RSet::closed(i(0), i(1)));
        assert_eq!(RSet::empty().complement(), RSet::reals());
        assert_eq!(RSet::reals().complement(), RSet::empty());
    }

    #[test]
    fn intersection_flags() {
        let a = RSet::closed(i(0), i(3));
        let b = RSet::open(i(2), i(5));
        assert_eq!(a.intersect(&b), RSet::interval(i(2).into(), false, i(3).into(), true));
    }

    #[test]
    fn inf_sup_of_empty_is_none() {
        assert_eq!(RSet::empty().inf(), None);
        assert_eq!(RSet::empty().sup(), None);
        let a = RSet::below(i(4), true);
        assert_eq!(a.inf(), Some(ExtRat::NegInf));
        assert_eq!(a.sup(), Some(ExtRat::Finite(i(4))));
    }

    #[test]
    fn minkowski_examples() {
        assert_eq!(RSet::closed(i(0), i(1)).sum(&RSet::closed(i(2), i(3))), RSet::closed(i(2), i(4)));
        assert_eq!(RSet::point(i(0)).sum(&RSet::open(i(-1), i(1))), RSet::open(i(-1), i(1)));
        let half_open = RSet::interval(i(0).into(), false, i(1).into(), true);
        assert_eq!(half_open.negate(), RSet::interval(i(-1).into(), true, i(0).into(), false));
        assert_eq!(RSet::open(i(0), i(1)).sum(&RSet::open(i(0), i(1))), RSet::open(i(0), i(2)));
        assert!(RSet::empty().sum(&RSet::reals()).is_empty());
    }

    #[test]
    fn open_sum_brute_force_boundary() {
        // 100 x 100 grid of pairs from (0,1): every sum lands in (0,2) and
        // sums approach both ends; 0 and 2 themselves are never produced.
        let sum = RSet::open(i(0), i(1)).sum(&RSet::open(i(0), i(1)));
        let mut lo = r(2, 1);
        let mut hi = r(0, 1);
        for a in 1..=100 {
            for b in 1..=100 {
                let s = r(a, 101) + r(b, 101);
                assert!(sum.contains(&s));
                lo = lo.min(s.clone());
                hi = hi.max(s);
            }
        }
        assert_eq!(lo, r(2, 101));
        assert_eq!(hi, r(200, 101));
        assert!(!sum.contains(&i(0)) && !sum.contains(&i(2)));
    }

    #[test]
    fn topology_examples() {
        assert_eq!(RSet::open(i(0), i(1)).closure(), RSet::closed(i(0), i(1)));
        let a = RSet::closed(i(0), i(1)).union(&RSet::point(i(2)));
        assert_eq!(a.interior(), RSet::open(i(0), i(1)));
        let two = RSet::closed(i(0), i(1)).union(&RSet::closed(i(2), i(3)));
        assert!(!two.is_connected_ordinary());
        assert!(RSet::reals().is_open() && RSet::reals().is_closed());
    }

    #[test]
    fn affine_images() {
        let a = RSet::closed(i(0), i(1));
        assert_eq!(a.affine_image(&i(2), &i(1)), RSet::closed(i(1), i(3)));
        assert_eq!(a.affine_image(&i(-1), &i(0)), RSet::closed(i(-1), i(0)));
        assert_eq!(a.affine_image(&i(0), &i(7)), RSet::point(i(7)));
    }

    #[test]
    fn excess_examples() {
        let closed = RSet::closed(i(0), i(1));
        let inflated = RSet::open(r(-1, 8), r(9, 8));
        assert_eq!(inflated.excess_over(&closed), Some(r(1, 8)));
        let gap = RSet::closed(i(0), i(1)).union(&RSet::closed(i(3), i(4)));
        assert_eq!(RSet::closed(i(0), i(4)).excess_over(&gap), Some(i(1)));
        assert_eq!(RSet::reals().excess_over(&closed), None);
        assert_eq!(RSet::empty().excess_over(&RSet::empty()), Some(i(0)));
    }

    #[test]
    fn json_mirrors_interval_list() {
        let a = RSet::below(i(0), false).union(&RSet::point(r(1, 2)));
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(
            text,
            r#"[{"lo":"-inf","lo_closed":false,"hi":"0","hi_closed":false},{"lo":"1/2","lo_closed":true,"hi":"1/2","hi_closed":true}]"#
        );
        let back: RSet = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
    }
}
