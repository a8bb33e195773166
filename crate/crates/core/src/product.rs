//! Countable products `ℝ^ℕ` at finite explicit depth with closed-form tails.

use std::fmt;

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::methods::{check_preserves_subsequences, LimitResult, MethodSpec};
use crate::corpus;
use crate::rat::Rat;
use crate::realsets::RSet;
use crate::report::{Check, Report};
use crate::sequence::SeqSpec;
use crate::topology::{hull, is_g_closed, is_g_connected, kernel, ConnectednessReport};

/// Factor sets indexed by `i ≥ 1`.
#[derive(Clone, PartialEq, Eq)]
pub enum IndexedFamily {
    Constant(RSet),
    /// Factor `i` is the interval from `i - radius` to `i + radius`.
    ShiftedInterval {
        radius: Rat,
        lo_closed: bool,
        hi_closed: bool,
    },
    /// Listed factors for `i ≤ len`, then `beyond` at the same index.
    Explicit {
        factors: Vec<RSet>,
        beyond: Box<IndexedFamily>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum SetOp {
    Hull,
    Kernel,
}

impl IndexedFamily {
    pub fn shifted(radius: Rat, lo_closed: bool, hi_closed: bool) -> IndexedFamily {
        IndexedFamily::ShiftedInterval {
            radius,
            lo_closed,
            hi_closed,
        }
        .normalize()
    }

    pub fn explicit(factors: Vec<RSet>, beyond: IndexedFamily) -> IndexedFamily {
        IndexedFamily::Explicit {
            factors,
            beyond: Box::new(beyond),
        }
        .normalize()
    }

    /// Degenerate shifted intervals become constant; nested explicit lists
    /// flatten; trailing factors equal to the rule are dropped.
    fn normalize(self) -> IndexedFamily {
        match self {
            IndexedFamily::ShiftedInterval {
                radius,
                lo_closed,
                hi_closed,
            } => {
                if radius.is_negative() || (radius.is_zero() && !(lo_closed && hi_closed)) {
                    IndexedFamily::Constant(RSet::empty())
                } else {
                    IndexedFamily::ShiftedInterval {
                        radius,
                        lo_closed,
                        hi_closed,
                    }
                }
            }
            IndexedFamily::Explicit { factors, beyond } => {
                let beyond = beyond.normalize();
                if factors.is_empty() {
                    return beyond;
                }
                match beyond {
                    IndexedFamily::Explicit {
                        factors: inner,
                        beyond: rule,
                    } => {
                        let len = factors.len().max(inner.len());
                        let merged = (0..len)
                            .map(|j| factors.get(j).cloned().unwrap_or_else(|| inner[j].clone()))
                            .collect();
                        IndexedFamily::Explicit {
                            factors: merged,
                            beyond: rule,
                        }
                        .normalize()
                    }
                    rule => {
                        // Listed factors that agree with the rule are dropped,
                        // so equal families have equal representations.
                        let mut factors = factors;
                        while factors.last().is_some_and(|a| *a == rule.factor(factors.len() as u64)) {
                            factors.pop();
                        }
                        if factors.is_empty() {
                            rule
                        } else {
                            IndexedFamily::Explicit {
                                factors,
                                beyond: Box::new(rule),
                            }
                        }
                    }
                }
            }
            other => other,
        }
    }

    pub fn factor(&self, i: u64) -> RSet {
        assert!(i >= 1, "factors are indexed from 1");
        match self {
            IndexedFamily::Constant(a) => a.clone(),
            IndexedFamily::ShiftedInterval {
                radius,
                lo_closed,
                hi_closed,
            } => {
                let c = Rat::from(i);
                RSet::interval((&c - radius).into(), *lo_closed, (&c + radius).into(), *hi_closed)
            }
            IndexedFamily::Explicit { factors, beyond } => match factors.get((i - 1) as usize) {
                Some(a) => a.clone(),
                None => beyond.factor(i),
            },
        }
    }

    fn explicit_len(&self) -> u64 {
        match self {
            IndexedFamily::Explicit { factors, .. } => factors.len() as u64,
            _ => 0,
        }
    }

    fn rule(&self) -> &IndexedFamily {
        match self {
            IndexedFamily::Explicit { beyond, .. } => beyond,
            other => other,
        }
    }

    /// Applies a hull or kernel to every factor, symbolically on the rule.
    fn map(&self, m: &MethodSpec, op: SetOp) -> Result<IndexedFamily> {
        let apply = |a: &RSet| match op {
            SetOp::Hull => hull(m, a),
            SetOp::Kernel => kernel(m, a),
        };
        Ok(match self {
            IndexedFamily::Constant(a) => IndexedFamily::Constant(apply(a)?),
            IndexedFamily::ShiftedInterval { radius, .. } => {
                // Probe factor 1; every factor is a translate of it and all
                // supported hulls commute with translation.
                let probe = apply(&self.factor(1))?;
                if probe.is_empty() {
                    IndexedFamily::Constant(RSet::empty())
                } else {
                    let iv = &probe.intervals()[0];
                    if probe.component_count() != 1
                        || iv.lo() != &(Rat::one() - radius).into()
                        || iv.hi() != &(Rat::one() + radius).into()
                    {
                        return Err(Error::Internal(format!("no shifted-interval form for {probe}")));
                    }
                    IndexedFamily::shifted(radius.clone(), iv.lo_closed(), iv.hi_closed())
                }
            }
            IndexedFamily::Explicit { factors, beyond } => IndexedFamily::explicit(
                factors.iter().map(apply).collect::<Result<Vec<_>>>()?,
                beyond.map(m, op)?,
            ),
        })
    }

    /// Whether every factor with index `≥ start` satisfies `pred`, deciding
    /// the rule symbolically.
    fn all_from(&self, start: u64, pred: &dyn Fn(&RSet) -> Result<bool>) -> Result<bool> {
        match self {
            IndexedFamily::Constant(a) => pred(a),
            // Every factor is a translate of factor 1; the predicates used
            // here are translation invariant.
            IndexedFamily::ShiftedInterval { .. } => pred(&self.factor(1)),
            IndexedFamily::Explicit { factors, beyond } => {
                for (j, a) in factors.iter().enumerate() {
                    if j as u64 + 1 >= start && !pred(a)? {
                        return Ok(false);
                    }
                }
                beyond.all_from(start.max(factors.len() as u64 + 1), pred)
            }
        }
    }
}

impl fmt::Display for IndexedFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexedFamily::Constant(a) => write!(f, "{a}"),
            IndexedFamily::ShiftedInterval {
                radius,
                lo_closed,
                hi_closed,
            } => {
                if !lo_closed && !hi_closed {
                    return write!(f, "shifted(r={radius})");
                }
                let l = if *lo_closed { "[" } else { "(" };
                let h = if *hi_closed { "]" } else { ")" };
                write!(f, "shifted(r={radius}; {l}{h})")
            }
            IndexedFamily::Explicit { factors, beyond } => {
                for a in factors {
                    write!(f, "{a}; ")?;
                }
                write!(f, "tail={beyond}")
            }
        }
    }
}

impl fmt::Debug for IndexedFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for IndexedFamily {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// A product set with explicit factors up to `depth` and a rule beyond.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DepthBox {
    pub depth: u64,
    pub family: IndexedFamily,
}

impl DepthBox {
    pub fn new(depth: u64, family: IndexedFamily) -> Result<DepthBox> {
        if depth == 0 {
            return Err(Error::precondition("box depth must be at least 1"));
        }
        if family.explicit_len() > depth {
            return Err(Error::precondition(format!(
                "box of depth {depth} lists {} explicit factors",
                family.explicit_len()
            )));
        }
        Ok(DepthBox { depth, family })
    }

    /// A finite product `A_1 × … × A_d × ℝ × ℝ × …`.
    pub fn finite(factors: Vec<RSet>) -> Result<DepthBox> {
        let depth = factors.len() as u64;
        DepthBox::new(depth, IndexedFamily::explicit(factors, IndexedFamily::Constant(RSet::reals())))
    }

    pub fn factor(&self, i: u64) -> RSet {
        self.family.factor(i)
    }

    pub fn explicit_factors(&self) -> Vec<RSet> {
        (1..=self.depth).map(|i| self.factor(i)).collect()
    }

    /// Rule for indices beyond the explicit depth, when it is itself a
    /// closed-form rule (listed factors past the depth are shown as listed).
    pub fn tail_rule(&self) -> IndexedFamily {
        if self.family.explicit_len() <= self.depth {
            self.family.rule().clone()
        } else {
            self.family.clone()
        }
    }

    /// Whether every factor past the explicit depth is `ℝ`.
    pub fn has_full_tail(&self) -> Result<bool> {
        self.family.all_from(self.depth + 1, &|a: &RSet| Ok(a.is_reals()))
    }

    /// Whether the point with coordinates `coord(i)` lies in the box,
    /// certified at the explicit indices only.
    pub fn first_excluded_index(&self, coord: impl Fn(u64) -> Rat) -> Option<u64> {
        (1..=self.depth).find(|&i| !self.factor(i).contains(&coord(i)))
    }
}

impl fmt::Display for DepthBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "box[d={}]{{", self.depth)?;
        for a in self.explicit_factors() {
            write!(f, "{a}; ")?;
        }
        write!(f, "tail={}}}", self.tail_rule())
    }
}

fn require_exact(m: &MethodSpec) -> Result<&MethodSpec> {
    let factor = m.factor();
    if m.has_exact_semantics() {
        Ok(factor)
    } else {
        Err(Error::unsupported(format!("{m} has no exact product semantics")))
    }
}

/// Componentwise hull, including the tail rule.
pub fn box_hull(m: &MethodSpec, b: &DepthBox) -> Result<DepthBox> {
    let f = require_exact(m)?;
    DepthBox::new(b.depth, b.family.map(f, SetOp::Hull)?)
}

/// Every factor G-closed, the tail decided on its rule.
pub fn box_closed(m: &MethodSpec, b: &DepthBox) -> Result<bool> {
    let f = require_exact(m)?;
    b.family.all_from(1, &|a: &RSet| is_g_closed(f, a))
}

/// Componentwise kernel. Only valid for finite products (full `ℝ` tail)
/// under a method that preserves subsequence convergence; with a genuine
/// infinite tail the componentwise formula fails.
pub fn box_kernel(m: &MethodSpec, b: &DepthBox) -> Result<DepthBox> {
    let f = require_exact(m)?;
    let verdict = check_preserves_subsequences(f, &corpus::standard_corpus(), &corpus::standard_families())?;
    if !verdict.holds {
        return Err(Error::precondition(format!(
            "box kernel needs a method preserving subsequence convergence; {f} fails: {}",
            verdict.witness.map(|w| w.description).unwrap_or_default()
        )));
    }
    if !b.has_full_tail()? {
        return Err(Error::precondition(format!(
            "box kernel is only defined for finite products with tail R, got tail {}",
            b.tail_rule()
        )));
    }
    DepthBox::new(b.depth, b.family.map(f, SetOp::Kernel)?)
}

/// A point of `ℝ^ℕ` given by a rule in the index `i`.
#[derive(Clone, PartialEq, Eq)]
pub enum PointRule {
    Constant(Rat),
    /// `slope·i + offset`
    Affine { slope: Rat, offset: Rat },
    /// `scale / i`
    Reciprocal { scale: Rat },
    Explicit { values: Vec<Rat>, beyond: Box<PointRule> },
}

impl PointRule {
    pub fn identity() -> PointRule {
        PointRule::Affine {
            slope: Rat::one(),
            offset: Rat::zero(),
        }
    }

    pub fn at(&self, i: u64) -> Rat {
        assert!(i >= 1, "coordinates are indexed from 1");
        match self {
            PointRule::Constant(c) => c.clone(),
            PointRule::Affine { slope, offset } => slope * Rat::from(i) + offset,
            PointRule::Reciprocal { scale } => scale / Rat::from(i),
            PointRule::Explicit { values, beyond } => match values.get((i - 1) as usize) {
                Some(v) => v.clone(),
                None => beyond.at(i),
            },
        }
    }
}

impl fmt::Display for PointRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointRule::Constant(c) => write!(f, "{c}"),
            PointRule::Affine { slope, offset } => write!(f, "{slope}*i + {offset}"),
            PointRule::Reciprocal { scale } => write!(f, "{scale}/i"),
            PointRule::Explicit { values, beyond } => {
                let v: Vec<String> = values.iter().map(Rat::to_string).collect();
                write!(f, "[{}] then {beyond}", v.join(","))
            }
        }
    }
}

impl fmt::Debug for PointRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A sequence `(x^n)` of points of `ℝ^ℕ`, described by its coordinate
/// traces `n ↦ (x^n)_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ProdSeq {
    PerCoordinate { coords: Vec<SeqSpec>, beyond: SeqSpec },
    /// `(x^n)_i = i` for `n ≠ i` and `0` for `n = i`.
    Example33,
    /// `(y^n)_i = x_i` for `i ≤ n` and `a_i` for `i > n`.
    Sigma { a: PointRule, x: PointRule },
    ConstantPoint(PointRule),
}

impl ProdSeq {
    pub fn coordinate(&self, i: u64) -> SeqSpec {
        assert!(i >= 1, "coordinates are indexed from 1");
        let ix = Rat::from(i);
        match self {
            ProdSeq::PerCoordinate { coords, beyond } => {
                coords.get((i - 1) as usize).cloned().unwrap_or_else(|| beyond.clone())
            }
            ProdSeq::Example33 => {
                let mut prefix = vec![ix.clone(); (i - 1) as usize];
                prefix.push(Rat::zero());
                SeqSpec::eventually_constant(prefix, ix)
            }
            ProdSeq::Sigma { a, x } => SeqSpec::eventually_constant(vec![a.at(i); (i - 1) as usize], x.at(i)),
            ProdSeq::ConstantPoint(p) => SeqSpec::constant(p.at(i)),
        }
    }

    /// Coordinate `i` of the `n`-th point.
    pub fn point(&self, n: u64, i: u64) -> Rat {
        self.coordinate(i).eval(n)
    }
}

/// `G̃` coordinatewise at indices `1..=depth`.
pub fn product_limit(m: &MethodSpec, s: &ProdSeq, depth: u64) -> Vec<LimitResult> {
    let f = m.factor();
    (1..=depth).map(|i| f.g_limit(&s.coordinate(i))).collect()
}

/// The counterexample family `A_n = (n - 1/4, n + 1/4)`.
pub fn example33_family() -> IndexedFamily {
    IndexedFamily::shifted(Rat::new(1, 4), false, false)
}

pub fn example33_scenario(depth: u64) -> Result<Report> {
    if depth < 2 {
        return Err(Error::precondition("the scenario needs depth at least 2"));
    }
    let lim = MethodSpec::Lim;
    let family = example33_family();
    let seq = ProdSeq::Example33;
    let mut report = Report::new("ex33").param("depth", depth);

    let mut a = Check::aggregate("each factor equals its kernel");
    for i in 1..=depth {
        let ai = family.factor(i);
        let k = kernel(&lim, &ai)?;
        a.record(k == ai, || json!({ "i": i, "factor": ai, "kernel": k }));
    }
    report.push(a.with_detail("kernel(lim, (i-1/4, i+1/4)) = (i-1/4, i+1/4)"));

    let mut b = Check::aggregate("target point lies in every factor kernel");
    for i in 1..=depth {
        let k = kernel(&lim, &family.factor(i))?;
        b.record(k.contains(&Rat::from(i)), || json!({ "i": i, "kernel": k }));
    }
    report.push(b.with_detail("y_i = i"));

    let mut c = Check::aggregate("each x_n leaves the box at index n");
    for n in 1..=depth {
        let v = seq.point(n, n);
        let excluded = DepthBox::new(depth, family.clone())?.first_excluded_index(|i| seq.point(n, i));
        c.record(v.is_zero() && excluded == Some(n), || {
            json!({ "n": n, "value": v, "first_excluded_index": excluded })
        });
    }
    report.push(c.with_detail("(x_n)_n = 0 is outside (n-1/4, n+1/4)"));

    let mut d = Check::aggregate("coordinate traces converge to y");
    for i in 1..=depth {
        let trace = seq.coordinate(i);
        let limit = lim.g_limit(&trace);
        let ok = limit == LimitResult::exact(Rat::from(i)) && matches!(trace.normalize(), SeqSpec::EventuallyConstant { .. });
        d.record(ok, || json!({ "i": i, "trace": trace.to_string(), "limit": limit.to_string() }));
    }
    report.push(d.with_detail("trace i is eventually constant at i"));

    let all = report.passed;
    let refused = matches!(
        box_kernel(&MethodSpec::product(lim.clone()), &DepthBox::new(depth, family.clone())?),
        Err(Error::Precondition(_))
    );
    let e = Check::single(
        "kernel of the product is smaller than the product of kernels",
        all && refused,
        "the x_n lie outside the box yet converge to y, so y is not in the kernel of the product although every y_i lies in the factor kernel; the componentwise kernel formula is refused for this infinite tail",
    );
    report.push(e);
    Ok(report)
}

/// Projections commute with `G̃`, closed boxes project to closed factors,
/// and cylinders over closed sets are closed.
pub fn projection_suite(m: &MethodSpec, depth: u64, seqs: &[ProdSeq], boxes: &[DepthBox]) -> Result<Report> {
    let f = require_exact(m)?;
    let mut report = Report::new("projections").param("method", m).param("depth", depth);
    let mut i_check = Check::aggregate("projection commutes with the product limit");
    for s in seqs {
        let limits = product_limit(m, s, depth);
        for i in 1..=depth {
            let direct = f.g_limit(&s.coordinate(i));
            let lhs = &limits[(i - 1) as usize];
            i_check.record(*lhs == direct, || json!({ "i": i, "product": lhs.to_string(), "projected": direct.to_string() }));
        }
    }
    report.push(i_check);

    let preserves = check_preserves_subsequences(f, &corpus::standard_corpus(), &corpus::standard_families())?;
    if preserves.holds {
        let mut ii = Check::aggregate("closed boxes project to closed factors");
        let mut iii = Check::aggregate("cylinder over a closed set is closed");
        for b in boxes {
            if box_closed(m, b)? {
                for i in 1..=b.depth {
                    let fi = b.factor(i);
                    ii.record(is_g_closed(f, &fi)?, || json!({ "box": b.to_string(), "i": i }));
                }
            }
            let base = b.factor(1);
            if is_g_closed(f, &base)? {
                let cyl = DepthBox::finite(vec![base.clone()])?;
                iii.record(box_closed(m, &cyl)?, || json!({ "base": base }));
            }
        }
        report.push(ii);
        report.push(iii);
    } else {
        let why = format!("{f} does not preserve subsequence convergence");
        report.push(Check::skipped("closed boxes project to closed factors", why.clone()));
        report.push(Check::skipped("cylinder over a closed set is closed", why.clone()));
        report.note(why);
    }
    Ok(report)
}

/// The approximation step: `y^n` agrees with `x` up to `n` and with `a`
/// beyond, so `y^n → x` coordinatewise while each `y^n` differs from `a` in
/// finitely many coordinates.
pub fn sigma_density_scenario(depth: u64, a: &PointRule, x: &PointRule) -> Result<Report> {
    if depth == 0 {
        return Err(Error::precondition("depth must be at least 1"));
    }
    let lim = MethodSpec::Lim;
    let seq = ProdSeq::Sigma { a: a.clone(), x: x.clone() };
    let mut report = Report::new("sigma").param("depth", depth).param("a", a).param("x", x);

    let mut traces = Check::aggregate("coordinate traces are eventually constant at x_i");
    for i in 1..=depth {
        let t = seq.coordinate(i).normalize();
        let ok = matches!(&t, SeqSpec::EventuallyConstant { tail, .. } if *tail == x.at(i));
        traces.record(ok, || json!({ "i": i, "trace": t.to_string() }));
    }
    report.push(traces);

    let limits = product_limit(&MethodSpec::product(lim), &seq, depth);
    let mut lim_check = Check::aggregate("product limit equals x");
    for (j, l) in limits.iter().enumerate() {
        let i = j as u64 + 1;
        lim_check.record(*l == LimitResult::exact(x.at(i)), || json!({ "i": i, "limit": l.to_string() }));
    }
    report.push(lim_check.with_detail(format!(
        "limit ({})",
        limits.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
    )));

    let mut shape = Check::aggregate("y^n follows x up to n and a beyond");
    for n in 1..=depth {
        for i in 1..=depth + 2 {
            let expected = if i <= n { x.at(i) } else { a.at(i) };
            let got = seq.point(n, i);
            shape.record(got == expected, || json!({ "n": n, "i": i, "got": got, "expected": expected }));
        }
    }
    report.push(shape);
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoxConnectedness {
    pub connected: bool,
    pub factors: Vec<ConnectednessReport>,
    /// First disconnected factor (1-based).
    pub witness_factor: Option<usize>,
}

/// Factorwise criterion: a box is G-connected iff every factor is. For a
/// disconnected factor, the separation lifts to the box.
pub fn box_connected(m: &MethodSpec, factors: &[RSet]) -> Result<BoxConnectedness> {
    let f = require_exact(m)?;
    let reports = factors.iter().map(|a| is_g_connected(f, a)).collect::<Result<Vec<_>>>()?;
    let witness = reports.iter().position(|r| !r.connected).map(|j| j + 1);
    Ok(BoxConnectedness {
        connected: witness.is_none(),
        factors: reports,
        witness_factor: witness,
    })
}

/// Checks the factorwise criterion on one input. Under the ordinary and
/// statistical methods G-closed boxes are the topologically closed ones, so
/// the answer is cross-checked against the number of product cells.
pub fn product_connectedness(m: &MethodSpec, factors: &[RSet]) -> Result<Report> {
    if factors.is_empty() || factors.len() > 3 {
        return Err(Error::precondition("product connectedness is checked for 1 to 3 factors"));
    }
    if factors.iter().any(RSet::is_empty) {
        return Err(Error::precondition("factors must be nonempty"));
    }
    let f = require_exact(m)?;
    let verdict = box_connected(m, factors)?;
    let mut report = Report::new("product-connectedness").param("method", m);
    let all_connected = verdict.factors.iter().all(|r| r.connected);
    let mut detail = if verdict.connected {
        "connected".to_string()
    } else {
        format!("disconnected, witness factor {}", verdict.witness_factor.unwrap_or(0))
    };
    if let Some(j) = verdict.witness_factor {
        if let Some((fs, ks)) = &verdict.factors[j - 1].separation {
            detail.push_str(&format!(" split {fs} | {ks}"));
        }
    }
    report.push(Check::single("box connected iff every factor connected", verdict.connected == all_connected, detail));
    if matches!(f, MethodSpec::Lim | MethodSpec::Statistical) {
        let cells: usize = factors.iter().map(RSet::component_count).product();
        report.push(Check::single(
            "agrees with cell count",
            verdict.connected == (cells == 1),
            format!("{cells} cells"),
        ));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i(n: i64) -> Rat {
        Rat::int(n)
    }
    fn unit_open() -> RSet {
        RSet::open(i(0), i(1))
    }

    #[test]
    fn product_limit_examples() {
        let lim = MethodSpec::product(MethodSpec::Lim);
        let l = product_limit(&lim, &ProdSeq::Example33, 8);
        for (j, v) in l.iter().enumerate() {
            assert_eq!(*v, LimitResult::exact(i(j as i64 + 1)));
        }
        let p = ProdSeq::ConstantPoint(PointRule::Reciprocal { scale: i(1) });
        assert_eq!(product_limit(&lim, &p, 3)[2], LimitResult::exact(Rat::new(1, 3)));
        let s = ProdSeq::PerCoordinate {
            coords: vec![SeqSpec::periodic(vec![], vec![i(0), i(1)]), SeqSpec::constant(i(2))],
            beyond: SeqSpec::constant(i(0)),
        };
        let got = product_limit(&MethodSpec::product(MethodSpec::Cesaro), &s, 3);
        assert_eq!(
            got,
            vec![LimitResult::exact(Rat::new(1, 2)), LimitResult::exact(i(2)), LimitResult::exact(i(0))]
        );
    }

    #[test]
    fn box_operators() {
        let lim = MethodSpec::product(MethodSpec::Lim);
        let b = DepthBox::finite(vec![unit_open(), unit_open(), unit_open()]).unwrap();
        let h = box_hull(&lim, &b).unwrap();
        assert_eq!(h.explicit_factors(), vec![RSet::closed(i(0), i(1)); 3]);
        assert!(h.has_full_tail().unwrap());
        assert!(box_closed(&lim, &h).unwrap());
        assert!(!box_closed(&lim, &b).unwrap());
        let ces = MethodSpec::product(MethodSpec::Cesaro);
        let b = DepthBox::finite(vec![RSet::points([i(0), i(1)]), RSet::closed(i(2), i(3))]).unwrap();
        assert_eq!(
            box_hull(&ces, &b).unwrap().explicit_factors(),
            vec![RSet::closed(i(0), i(1)), RSet::closed(i(2), i(3))]
        );
        let b = DepthBox::finite(vec![RSet::closed(i(0), i(1)), RSet::closed(i(0), i(2))]).unwrap();
        let k = box_kernel(&lim, &b).unwrap();
        assert_eq!(k.explicit_factors(), vec![unit_open(), RSet::open(i(0), i(2))]);
        let e = DepthBox::finite(vec![RSet::empty()]).unwrap();
        assert_eq!(box_kernel(&lim, &e).unwrap().explicit_factors(), vec![RSet::empty()]);
        assert!(matches!(box_kernel(&ces, &b), Err(Error::Precondition(_))));
    }

    #[test]
    fn shifted_rules_match_factorwise() {
        for m in [MethodSpec::Lim, MethodSpec::Cesaro, MethodSpec::Statistical] {
            for fam in [example33_family(), IndexedFamily::shifted(Rat::new(3, 2), true, false)] {
                let h = fam.map(&m, SetOp::Hull).unwrap();
                let k = fam.map(&m, SetOp::Kernel).unwrap();
                for idx in 1..=12 {
                    assert_eq!(h.factor(idx), hull(&m, &fam.factor(idx)).unwrap());
                    assert_eq!(k.factor(idx), kernel(&m, &fam.factor(idx)).unwrap());
                }
            }
        }
    }

    #[test]
    fn example33_passes() {
        for d in [2, 4, 8, 16] {
            let r = example33_scenario(d).unwrap();
            assert!(r.passed, "{r}");
            assert_eq!(r.checks.len(), 5);
        }
        assert!(example33_scenario(1).is_err());
        assert_eq!(
            ProdSeq::Example33.coordinate(3).normalize(),
            SeqSpec::eventually_constant(vec![i(3), i(3), i(0)], i(3))
        );
    }

    #[test]
    fn sigma_examples() {
        let r = sigma_density_scenario(6, &PointRule::Constant(i(0)), &PointRule::identity()).unwrap();
        assert!(r.passed, "{r}");
        let seq = ProdSeq::Sigma {
            a: PointRule::Constant(i(0)),
            x: PointRule::identity(),
        };
        let y3: Vec<Rat> = (1..=6).map(|k| seq.point(3, k)).collect();
        assert_eq!(y3, vec![i(1), i(2), i(3), i(0), i(0), i(0)]);
        let r = sigma_density_scenario(4, &PointRule::Constant(i(1)), &PointRule::Reciprocal { scale: i(1) }).unwrap();
        assert!(r.check("product limit equals x").unwrap().detail.contains("(1, 1/2, 1/3, 1/4)"));
        let same = sigma_density_scenario(3, &PointRule::identity(), &PointRule::identity()).unwrap();
        assert!(same.passed);
    }

    #[test]
    fn projections() {
        let lim = MethodSpec::product(MethodSpec::Lim);
        let boxes = vec![DepthBox::finite(vec![RSet::closed(i(0), i(1)), RSet::closed(i(2), i(3))]).unwrap()];
        let r = projection_suite(&lim, 4, &[ProdSeq::Example33], &boxes).unwrap();
        assert!(r.passed && r.cases > 4, "{r}");
        let r = projection_suite(&MethodSpec::product(MethodSpec::Cesaro), 4, &[ProdSeq::Example33], &boxes).unwrap();
        assert!(r.passed && !r.notes.is_empty());
    }

    #[test]
    fn connectedness_of_boxes() {
        let lim = MethodSpec::Lim;
        let unit = RSet::closed(i(0), i(1));
        let r = product_connectedness(&lim, &[unit.clone(), unit.clone()]).unwrap();
        assert!(r.passed);
        let split = unit.union(&RSet::closed(i(2), i(3)));
        let v = box_connected(&lim, &[unit.clone(), split.clone()]).unwrap();
        assert!(!v.connected);
        assert_eq!(v.witness_factor, Some(2));
        assert!(product_connectedness(&lim, &[unit.clone(), split]).unwrap().passed);
        assert!(product_connectedness(&lim, &vec![unit.clone(); 4]).is_err());
        assert_eq!(box_connected(&lim, std::slice::from_ref(&unit)).unwrap().connected, is_g_connected(&lim, &unit).unwrap().connected);
    }
}
