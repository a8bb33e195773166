//! The additive group `(ℝ, +)` under a G-method: neighborhood bases at 0,
//! translation and inversion, the generated topology, and closure formulas.
//!
//! Multiplicative notation translates as `xU → x + U`, `V⁻¹ → −V`,
//! `gx → g + x`, identity `e → 0`.

use serde::Serialize;
use serde_json::json;

use crate::corpus;
use crate::error::{Error, Result};
use crate::methods::traits::{default_scope, same_limit};
use crate::methods::{
    check_g_continuity, check_preserves_subsequences, check_translate_regular, LimitResult, MethodSpec,
    TraitVerdict, Witness,
};
use crate::rat::Rat;
use crate::realsets::RSet;
use crate::report::{Check, Report};
use crate::sequence::{PointMap, SeqSpec};
use crate::topology::{g_closure, is_g_closed, is_g_open, kernel};

/// The group operations need sequences whose termwise sums have closed forms;
/// the subsequence trait is the standing hypothesis of most results here.
pub fn standing_assumption(m: &MethodSpec) -> Result<TraitVerdict> {
    check_preserves_subsequences(m.factor(), &corpus::standard_corpus(), &corpus::standard_families())
}

fn require_standing(m: &MethodSpec, what: &str) -> Result<()> {
    let v = standing_assumption(m)?;
    if v.holds {
        Ok(())
    } else {
        let w = v.witness.map(|w| w.description).unwrap_or_default();
        Err(Error::precondition(format!(
            "{what} needs a regular method preserving subsequence convergence; {m} fails: {w}"
        )))
    }
}

fn require_open(m: &MethodSpec, u: &RSet, what: &str) -> Result<()> {
    let k = kernel(m, u)?;
    if u.is_subset(&k) {
        Ok(())
    } else {
        Err(Error::precondition(format!(
            "{what}: {u} is not {m}-open (kernel {k})"
        )))
    }
}

fn require_zero(u: &RSet, what: &str) -> Result<()> {
    if u.contains(&Rat::zero()) {
        Ok(())
    } else {
        Err(Error::precondition(format!("{what}: 0 is not in {u}")))
    }
}

/// Nested G-open neighborhoods `U_1 ⊇ U_2 ⊇ …` of 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NeighborhoodBase {
    pub sets: Vec<RSet>,
    /// Whether `U_k = (−1/k, 1/k)`, which fixes the gap rate `1/k`.
    pub default_radii: bool,
}

impl NeighborhoodBase {
    pub fn default_base(count: usize) -> Result<NeighborhoodBase> {
        if count == 0 {
            return Err(Error::precondition("a neighborhood base needs K >= 1"));
        }
        let sets = (1..=count as i64)
            .map(|k| RSet::open(Rat::new(-1, k), Rat::new(1, k)))
            .collect();
        Ok(NeighborhoodBase { sets, default_radii: true })
    }

    pub fn from_sets(sets: Vec<RSet>) -> Result<NeighborhoodBase> {
        if sets.is_empty() {
            return Err(Error::precondition("a neighborhood base needs K >= 1"));
        }
        Ok(NeighborhoodBase { sets, default_radii: false })
    }

    pub fn count(&self) -> usize {
        self.sets.len()
    }

    /// `U_k`, 1-based.
    pub fn set(&self, k: usize) -> &RSet {
        &self.sets[k - 1]
    }

    /// Every `U_k` is a G-open neighborhood of 0 and the family is nested.
    pub fn validate(&self, m: &MethodSpec) -> Result<()> {
        for (j, u) in self.sets.iter().enumerate() {
            let k = j + 1;
            require_zero(u, &format!("base set U_{k}"))?;
            require_open(m, u, &format!("base set U_{k}"))?;
            if j > 0 && !u.is_subset(&self.sets[j - 1]) {
                return Err(Error::precondition(format!("base set U_{k} = {u} is not inside U_{j}")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupAxiomReport {
    pub method: String,
    pub multiplication: TraitVerdict,
    pub inversion: TraitVerdict,
    pub corpus_size: usize,
}

impl GroupAxiomReport {
    pub fn holds(&self) -> bool {
        self.multiplication.holds && self.inversion.holds
    }
}

/// Additivity `G(x + y) = G(x) + G(y)` over pairs in the domain, and
/// `G(−x) = −G(x)` over every sequence of the pairs.
pub fn check_group_axioms(m: &MethodSpec, pairs: &[(SeqSpec, SeqSpec)]) -> Result<GroupAxiomReport> {
    let mut mult = TraitVerdict::new("multiplication-continuity", m, default_scope(m));
    let mut seqs: Vec<SeqSpec> = Vec::new();
    for (x, y) in pairs {
        for s in [x, y] {
            if !seqs.contains(s) {
                seqs.push(s.clone());
            }
        }
        let (gx, gy) = (m.g_limit(x), m.g_limit(y));
        let (LimitResult::Converges { value: a, .. }, LimitResult::Converges { value: b, .. }) = (&gx, &gy) else {
            mult.skipped += 1;
            continue;
        };
        let sum = x.add(y)?;
        let lhs = m.g_limit(&sum);
        let rhs = LimitResult::exact(a + b);
        mult.checked += 1;
        if !same_limit(m, &lhs, &rhs) {
            mult.fail(Witness {
                description: format!("{m}(x + y) = {lhs} but {m}(x) + {m}(y) = {rhs}"),
                sequences: vec![x.to_string(), y.to_string(), sum.to_string()],
                values: vec![lhs.to_string(), rhs.to_string()],
            });
        }
    }
    let mut inversion = check_g_continuity(m, &PointMap::Negate, &seqs);
    inversion.trait_name = "inversion-continuity".into();
    Ok(GroupAxiomReport {
        method: m.to_string(),
        multiplication: mult,
        inversion,
        corpus_size: pairs.len(),
    })
}

/// `U ∩ (−U)`.
pub fn symmetrize(u: &RSet) -> Result<RSet> {
    require_zero(u, "symmetrize")?;
    Ok(u.intersect(&u.negate()))
}

/// `−U` is G-open and `V = U ∩ (−U)` satisfies `−V ⊆ U`.
pub fn check_inverse_open(m: &MethodSpec, u: &RSet) -> Result<Check> {
    require_zero(u, "inverse")?;
    require_open(m, u, "inverse (standing assumption violated)")?;
    let neg = u.negate();
    let v = symmetrize(u)?;
    let ok = is_g_open(m, &neg)? && v.negate().is_subset(u) && v.contains(&Rat::zero());
    Ok(Check::single("inverse of an open neighborhood", ok, format!("-U = {neg}, V = {v}"))
        .with_witness(json!({ "U": u.to_string(), "neg_U": neg.to_string(), "V": v.to_string() })))
}

/// Left and right translations coincide in an abelian group; both rows are
/// reported.
pub fn check_translations(m: &MethodSpec, corpus: &[SeqSpec], shifts: &[Rat]) -> Vec<Check> {
    let v = check_translate_regular(m, corpus, shifts);
    ["right translation", "left translation"]
        .into_iter()
        .map(|name| {
            let mut c = Check::aggregate(name);
            c.cases = v.checked;
            if let Some(w) = &v.witness {
                c.passed = false;
                c.failures = 1;
                c.witnesses.push(json!(w));
            }
            c.with_detail(format!("{} corpus sequences x {} shifts", corpus.len(), shifts.len()))
        })
        .collect()
}

/// `x + U` is G-open and contains `x`.
pub fn check_translated_base(m: &MethodSpec, u: &RSet, x: &Rat) -> Result<Check> {
    require_standing(m, "translated base")?;
    require_zero(u, "translated base")?;
    require_open(m, u, "translated base")?;
    let shifted = u.translate(x);
    let ok = shifted.contains(x) && is_g_open(m, &shifted)?;
    Ok(Check::single("translated base", ok, format!("{x} + U = {shifted}")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionFailure {
    pub sets: Vec<RSet>,
    pub intersection: RSet,
    pub kernel: RSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GTopologyReport {
    pub method: String,
    pub opens_tested: usize,
    pub intersections_checked: usize,
    pub intersection_closed: bool,
    pub counterexample: Option<IntersectionFailure>,
}

/// Pairwise and three-way intersections of G-open sets are G-open. The
/// first failure in index order is reported.
pub fn check_topology(m: &MethodSpec, opens: &[RSet]) -> Result<GTopologyReport> {
    for (j, u) in opens.iter().enumerate() {
        require_open(m, u, &format!("open set #{}", j + 1))?;
    }
    let mut report = GTopologyReport {
        method: m.to_string(),
        opens_tested: opens.len(),
        intersections_checked: 0,
        intersection_closed: true,
        counterexample: None,
    };
    let n = opens.len();
    let mut tuples: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            tuples.push(vec![a, b]);
            for c in b + 1..n {
                tuples.push(vec![a, b, c]);
            }
        }
    }
    tuples.sort();
    for t in tuples {
        let inter = t.iter().fold(RSet::reals(), |acc, &j| acc.intersect(&opens[j]));
        let k = kernel(m, &inter)?;
        report.intersections_checked += 1;
        if !inter.is_subset(&k) {
            report.intersection_closed = false;
            report.counterexample = Some(IntersectionFailure {
                sets: t.iter().map(|&j| opens[j].clone()).collect(),
                intersection: inter,
                kernel: k,
            });
            break;
        }
    }
    Ok(report)
}

/// The two Cesàro-open sets whose intersection is not Cesàro-open.
pub fn cesaro_counterexample_opens() -> [RSet; 2] {
    let i = Rat::int;
    [
        RSet::below(i(1), false).union(&RSet::above(i(2), false)),
        RSet::below(i(5), false).union(&RSet::above(i(6), false)),
    ]
}

/// `A + U` is G-open.
pub fn check_au_open(m: &MethodSpec, a: &RSet, u: &RSet) -> Result<Check> {
    require_standing(m, "A + U")?;
    require_open(m, u, "A + U")?;
    let s = a.sum(u);
    Ok(Check::single("A + U is open", is_g_open(m, &s)?, format!("A + U = {s}")))
}

/// `closure(A) ⊆ A + U` for a G-open neighborhood `U` of 0.
pub fn check_closure_bound(m: &MethodSpec, a: &RSet, u: &RSet) -> Result<Check> {
    require_zero(u, "closure bound")?;
    require_open(m, u, "closure bound")?;
    let c = g_closure(m, a)?.set;
    let s = a.sum(u);
    Ok(Check::single("closure inside A + U", c.is_subset(&s), format!("{c} inside {s}")))
}

/// Truncations `I_K = ⋂_{k ≤ K} (A + U_k)` contain the closure at every `K`,
/// and for the default base their excess over it is at most `1/K`. Equality
/// only holds in the limit and is never asserted at finite `K`.
pub fn closure_via_base(m: &MethodSpec, a: &RSet, base: &NeighborhoodBase) -> Result<Report> {
    base.validate(m)?;
    let c = g_closure(m, a)?.set;
    let mut report = Report::new("closure-base")
        .param("method", m)
        .param("set", a)
        .param("K", base.count());
    let mut contain = Check::aggregate("closure inside every truncation");
    let mut gap = Check::aggregate("gap at most 1/K");
    let mut inter = RSet::reals();
    let mut last = None;
    for k in 1..=base.count() {
        inter = inter.intersect(&a.sum(base.set(k)));
        contain.record(c.is_subset(&inter), || json!({ "K": k, "I_K": inter.to_string(), "closure": c.to_string() }));
        let excess = inter.excess_over(&c);
        if base.default_radii {
            let bound = Rat::new(1, k as i64);
            let ok = excess.as_ref().is_some_and(|e| *e <= bound);
            gap.record(ok, || json!({ "K": k, "I_K": inter.to_string(), "gap": excess.as_ref().map(Rat::to_string) }));
        }
        last = Some((inter.clone(), excess));
    }
    let (final_set, final_gap) = last.expect("base is nonempty");
    let gap_text = final_gap.map_or("infinite".to_string(), |g| g.to_string());
    report.push(contain.with_detail(format!("closure {c}, I_{} = {final_set}", base.count())));
    if base.default_radii {
        report.push(gap.with_detail(format!("final gap {gap_text}")));
    } else {
        report.note(format!("custom base; final gap {gap_text}, no rate asserted"));
    }
    Ok(report)
}

/// A symmetric set has a symmetric closure.
pub fn check_symmetric_closure(m: &MethodSpec, a: &RSet) -> Result<Check> {
    if a.negate() != *a {
        return Err(Error::precondition(format!("{a} is not symmetric")));
    }
    let c = g_closure(m, a)?.set;
    Ok(Check::single("closure of a symmetric set", c.negate() == c, format!("closure {c}")))
}

/// `x ∈ closure(A)` iff every `x + U_k` meets `A`. The forward direction is
/// checked at every `k ≤ K`; for `x` outside the closure, the first default
/// base index whose radius is at most the distance is shown to miss `A`.
pub fn check_neighborhood_criterion(m: &MethodSpec, a: &RSet, x: &Rat, base: &NeighborhoodBase) -> Result<Check> {
    base.validate(m)?;
    let c = g_closure(m, a)?.set;
    let inside = c.contains(x);
    let meets = |u: &RSet| !u.translate(x).intersect(a).is_empty();
    let first_miss = (1..=base.count()).find(|&k| !meets(base.set(k)));
    let mut check = Check::aggregate("neighborhood criterion");
    if inside {
        check.record(first_miss.is_none(), || json!({ "x": x, "missed_at": first_miss }));
        return Ok(check.with_detail(format!("{x} in closure; all {} neighborhoods meet A", base.count())));
    }
    let Some(d) = c.distance(x) else {
        // Empty closure: every neighborhood misses.
        check.record(first_miss == Some(1), || json!({ "x": x }));
        return Ok(check.with_detail("empty set"));
    };
    // The point is outside a closed-for-this-purpose set at positive
    // distance; `U_k` with radius `1/k ≤ d` must miss it.
    check.record(d.is_positive(), || json!({ "x": x, "distance": d }));
    let k_star = if base.default_radii {
        let k = d.recip().ceil();
        let k: i64 = k.try_into().unwrap_or(i64::MAX).max(1);
        let u = RSet::open(Rat::new(-1, k), Rat::new(1, k));
        check.record(!meets(&u), || json!({ "x": x, "k": k }));
        Some(k)
    } else {
        check.record(first_miss.is_some(), || json!({ "x": x }));
        first_miss.map(|k| k as i64)
    };
    Ok(check.with_detail(format!(
        "{x} outside closure at distance {d}; x + U_{} misses A",
        k_star.map_or("?".into(), |k| k.to_string())
    )))
}

/// A sequence `G`-converging to `a` that is not almost in `A`, certified by
/// a one-sided gap: `a ± w/(n+1)` stays in an interval disjoint from `A`.
fn escape_witness(a: &RSet, p: &Rat) -> Option<String> {
    if !a.contains(p) {
        return Some(format!("const({p}) with {p} outside the set"));
    }
    let mut radius = Rat::one();
    for e in a.endpoints() {
        let d = (&e - p).abs();
        if d.is_positive() && d < radius {
            radius = d;
        }
    }
    let left = RSet::open(p - &radius, p.clone());
    let right = RSet::open(p.clone(), p + &radius);
    if left.intersect(a).is_empty() {
        Some(format!("{p} - {radius}/(n+1), inside {left}"))
    } else if right.intersect(a).is_empty() {
        Some(format!("{p} + {radius}/(n+1), inside {right}"))
    } else {
        None
    }
}

/// Points where membership in the kernel can change.
fn probe_points(a: &RSet) -> Vec<Rat> {
    let ends = a.endpoints();
    let mut pts = ends.clone();
    for w in ends.windows(2) {
        pts.push(Rat::mean(w));
    }
    if let (Some(lo), Some(hi)) = (ends.first(), ends.last()) {
        pts.push(lo - Rat::one());
        pts.push(hi + Rat::one());
    } else {
        pts.push(Rat::zero());
    }
    pts.sort();
    pts.dedup();
    pts
}

/// `a ∈ kernel(A)` iff every sequence converging to `a` is almost in `A`.
/// The forward direction runs over the corpus translated to limit `a`; the
/// converse exhibits an escaping sequence.
pub fn almost_in_equivalence(m: &MethodSpec, a: &RSet, seqs: &[SeqSpec]) -> Result<Check> {
    let k = kernel(m, a)?;
    let mut check = Check::aggregate("kernel iff almost in");
    for p in probe_points(a) {
        if k.contains(&p) {
            for s in seqs {
                let LimitResult::Converges { value, .. } = m.g_limit(s) else { continue };
                let t = s.translate(&(&p - &value));
                check.record(t.almost_in(a), || json!({ "a": p, "sequence": t.to_string() }));
            }
        } else {
            let w = escape_witness(a, &p);
            check.record(w.is_some(), || json!({ "a": p, "set": a.to_string() }));
        }
    }
    Ok(check.with_detail(format!("set {a}, kernel {k}")))
}

/// Subgroups of `(ℝ, +)` that are finite interval unions.
pub fn representable_subgroups() -> Vec<RSet> {
    vec![RSet::point(Rat::zero()), RSet::reals()]
}

/// Group-topology facts needing the standing assumption, or counterexamples showing
/// it cannot be dropped.
pub fn hypothesis_necessity_suite(m: &MethodSpec) -> Result<Report> {
    let standing = standing_assumption(m)?;
    let mut report = Report::new("hypothesis-necessity").param("method", m);
    if standing.holds {
        let mut seqs = corpus::standard_corpus();
        seqs.extend(corpus::convergent_corpus());
        let i = Rat::int;
        let sets = [
            RSet::open(i(0), i(1)),
            RSet::closed(i(0), i(1)),
            RSet::interval(i(0).into(), true, i(1).into(), false).union(&RSet::point(i(3))),
            RSet::above(i(2), false),
        ];
        let mut eq = Check::aggregate("kernel iff almost in");
        for a in &sets {
            let c = almost_in_equivalence(m, a, &seqs)?;
            eq.cases += c.cases;
            eq.failures += c.failures;
            eq.passed &= c.passed;
            eq.witnesses.extend(c.witnesses);
        }
        report.push(eq.with_detail(format!("{} sets, corpus of {}", sets.len(), seqs.len())));

        let mut open_closed = Check::aggregate("open subgroup is closed");
        let mut contains_open = Check::aggregate("subgroup containing an open set is open");
        for h in representable_subgroups() {
            if is_g_open(m, &h)? {
                open_closed.record(is_g_closed(m, &h)?, || json!({ "H": h.to_string() }));
            }
            if !kernel(m, &h)?.is_empty() {
                contains_open.record(is_g_open(m, &h)?, || json!({ "H": h.to_string() }));
            }
        }
        report.push(open_closed.with_detail("subgroups {0} and R"));
        report.push(contains_open.with_detail("subgroups {0} and R"));
        report.note("the only subgroups of (R,+) that are finite interval unions are {0} and R");

        let mut homs = Check::aggregate("homomorphisms continuous at 0 are continuous");
        for c in [i(3), i(-2), Rat::new(1, 3), i(0)] {
            let map = PointMap::affine(c.clone(), Rat::zero());
            let v = check_g_continuity(m, &map, &seqs);
            homs.record(v.holds, || json!({ "c": c, "witness": v.witness }));
        }
        report.push(homs.with_detail("x -> c x for c in 3, -2, 1/3, 0"));
    } else {
        let w = standing.witness.clone();
        report.push(
            Check::single(
                "standing assumption fails",
                w.is_some(),
                format!("{m} does not preserve subsequence convergence"),
            )
            .with_witness(json!(w)),
        );
        if *m.factor() == MethodSpec::Cesaro {
            let [u, v] = cesaro_counterexample_opens();
            let t = check_topology(m, &[u, v])?;
            report.push(Check::single(
                "open sets not closed under intersection",
                !t.intersection_closed,
                t.counterexample
                    .as_ref()
                    .map_or("no failure".into(), |c| format!("{} has kernel {}", c.intersection, c.kernel)),
            ));
        }
        report.note("out of hypothesis: kernel iff almost in, translated bases, A + U open, open subgroups closed, subgroups containing an open set, homomorphism continuity");
    }
    Ok(report)
}
