//! Named, seeded suites and scenarios. Every suite is deterministic given its
//! parameters; reports never contain timing.

use std::thread;

use serde_json::json;

use crate::corpus;
use crate::error::{Error, Result};
use crate::gen::SetGen;
use crate::group::{
    check_au_open, check_closure_bound, check_group_axioms, check_inverse_open, check_neighborhood_criterion,
    check_symmetric_closure, check_topology, check_translated_base, check_translations, cesaro_counterexample_opens,
    closure_via_base, hypothesis_necessity_suite, standing_assumption, symmetrize, NeighborhoodBase,
};
use crate::methods::{
    check_matrix_regular, check_preserves_subsequences, check_regular_empirical, check_subsequential,
    check_translate_regular, MatrixRows, MethodSpec, TraitVerdict,
};
use crate::oracle;
use crate::product::{
    box_closed, box_hull, box_kernel, example33_scenario, product_connectedness, projection_suite,
    sigma_density_scenario, DepthBox, IndexedFamily, PointRule, ProdSeq,
};
use crate::rat::Rat;
use crate::realsets::RSet;
use crate::report::{Check, Report};
use crate::sequence::{IndexFamily, PointMap, SeqSpec};
use crate::topology::{
    continuous_image, hull, is_g_closed, is_g_connected, is_g_open, kernel, union_with_common_point,
};

pub const SUITES: [&str; 7] = ["thm3.1", "ex33", "thm4.5", "sec5", "sec5-counterexamples", "traits", "oracle-hull"];
pub const SCENARIOS: [&str; 2] = ["ex33", "sigma"];

#[derive(Clone, Debug)]
pub struct SuiteParams {
    pub trials: Option<usize>,
    pub seed: u64,
    pub depth: Option<u64>,
    pub method: Option<MethodSpec>,
    pub k: Option<usize>,
}

impl Default for SuiteParams {
    fn default() -> SuiteParams {
        SuiteParams {
            trials: None,
            seed: 1,
            depth: None,
            method: None,
            k: None,
        }
    }
}

const EXACT: [MethodSpec; 3] = [MethodSpec::Lim, MethodSpec::Cesaro, MethodSpec::Statistical];

pub fn run_suite(name: &str, p: &SuiteParams) -> Result<Report> {
    match name {
        "thm3.1" => box_laws(p.trials.unwrap_or(200), p.seed),
        "ex33" => example33_scenario(p.depth.unwrap_or(16)),
        "thm4.5" => connectedness_suite(p.trials.unwrap_or(500), p.seed, p.depth.unwrap_or(3)),
        "sec5" => group_suite(p.method.as_ref().unwrap_or(&MethodSpec::Lim), p.trials.unwrap_or(50), p.seed, p.k.unwrap_or(64)),
        "sec5-counterexamples" => counterexample_suite(p.method.as_ref().unwrap_or(&MethodSpec::Cesaro)),
        "traits" => trait_suite(),
        "oracle-hull" => oracle_suite(p.trials.unwrap_or(50), p.seed, p.method.as_ref()),
        other => Err(Error::precondition(format!(
            "unknown suite '{other}'; available: {}",
            SUITES.join(", ")
        ))),
    }
}

pub fn run_scenario(name: &str, depth: Option<u64>) -> Result<Report> {
    match name {
        "ex33" => example33_scenario(depth.unwrap_or(8)),
        "sigma" => sigma_density_scenario(depth.unwrap_or(8), &PointRule::Constant(Rat::zero()), &PointRule::identity()),
        other => Err(Error::precondition(format!(
            "unknown scenario '{other}'; available: {}",
            SCENARIOS.join(", ")
        ))),
    }
}

fn merge(into: &mut Check, other: &Check) {
    into.cases += other.cases;
    into.failures += other.failures;
    into.passed &= other.passed;
    if other.passed {
        return;
    }
    for w in &other.witnesses {
        if into.witnesses.len() < 5 {
            into.witnesses.push(w.clone());
        }
    }
}

fn verdict_check(v: &TraitVerdict, expect: bool, name: impl Into<String>) -> Check {
    let detail = match &v.witness {
        Some(w) => format!("{} {}: {}", v.method, if v.holds { "holds" } else { "fails" }, w.description),
        None => format!("{} {} ({} checked, scope {:?})", v.method, if v.holds { "holds" } else { "fails" }, v.checked, v.scope),
    };
    let c = Check::single(name, v.holds == expect, detail);
    match &v.witness {
        Some(w) => c.with_witness(json!(w)),
        None => c,
    }
}

fn random_box(g: &mut SetGen) -> Result<DepthBox> {
    use rand::Rng;
    let depth = g.rng().gen_range(1..=4u64);
    let factors: Vec<RSet> = (0..depth).map(|_| g.set()).collect();
    let tail = match g.rng().gen_range(0..4) {
        0 => IndexedFamily::Constant(g.set()),
        1 => IndexedFamily::shifted(Rat::new(g.rng().gen_range(1..=8), 8), g.rng().gen(), g.rng().gen()),
        _ => IndexedFamily::Constant(RSet::reals()),
    };
    DepthBox::new(depth, IndexedFamily::explicit(factors, tail))
}

/// Hulls of boxes are boxes of hulls; boxes of closed factors are closed;
/// kernels of finite products are products of kernels.
pub fn box_laws(trials: usize, seed: u64) -> Result<Report> {
    let mut g = SetGen::new(seed);
    let mut report = Report::new("thm3.1").param("trials", trials).param("seed", seed);
    let mut hull_law = Check::aggregate("box hull equals componentwise hull");
    let mut closed_law = Check::aggregate("closed factors give a closed box");
    for _ in 0..trials {
        let b = random_box(&mut g)?;
        let mut hull_ok = true;
        let mut closed_ok = true;
        for m in &EXACT {
            let pm = MethodSpec::product(m.clone());
            let h = box_hull(&pm, &b)?;
            // Explicit factors and two indices into the tail rule.
            for i in 1..=b.depth + 2 {
                hull_ok &= h.factor(i) == hull(m, &b.factor(i))?;
            }
            let mut all_closed = true;
            for i in 1..=b.depth + 2 {
                all_closed &= is_g_closed(m, &b.factor(i))?;
            }
            let bc = box_closed(&pm, &b)?;
            closed_ok &= !all_closed || bc;
            // The hull box has closed factors, so it must be closed too.
            closed_ok &= box_closed(&pm, &h)?;
        }
        hull_law.record(hull_ok, || json!({ "box": b.to_string() }));
        closed_law.record(closed_ok, || json!({ "box": b.to_string() }));
    }
    report.push(hull_law);
    report.push(closed_law);

    let lim = MethodSpec::product(MethodSpec::Lim);
    let mut kernel_law = Check::aggregate("finite product kernel equals componentwise kernel");
    for _ in 0..100 {
        let (a, b) = (g.set(), g.set());
        let bx = DepthBox::finite(vec![a.clone(), b.clone()])?;
        let k = box_kernel(&lim, &bx)?;
        let ok = k.explicit_factors() == vec![kernel(&MethodSpec::Lim, &a)?, kernel(&MethodSpec::Lim, &b)?]
            && k.has_full_tail()?;
        kernel_law.record(ok, || json!({ "box": bx.to_string() }));
    }
    report.push(kernel_law.with_detail("lim, depth 2, 100 pairs"));

    let seqs = [
        ProdSeq::Example33,
        ProdSeq::Sigma {
            a: PointRule::Constant(Rat::zero()),
            x: PointRule::identity(),
        },
        ProdSeq::ConstantPoint(PointRule::Reciprocal { scale: Rat::one() }),
        ProdSeq::PerCoordinate {
            coords: corpus::standard_corpus().into_iter().take(4).collect(),
            beyond: SeqSpec::constant(Rat::zero()),
        },
    ];
    let mut boxes: Vec<DepthBox> = (0..20).map(|_| random_box(&mut g)).collect::<Result<_>>()?;
    // Hull boxes are closed, so the closed-box checks have inputs.
    let hulls = boxes.iter().map(|b| box_hull(&lim, b)).collect::<Result<Vec<_>>>()?;
    boxes.extend(hulls);
    for m in &EXACT {
        let sub = projection_suite(&MethodSpec::product(m.clone()), 4, &seqs, &boxes)?;
        for c in sub.checks {
            report.push(Check {
                name: format!("{} [{m}]", c.name),
                ..c
            });
        }
        for n in sub.notes {
            report.note(n);
        }
    }
    Ok(report)
}

/// Connectedness laws: unions through a common point, continuous images,
/// finite products, the factorwise criterion for boxes, and the density
/// construction behind it.
pub fn connectedness_suite(trials: usize, seed: u64, depth: u64) -> Result<Report> {
    use rand::Rng;
    if !(1..=3).contains(&depth) {
        return Err(Error::precondition("product connectedness is checked at depth 1 to 3"));
    }
    let mut g = SetGen::new(seed);
    let mut report = Report::new("thm4.5").param("trials", trials).param("seed", seed).param("depth", depth);

    let mut agree = Check::aggregate("lim connectedness equals ordinary connectedness");
    for _ in 0..trials {
        let a = g.nonempty_set();
        let c = is_g_connected(&MethodSpec::Lim, &a)?.connected;
        agree.record(c == a.is_connected_ordinary(), || json!({ "set": a.to_string() }));
    }
    report.push(agree);

    let mut unions = Check::aggregate("union through a common point is connected");
    let mut images = Check::aggregate("continuous image of a connected set is connected");
    let mut pairs = Check::aggregate("product of two connected sets is connected");
    let mut applicable = 0;
    for m in &EXACT {
        for _ in 0..trials / 10 {
            let p = g.rat();
            let fam: Vec<RSet> = (0..3)
                .map(|_| {
                    let (a, b) = (g.rat(), g.rat());
                    RSet::closed(p.clone().min(a), p.clone().max(b))
                })
                .collect();
            let law = union_with_common_point(m, &fam)?;
            applicable += usize::from(law.applicable);
            unions.record(law.holds, || json!({ "method": m.to_string(), "family": fam.iter().map(ToString::to_string).collect::<Vec<_>>() }));

            let a = g.bounded_intervals();
            let comp = a.components().into_iter().next().unwrap_or_else(|| RSet::point(Rat::zero()));
            let map = PointMap::affine(g.rat(), g.rat());
            let law = continuous_image(m, &map, &comp)?;
            images.record(law.holds, || json!({ "method": m.to_string(), "set": comp.to_string(), "map": map.to_string() }));

            let x = RSet::closed(g.rat().min(Rat::zero()), Rat::one());
            let y = if g.rng().gen_bool(0.5) { RSet::above(g.rat(), true) } else { RSet::point(g.rat()) };
            let r = product_connectedness(m, &[x.clone(), y.clone()])?;
            pairs.record(r.passed && r.check("box connected iff every factor connected").is_some(), || {
                json!({ "method": m.to_string(), "factors": [x.to_string(), y.to_string()] })
            });
        }
    }
    report.push(unions.with_detail(format!("{applicable} applicable")));
    report.push(images);
    report.push(pairs);

    let mut factorwise = Check::aggregate("box connected iff every factor connected");
    let mut both = [0usize; 2];
    for m in &EXACT {
        for _ in 0..trials / 10 {
            let factors: Vec<RSet> = (0..depth)
                .map(|_| if g.rng().gen_bool(0.5) { g.nonempty_set().components()[0].clone() } else { g.nonempty_set() })
                .collect();
            let r = product_connectedness(m, &factors)?;
            let v = crate::product::box_connected(m, &factors)?;
            both[usize::from(v.connected)] += 1;
            factorwise.record(r.passed, || json!({ "method": m.to_string(), "factors": factors.iter().map(ToString::to_string).collect::<Vec<_>>() }));
        }
    }
    let covered = both[0] > 0 && both[1] > 0;
    report.push(factorwise.with_detail(format!("{} connected, {} disconnected", both[1], both[0])));
    report.push(Check::single("both directions exercised", covered, format!("{both:?}")));

    let sigma = sigma_density_scenario(8, &PointRule::Constant(Rat::zero()), &PointRule::identity())?;
    for c in sigma.checks {
        report.push(Check {
            name: format!("density construction: {}", c.name),
            ..c
        });
    }
    Ok(report)
}

fn containing_zero(g: &mut SetGen) -> RSet {
    let u = g.open_set();
    if u.contains(&Rat::zero()) {
        u
    } else {
        u.union(&RSet::open(Rat::new(-1, 2), Rat::new(1, 2)))
    }
}

/// The additive group results under a method satisfying the standing
/// assumption. Other methods are routed to the counterexample suite.
pub fn group_suite(m: &MethodSpec, trials: usize, seed: u64, k: usize) -> Result<Report> {
    if !standing_assumption(m)?.holds {
        let mut r = counterexample_suite(m)?;
        r.note(format!("{m} fails the standing assumption; ran the counterexample branch"));
        return Ok(r);
    }
    if k == 0 || k > 4096 {
        return Err(Error::precondition("K must be between 1 and 4096"));
    }
    let mut g = SetGen::new(seed);
    let mut report = Report::new("sec5").param("method", m).param("trials", trials).param("seed", seed).param("K", k);
    let base = NeighborhoodBase::default_base(k)?;
    base.validate(m)?;

    let axioms = check_group_axioms(m, &corpus::sequence_pairs())?;
    report.push(verdict_check(&axioms.multiplication, true, "addition is continuous"));
    report.push(verdict_check(&axioms.inversion, true, "negation is continuous"));
    for c in check_translations(m, &corpus::standard_corpus(), &corpus::standard_shifts()) {
        report.push(c);
    }

    let sets: Vec<RSet> = (0..trials).map(|_| g.set()).collect();
    let opens: Vec<RSet> = (0..trials).map(|_| containing_zero(&mut g)).collect();

    let mut inverse = Check::aggregate("inverse of an open neighborhood");
    let mut symmetric = Check::aggregate("symmetric open neighborhoods");
    for u in opens.iter().chain(base.sets.iter()) {
        merge(&mut inverse, &check_inverse_open(m, u)?);
        let v = symmetrize(u)?;
        let ok = v.negate() == v && v.is_subset(u) && is_g_open(m, &v)? && symmetrize(&v)? == v;
        symmetric.record(ok, || json!({ "U": u.to_string(), "V": v.to_string() }));
    }
    report.push(inverse);
    report.push(symmetric);

    let mut translated = Check::aggregate("translated base");
    for a in &sets {
        for x in a.endpoints().iter().take(4) {
            for kk in [1, k / 2 + 1, k] {
                merge(&mut translated, &check_translated_base(m, base.set(kk), x)?);
            }
        }
    }
    report.push(translated);

    let t = check_topology(m, &opens)?;
    report.push(Check {
        cases: t.intersections_checked,
        ..Check::single(
            "open sets closed under finite intersection",
            t.intersection_closed,
            format!("{} open sets", t.opens_tested),
        )
    });

    let mut au = Check::aggregate("A + U is open");
    let mut bound = Check::aggregate("closure inside A + U");
    let mut sym = Check::aggregate("closure of a symmetric set");
    let mut via_base = Check::aggregate("closure inside every truncation");
    let mut gap = Check::aggregate("gap at most 1/K");
    let mut nbhd = Check::aggregate("neighborhood criterion");
    for a in &sets {
        for u in [base.set(1), base.set(k), &opens[0]] {
            merge(&mut au, &check_au_open(m, a, u)?);
            merge(&mut bound, &check_closure_bound(m, a, u)?);
        }
        merge(&mut sym, &check_symmetric_closure(m, &a.union(&a.negate()))?);
        let r = closure_via_base(m, a, &base)?;
        merge(&mut via_base, r.check("closure inside every truncation").expect("present"));
        merge(&mut gap, r.check("gap at most 1/K").expect("present"));
        let mut probes = a.endpoints();
        probes.extend(oracle::grid(a).into_iter().step_by(4));
        for x in probes {
            merge(&mut nbhd, &check_neighborhood_criterion(m, a, &x, &base)?);
        }
    }
    for c in [au, bound, sym, via_base, gap, nbhd] {
        report.push(c);
    }
    report.extend(hypothesis_necessity_suite(m)?);
    Ok(report)
}

/// Evidence that the standing assumption cannot be dropped.
pub fn counterexample_suite(m: &MethodSpec) -> Result<Report> {
    let standing = standing_assumption(m)?;
    if standing.holds {
        return Err(Error::precondition(format!(
            "{m} satisfies the standing assumption; use the sec5 suite"
        )));
    }
    let mut report = Report::new("sec5-counterexamples").param("method", m);
    report.extend(hypothesis_necessity_suite(m)?);
    if *m.factor() == MethodSpec::Cesaro {
        let [u, v] = cesaro_counterexample_opens();
        let t = check_topology(m, &[u.clone(), v.clone()])?;
        let expected = RSet::below(Rat::one(), false)
            .union(&RSet::open(Rat::int(2), Rat::int(5)))
            .union(&RSet::above(Rat::int(6), false));
        let ok = t.counterexample.as_ref().is_some_and(|c| {
            c.intersection == expected && c.kernel.intersect(&RSet::open(Rat::int(2), Rat::int(5))).is_empty()
        });
        let c = Check::single(
            "intersection counterexample",
            ok,
            format!("{u} n {v} = {expected}, not {m}-open"),
        );
        report.push(match t.counterexample {
            Some(f) => c.with_witness(json!({
                "U": f.sets[0].to_string(),
                "V": f.sets[1].to_string(),
                "intersection": f.intersection.to_string(),
                "kernel": f.kernel.to_string(),
            })),
            None => c,
        });
        let refused = check_inverse_open(m, &RSet::open(Rat::int(-1), Rat::int(2)));
        report.push(Check::single(
            "bounded neighborhoods are not open",
            matches!(refused, Err(Error::Precondition(_))),
            refused.err().map_or("accepted".into(), |e| e.to_string()),
        ));
    }
    let mut translate = Check::aggregate("translate regular for every method");
    let mut methods = EXACT.to_vec();
    if !methods.contains(m) {
        methods.push(m.clone());
    }
    for method in &methods {
        let v = check_translate_regular(method, &corpus::standard_corpus(), &corpus::standard_shifts());
        translate.cases += v.checked;
        if !v.holds {
            translate.passed = false;
            translate.failures += 1;
            translate.witnesses.push(json!(v.witness));
        }
    }
    let names: Vec<String> = methods.iter().map(ToString::to_string).collect();
    report.push(translate.with_detail(format!("{} over corpus x 20 shifts", names.join(", "))));
    Ok(report)
}

/// Regularity and subsequence traits with their exact witnesses.
pub fn trait_suite() -> Result<Report> {
    let mut report = Report::new("traits");
    report.push(verdict_check(&check_matrix_regular(&MatrixRows::Cesaro), true, "cesaro rows are regular"));
    let banded = MatrixRows::Banded {
        offset: 0,
        coef: Rat::int(2),
    };
    report.push(verdict_check(&check_matrix_regular(&banded), false, "doubling diagonal is not regular"));
    let column = MatrixRows::Columns {
        entries: vec![(1, Rat::one())],
    };
    report.push(verdict_check(&check_matrix_regular(&column), false, "constant first column is not regular"));
    let conv = corpus::convergent_corpus();
    for m in &EXACT {
        report.push(verdict_check(&check_regular_empirical(m, &conv)?, true, format!("{m} is regular")));
    }

    let c = corpus::standard_corpus();
    let f = corpus::standard_families();
    let half = Rat::new(1, 2);
    let one = Rat::one();
    let expectations: [(MethodSpec, bool, Vec<String>); 3] = [
        (MethodSpec::Lim, true, vec![]),
        (MethodSpec::Cesaro, false, vec![half.to_string(), one.to_string(), IndexFamily::ap(2, 2).to_string()]),
        (MethodSpec::Statistical, false, vec!["0".into(), one.to_string(), IndexFamily::Squares.to_string()]),
    ];
    for (m, holds, values) in expectations {
        let v = check_preserves_subsequences(&m, &c, &f)?;
        let exact = v.witness.as_ref().map_or(Vec::new(), |w| w.values.clone()) == values;
        let name = if holds {
            format!("{m} preserves subsequence convergence")
        } else {
            format!("{m} loses subsequence convergence, exact witness")
        };
        let mut chk = verdict_check(&v, holds, name);
        chk.passed &= exact;
        report.push(chk);
    }
    let alt = SeqSpec::periodic(vec![], vec![Rat::zero(), Rat::one()]);
    let v = check_subsequential(&MethodSpec::Cesaro, &alt)?;
    report.push(verdict_check(&v, false, "cesaro limit of 0,1 is not a subsequence limit"));
    let spike = SeqSpec::spike(Rat::zero(), Rat::one(), IndexFamily::Squares);
    let v = check_subsequential(&MethodSpec::Statistical, &spike)?;
    report.push(verdict_check(&v, true, "stat limit of a square spike is a subsequence limit"));
    let mut flags = Check::aggregate("cached flags match the checkers");
    for m in &EXACT {
        let cached = m.trait_flags().expect("built-in method");
        let pres = check_preserves_subsequences(m, &c, &f)?.holds;
        let reg = check_regular_empirical(m, &conv)?.holds;
        let tr = check_translate_regular(m, &c, &corpus::standard_shifts()).holds;
        let sub = c.iter().filter(|s| m.g_limit(s).converges()).try_fold(true, |acc, s| {
            Ok::<bool, Error>(acc && check_subsequential(m, s)?.holds)
        })?;
        let ok = cached.preserves_subsequences == pres
            && cached.regular == reg
            && cached.translate_regular == tr
            && cached.subsequential == sub;
        flags.record(ok, || json!({ "method": m.to_string(), "cached": cached }));
    }
    report.push(flags);
    Ok(report)
}

/// Closed-form hulls against the construction oracle, parallel over sets
/// with results in input order.
pub fn oracle_suite(trials: usize, seed: u64, method: Option<&MethodSpec>) -> Result<Report> {
    let methods: Vec<MethodSpec> = match method {
        Some(m) => vec![m.clone()],
        None => EXACT.to_vec(),
    };
    let mut g = SetGen::new(seed);
    let sets: Vec<RSet> = (0..trials).map(|_| g.set()).collect();
    let jobs: Vec<(MethodSpec, RSet)> = methods
        .iter()
        .flat_map(|m| sets.iter().map(move |a| (m.clone(), a.clone())))
        .collect();
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(jobs.len().max(1));
    let chunk = jobs.len().div_ceil(workers.max(1)).max(1);
    let outcomes: Vec<Result<oracle::OracleOutcome>> = thread::scope(|s| {
        let handles: Vec<_> = jobs
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(|(m, a)| oracle::check_hull(m, a)).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("oracle worker panicked")).collect()
    });
    let mut report = Report::new("oracle-hull")
        .param("trials", trials)
        .param("seed", seed)
        .param("terms", oracle::N_TERMS);
    for m in &methods {
        let mut c = Check::aggregate(format!("{m} hull matches the oracle"));
        let (mut inside, mut outside) = (0, 0);
        for ((jm, _), o) in jobs.iter().zip(&outcomes) {
            if jm != m {
                continue;
            }
            let o = o.as_ref().map_err(Clone::clone)?;
            inside += o.inside;
            outside += o.outside;
            c.record(o.agrees(), || json!(o));
        }
        report.push(c.with_detail(format!("{inside} grid points inside, {outside} outside")));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_runs() {
        let p = SuiteParams {
            trials: Some(20),
            ..SuiteParams::default()
        };
        for name in ["thm3.1", "ex33", "thm4.5", "sec5", "sec5-counterexamples", "traits"] {
            let r = run_suite(name, &p).unwrap();
            assert!(r.passed, "{name}: {r}");
        }
        assert!(run_suite("nope", &p).is_err());
        let p = SuiteParams {
            method: Some(MethodSpec::Lim),
            ..SuiteParams::default()
        };
        assert!(matches!(run_suite("sec5-counterexamples", &p), Err(Error::Precondition(_))));
    }

    #[test]
    fn seeded_reports_are_reproducible() {
        let p = SuiteParams {
            trials: Some(30),
            seed: 7,
            ..SuiteParams::default()
        };
        let a = run_suite("thm3.1", &p).unwrap().to_json();
        let b = run_suite("thm3.1", &p).unwrap().to_json();
        assert_eq!(a, b);
        let q = SuiteParams { seed: 8, ..p };
        assert_ne!(a, run_suite("thm3.1", &q).unwrap().to_json());
    }

    #[test]
    fn stat_counterexamples() {
        let p = SuiteParams {
            method: Some(MethodSpec::Statistical),
            ..SuiteParams::default()
        };
        let r = run_suite("sec5-counterexamples", &p).unwrap();
        assert!(r.passed, "{r}");
    }
}
