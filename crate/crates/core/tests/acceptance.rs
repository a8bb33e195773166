//! Acceptance run: one PASS/FAIL line per criterion. Runs without the libtest
//! harness so the lines are always printed; exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use gconverge::corpus;
use gconverge::gen::SetGen;
use gconverge::group::{closure_via_base, NeighborhoodBase};
use gconverge::methods::{check_matrix_regular, check_preserves_subsequences, check_regular_empirical, MatrixRows};
use gconverge::parse::parse_set;
use gconverge::report::Report;
use gconverge::suites;
use gconverge::topology::{is_g_connected, is_g_open, kernel};
use gconverge::{MethodSpec, RSet, Rat};

const EXACT: [MethodSpec; 3] = [MethodSpec::Lim, MethodSpec::Cesaro, MethodSpec::Statistical];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn passing(r: &Report) -> Result<(), String> {
    match r.checks.iter().find(|c| !c.passed) {
        None => Ok(()),
        Some(c) => Err(format!("{}: {} failed ({})", r.name, c.name, c.detail)),
    }
}

fn check_named<'a>(r: &'a Report, name: &str) -> Result<&'a gconverge::report::Check, String> {
    let c = r.check(name).ok_or_else(|| format!("{}: no check named '{name}'", r.name))?;
    ensure(c.passed, format!("{name}: {}", c.detail))?;
    Ok(c)
}

fn set(s: &str) -> RSet {
    parse_set(s).expect("literal set")
}

fn ex33() -> Outcome {
    let start = Instant::now();
    let r = suites::run_scenario("ex33", Some(16)).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    passing(&r)?;
    ensure(r.checks.len() == 5, format!("{} sub-checks, expected 5", r.checks.len()))?;
    ensure(took < Duration::from_secs(1), format!("took {took:?}"))?;
    Ok(format!("5/5 sub-checks, {} cases in {took:.2?}", r.cases))
}

fn box_laws() -> Outcome {
    let r = suites::box_laws(200, 7).map_err(|e| e.to_string())?;
    passing(&r)?;
    let hull = check_named(&r, "box hull equals componentwise hull")?;
    let closed = check_named(&r, "closed factors give a closed box")?;
    ensure(hull.cases == 200 && closed.cases == 200, "expected 200 boxes per law")?;
    Ok(format!("200 boxes x 3 methods, {} cases, 0 failures", r.cases))
}

fn oracle() -> Outcome {
    let start = Instant::now();
    let r = suites::oracle_suite(50, 1, None).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    passing(&r)?;
    for m in &EXACT {
        let c = check_named(&r, &format!("{m} hull matches the oracle"))?;
        ensure(c.cases == 50, format!("{m}: {} sets", c.cases))?;
    }
    ensure(took < Duration::from_secs(60), format!("took {took:?}"))?;
    Ok(format!("150/150 sets agree, N = 10^5, tolerances 1e-6 / 1e-3, {took:.2?}"))
}

fn regularity() -> Outcome {
    let ces = check_matrix_regular(&MatrixRows::Cesaro);
    ensure(ces.holds, "cesaro rows judged not regular")?;
    let named = |rows: MatrixRows, cond: &str| -> Result<(), String> {
        let v = check_matrix_regular(&rows);
        let w = v.witness.as_ref().ok_or("no witness for a failing matrix")?;
        ensure(!v.holds && w.values.first().map(String::as_str) == Some(cond), format!("{}: {:?}", v.method, w))
    };
    named(MatrixRows::Banded { offset: 0, coef: Rat::int(2) }, "(iii)")?;
    named(MatrixRows::Columns { entries: vec![(1, Rat::one())] }, "(ii)")?;
    let conv = corpus::convergent_corpus();
    ensure(conv.len() == 100, format!("convergent corpus has {} sequences", conv.len()))?;
    for m in &EXACT {
        let v = check_regular_empirical(m, &conv).map_err(|e| e.to_string())?;
        ensure(v.holds && v.checked == 100, format!("{m}: {:?}", v.witness))?;
    }
    Ok("cesaro rows regular; banded fails (iii), columns fails (ii); 3 methods x 100 sequences exact".into())
}

fn subsequence_traits() -> Outcome {
    let (c, f) = (corpus::standard_corpus(), corpus::standard_families());
    let lim = check_preserves_subsequences(&MethodSpec::Lim, &c, &f).map_err(|e| e.to_string())?;
    ensure(lim.holds, "lim loses subsequence convergence")?;
    let witness = |m: &MethodSpec| -> Result<Vec<String>, String> {
        let v = check_preserves_subsequences(m, &c, &f).map_err(|e| e.to_string())?;
        ensure(!v.holds, format!("{m} unexpectedly preserves subsequences"))?;
        let w = v.witness.ok_or("missing witness")?;
        Ok([w.sequences[0].clone(), w.values[0].clone(), w.values[1].clone()].to_vec())
    };
    let ces = witness(&MethodSpec::Cesaro)?;
    ensure(ces == ["per(prefix=[]; cycle=[0,1])", "1/2", "1"], format!("cesaro witness {ces:?}"))?;
    let stat = witness(&MethodSpec::Statistical)?;
    ensure(stat == ["spike(base=0; spike=1; where=squares)", "0", "1"], format!("stat witness {stat:?}"))?;
    Ok("lim holds; cesaro 0,1 -> 1/2 vs 1; stat squares spike -> 0 vs 1".into())
}

fn connectedness() -> Outcome {
    let conn = |m: &MethodSpec, s: &str| is_g_connected(m, &set(s)).map_err(|e| e.to_string());
    ensure(conn(&MethodSpec::Lim, "[0,1]")?.connected, "lim [0,1] separated")?;
    let split = conn(&MethodSpec::Lim, "[0,1] u [2,3]")?;
    let (f, k) = split.separation.ok_or("lim [0,1] u [2,3] has no separation")?;
    let pair = [f.to_string(), k.to_string()];
    ensure(
        pair == ["[0,1]", "[2,3]"] || pair == ["[2,3]", "[0,1]"],
        format!("separation {pair:?}"),
    )?;
    ensure(conn(&MethodSpec::Cesaro, "[0,1]")?.connected, "cesaro [0,1] separated")?;
    ensure(!conn(&MethodSpec::Cesaro, "{0} u {1}")?.connected, "cesaro {0} u {1} connected")?;
    let mut g = SetGen::new(1);
    let mut agree = 0;
    for _ in 0..500 {
        let a = g.nonempty_set();
        let r = is_g_connected(&MethodSpec::Lim, &a).map_err(|e| e.to_string())?;
        ensure(r.connected == a.is_connected_ordinary(), format!("disagreement on {a}"))?;
        agree += 1;
    }
    Ok(format!("table matches; lim agrees with ordinary connectedness on {agree}/500 sets"))
}

fn section4() -> Outcome {
    let r = suites::connectedness_suite(500, 1, 3).map_err(|e| e.to_string())?;
    passing(&r)?;
    let both = check_named(&r, "both directions exercised")?;
    let counts: Vec<usize> = serde_json::from_str(&both.detail).map_err(|e| e.to_string())?;
    ensure(counts.len() == 2 && counts.iter().all(|&n| n > 0), format!("direction counts {counts:?}"))?;
    let sigma = suites::run_scenario("sigma", Some(8)).map_err(|e| e.to_string())?;
    passing(&sigma)?;
    Ok(format!("law harnesses {} cases; factorwise criterion both directions at depth 3; sigma at depth 8", r.cases))
}

fn section5() -> Outcome {
    let r = suites::group_suite(&MethodSpec::Lim, 50, 1, 64).map_err(|e| e.to_string())?;
    passing(&r)?;
    let gap = check_named(&r, "gap at most 1/K")?;
    ensure(gap.cases > 0, "no gap cases")?;
    // Independent sweep over every K up to 64.
    let mut g = SetGen::new(5);
    let mut sweeps = 0;
    for _ in 0..10 {
        let a = g.bounded_set();
        for k in 1..=64 {
            let base = NeighborhoodBase::default_base(k).map_err(|e| e.to_string())?;
            let b = closure_via_base(&MethodSpec::Lim, &a, &base).map_err(|e| e.to_string())?;
            passing(&b)?;
            sweeps += 1;
        }
    }
    Ok(format!("{} cases on 50 sets, K = 64; gap <= 1/K on {sweeps} (set, K) sweeps", r.cases))
}

fn hypothesis_necessity() -> Outcome {
    let (u, v) = (set("(-inf,1) u (2,inf)"), set("(-inf,5) u (6,inf)"));
    let m = MethodSpec::Cesaro;
    let open = |s: &RSet| is_g_open(&m, s).map_err(|e| e.to_string());
    ensure(open(&u)? && open(&v)?, "U or V not cesaro-open")?;
    let w = u.intersect(&v);
    ensure(w == set("(-inf,1) u (2,5) u (6,inf)"), format!("intersection {w}"))?;
    let k = kernel(&m, &w).map_err(|e| e.to_string())?;
    ensure(!w.is_subset(&k) && !open(&w)?, format!("intersection is open, kernel {k}"))?;

    let r = suites::counterexample_suite(&m).map_err(|e| e.to_string())?;
    passing(&r)?;
    let again = suites::counterexample_suite(&m).map_err(|e| e.to_string())?;
    ensure(r.to_json() == again.to_json(), "counterexample not deterministic")?;
    let t = check_named(&r, "translate regular for every method")?;
    let expected = 3 * corpus::standard_corpus().len() * corpus::standard_shifts().len();
    ensure(corpus::standard_shifts().len() == 20 && t.cases == expected, format!("{} translate cases", t.cases))?;
    Ok(format!("intersection {w} has kernel {k}; translate regular on {} cases", t.cases))
}

fn cli() -> Outcome {
    let mut g = SetGen::new(2024);
    for _ in 0..500 {
        let a = g.set();
        let back = parse_set(&a.to_string()).map_err(|e| format!("{a}: {e}"))?;
        ensure(back == a, format!("round trip changed {a} into {back}"))?;
    }

    let bin = env!("CARGO_BIN_EXE_gconverge");
    let run = |args: &[&str]| -> Result<(i32, Vec<u8>), String> {
        let out = Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
        Ok((out.status.code().unwrap_or(-1), out.stdout))
    };
    let seeded = ["suite", "thm3.1", "--trials", "200", "--seed", "7", "--json"];
    let (c1, a) = run(&seeded)?;
    let (c2, b) = run(&seeded)?;
    ensure(c1 == 0 && c2 == 0, "seeded suite failed")?;
    ensure(a == b, "seeded JSON differs between runs")?;
    let (_, c) = run(&["suite", "thm4.5", "--seed", "3", "--json"])?;
    let (_, d) = run(&["suite", "thm4.5", "--seed", "3", "--json"])?;
    ensure(c == d, "thm4.5 JSON differs between runs")?;

    let codes = [
        (&["scenario", "ex33", "--depth", "8", "--json"][..], 0),
        (&["hull", "--method", "cesaro", "{0} u {1}"][..], 0),
        (&["suite", "sec5-counterexamples", "-m", "matrix:banded(offset=0;coef=2)"][..], 1),
        (&["hull", "-m", "lim", "[0,"][..], 2),
        (&["frobnicate"][..], 2),
        (&["suite", "sec5-counterexamples", "-m", "lim"][..], 2),
    ];
    for (args, want) in codes {
        let (got, _) = run(args)?;
        ensure(got == want, format!("{args:?} exited {got}, expected {want}"))?;
    }
    Ok("500/500 round trips; seeded JSON byte-identical; exit codes 0/1/2 as documented".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("ex33 at depth 16, exact, under 1 s", ex33),
        ("box law suite, 200 seeded boxes", box_laws),
        ("hull formulas agree with the achievability oracle", oracle),
        ("regularity verdicts", regularity),
        ("subsequence trait witnesses", subsequence_traits),
        ("connectedness table and 500-set agreement", connectedness),
        ("connectedness laws, factorwise criterion and density construction", section4),
        ("group suite for lim with K up to 64", section5),
        ("hypothesis necessity and translate regularity", hypothesis_necessity),
        ("CLI round trip, determinism and exit codes", cli),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2}: {name}: {detail} [{took:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name}: {why} [{took:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
