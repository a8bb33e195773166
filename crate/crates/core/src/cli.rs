//! Command-line front end. Exit codes: 0 success, 1 a suite or scenario
//! failed, 2 usage, parse or precondition error.

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::methods::{check_matrix_regular, MethodSpec, NumericParams};
use crate::parse::{parse_box, parse_method_with, parse_rat, parse_seq, parse_set};
use crate::product::{box_closed, box_hull};
use crate::rat::Rat;
use crate::report::Report;
use crate::suites::{run_scenario, run_suite, SuiteParams};
use crate::topology::{g_closure, g_interior, hull, is_g_closed, is_g_connected, is_g_dense, is_g_open, kernel};
use crate::{corpus, group, methods, oracle};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "gconverge", version, about = "Exact G-convergence methods and their topology on the real line")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Tolerance for numeric matrix methods (p/q, decimal or 1e-9 form).
    #[arg(long, global = true, env = "GCONVERGE_TOLERANCE")]
    tolerance: Option<String>,
    /// Truncation for numeric matrix methods.
    #[arg(long, global = true)]
    nmax: Option<u64>,
}

#[derive(Args, Debug)]
struct SetArgs {
    /// Method: lim, cesaro, stat, matrix:<rows>, prod(<method>).
    #[arg(long, short)]
    method: String,
    /// Set expression, e.g. "[0,1] u (2,3]".
    set: String,
}

#[derive(Args, Debug)]
struct BoxArgs {
    #[arg(long, short)]
    method: String,
    /// Box literal, e.g. "box[d=2]{[0,1]; (2,3); tail=R}".
    boxed: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// G-hull of a set.
    Hull(SetArgs),
    /// G-kernel of a set.
    Kernel(SetArgs),
    /// Smallest G-closed superset.
    Closure(SetArgs),
    /// Largest G-open subset.
    Interior(SetArgs),
    /// Whether the set is G-closed.
    Closed(SetArgs),
    /// Whether the set is G-open.
    Open(SetArgs),
    /// Whether the G-closure is all of R.
    Dense(SetArgs),
    /// G-connectedness, with a separation when there is one.
    Connected(SetArgs),
    /// G-limit of a sequence literal.
    Limit {
        #[arg(long, short)]
        method: String,
        /// e.g. "per(prefix=[]; cycle=[0,1])".
        seq: String,
    },
    /// Trait verdicts of a method on the standard corpus.
    Traits {
        #[arg(long, short)]
        method: String,
    },
    /// Regularity criterion for a matrix method.
    Regular {
        /// A matrix method, e.g. matrix:cesaro.
        #[arg(long, short)]
        method: String,
    },
    /// Componentwise hull of a box.
    BoxHull(BoxArgs),
    /// Whether every factor of a box is G-closed.
    BoxClosed(BoxArgs),
    /// Compare a closed-form hull with the construction oracle.
    Oracle(SetArgs),
    /// Run a named scenario: ex33, sigma.
    Scenario {
        name: String,
        /// Number of product coordinates
        #[arg(long)]
        depth: Option<u64>,
    },
    /// Run a named suite: thm3.1, ex33, thm4.5, sec5, sec5-counterexamples, traits, oracle-hull.
    Suite {
        name: String,
        /// Number of random cases; each suite has its own default
        #[arg(long)]
        trials: Option<usize>,
        /// Seed for the case generator
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Product depth for box suites
        #[arg(long)]
        depth: Option<u64>,
        /// Method under test, where the suite takes one
        #[arg(long, short)]
        method: Option<String>,
        /// Largest neighborhood-base index
        #[arg(long = "K", alias = "k")]
        k: Option<usize>,
    },
    /// Group axioms of (R, +) under a method.
    GroupAxioms {
        #[arg(long, short)]
        method: String,
    },
    /// Closure through truncated neighborhood bases.
    ClosureBase {
        #[arg(long, short, default_value = "lim")]
        method: String,
        #[arg(long)]
        set: String,
        #[arg(long = "K", alias = "k", default_value_t = 16)]
        k: usize,
    },
}

/// Parses `p/q`, a decimal, or scientific notation such as `1e-9`, exactly.
fn parse_tolerance(text: &str) -> Result<Rat> {
    let text = text.trim().to_ascii_lowercase();
    let Some((mantissa, exp)) = text.split_once('e') else {
        return parse_rat(&text);
    };
    let m = parse_rat(mantissa)?;
    let e: i32 = exp
        .parse()
        .map_err(|_| Error::precondition(format!("invalid exponent in tolerance '{text}'")))?;
    let scale = Rat::from_big(num_bigint::BigInt::from(10).pow(e.unsigned_abs()), 1.into());
    Ok(if e < 0 { m / scale } else { m * scale })
}

struct Ctx {
    params: NumericParams,
}

impl Ctx {
    fn method(&self, text: &str) -> Result<MethodSpec> {
        parse_method_with(text, &self.params, &|path| {
            std::fs::read_to_string(path)
                .map_err(|e| Error::precondition(format!("cannot read matrix rows from {path}: {e}")))
        })
    }
}

enum Outcome {
    /// A single computation: text form and JSON body.
    Value(String, Value),
    /// A report; failures give exit code 1.
    Report(Report),
}

fn set_result(input: &str, m: &MethodSpec, text: String, result: Value, witnesses: Value) -> Outcome {
    Outcome::Value(
        text.clone(),
        json!({ "input": input, "method": m.to_string(), "result": result, "text": text, "witnesses": witnesses }),
    )
}

fn set_op(ctx: &Ctx, cmd: &Command) -> Result<Outcome> {
    let (Command::Hull(a)
    | Command::Kernel(a)
    | Command::Closure(a)
    | Command::Interior(a)
    | Command::Closed(a)
    | Command::Open(a)
    | Command::Dense(a)
    | Command::Connected(a)
    | Command::Oracle(a)) = cmd
    else {
        unreachable!("set_op called with a non-set verb")
    };
    let m = ctx.method(&a.method)?;
    let s = parse_set(&a.set)?;
    let set_json = |r: &crate::RSet| json!(r);
    Ok(match cmd {
        Command::Hull(_) => {
            let h = hull(&m, &s)?;
            set_result(&a.set, &m, h.to_string(), set_json(&h), json!([]))
        }
        Command::Kernel(_) => {
            let k = kernel(&m, &s)?;
            set_result(&a.set, &m, k.to_string(), set_json(&k), json!([]))
        }
        Command::Closure(_) => {
            let c = g_closure(&m, &s)?;
            set_result(&a.set, &m, c.set.to_string(), set_json(&c.set), json!([{ "iterations": c.iterations }]))
        }
        Command::Interior(_) => {
            let c = g_interior(&m, &s)?;
            set_result(&a.set, &m, c.set.to_string(), set_json(&c.set), json!([{ "iterations": c.iterations }]))
        }
        Command::Closed(_) => {
            let h = hull(&m, &s)?;
            let b = is_g_closed(&m, &s)?;
            set_result(&a.set, &m, b.to_string(), json!(b), json!([{ "hull": h.to_string() }]))
        }
        Command::Open(_) => {
            let k = kernel(&m, &s)?;
            let b = is_g_open(&m, &s)?;
            set_result(&a.set, &m, b.to_string(), json!(b), json!([{ "kernel": k.to_string() }]))
        }
        Command::Dense(_) => {
            let b = is_g_dense(&m, &s)?;
            set_result(&a.set, &m, b.to_string(), json!(b), json!([]))
        }
        Command::Connected(_) => {
            if s.is_empty() {
                return Err(Error::precondition("connectedness is defined for nonempty sets"));
            }
            let r = is_g_connected(&m, &s)?;
            let text = match &r.separation {
                None => "connected".to_string(),
                Some((f, k)) => format!("separated: {f} | {k}"),
            };
            let w = match &r.separation {
                None => json!([]),
                Some((f, k)) => json!([{ "F": f.to_string(), "K": k.to_string() }]),
            };
            set_result(&a.set, &m, text, json!(r.connected), w)
        }
        Command::Oracle(_) => {
            let o = oracle::check_hull(&m, &s)?;
            let mut r = Report::new("oracle").param("method", &m).param("set", &s);
            let mut c = crate::report::Check::aggregate("hull matches the oracle");
            c.record(o.agrees(), || json!(o.misses));
            r.push(c.with_detail(format!(
                "hull {}; {} grid points inside, {} outside, {} constructions",
                o.hull, o.inside, o.outside, o.constructions
            )));
            Outcome::Report(r)
        }
        _ => unreachable!(),
    })
}

fn dispatch(ctx: &Ctx, cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Hull(_)
        | Command::Kernel(_)
        | Command::Closure(_)
        | Command::Interior(_)
        | Command::Closed(_)
        | Command::Open(_)
        | Command::Dense(_)
        | Command::Connected(_)
        | Command::Oracle(_) => set_op(ctx, cmd),
        Command::Limit { method, seq } => {
            let m = ctx.method(method)?;
            let s = parse_seq(seq)?;
            let l = m.g_limit(&s);
            Ok(Outcome::Value(
                l.to_string(),
                json!({ "input": seq, "method": m.to_string(), "result": l, "witnesses": [] }),
            ))
        }
        Command::Traits { method } => {
            let m = ctx.method(method)?;
            let c = corpus::standard_corpus();
            let f = corpus::standard_families();
            let verdicts = vec![
                methods::check_regular_empirical(&m, &corpus::convergent_corpus())?,
                methods::check_preserves_subsequences(&m, &c, &f)?,
                methods::check_translate_regular(&m, &c, &corpus::standard_shifts()),
            ];
            let text = verdicts
                .iter()
                .map(|v| {
                    let w = v.witness.as_ref().map_or(String::new(), |w| format!(": {}", w.description));
                    format!("{} {}{w}", v.trait_name, if v.holds { "holds" } else { "fails" })
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Outcome::Value(text, json!({ "method": m.to_string(), "result": verdicts })))
        }
        Command::Regular { method } => {
            let m = ctx.method(method)?;
            let MethodSpec::Matrix { rows, .. } = m.factor() else {
                return Err(Error::precondition(format!("{m} is not a matrix method")));
            };
            let v = check_matrix_regular(rows);
            let mut text = format!("{} {}", v.trait_name, if v.holds { "holds" } else { "fails" });
            for d in &v.details {
                text.push_str(&format!("\n  {d}"));
            }
            Ok(Outcome::Value(text, json!({ "method": m.to_string(), "result": v })))
        }
        Command::BoxHull(b) => {
            let m = ctx.method(&b.method)?;
            let bx = parse_box(&b.boxed)?;
            let h = box_hull(&m, &bx)?;
            Ok(Outcome::Value(
                h.to_string(),
                json!({ "input": b.boxed, "method": m.to_string(), "result": h.to_string(), "witnesses": [] }),
            ))
        }
        Command::BoxClosed(b) => {
            let m = ctx.method(&b.method)?;
            let bx = parse_box(&b.boxed)?;
            let c = box_closed(&m, &bx)?;
            Ok(Outcome::Value(
                c.to_string(),
                json!({ "input": b.boxed, "method": m.to_string(), "result": c, "witnesses": [] }),
            ))
        }
        Command::Scenario { name, depth } => Ok(Outcome::Report(run_scenario(name, *depth)?)),
        Command::Suite {
            name,
            trials,
            seed,
            depth,
            method,
            k,
        } => {
            let params = SuiteParams {
                trials: *trials,
                seed: *seed,
                depth: *depth,
                method: method.as_deref().map(|m| ctx.method(m)).transpose()?,
                k: *k,
            };
            Ok(Outcome::Report(run_suite(name, &params)?))
        }
        Command::GroupAxioms { method } => {
            let m = ctx.method(method)?;
            let g = group::check_group_axioms(&m, &corpus::sequence_pairs())?;
            let text = format!(
                "addition {}, negation {} ({} pairs)",
                if g.multiplication.holds { "continuous" } else { "not continuous" },
                if g.inversion.holds { "continuous" } else { "not continuous" },
                g.corpus_size
            );
            let mut r = Report::new("group-axioms").param("method", &m);
            for (name, v) in [("addition is continuous", &g.multiplication), ("negation is continuous", &g.inversion)] {
                let mut c = crate::report::Check::single(name, v.holds, text.clone());
                if let Some(w) = &v.witness {
                    c = c.with_witness(json!(w));
                }
                r.push(c);
            }
            Ok(Outcome::Report(r))
        }
        Command::ClosureBase { method, set, k } => {
            let m = ctx.method(method)?;
            let s = parse_set(set)?;
            let base = group::NeighborhoodBase::default_base(*k)?;
            Ok(Outcome::Report(group::closure_via_base(&m, &s, &base)?))
        }
    }
}

fn error_json(e: &Error) -> String {
    let (kind, position) = match e {
        Error::Parse { position, .. } => ("parse", Some(*position)),
        Error::Precondition(_) => ("precondition", None),
        Error::Unsupported(_) => ("unsupported", None),
        Error::Sequence(_) => ("sequence", None),
        Error::Internal(_) => ("internal", None),
    };
    serde_json::to_string_pretty(&json!({ "schema": 1, "error": kind, "position": position, "message": e.to_string() }))
        .expect("serializable")
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let json = cli.global.json;
    let fail = |e: Error, out: &mut dyn Write, err: &mut dyn Write| {
        if json {
            let _ = writeln!(out, "{}", error_json(&e));
        }
        let _ = writeln!(err, "error: {e}");
        EXIT_USAGE
    };
    let mut params = NumericParams::default();
    if let Some(t) = &cli.global.tolerance {
        match parse_tolerance(t).and_then(|tol| NumericParams::new(params.n_max, tol)) {
            Ok(p) => params = p,
            Err(e) => return fail(e, out, err),
        }
    }
    if let Some(n) = cli.global.nmax {
        match NumericParams::new(n, params.tol.clone()) {
            Ok(p) => params = p,
            Err(e) => return fail(e, out, err),
        }
    }
    let ctx = Ctx { params };
    let start = Instant::now();
    match dispatch(&ctx, &cli.command) {
        Err(e) => fail(e, out, err),
        Ok(Outcome::Value(text, body)) => {
            if json {
                let mut body = body;
                body["schema"] = json!(1);
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&body).expect("serializable"));
            } else {
                let _ = writeln!(out, "{text}");
            }
            EXIT_OK
        }
        Ok(Outcome::Report(r)) => {
            if json {
                let _ = writeln!(out, "{}", r.to_json());
            } else {
                let _ = writeln!(out, "{r}");
                let _ = writeln!(out, "wall time {:.2?}", start.elapsed());
            }
            if r.passed {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
    }
}
