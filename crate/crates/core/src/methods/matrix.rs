//! Row-finite summability matrices `(a_{nk})`, `y_n = Σ_k a_{nk} x_k`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::sequence::SeqSpec;

use super::traits::{Scope, TraitVerdict, Witness};
use super::LimitResult;

/// Truncation and tolerance for numeric matrix evaluation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NumericParams {
    pub n_max: u64,
    pub tol: Rat,
}

impl Default for NumericParams {
    fn default() -> Self {
        NumericParams {
            n_max: 100_000,
            tol: Rat::new(1, 1_000_000_000),
        }
    }
}

impl NumericParams {
    pub fn new(n_max: u64, tol: Rat) -> Result<NumericParams> {
        if n_max < 100 {
            return Err(Error::precondition(format!("N_max must be at least 100, got {n_max}")));
        }
        if !tol.is_positive() {
            return Err(Error::precondition(format!("tolerance must be positive, got {tol}")));
        }
        Ok(NumericParams { n_max, tol })
    }
}

type Row = Vec<(u64, Rat)>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum MatrixRows {
    /// `a_{nk} = 1/n` for `k ≤ n`.
    Cesaro,
    /// `a_{n,n+offset} = coef`, zero elsewhere.
    Banded { offset: u64, coef: Rat },
    /// Every row equals the same finitely supported row.
    Columns { entries: Row },
    /// Rows read from a file. Rows not listed are zero; evaluation stops at
    /// the last listed row.
    Table { name: String, rows: BTreeMap<u64, Row> },
}

impl MatrixRows {
    /// Parses the row file format: one row per line as
    /// `n: k1=p/q, k2=p/q, ...`. Blank lines and `#` comments are skipped.
    pub fn parse_table(name: &str, text: &str) -> Result<MatrixRows> {
        let mut rows = BTreeMap::new();
        let mut offset = 0usize;
        for (lineno, line) in text.lines().enumerate() {
            let here = offset;
            offset += line.len() + 1;
            let content = line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse {
                position: here,
                message: format!("line {}: {msg}", lineno + 1),
            };
            let (n, rest) = content
                .split_once(':')
                .ok_or_else(|| err("expected `n: k=p/q, ...`".into()))?;
            let n: u64 = n.trim().parse().map_err(|_| err(format!("bad row index `{}`", n.trim())))?;
            if n == 0 {
                return Err(err("row indices start at 1".into()));
            }
            let mut row: Row = Vec::new();
            for entry in rest.split(',').map(str::trim).filter(|e| !e.is_empty()) {
                let (k, v) = entry
                    .split_once('=')
                    .ok_or_else(|| err(format!("expected `k=p/q`, found `{entry}`")))?;
                let k: u64 = k.trim().parse().map_err(|_| err(format!("bad column index `{}`", k.trim())))?;
                if k == 0 {
                    return Err(err("column indices start at 1".into()));
                }
                let v: Rat = v.trim().parse().map_err(|e| err(format!("{e}")))?;
                if row.iter().any(|(c, _)| *c == k) {
                    return Err(err(format!("column {k} repeated")));
                }
                row.push((k, v));
            }
            row.sort_by_key(|(k, _)| *k);
            if rows.insert(n, row).is_some() {
                return Err(err(format!("row {n} repeated")));
            }
        }
        if rows.is_empty() {
            return Err(Error::Parse {
                position: 0,
                message: "matrix file has no rows".into(),
            });
        }
        Ok(MatrixRows::Table {
            name: name.to_string(),
            rows,
        })
    }

    /// Row indices sampled for numeric evaluation, in increasing order.
    fn sample_rows(&self, n_max: u64) -> Vec<u64> {
        match self {
            MatrixRows::Table { rows, .. } => {
                let keys: Vec<u64> = rows.keys().copied().filter(|&n| n <= n_max).collect();
                let last = keys.last().copied().unwrap_or(0);
                let upper: Vec<u64> = keys.into_iter().filter(|&n| 2 * n >= last).collect();
                upper[upper.len().saturating_sub(64)..].to_vec()
            }
            _ => {
                let half = n_max / 2;
                let mut out: Vec<u64> = (0..64).map(|j| half + j * (n_max - half) / 63).collect();
                out.dedup();
                out
            }
        }
    }

    /// Numeric transform `y_n` for the sampled rows. Terms are evaluated
    /// exactly and converted to `f64` once.
    fn transforms(&self, s: &SeqSpec, n_max: u64) -> Vec<f64> {
        let samples = self.sample_rows(n_max);
        let term = |k: u64| s.eval(k).to_f64();
        match self {
            MatrixRows::Cesaro => {
                let last = samples.last().copied().unwrap_or(0);
                let (mut sum, mut comp) = (0.0f64, 0.0f64);
                let mut out = Vec::with_capacity(samples.len());
                let mut next = samples.iter().peekable();
                for k in 1..=last {
                    // Kahan summation keeps the partial means accurate.
                    let y = term(k) - comp;
                    let t = sum + y;
                    comp = (t - sum) - y;
                    sum = t;
                    while next.peek() == Some(&&k) {
                        out.push(sum / k as f64);
                        next.next();
                    }
                }
                out
            }
            MatrixRows::Banded { offset, coef } => {
                let c = coef.to_f64();
                samples.iter().map(|&n| c * term(n + offset)).collect()
            }
            MatrixRows::Columns { entries } => {
                let y: f64 = entries.iter().map(|(k, a)| a.to_f64() * term(*k)).sum();
                vec![y; samples.len()]
            }
            MatrixRows::Table { rows, .. } => samples
                .iter()
                .map(|n| rows[n].iter().map(|(k, a)| a.to_f64() * term(*k)).sum())
                .collect(),
        }
    }

    /// Numeric limit estimate from the sampled rows. Never claims
    /// divergence.
    pub fn evaluate(&self, s: &SeqSpec, params: &NumericParams) -> LimitResult {
        let ys = self.transforms(s, params.n_max);
        let Some(&estimate) = ys.last() else {
            return LimitResult::Unknown {
                estimate: Rat::zero(),
                spread: Rat::zero(),
            };
        };
        let lo = ys.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = ys.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let spread = hi - lo;
        let tol = params.tol.to_f64();
        let round = |v: f64| Rat::approximate(v, tol).unwrap_or_else(Rat::zero);
        if spread <= tol {
            LimitResult::Converges {
                value: round(estimate),
                exact: false,
            }
        } else {
            LimitResult::Unknown {
                estimate: round(estimate),
                spread: round(spread),
            }
        }
    }
}

impl fmt::Display for MatrixRows {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixRows::Cesaro => f.write_str("cesaro"),
            MatrixRows::Banded { offset, coef } => write!(f, "banded(offset={offset}; coef={coef})"),
            MatrixRows::Columns { entries } => {
                f.write_str("columns(")?;
                for (i, (k, a)) in entries.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{k}={a}")?;
                }
                f.write_str(")")
            }
            MatrixRows::Table { name, .. } => f.write_str(name),
        }
    }
}

impl fmt::Debug for MatrixRows {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct Conditions {
    outcomes: [(bool, String); 3],
}

impl Conditions {
    fn verdict(self, rows: &MatrixRows, scope: Scope) -> TraitVerdict {
        const NAMES: [&str; 3] = ["(i)", "(ii)", "(iii)"];
        let details: Vec<String> = self
            .outcomes
            .iter()
            .zip(NAMES)
            .map(|((ok, msg), name)| format!("{name} {}: {msg}", if *ok { "holds" } else { "fails" }))
            .collect();
        let failing = self.outcomes.iter().zip(NAMES).find(|((ok, _), _)| !ok);
        let witness = failing.map(|((_, msg), name)| Witness {
            description: format!("condition {name} fails: {msg}"),
            sequences: vec![],
            values: vec![name.to_string(), msg.clone()],
        });
        TraitVerdict {
            trait_name: "silverman-toeplitz".into(),
            method: format!("matrix:{rows}"),
            holds: witness.is_none(),
            witness,
            scope,
            checked: 3,
            skipped: 0,
            details,
        }
    }
}

/// Checks the three Silverman–Toeplitz conditions: bounded absolute row
/// sums, vanishing columns, and row sums tending to one.
pub fn check_matrix_regular(rows: &MatrixRows) -> TraitVerdict {
    let one = Rat::one();
    match rows {
        MatrixRows::Cesaro => Conditions {
            outcomes: [
                (true, "every absolute row sum equals 1".into()),
                (true, "column entries are 1/n, tending to 0".into()),
                (true, "every row sums to 1".into()),
            ],
        }
        .verdict(rows, Scope::ProvedExactly),
        MatrixRows::Banded { coef, .. } => Conditions {
            outcomes: [
                (true, format!("every absolute row sum equals {}", coef.abs())),
                (true, "each column has a single nonzero entry".into()),
                (*coef == one, format!("every row sums to {coef}")),
            ],
        }
        .verdict(rows, Scope::ProvedExactly),
        MatrixRows::Columns { entries } => {
            let abs_sum = entries.iter().fold(Rat::zero(), |acc, (_, a)| acc + a.abs());
            let sum = entries.iter().fold(Rat::zero(), |acc, (_, a)| acc + a);
            let stuck = entries.iter().find(|(_, a)| !a.is_zero());
            let col = match stuck {
                Some((k, a)) => (false, format!("column {k} is constantly {a}")),
                None => (true, "all columns vanish".into()),
            };
            Conditions {
                outcomes: [
                    (true, format!("every absolute row sum equals {abs_sum}")),
                    col,
                    (sum == one, format!("every row sums to {sum}")),
                ],
            }
            .verdict(rows, Scope::ProvedExactly)
        }
        MatrixRows::Table { rows: table, .. } => {
            // A finite table is judged at its last row: entries must be
            // below 1/sqrt(N) and the row sum must equal 1.
            let (&last, last_row) = table.iter().next_back().expect("tables are nonempty");
            let max_abs = table
                .values()
                .map(|r| r.iter().fold(Rat::zero(), |acc, (_, a)| acc + a.abs()))
                .max()
                .unwrap_or_else(Rat::zero);
            let n = Rat::from(last);
            let big = last_row.iter().find(|(_, a)| a * a * &n > one);
            let col = match big {
                Some((k, a)) => (false, format!("column {k} has entry {a} at the last row {last}")),
                None => (true, format!("last-row entries are below 1/sqrt({last})")),
            };
            let sum = last_row.iter().fold(Rat::zero(), |acc, (_, a)| acc + a);
            Conditions {
                outcomes: [
                    (true, format!("absolute row sums are at most {max_abs}")),
                    col,
                    (sum == one, format!("row {last} sums to {sum}")),
                ],
            }
            .verdict(rows, Scope::Numeric)
        }
    }
}
