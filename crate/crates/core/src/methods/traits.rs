//! Checkers for the method traits that theorems take as hypotheses.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::sequence::{IndexFamily, PointMap, SeqSpec};

use super::{LimitResult, MethodSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TraitFlags {
    pub regular: bool,
    pub subsequential: bool,
    pub preserves_subsequences: bool,
    pub translate_regular: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    /// Backed by a closed-form argument over the whole representable class.
    ProvedExactly,
    /// Checked exactly on a finite corpus.
    CorpusChecked,
    /// Floating-point evidence only.
    Numeric,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub description: String,
    /// Sequence literals, parseable by the CLI.
    pub sequences: Vec<String>,
    pub values: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraitVerdict {
    #[serde(rename = "trait")]
    pub trait_name: String,
    pub method: String,
    pub holds: bool,
    pub witness: Option<Witness>,
    pub scope: Scope,
    pub checked: usize,
    pub skipped: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<String>,
}

impl TraitVerdict {
    pub(crate) fn new(trait_name: &str, m: &MethodSpec, scope: Scope) -> TraitVerdict {
        TraitVerdict {
            trait_name: trait_name.into(),
            method: m.to_string(),
            holds: true,
            witness: None,
            scope,
            checked: 0,
            skipped: 0,
            details: Vec::new(),
        }
    }

    /// Records the first counterexample; later ones are ignored so the
    /// reported witness is the earliest in corpus order.
    pub(crate) fn fail(&mut self, witness: Witness) {
        if self.holds {
            self.holds = false;
            self.witness = Some(witness);
        }
    }
}

pub(crate) fn default_scope(m: &MethodSpec) -> Scope {
    if m.has_exact_semantics() {
        Scope::CorpusChecked
    } else {
        Scope::Numeric
    }
}

/// Equality of limits; numeric results compare within the method tolerance.
pub(crate) fn same_limit(m: &MethodSpec, a: &LimitResult, b: &LimitResult) -> bool {
    match (m.factor(), a, b) {
        (MethodSpec::Matrix { params, .. }, LimitResult::Converges { value: x, .. }, LimitResult::Converges { value: y, .. }) => {
            (x - y).abs() <= params.tol
        }
        _ => a == b,
    }
}

pub fn check_regular_empirical(m: &MethodSpec, corpus: &[SeqSpec]) -> Result<TraitVerdict> {
    let mut v = TraitVerdict::new("regular", m, default_scope(m));
    for s in corpus {
        let expected = MethodSpec::Lim.g_limit(s);
        if !expected.converges() {
            return Err(Error::precondition(format!("corpus sequence {s} does not converge")));
        }
        let got = m.g_limit(s);
        v.checked += 1;
        if !same_limit(m, &got, &expected) {
            v.fail(Witness {
                description: format!("{m} limit {got} differs from ordinary limit {expected}"),
                sequences: vec![s.to_string()],
                values: vec![got.to_string(), expected.to_string()],
            });
        }
    }
    Ok(v)
}

pub fn check_preserves_subsequences(
    m: &MethodSpec,
    corpus: &[SeqSpec],
    families: &[IndexFamily],
) -> Result<TraitVerdict> {
    if let Some(f) = families.iter().find(|f| !f.is_infinite()) {
        return Err(Error::precondition(format!("index family {f} is finite")));
    }
    // An ordinarily convergent closed form is eventually constant, and so is
    // every subsequence, with the same tail.
    let scope = if *m.factor() == MethodSpec::Lim {
        Scope::ProvedExactly
    } else {
        default_scope(m)
    };
    let mut v = TraitVerdict::new("preserves-subsequences", m, scope);
    for s in corpus {
        let limit = m.g_limit(s);
        if !limit.converges() {
            v.skipped += 1;
            continue;
        }
        for f in families {
            let Ok(sub) = s.subsequence(f) else {
                v.skipped += 1;
                continue;
            };
            let sub_limit = m.g_limit(&sub);
            v.checked += 1;
            if !same_limit(m, &sub_limit, &limit) {
                v.fail(Witness {
                    description: format!(
                        "{s} has {m}-limit {limit} but its subsequence along {f} has {m}-limit {sub_limit}"
                    ),
                    sequences: vec![s.to_string(), sub.to_string()],
                    values: vec![limit.to_string(), sub_limit.to_string(), f.to_string()],
                });
            }
        }
    }
    Ok(v)
}

/// An index family along which the normalized sequence is eventually equal
/// to `value`, if `value` recurs.
fn constant_along(s: &SeqSpec, value: &Rat) -> Option<IndexFamily> {
    match s {
        SeqSpec::EventuallyConstant { prefix, tail } => {
            (tail == value).then(|| IndexFamily::ap(prefix.len() as u64 + 1, 1))
        }
        SeqSpec::EventuallyPeriodic { prefix, cycle } => cycle
            .iter()
            .position(|c| c == value)
            .map(|j| IndexFamily::ap((prefix.len() + j + 1) as u64, cycle.len() as u64)),
        SeqSpec::SpikeMix { base, spike, family } => {
            if spike == value {
                Some(family.clone())
            } else if base == value {
                // Progressions that avoid the sparse family entirely.
                match family {
                    IndexFamily::Squares => Some(IndexFamily::ap(2, 4)),
                    IndexFamily::PowersOfTwo => Some(IndexFamily::ap(3, 2)),
                    _ => None,
                }
            } else {
                None
            }
        }
        SeqSpec::Tabulated { beyond, .. } => constant_along(beyond, value),
    }
}

pub fn check_subsequential(m: &MethodSpec, s: &SeqSpec) -> Result<TraitVerdict> {
    let limit = m.g_limit(s);
    let Some(l) = limit.value() else {
        return Err(Error::precondition(format!("{s} is not in the domain of {m}")));
    };
    let norm = s.normalize();
    let mut v = TraitVerdict::new("subsequential", m, Scope::ProvedExactly);
    v.checked = 1;
    match constant_along(&norm, l) {
        Some(f) => {
            let sub = s.subsequence(&f)?;
            let sub_limit = MethodSpec::Lim.g_limit(&sub);
            if sub_limit.value() != Some(l) {
                return Err(Error::Internal(format!("witness subsequence {sub} of {s} misses {l}")));
            }
            v.details.push(format!("subsequence along {f} is {sub}, converging to {l}"));
        }
        None => {
            let recurrent: Vec<String> = norm.recurrent_values().iter().map(Rat::to_string).collect();
            v.fail(Witness {
                description: format!(
                    "{m}-limit {l} is not a recurrent value; terms eventually lie in {{{}}}, so no subsequence converges to {l}",
                    recurrent.join(", ")
                ),
                sequences: vec![s.to_string()],
                values: std::iter::once(l.to_string()).chain(recurrent).collect(),
            });
        }
    }
    Ok(v)
}

pub fn check_translate_regular(m: &MethodSpec, corpus: &[SeqSpec], shifts: &[Rat]) -> TraitVerdict {
    let mut v = TraitVerdict::new("translate-regular", m, default_scope(m));
    for s in corpus {
        let base = m.g_limit(s);
        for g in shifts {
            let shifted = s.translate(g);
            let lhs = m.g_limit(&shifted);
            let rhs = base.map(|x| x + g);
            v.checked += 1;
            let agree = match (&lhs, &rhs) {
                (LimitResult::Converges { .. }, LimitResult::Converges { .. }) => same_limit(m, &lhs, &rhs),
                (LimitResult::Diverges, LimitResult::Diverges) => true,
                (LimitResult::Unknown { .. }, LimitResult::Unknown { .. }) => true,
                _ => false,
            };
            if !agree {
                v.fail(Witness {
                    description: format!("{m}({g} + x) = {lhs} but {g} + {m}(x) = {rhs}"),
                    sequences: vec![s.to_string(), shifted.to_string()],
                    values: vec![g.to_string(), lhs.to_string(), rhs.to_string()],
                });
            }
        }
    }
    v
}

pub fn check_g_continuity(m: &MethodSpec, map: &PointMap, corpus: &[SeqSpec]) -> TraitVerdict {
    let mut v = TraitVerdict::new("g-continuity", m, default_scope(m));
    v.details.push(format!("map x -> {map}"));
    for s in corpus {
        let limit = m.g_limit(s);
        if !limit.converges() {
            v.skipped += 1;
            continue;
        }
        let image = s.transform(map);
        let lhs = m.g_limit(&image);
        let rhs = limit.map(|x| map.apply(x));
        v.checked += 1;
        if !same_limit(m, &lhs, &rhs) {
            v.fail(Witness {
                description: format!("{m}(f(x)) = {lhs} but f({m}(x)) = {rhs}"),
                sequences: vec![s.to_string(), image.to_string()],
                values: vec![lhs.to_string(), rhs.to_string()],
            });
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn i(n: i64) -> Rat {
        Rat::int(n)
    }
    fn alt() -> SeqSpec {
        SeqSpec::periodic(vec![], vec![i(0), i(1)])
    }
    fn sq() -> SeqSpec {
        SeqSpec::spike(i(0), i(1), IndexFamily::Squares)
    }

    #[test]
    fn regular_on_convergent_corpus() {
        let c = corpus::convergent_corpus();
        assert_eq!(c.len(), 100);
        for m in [MethodSpec::Lim, MethodSpec::Cesaro, MethodSpec::Statistical] {
            let v = check_regular_empirical(&m, &c).unwrap();
            assert!(v.holds && v.checked == 100, "{m}");
        }
        assert!(check_regular_empirical(&MethodSpec::Lim, &[alt()]).is_err());
    }

    #[test]
    fn preserves_subsequences_witnesses() {
        let c = corpus::standard_corpus();
        let f = corpus::standard_families();
        let lim = check_preserves_subsequences(&MethodSpec::Lim, &c, &f).unwrap();
        assert!(lim.holds);
        assert_eq!(lim.scope, Scope::ProvedExactly);

        let ces = check_preserves_subsequences(&MethodSpec::Cesaro, &c, &f).unwrap();
        assert!(!ces.holds);
        let w = ces.witness.unwrap();
        assert_eq!(w.sequences[0], alt().to_string());
        assert_eq!(w.values, vec!["1/2", "1", "ap(2,2)"]);

        let st = check_preserves_subsequences(&MethodSpec::Statistical, &c, &f).unwrap();
        let w = st.witness.unwrap();
        assert_eq!(w.sequences[0], sq().to_string());
        assert_eq!(w.values, vec!["0", "1", "squares"]);
    }

    #[test]
    fn subsequential_examples() {
        let st = check_subsequential(&MethodSpec::Statistical, &sq()).unwrap();
        assert!(st.holds);
        assert!(st.details[0].contains("ap(2,4)"));
        assert!(check_subsequential(&MethodSpec::Lim, &SeqSpec::constant(i(3))).unwrap().holds);
        let ces = check_subsequential(&MethodSpec::Cesaro, &alt()).unwrap();
        assert!(!ces.holds);
        assert_eq!(ces.witness.unwrap().values, vec!["1/2", "0", "1"]);
        assert!(check_subsequential(&MethodSpec::Lim, &alt()).is_err());
    }

    #[test]
    fn translate_and_continuity() {
        let c = corpus::standard_corpus();
        let shifts = corpus::standard_shifts();
        assert_eq!(shifts.len(), 20);
        for m in [MethodSpec::Lim, MethodSpec::Cesaro, MethodSpec::Statistical] {
            assert!(check_translate_regular(&m, &c, &shifts).holds, "{m}");
            for map in [
                PointMap::Negate,
                PointMap::translate(i(5)),
                PointMap::affine(Rat::new(-2, 3), i(1)),
                PointMap::affine(i(0), i(4)),
            ] {
                assert!(check_g_continuity(&m, &map, &c).holds, "{m} {map}");
            }
        }
        let v = check_translate_regular(&MethodSpec::Cesaro, &[alt()], &[i(3)]);
        assert!(v.holds);
        assert_eq!(MethodSpec::Cesaro.g_limit(&alt().translate(&i(3))).value(), Some(&Rat::new(7, 2)));
    }

    #[test]
    fn cached_flags_match_checkers() {
        let c = corpus::standard_corpus();
        let f = corpus::standard_families();
        let conv = corpus::convergent_corpus();
        let shifts = corpus::standard_shifts();
        for m in [MethodSpec::Lim, MethodSpec::Cesaro, MethodSpec::Statistical] {
            let flags = m.trait_flags().unwrap();
            assert_eq!(flags.regular, check_regular_empirical(&m, &conv).unwrap().holds);
            assert_eq!(
                flags.preserves_subsequences,
                check_preserves_subsequences(&m, &c, &f).unwrap().holds
            );
            assert_eq!(flags.translate_regular, check_translate_regular(&m, &c, &shifts).holds);
            let subseq = c
                .iter()
                .filter(|s| m.in_domain(s))
                .all(|s| check_subsequential(&m, s).unwrap().holds);
            assert_eq!(flags.subsequential, subseq, "{m}");
        }
    }
}
