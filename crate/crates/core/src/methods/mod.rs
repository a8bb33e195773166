//! G-methods: domain predicates and generalized limits.

mod matrix;
pub(crate) mod traits;

use std::fmt;

use serde::Serialize;

pub use matrix::{check_matrix_regular, MatrixRows, NumericParams};
pub use traits::{
    check_g_continuity, check_preserves_subsequences, check_regular_empirical, check_subsequential,
    check_translate_regular, Scope, TraitFlags, TraitVerdict, Witness,
};

use crate::rat::Rat;
use crate::sequence::SeqSpec;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum MethodSpec {
    Lim,
    Cesaro,
    Statistical,
    Matrix { rows: MatrixRows, params: NumericParams },
    /// Coordinatewise application of the factor method on `ℝ^ℕ`. On scalar
    /// inputs it acts as its factor (the one-coordinate case).
    Product(Box<MethodSpec>),
}

#[derive(Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LimitResult {
    Converges { value: Rat, exact: bool },
    Diverges,
    /// Numeric evidence only: the sampled transforms did not settle within
    /// tolerance, so neither convergence nor divergence is claimed.
    Unknown { estimate: Rat, spread: Rat },
}

impl LimitResult {
    pub fn exact(value: Rat) -> LimitResult {
        LimitResult::Converges { value, exact: true }
    }

    pub fn value(&self) -> Option<&Rat> {
        match self {
            LimitResult::Converges { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn converges(&self) -> bool {
        matches!(self, LimitResult::Converges { .. })
    }

    /// Applies `f` to a convergent value; other results pass through.
    pub fn map(&self, f: impl FnOnce(&Rat) -> Rat) -> LimitResult {
        match self {
            LimitResult::Converges { value, exact } => LimitResult::Converges {
                value: f(value),
                exact: *exact,
            },
            other => other.clone(),
        }
    }
}

impl fmt::Display for LimitResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LimitResult::Converges { value, exact: true } => write!(f, "{value}"),
            LimitResult::Converges { value, exact: false } => write!(f, "~{value}"),
            LimitResult::Diverges => f.write_str("diverges"),
            LimitResult::Unknown { estimate, spread } => write!(f, "unknown (estimate {estimate}, spread {spread})"),
        }
    }
}

impl fmt::Debug for LimitResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl MethodSpec {
    pub fn matrix(rows: MatrixRows) -> MethodSpec {
        MethodSpec::Matrix {
            rows,
            params: NumericParams::default(),
        }
    }

    pub fn product(factor: MethodSpec) -> MethodSpec {
        MethodSpec::Product(Box::new(factor))
    }

    /// The scalar method acting on each coordinate.
    pub fn factor(&self) -> &MethodSpec {
        match self {
            MethodSpec::Product(inner) => inner.factor(),
            other => other,
        }
    }

    pub fn is_product(&self) -> bool {
        matches!(self, MethodSpec::Product(_))
    }

    /// Whether the method is one of the three with an exact hull formula
    /// (possibly wrapped in products).
    pub fn has_exact_semantics(&self) -> bool {
        matches!(self.factor(), MethodSpec::Lim | MethodSpec::Cesaro | MethodSpec::Statistical)
    }

    /// Replaces the numeric parameters of a matrix method; no-op otherwise.
    pub fn with_params(self, new: NumericParams) -> MethodSpec {
        match self {
            MethodSpec::Matrix { rows, .. } => MethodSpec::Matrix { rows, params: new },
            MethodSpec::Product(inner) => MethodSpec::Product(Box::new(inner.with_params(new))),
            other => other,
        }
    }

    pub fn in_domain(&self, s: &SeqSpec) -> bool {
        self.g_limit(s).converges()
    }

    pub fn g_limit(&self, s: &SeqSpec) -> LimitResult {
        match self {
            MethodSpec::Lim => lim(&s.normalize()),
            MethodSpec::Cesaro => cesaro(&s.normalize()),
            MethodSpec::Statistical => statistical(&s.normalize()),
            MethodSpec::Matrix {
                rows: MatrixRows::Cesaro,
                ..
            } => cesaro(&s.normalize()),
            MethodSpec::Matrix { rows, params } => rows.evaluate(s, params),
            MethodSpec::Product(inner) => inner.g_limit(s),
        }
    }

    /// Trait flags established by the checkers for the built-in methods.
    pub fn trait_flags(&self) -> Option<TraitFlags> {
        let flags = |regular, subsequential, preserves_subsequences, translate_regular| TraitFlags {
            regular,
            subsequential,
            preserves_subsequences,
            translate_regular,
        };
        match self.factor() {
            MethodSpec::Lim => Some(flags(true, true, true, true)),
            MethodSpec::Cesaro
            | MethodSpec::Matrix {
                rows: MatrixRows::Cesaro,
                ..
            } => Some(flags(true, false, false, true)),
            MethodSpec::Statistical => Some(flags(true, true, false, true)),
            _ => None,
        }
    }

    pub fn name(&self) -> String {
        self.to_string()
    }
}

fn lim(s: &SeqSpec) -> LimitResult {
    match s {
        SeqSpec::EventuallyConstant { tail, .. } => LimitResult::exact(tail.clone()),
        _ => LimitResult::Diverges,
    }
}

fn cesaro(s: &SeqSpec) -> LimitResult {
    match s {
        SeqSpec::EventuallyConstant { tail, .. } => LimitResult::exact(tail.clone()),
        SeqSpec::EventuallyPeriodic { cycle, .. } => LimitResult::exact(Rat::mean(cycle)),
        SeqSpec::SpikeMix { base, spike, family } => {
            LimitResult::exact(base + (spike - base) * family.natural_density())
        }
        SeqSpec::Tabulated { beyond, .. } => cesaro(beyond),
    }
}

/// Normalized periodic sequences with a nonconstant cycle take each cycle
/// value on a set of positive density, so they have no statistical limit.
/// Normalized spike mixtures only remain over the density-zero families.
fn statistical(s: &SeqSpec) -> LimitResult {
    match s {
        SeqSpec::EventuallyConstant { tail, .. } => LimitResult::exact(tail.clone()),
        SeqSpec::EventuallyPeriodic { .. } => LimitResult::Diverges,
        SeqSpec::SpikeMix { base, family, .. } => {
            debug_assert!(family.natural_density().is_zero());
            LimitResult::exact(base.clone())
        }
        SeqSpec::Tabulated { beyond, .. } => statistical(beyond),
    }
}

impl fmt::Display for MethodSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MethodSpec::Lim => f.write_str("lim"),
            MethodSpec::Cesaro => f.write_str("cesaro"),
            MethodSpec::Statistical => f.write_str("stat"),
            MethodSpec::Matrix { rows, .. } => write!(f, "matrix:{rows}"),
            MethodSpec::Product(inner) => write!(f, "prod({inner})"),
        }
    }
}

impl fmt::Debug for MethodSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for MethodSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::IndexFamily;

    fn i(n: i64) -> Rat {
        Rat::int(n)
    }
    fn alt() -> SeqSpec {
        SeqSpec::periodic(vec![], vec![i(0), i(1)])
    }

    #[test]
    fn domain_examples() {
        assert!(!MethodSpec::Lim.in_domain(&alt()));
        assert!(MethodSpec::Cesaro.in_domain(&alt()));
        assert!(MethodSpec::Statistical.in_domain(&SeqSpec::spike(i(0), i(1), IndexFamily::Squares)));
        assert!(!MethodSpec::Statistical.in_domain(&alt()));
    }

    #[test]
    fn limit_examples() {
        assert_eq!(MethodSpec::Cesaro.g_limit(&alt()), LimitResult::exact(Rat::new(1, 2)));
        assert_eq!(
            MethodSpec::Statistical.g_limit(&SeqSpec::spike(i(0), i(1), IndexFamily::Squares)),
            LimitResult::exact(i(0))
        );
        assert_eq!(
            MethodSpec::Lim.g_limit(&SeqSpec::eventually_constant(vec![i(9), i(9)], i(4))),
            LimitResult::exact(i(4))
        );
        assert_eq!(
            MethodSpec::Cesaro.g_limit(&SeqSpec::spike(i(0), i(6), IndexFamily::ap(3, 3))),
            LimitResult::exact(i(2))
        );
    }

    /// Partial means at N = 10^5 computed term by term.
    #[test]
    fn cesaro_agrees_with_partial_means() {
        let n = 100_000u64;
        let cases = [
            alt(),
            SeqSpec::spike(i(0), i(6), IndexFamily::ap(3, 3)),
            SeqSpec::spike(i(0), i(1), IndexFamily::Squares),
            SeqSpec::tabulated(vec![i(50); 10], SeqSpec::periodic(vec![], vec![i(1), i(2), i(6)])),
        ];
        for s in &cases {
            let mean = (1..=n).map(|k| s.eval(k).to_f64()).sum::<f64>() / n as f64;
            let exact = MethodSpec::Cesaro.g_limit(s).value().unwrap().to_f64();
            assert!((mean - exact).abs() < 1e-2, "{s}: {mean} vs {exact}");
        }
        let mean = (1..=n).map(|k| alt().eval(k).to_f64()).sum::<f64>() / n as f64;
        assert!((mean - 0.5).abs() < 1e-4);
    }

    #[test]
    fn statistical_density_oracle() {
        let n = 1_000_000u64;
        let s = SeqSpec::spike(i(0), i(1), IndexFamily::Squares);
        let bad = (1..=n).filter(|&k| s.eval(k) != i(0)).count() as f64 / n as f64;
        assert!(bad <= 1e-3);
        // A two-valued cycle leaves at least half the indices ≥ 1/4 away
        // from any candidate limit.
        let cycle = alt();
        for l in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let far = (1..=1000u64).filter(|&k| (cycle.eval(k).to_f64() - l).abs() >= 0.25).count();
            assert!(far >= 500);
        }
    }

    #[test]
    fn product_acts_as_factor_on_scalars() {
        let p = MethodSpec::product(MethodSpec::Cesaro);
        assert_eq!(p.g_limit(&alt()), MethodSpec::Cesaro.g_limit(&alt()));
        assert_eq!(p.to_string(), "prod(cesaro)");
    }

    #[test]
    fn linearity_on_examples() {
        let s = SeqSpec::spike(i(2), i(-1), IndexFamily::ap(1, 4));
        let map = crate::sequence::PointMap::affine(Rat::new(-3, 2), i(5));
        for m in [MethodSpec::Cesaro, MethodSpec::Statistical, MethodSpec::Lim] {
            let lhs = m.g_limit(&s.transform(&map));
            let rhs = m.g_limit(&s).map(|v| map.apply(v));
            assert_eq!(lhs, rhs, "{m}");
        }
    }
}
