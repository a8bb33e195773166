//! Closed-form rational sequences `x = (x_n)_{n ≥ 1}`.
//!
//! Four classes are supported: eventually constant, eventually periodic,
//! spike mixtures over an index family, and tabulated overrides of one of
//! the other three. Every sequence in these classes takes finitely many
//! values, which is what makes ranges, limits and "almost in" exactly
//! decidable. Indexing is 1-based.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rat::{lcm_u64, Rat};
use crate::realsets::RSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("invalid index family: {0}")]
    InvalidFamily(String),
    #[error("periodic sequence needs a nonempty cycle")]
    EmptyCycle,
    #[error("tabulated sequences cannot nest another tabulated sequence")]
    NestedTabulated,
    #[error("a finite index family does not define a subsequence")]
    FiniteSubsequence,
    #[error("no closed form in the sequence catalog: {0}")]
    NoClosedForm(String),
}

/// An index set `S ⊆ ℕ` with exactly computable natural density.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IndexFamily {
    /// `{1, 4, 9, 16, …}`
    Squares,
    /// `{1, 2, 4, 8, …}`
    PowersOfTwo,
    /// `{first, first + step, first + 2·step, …}`
    Ap { first: u64, step: u64 },
    Finite { members: BTreeSet<u64> },
}

fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x.saturating_mul(x) > n {
        x -= 1;
    }
    while (x + 1).saturating_mul(x + 1) <= n {
        x += 1;
    }
    x
}

impl IndexFamily {
    pub fn ap(first: u64, step: u64) -> IndexFamily {
        IndexFamily::Ap { first, step }
    }

    pub fn finite<I: IntoIterator<Item = u64>>(members: I) -> IndexFamily {
        IndexFamily::Finite {
            members: members.into_iter().collect(),
        }
    }

    pub fn validate(&self) -> Result<(), SequenceError> {
        match self {
            IndexFamily::Ap { first, step } if *first == 0 || *step == 0 => Err(SequenceError::InvalidFamily(
                format!("ap({first},{step}) needs first ≥ 1 and step ≥ 1"),
            )),
            IndexFamily::Finite { members } if members.contains(&0) => {
                Err(SequenceError::InvalidFamily("indices start at 1".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn contains(&self, n: u64) -> bool {
        match self {
            IndexFamily::Squares => {
                let r = isqrt(n);
                n >= 1 && r * r == n
            }
            IndexFamily::PowersOfTwo => n.is_power_of_two(),
            IndexFamily::Ap { first, step } => n >= *first && (n - first).is_multiple_of(*step),
            IndexFamily::Finite { members } => members.contains(&n),
        }
    }

    pub fn is_infinite(&self) -> bool {
        !matches!(self, IndexFamily::Finite { .. })
    }

    /// Natural density `lim |S ∩ [1,N]| / N`.
    pub fn natural_density(&self) -> Rat {
        match self {
            IndexFamily::Ap { step, .. } => Rat::new(1, *step as i64),
            _ => Rat::zero(),
        }
    }

    /// `|S ∩ [1,n]|`.
    pub fn count_up_to(&self, n: u64) -> u64 {
        match self {
            IndexFamily::Squares => isqrt(n),
            IndexFamily::PowersOfTwo => {
                if n == 0 {
                    0
                } else {
                    64 - u64::from(n.leading_zeros())
                }
            }
            IndexFamily::Ap { first, step } => {
                if n < *first {
                    0
                } else {
                    (n - first) / step + 1
                }
            }
            IndexFamily::Finite { members } => members.range(..=n).count() as u64,
        }
    }

    /// The k-th member (k ≥ 1) in increasing order, if it fits in a `u64`.
    pub fn nth(&self, k: u64) -> Option<u64> {
        assert!(k >= 1, "members are numbered from 1");
        match self {
            IndexFamily::Squares => k.checked_mul(k),
            IndexFamily::PowersOfTwo => 1u64.checked_shl(u32::try_from(k - 1).ok()?).filter(|_| k <= 64),
            IndexFamily::Ap { first, step } => (k - 1).checked_mul(*step)?.checked_add(*first),
            IndexFamily::Finite { members } => members.iter().nth((k - 1) as usize).copied(),
        }
    }
}

impl fmt::Display for IndexFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexFamily::Squares => f.write_str("squares"),
            IndexFamily::PowersOfTwo => f.write_str("pow2"),
            IndexFamily::Ap { first, step } => write!(f, "ap({first},{step})"),
            IndexFamily::Finite { members } => {
                f.write_str("finite(")?;
                for (i, m) in members.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{m}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Debug for IndexFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A pointwise map `ℝ → ℝ` applied to sequence terms.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PointMap {
    Translate { by: Rat },
    Negate,
    Affine { scale: Rat, shift: Rat },
}

impl PointMap {
    pub fn translate(by: Rat) -> PointMap {
        PointMap::Translate { by }
    }

    pub fn affine(scale: Rat, shift: Rat) -> PointMap {
        PointMap::Affine { scale, shift }
    }

    pub fn apply(&self, x: &Rat) -> Rat {
        match self {
            PointMap::Translate { by } => x + by,
            PointMap::Negate => -x,
            PointMap::Affine { scale, shift } => scale * x + shift,
        }
    }

    /// Coefficients `(a, b)` of the map as `x ↦ a·x + b`.
    pub fn coefficients(&self) -> (Rat, Rat) {
        match self {
            PointMap::Translate { by } => (Rat::one(), by.clone()),
            PointMap::Negate => (Rat::int(-1), Rat::zero()),
            PointMap::Affine { scale, shift } => (scale.clone(), shift.clone()),
        }
    }

    pub fn image(&self, set: &RSet) -> RSet {
        let (a, b) = self.coefficients();
        set.affine_image(&a, &b)
    }
}

impl fmt::Display for PointMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointMap::Translate { by } => write!(f, "x + {by}"),
            PointMap::Negate => f.write_str("-x"),
            PointMap::Affine { scale, shift } => write!(f, "{scale}*x + {shift}"),
        }
    }
}

impl fmt::Debug for PointMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SeqSpec {
    EventuallyConstant {
        prefix: Vec<Rat>,
        tail: Rat,
    },
    EventuallyPeriodic {
        prefix: Vec<Rat>,
        cycle: Vec<Rat>,
    },
    /// `x_n = spike` for `n ∈ family`, `base` otherwise.
    SpikeMix {
        base: Rat,
        spike: Rat,
        family: IndexFamily,
    },
    /// `x_n = values[n-1]` for `n ≤ values.len()`, then `beyond` read at the
    /// same absolute index `n`.
    Tabulated {
        values: Vec<Rat>,
        beyond: Box<SeqSpec>,
    },
}

fn primitive_cycle(cycle: &[Rat]) -> Vec<Rat> {
    let len = cycle.len();
    for p in 1..=len {
        if len.is_multiple_of(p) && (0..len).all(|i| cycle[i] == cycle[i % p]) {
            return cycle[..p].to_vec();
        }
    }
    cycle.to_vec()
}

fn pow_mod(base: u128, mut exp: u64, m: u128) -> u128 {
    let mut result = 1 % m;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    result
}

/// `{k : along(k) ∈ family}` when it has a catalog description.
enum Pullback {
    All,
    Family(IndexFamily),
}

impl SeqSpec {
    pub fn constant(c: Rat) -> SeqSpec {
        SeqSpec::EventuallyConstant {
            prefix: Vec::new(),
            tail: c,
        }
    }

    pub fn eventually_constant(prefix: Vec<Rat>, tail: Rat) -> SeqSpec {
        SeqSpec::EventuallyConstant { prefix, tail }
    }

    pub fn periodic(prefix: Vec<Rat>, cycle: Vec<Rat>) -> SeqSpec {
        SeqSpec::EventuallyPeriodic { prefix, cycle }
    }

    pub fn spike(base: Rat, spike: Rat, family: IndexFamily) -> SeqSpec {
        SeqSpec::SpikeMix { base, spike, family }
    }

    pub fn tabulated(values: Vec<Rat>, beyond: SeqSpec) -> SeqSpec {
        SeqSpec::Tabulated {
            values,
            beyond: Box::new(beyond),
        }
    }

    pub fn validate(&self) -> Result<(), SequenceError> {
        match self {
            SeqSpec::EventuallyConstant { .. } => Ok(()),
            SeqSpec::EventuallyPeriodic { cycle, .. } if cycle.is_empty() => Err(SequenceError::EmptyCycle),
            SeqSpec::EventuallyPeriodic { .. } => Ok(()),
            SeqSpec::SpikeMix { family, .. } => family.validate(),
            SeqSpec::Tabulated { beyond, .. } => {
                if matches!(**beyond, SeqSpec::Tabulated { .. }) {
                    return Err(SequenceError::NestedTabulated);
                }
                beyond.validate()
            }
        }
    }

    /// The n-th term, `n ≥ 1`.
    pub fn eval(&self, n: u64) -> Rat {
        assert!(n >= 1, "sequences are indexed from 1");
        match self {
            SeqSpec::EventuallyConstant { prefix, tail } => {
                prefix.get((n - 1) as usize).cloned().unwrap_or_else(|| tail.clone())
            }
            SeqSpec::EventuallyPeriodic { prefix, cycle } => {
                let p = prefix.len() as u64;
                if n <= p {
                    prefix[(n - 1) as usize].clone()
                } else {
                    cycle[((n - p - 1) % cycle.len() as u64) as usize].clone()
                }
            }
            SeqSpec::SpikeMix { base, spike, family } => {
                if family.contains(n) {
                    spike.clone()
                } else {
                    base.clone()
                }
            }
            SeqSpec::Tabulated { values, beyond } => match values.get((n - 1) as usize) {
                Some(v) => v.clone(),
                None => beyond.eval(n),
            },
        }
    }

    /// Canonical form: structural equality of normalized sequences is
    /// extensional equality. Cycles are reduced to their primitive period,
    /// redundant prefix entries are trimmed, constant cycles become
    /// `EventuallyConstant`, and spike mixtures over finite or arithmetic
    /// families become eventually periodic.
    pub fn normalize(&self) -> SeqSpec {
        match self {
            SeqSpec::EventuallyConstant { prefix, tail } => {
                let mut prefix = prefix.clone();
                while prefix.last() == Some(tail) {
                    prefix.pop();
                }
                SeqSpec::EventuallyConstant {
                    prefix,
                    tail: tail.clone(),
                }
            }
            SeqSpec::EventuallyPeriodic { prefix, cycle } => {
                let mut cycle = primitive_cycle(cycle);
                let mut prefix = prefix.clone();
                while !prefix.is_empty() && prefix.last() == cycle.last() {
                    prefix.pop();
                    cycle.rotate_right(1);
                }
                if cycle.len() == 1 {
                    SeqSpec::EventuallyConstant {
                        prefix,
                        tail: cycle.pop().expect("one element"),
                    }
                } else {
                    SeqSpec::EventuallyPeriodic { prefix, cycle }
                }
            }
            SeqSpec::SpikeMix { base, spike, family } => {
                if base == spike {
                    return SeqSpec::constant(base.clone());
                }
                match family {
                    IndexFamily::Finite { members } => {
                        let last = members.iter().next_back().copied().unwrap_or(0);
                        let prefix = (1..=last).map(|n| self.eval(n)).collect();
                        SeqSpec::eventually_constant(prefix, base.clone()).normalize()
                    }
                    IndexFamily::Ap { first, step } => {
                        let prefix = vec![base.clone(); (*first - 1) as usize];
                        let mut cycle = vec![base.clone(); *step as usize];
                        cycle[0] = spike.clone();
                        SeqSpec::periodic(prefix, cycle).normalize()
                    }
                    _ => self.clone(),
                }
            }
            SeqSpec::Tabulated { values, beyond } => {
                let rule = beyond.normalize();
                let v = values.len() as u64;
                match rule {
                    SeqSpec::EventuallyConstant { ref prefix, .. } | SeqSpec::EventuallyPeriodic { ref prefix, .. } => {
                        let cycle_len = match &rule {
                            SeqSpec::EventuallyPeriodic { cycle, .. } => cycle.len() as u64,
                            _ => 1,
                        };
                        let head = v.max(prefix.len() as u64);
                        let folded = SeqSpec::tabulated(values.clone(), rule.clone());
                        let prefix = (1..=head).map(|n| folded.eval(n)).collect();
                        let cycle = (head + 1..=head + cycle_len).map(|n| folded.eval(n)).collect();
                        SeqSpec::periodic(prefix, cycle).normalize()
                    }
                    SeqSpec::SpikeMix { .. } => {
                        let mut values = values.clone();
                        while let Some(last) = values.last() {
                            if *last == rule.eval(values.len() as u64) {
                                values.pop();
                            } else {
                                break;
                            }
                        }
                        if values.is_empty() {
                            rule
                        } else {
                            SeqSpec::tabulated(values, rule)
                        }
                    }
                    SeqSpec::Tabulated {
                        values: ref inner,
                        beyond: ref rule,
                    } => {
                        // Flatten: outer values override the inner table.
                        let len = values.len().max(inner.len()) as u64;
                        let merged = (1..=len)
                            .map(|n| match values.get((n - 1) as usize) {
                                Some(v) => v.clone(),
                                None => inner[(n - 1) as usize].clone(),
                            })
                            .collect();
                        SeqSpec::tabulated(merged, (**rule).clone()).normalize()
                    }
                }
            }
        }
    }

    /// `(prefix, cycle)` for eventually periodic sequences (constant tails
    /// have a cycle of length one); `None` for spike mixtures over sparse
    /// families.
    pub fn periodic_parts(&self) -> Option<(Vec<Rat>, Vec<Rat>)> {
        match self.normalize() {
            SeqSpec::EventuallyConstant { prefix, tail } => Some((prefix, vec![tail])),
            SeqSpec::EventuallyPeriodic { prefix, cycle } => Some((prefix, cycle)),
            _ => None,
        }
    }

    /// Length of the finite part after which the sequence follows its
    /// repeating or spike rule.
    pub fn head_len(&self) -> usize {
        match self.normalize() {
            SeqSpec::EventuallyConstant { prefix, .. } | SeqSpec::EventuallyPeriodic { prefix, .. } => prefix.len(),
            SeqSpec::SpikeMix { .. } => 0,
            SeqSpec::Tabulated { values, .. } => values.len(),
        }
    }

    /// The (finite) set of values taken by the sequence.
    pub fn range(&self) -> BTreeSet<Rat> {
        match self.normalize() {
            SeqSpec::EventuallyConstant { prefix, tail } => prefix.into_iter().chain(std::iter::once(tail)).collect(),
            SeqSpec::EventuallyPeriodic { prefix, cycle } => prefix.into_iter().chain(cycle).collect(),
            SeqSpec::SpikeMix { base, spike, .. } => [base, spike].into_iter().collect(),
            SeqSpec::Tabulated { values, beyond } => {
                let mut out: BTreeSet<Rat> = values.into_iter().collect();
                out.extend(beyond.range());
                out
            }
        }
    }

    /// Values taken at infinitely many indices.
    pub fn recurrent_values(&self) -> BTreeSet<Rat> {
        match self.normalize() {
            SeqSpec::EventuallyConstant { tail, .. } => [tail].into_iter().collect(),
            SeqSpec::EventuallyPeriodic { cycle, .. } => cycle.into_iter().collect(),
            SeqSpec::SpikeMix { base, spike, .. } => [base, spike].into_iter().collect(),
            SeqSpec::Tabulated { beyond, .. } => beyond.recurrent_values(),
        }
    }

    /// Membership in `s(A)`: every term lies in `set`.
    pub fn range_in(&self, set: &RSet) -> bool {
        self.range().iter().all(|v| set.contains(v))
    }

    /// All but finitely many terms lie in `set`.
    pub fn almost_in(&self, set: &RSet) -> bool {
        self.recurrent_values().iter().all(|v| set.contains(v))
    }

    /// Pointwise image `(f(x_n))`, in the same variant class.
    pub fn transform(&self, map: &PointMap) -> SeqSpec {
        let f = |v: &Rat| map.apply(v);
        match self {
            SeqSpec::EventuallyConstant { prefix, tail } => SeqSpec::EventuallyConstant {
                prefix: prefix.iter().map(f).collect(),
                tail: f(tail),
            },
            SeqSpec::EventuallyPeriodic { prefix, cycle } => SeqSpec::EventuallyPeriodic {
                prefix: prefix.iter().map(f).collect(),
                cycle: cycle.iter().map(f).collect(),
            },
            SeqSpec::SpikeMix { base, spike, family } => SeqSpec::SpikeMix {
                base: f(base),
                spike: f(spike),
                family: family.clone(),
            },
            SeqSpec::Tabulated { values, beyond } => SeqSpec::Tabulated {
                values: values.iter().map(f).collect(),
                beyond: Box::new(beyond.transform(map)),
            },
        }
    }

    pub fn translate(&self, g: &Rat) -> SeqSpec {
        self.transform(&PointMap::translate(g.clone()))
    }

    pub fn negate(&self) -> SeqSpec {
        self.transform(&PointMap::Negate)
    }

    /// Termwise sum `(x_n + y_n)`, when the catalog can express it.
    pub fn add(&self, other: &SeqSpec) -> Result<SeqSpec, SequenceError> {
        let (a, b) = (self.normalize(), other.normalize());
        let head = a.table_len().max(b.table_len());
        let rule = add_rules(a.rule(), b.rule())?;
        let values = (1..=head as u64).map(|n| a.eval(n) + b.eval(n)).collect();
        Ok(SeqSpec::tabulated(values, rule).normalize())
    }

    fn table_len(&self) -> usize {
        match self {
            SeqSpec::Tabulated { values, .. } => values.len(),
            _ => 0,
        }
    }

    fn rule(&self) -> &SeqSpec {
        match self {
            SeqSpec::Tabulated { beyond, .. } => beyond,
            other => other,
        }
    }

    /// The subsequence `(x_{n_k})_k` along an infinite index family.
    pub fn subsequence(&self, along: &IndexFamily) -> Result<SeqSpec, SequenceError> {
        along.validate()?;
        if !along.is_infinite() {
            return Err(SequenceError::FiniteSubsequence);
        }
        let seq = self.normalize();
        let index = |k: u64| {
            along
                .nth(k)
                .ok_or_else(|| SequenceError::NoClosedForm(format!("index {k} of {along} overflows")))
        };
        match &seq {
            SeqSpec::EventuallyConstant { .. } | SeqSpec::EventuallyPeriodic { .. } => {
                let (prefix, cycle) = seq.periodic_parts().expect("periodic variant");
                periodic_subsequence(&seq, prefix.len() as u64, cycle.len() as u64, along)
            }
            SeqSpec::SpikeMix { base, spike, family } => Ok(match pullback(family, along)? {
                Pullback::All => SeqSpec::constant(spike.clone()),
                Pullback::Family(f) => SeqSpec::spike(base.clone(), spike.clone(), f).normalize(),
            }),
            SeqSpec::Tabulated { values, beyond } => {
                let sub_rule = beyond.subsequence(along)?;
                let len = values.len() as u64;
                let mut head = Vec::new();
                let mut k = 1;
                loop {
                    let n = index(k)?;
                    if n > len {
                        break;
                    }
                    head.push(seq.eval(n));
                    k += 1;
                }
                Ok(SeqSpec::tabulated(head, sub_rule).normalize())
            }
        }
    }

    /// Literal form accepted by the parser.
    pub fn to_literal(&self) -> String {
        self.to_string()
    }
}

fn add_rules(a: &SeqSpec, b: &SeqSpec) -> Result<SeqSpec, SequenceError> {
    use SeqSpec::*;
    let no_form = || SequenceError::NoClosedForm(format!("{a} + {b}"));
    match (a, b) {
        (EventuallyConstant { .. } | EventuallyPeriodic { .. }, EventuallyConstant { .. } | EventuallyPeriodic { .. }) => {
            let (pa, ca) = a.periodic_parts().expect("periodic");
            let (pb, cb) = b.periodic_parts().expect("periodic");
            let head = pa.len().max(pb.len()) as u64;
            let period = lcm_u64(ca.len() as u64, cb.len() as u64);
            let prefix = (1..=head).map(|n| a.eval(n) + b.eval(n)).collect();
            let cycle = (head + 1..=head + period).map(|n| a.eval(n) + b.eval(n)).collect();
            Ok(SeqSpec::periodic(prefix, cycle).normalize())
        }
        (SpikeMix { base, spike, family }, EventuallyConstant { prefix, tail })
        | (EventuallyConstant { prefix, tail }, SpikeMix { base, spike, family }) => {
            let rule = SeqSpec::spike(base + tail, spike + tail, family.clone());
            let values = (1..=prefix.len() as u64).map(|n| a.eval(n) + b.eval(n)).collect();
            Ok(SeqSpec::tabulated(values, rule).normalize())
        }
        (
            SpikeMix {
                base: b1,
                spike: s1,
                family: f1,
            },
            SpikeMix {
                base: b2,
                spike: s2,
                family: f2,
            },
        ) if f1 == f2 => Ok(SeqSpec::spike(b1 + b2, s1 + s2, f1.clone()).normalize()),
        _ => Err(no_form()),
    }
}

/// Subsequence of an eventually periodic sequence (prefix length `p`, cycle
/// length `l`) along an infinite family.
fn periodic_subsequence(seq: &SeqSpec, p: u64, l: u64, along: &IndexFamily) -> Result<SeqSpec, SequenceError> {
    let term = |k: u64| -> Result<Rat, SequenceError> {
        along
            .nth(k)
            .map(|n| seq.eval(n))
            .ok_or_else(|| SequenceError::NoClosedForm(format!("index {k} of {along} overflows")))
    };
    match along {
        IndexFamily::Ap { .. } | IndexFamily::Squares => {
            // Past the prefix, the cycle position of n_k is periodic in k
            // with period l: n_{k+l} - n_k is a multiple of l.
            let mut k0 = 0;
            while along.nth(k0 + 1).is_some_and(|n| n <= p) {
                k0 += 1;
            }
            let prefix = (1..=k0).map(term).collect::<Result<Vec<_>, _>>()?;
            let cycle = (k0 + 1..=k0 + l).map(term).collect::<Result<Vec<_>, _>>()?;
            Ok(SeqSpec::periodic(prefix, cycle).normalize())
        }
        IndexFamily::PowersOfTwo => {
            // n_k = 2^(k-1). Once n_k > p, the cycle position is
            // (2^(k-1) - p - 1) mod l, a function of 2^(k-1) mod l.
            let mut prefix = Vec::new();
            let mut k = 1u64;
            while k <= 64 && (1u128 << (k - 1)) <= u128::from(p) {
                prefix.push(seq.eval(1u64 << (k - 1)));
                k += 1;
            }
            let (_, cycle_vals) = seq.periodic_parts().expect("periodic");
            let m = u128::from(l);
            let offset = (u128::from(p) + 1) % m;
            let mut state = pow_mod(2, k - 1, m);
            let mut seen: HashMap<u128, usize> = HashMap::new();
            let mut tail_terms = Vec::new();
            loop {
                if let Some(&start) = seen.get(&state) {
                    prefix.extend(tail_terms[..start].iter().cloned());
                    let cycle = tail_terms[start..].to_vec();
                    return Ok(SeqSpec::periodic(prefix, cycle).normalize());
                }
                seen.insert(state, tail_terms.len());
                let pos = ((state + m - offset) % m) as usize;
                tail_terms.push(cycle_vals[pos].clone());
                state = state * 2 % m;
            }
        }
        IndexFamily::Finite { .. } => Err(SequenceError::FiniteSubsequence),
    }
}

/// `{k : along(k) ∈ family}` for a sparse spike family (squares or powers
/// of two), or an error when the result has no catalog description.
fn pullback(family: &IndexFamily, along: &IndexFamily) -> Result<Pullback, SequenceError> {
    use IndexFamily::*;
    let no_form = || SequenceError::NoClosedForm(format!("indices k with n_k ∈ {family} for n_k along {along}"));
    if family == along {
        return Ok(Pullback::All);
    }
    match (family, along) {
        (_, Ap { first: 1, step: 1 }) => Ok(Pullback::Family(family.clone())),
        (Squares, PowersOfTwo) => Ok(Pullback::Family(IndexFamily::ap(1, 2))),
        (PowersOfTwo, Squares) => Ok(Pullback::Family(PowersOfTwo)),
        (Squares, Ap { first, step }) => {
            let d = u128::from(*step);
            let a = u128::from(*first) % d;
            if d > 1 << 24 {
                return Err(no_form());
            }
            let hit = (0..d).any(|r| r * r % d == a);
            if hit {
                Err(no_form())
            } else {
                Ok(Pullback::Family(IndexFamily::finite([])))
            }
        }
        (PowersOfTwo, Ap { first, step }) => {
            let d = u128::from(*step);
            let a = u128::from(*first);
            let mut j = 0u32;
            while (1u128 << j) < a {
                j += 1;
            }
            let mut state = pow_mod(2, u64::from(j), d);
            let mut seen: HashMap<u128, u32> = HashMap::new();
            let mut hits = Vec::new();
            let cycle_start = loop {
                if let Some(&first_j) = seen.get(&state) {
                    break first_j;
                }
                seen.insert(state, j);
                if state == a % d {
                    hits.push(j);
                }
                state = state * 2 % d;
                j += 1;
            };
            if hits.iter().any(|&h| h >= cycle_start) {
                return Err(no_form());
            }
            let mut members = BTreeSet::new();
            for h in hits {
                let n = 1u128.checked_shl(h).filter(|_| h < 127).ok_or_else(no_form)?;
                let k = (n - a) / d + 1;
                members.insert(u64::try_from(k).map_err(|_| no_form())?);
            }
            Ok(Pullback::Family(IndexFamily::Finite { members }))
        }
        _ => Err(no_form()),
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, values: &[Rat]) -> fmt::Result {
    f.write_str("[")?;
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    f.write_str("]")
}

impl fmt::Display for SeqSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqSpec::EventuallyConstant { prefix, tail } => {
                f.write_str("const(")?;
                if !prefix.is_empty() {
                    f.write_str("prefix=")?;
                    write_list(f, prefix)?;
                    f.write_str("; ")?;
                }
                write!(f, "tail={tail})")
            }
            SeqSpec::EventuallyPeriodic { prefix, cycle } => {
                f.write_str("per(prefix=")?;
                write_list(f, prefix)?;
                f.write_str("; cycle=")?;
                write_list(f, cycle)?;
                f.write_str(")")
            }
            SeqSpec::SpikeMix { base, spike, family } => {
                write!(f, "spike(base={base}; spike={spike}; where={family})")
            }
            SeqSpec::Tabulated { values, beyond } => {
                f.write_str("tab(values=")?;
                write_list(f, values)?;
                write!(f, "; beyond={beyond})")
            }
        }
    }
}

impl fmt::Debug for SeqSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i(n: i64) -> Rat {
        Rat::int(n)
    }
    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| i(x)).collect()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(SeqSpec::eventually_constant(ints(&[5]), i(3)).eval(1), i(5));
        assert_eq!(SeqSpec::periodic(vec![], ints(&[0, 1])).eval(4), i(1));
        let s = SeqSpec::spike(i(0), i(1), IndexFamily::Squares);
        assert_eq!(s.eval(9), i(1));
        assert_eq!(s.eval(10), i(0));
    }

    #[test]
    fn density_examples() {
        assert_eq!(IndexFamily::finite([1, 2, 3]).natural_density(), i(0));
        assert_eq!(IndexFamily::ap(2, 2).natural_density(), Rat::new(1, 2));
        assert_eq!(IndexFamily::Squares.natural_density(), i(0));
        assert_eq!(IndexFamily::PowersOfTwo.natural_density(), i(0));
    }

    #[test]
    fn density_oracle_counts() {
        // Frozen from direct enumeration of n ≤ 10^6.
        let n = 1_000_000u64;
        let brute = |f: &IndexFamily| (1..=n).filter(|&k| f.contains(k)).count() as u64;
        for f in [
            IndexFamily::ap(2, 2),
            IndexFamily::Squares,
            IndexFamily::PowersOfTwo,
            IndexFamily::ap(3, 7),
        ] {
            assert_eq!(f.count_up_to(n), brute(&f), "{f}");
        }
        assert_eq!(IndexFamily::ap(2, 2).count_up_to(n), 500_000);
        assert_eq!(IndexFamily::Squares.count_up_to(n), 1000);
    }

    #[test]
    fn range_in_examples() {
        let unit = RSet::closed(i(0), i(1));
        assert!(SeqSpec::periodic(vec![], ints(&[0, 1])).range_in(&unit));
        let s = SeqSpec::spike(i(0), i(1), IndexFamily::Squares);
        assert!(!s.range_in(&RSet::open(Rat::new(1, 2), i(2))));
        let c = SeqSpec::eventually_constant(ints(&[2]), i(0));
        assert!(!c.range_in(&RSet::open(i(-1), i(1))));
        assert!(c.almost_in(&RSet::open(i(-1), i(1))));
    }

    #[test]
    fn transform_examples() {
        let p = SeqSpec::periodic(vec![], ints(&[0, 1]));
        assert_eq!(p.translate(&i(3)), SeqSpec::periodic(vec![], ints(&[3, 4])));
        assert_eq!(SeqSpec::constant(i(7)).negate(), SeqSpec::constant(i(-7)));
        let s = SeqSpec::spike(i(0), i(1), IndexFamily::Squares);
        assert_eq!(
            s.transform(&PointMap::affine(i(2), i(1))),
            SeqSpec::spike(i(1), i(3), IndexFamily::Squares)
        );
    }

    #[test]
    fn subsequence_examples() {
        let p = SeqSpec::periodic(vec![], ints(&[0, 1]));
        assert_eq!(p.subsequence(&IndexFamily::ap(2, 2)).unwrap(), SeqSpec::constant(i(1)));
        let s = SeqSpec::spike(i(0), i(1), IndexFamily::Squares);
        assert_eq!(s.subsequence(&IndexFamily::Squares).unwrap(), SeqSpec::constant(i(1)));
        let c = SeqSpec::eventually_constant(ints(&[7]), i(3));
        assert_eq!(c.subsequence(&IndexFamily::ap(1, 1)).unwrap(), c.normalize());
        assert_eq!(
            p.subsequence(&IndexFamily::finite([1, 2])),
            Err(SequenceError::FiniteSubsequence)
        );
    }

    #[test]
    fn sparse_spike_pullbacks() {
        let sq = SeqSpec::spike(i(0), i(1), IndexFamily::Squares);
        // 2^(k-1) is a square iff k is odd.
        assert_eq!(
            sq.subsequence(&IndexFamily::PowersOfTwo).unwrap(),
            SeqSpec::periodic(vec![], ints(&[1, 0]))
        );
        // n ≡ 2 (mod 4) is never a square.
        assert_eq!(sq.subsequence(&IndexFamily::ap(2, 4)).unwrap(), SeqSpec::constant(i(0)));
        assert!(matches!(
            sq.subsequence(&IndexFamily::ap(2, 2)),
            Err(SequenceError::NoClosedForm(_))
        ));
        let p2 = SeqSpec::spike(i(0), i(1), IndexFamily::PowersOfTwo);
        assert_eq!(
            p2.subsequence(&IndexFamily::Squares).unwrap(),
            SeqSpec::spike(i(0), i(1), IndexFamily::PowersOfTwo)
        );
        // Odd indices ≥ 3 are never powers of two.
        assert_eq!(p2.subsequence(&IndexFamily::ap(3, 2)).unwrap(), SeqSpec::constant(i(0)));
        // Along 1, 4, 7, …: only 1 = 2^0, 4 = 2^2, 16, 64, … ≡ 1 (mod 3) hit.
        assert!(p2.subsequence(&IndexFamily::ap(1, 3)).is_err());
        // Along 3, 9, 15, …: no power of two is a multiple of 3.
        assert_eq!(p2.subsequence(&IndexFamily::ap(3, 6)).unwrap(), SeqSpec::constant(i(0)));
    }

    #[test]
    fn subsequence_terms_agree_with_eval() {
        let seqs = [
            SeqSpec::periodic(ints(&[9, 8, 7]), ints(&[0, 1, 2, 5, 5])),
            SeqSpec::periodic(ints(&[4]), ints(&[1, 2, 3])),
            SeqSpec::tabulated(ints(&[6, 6, 6, 6, 6]), SeqSpec::spike(i(0), i(1), IndexFamily::Squares)),
            SeqSpec::spike(i(2), i(-1), IndexFamily::PowersOfTwo),
        ];
        let families = [
            IndexFamily::ap(2, 3),
            IndexFamily::Squares,
            IndexFamily::PowersOfTwo,
            IndexFamily::ap(5, 1),
            IndexFamily::ap(1, 1),
        ];
        for s in &seqs {
            for f in &families {
                if let Ok(sub) = s.subsequence(f) {
                    for k in 1..=40 {
                        let n = f.nth(k).unwrap();
                        assert_eq!(sub.eval(k), s.eval(n), "{s} along {f} at k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn normalization_canonicalizes() {
        let a = SeqSpec::periodic(ints(&[1, 0, 1]), ints(&[0, 1, 0, 1]));
        let b = SeqSpec::periodic(vec![i(1)], ints(&[0, 1]));
        assert_eq!(a.normalize(), b.normalize());
        assert_eq!(a.normalize(), SeqSpec::periodic(vec![], ints(&[1, 0])));
        assert_eq!(
            SeqSpec::periodic(ints(&[3, 2]), ints(&[2])).normalize(),
            SeqSpec::eventually_constant(ints(&[3]), i(2))
        );
        assert_eq!(
            SeqSpec::spike(i(0), i(6), IndexFamily::ap(3, 3)).normalize(),
            SeqSpec::periodic(vec![], ints(&[0, 0, 6]))
        );
        assert_eq!(
            SeqSpec::tabulated(ints(&[0, 0]), SeqSpec::spike(i(0), i(1), IndexFamily::Squares)).normalize(),
            SeqSpec::tabulated(ints(&[0]), SeqSpec::spike(i(0), i(1), IndexFamily::Squares))
        );
    }

    #[test]
    fn termwise_sums() {
        let x = SeqSpec::periodic(vec![], ints(&[0, 1]));
        let y = SeqSpec::periodic(vec![i(5)], ints(&[1, 2, 3]));
        let z = x.add(&y).unwrap();
        for n in 1..=30 {
            assert_eq!(z.eval(n), x.eval(n) + y.eval(n));
        }
        let s = SeqSpec::spike(i(0), i(1), IndexFamily::Squares);
        let c = SeqSpec::eventually_constant(ints(&[4]), i(2));
        let w = s.add(&c).unwrap();
        for n in 1..=30 {
            assert_eq!(w.eval(n), s.eval(n) + c.eval(n));
        }
        assert!(s.add(&x).is_err());
    }

    #[test]
    fn validation() {
        assert_eq!(SeqSpec::periodic(vec![], vec![]).validate(), Err(SequenceError::EmptyCycle));
        assert!(SeqSpec::spike(i(0), i(1), IndexFamily::ap(0, 2)).validate().is_err());
        let nested = SeqSpec::tabulated(vec![], SeqSpec::tabulated(vec![], SeqSpec::constant(i(0))));
        assert_eq!(nested.validate(), Err(SequenceError::NestedTabulated));
    }
}
