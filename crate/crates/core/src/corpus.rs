//! The fixed sequence corpus used by trait checks and suites.
//!
//! Changing any list here changes reported verdict counts, so the corpus
//! carries a version that reports echo.

use crate::rat::Rat;
use crate::sequence::{IndexFamily, SeqSpec};

pub const CORPUS_VERSION: u32 = 1;

fn r(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

fn ints(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::int(x)).collect()
}

/// Mixed corpus: oscillating, sparse-spike, dense-spike and convergent
/// sequences. The first two entries are the canonical trait witnesses.
pub fn standard_corpus() -> Vec<SeqSpec> {
    vec![
        SeqSpec::periodic(vec![], ints(&[0, 1])),
        SeqSpec::spike(Rat::zero(), Rat::one(), IndexFamily::Squares),
        SeqSpec::constant(Rat::int(3)),
        SeqSpec::eventually_constant(ints(&[9, 9]), Rat::int(4)),
        SeqSpec::eventually_constant(ints(&[2]), Rat::zero()),
        SeqSpec::periodic(ints(&[5]), ints(&[1, 2, 3])),
        SeqSpec::periodic(vec![], vec![r(-1, 2), r(1, 2)]),
        SeqSpec::periodic(vec![], ints(&[0, 0, 1])),
        SeqSpec::spike(Rat::zero(), Rat::int(6), IndexFamily::ap(3, 3)),
        SeqSpec::spike(Rat::int(2), Rat::int(-1), IndexFamily::PowersOfTwo),
        SeqSpec::spike(r(1, 3), Rat::int(7), IndexFamily::Squares),
        SeqSpec::spike(Rat::int(-4), Rat::int(4), IndexFamily::finite([1, 3, 8])),
        SeqSpec::spike(Rat::one(), Rat::int(3), IndexFamily::ap(1, 2)),
        SeqSpec::tabulated(ints(&[100, -100]), SeqSpec::constant(r(5, 2))),
        SeqSpec::tabulated(ints(&[7, 7, 7]), SeqSpec::spike(Rat::zero(), Rat::one(), IndexFamily::Squares)),
        SeqSpec::tabulated(ints(&[1]), SeqSpec::periodic(vec![], ints(&[2, 4]))),
        SeqSpec::tabulated(vec![r(1, 7)], SeqSpec::spike(Rat::int(-2), Rat::int(5), IndexFamily::PowersOfTwo)),
        SeqSpec::eventually_constant(vec![r(3, 4), r(-5, 8)], r(-1, 16)),
    ]
}

/// Infinite index families for subsequence extraction.
pub fn standard_families() -> Vec<IndexFamily> {
    vec![
        IndexFamily::ap(2, 2),
        IndexFamily::Squares,
        IndexFamily::PowersOfTwo,
        IndexFamily::ap(1, 1),
        IndexFamily::ap(1, 2),
        IndexFamily::ap(3, 4),
        IndexFamily::ap(5, 3),
    ]
}

/// 100 ordinarily convergent sequences covering every variant.
pub fn convergent_corpus() -> Vec<SeqSpec> {
    (0..100i64)
        .map(|j| {
            let tail = r(j - 50, 1 + j % 7);
            let noise = |k: i64| r((j * 13 + k * 7) % 23 - 11, 1 + (j + k) % 5);
            match j % 5 {
                0 => SeqSpec::constant(tail),
                1 => SeqSpec::eventually_constant((0..j % 6).map(noise).collect(), tail),
                2 => SeqSpec::spike(tail, noise(1), IndexFamily::finite((1..=(j % 9 + 1) as u64).step_by(2))),
                3 => SeqSpec::tabulated((0..j % 4 + 1).map(noise).collect(), SeqSpec::constant(tail)),
                _ => SeqSpec::periodic((0..j % 3).map(noise).collect(), vec![tail.clone(), tail]),
            }
        })
        .collect()
}

/// Twenty exact shifts, including zero and both signs.
pub fn standard_shifts() -> Vec<Rat> {
    (-9..=10i64).map(|k| r(k * 3, 1 + k.rem_euclid(4))).collect()
}

/// Pairs for the group axioms: every corpus pair whose termwise sum has a
/// closed form.
pub fn sequence_pairs() -> Vec<(SeqSpec, SeqSpec)> {
    let c = standard_corpus();
    let mut out = Vec::new();
    for a in &c {
        for b in &c {
            if a.add(b).is_ok() {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}
