//! Seeded random interval unions.
//!
//! Endpoints are rationals with denominator at most 16 and magnitude at
//! most 32; sets have up to five components, with occasional singletons
//! and rays. The generator is ChaCha8, so a seed fixes the whole stream on
//! every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rat::{ExtRat, Rat};
use crate::realsets::{Interval, RSet};

pub const MAX_DENOM: i64 = 16;
pub const MAX_MAGNITUDE: i64 = 32;
pub const MAX_COMPONENTS: usize = 5;

pub struct SetGen {
    rng: ChaCha8Rng,
}

impl SetGen {
    pub fn new(seed: u64) -> SetGen {
        SetGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn rat(&mut self) -> Rat {
        let d = self.rng.gen_range(1..=MAX_DENOM);
        let n = self.rng.gen_range(-MAX_MAGNITUDE * d..=MAX_MAGNITUDE * d);
        Rat::new(n, d)
    }

    /// `count` distinct sorted rationals.
    fn points(&mut self, count: usize) -> Vec<Rat> {
        let mut pts = Vec::with_capacity(count);
        while pts.len() < count {
            let p = self.rat();
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        pts.sort();
        pts
    }

    fn build(&mut self, rays: bool, singletons: bool, open_only: bool) -> RSet {
        let k = self.rng.gen_range(1..=MAX_COMPONENTS);
        let pts = self.points(2 * k);
        let mut intervals = Vec::with_capacity(k);
        for j in 0..k {
            let (a, b) = (pts[2 * j].clone(), pts[2 * j + 1].clone());
            if singletons && !open_only && self.rng.gen_bool(0.15) {
                intervals.push(Interval::point(a));
                continue;
            }
            let mut lo = ExtRat::Finite(a);
            let mut hi = ExtRat::Finite(b);
            if rays && j == 0 && self.rng.gen_bool(0.1) {
                lo = ExtRat::NegInf;
            }
            if rays && j + 1 == k && self.rng.gen_bool(0.1) {
                hi = ExtRat::PosInf;
            }
            let (lc, hc) = if open_only {
                (false, false)
            } else {
                (self.rng.gen_bool(0.5), self.rng.gen_bool(0.5))
            };
            if let Some(iv) = Interval::new(lo, lc, hi, hc) {
                intervals.push(iv);
            }
        }
        RSet::from_intervals(intervals)
    }

    /// A general set: occasionally empty, with singletons and rays.
    pub fn set(&mut self) -> RSet {
        if self.rng.gen_bool(0.03) {
            return RSet::empty();
        }
        self.build(true, true, false)
    }

    pub fn nonempty_set(&mut self) -> RSet {
        self.build(true, true, false)
    }

    pub fn bounded_set(&mut self) -> RSet {
        self.build(false, true, false)
    }

    /// A finite union of open intervals and rays.
    pub fn open_set(&mut self) -> RSet {
        self.build(true, false, true)
    }

    /// A nonempty bounded set without singleton components.
    pub fn bounded_intervals(&mut self) -> RSet {
        self.build(false, false, false)
    }
}
