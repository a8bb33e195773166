use proptest::prelude::*;

use gconverge::group::{closure_via_base, symmetrize, NeighborhoodBase};
use gconverge::parse::{parse_set, parse_seq};
use gconverge::realsets::Interval;
use gconverge::topology::{g_closure, g_interior, hull, is_g_closed, is_g_connected, is_g_open, kernel};
use gconverge::{ExtRat, IndexFamily, MethodSpec, RSet, Rat, SeqSpec};

const EXACT: [MethodSpec; 3] = [MethodSpec::Lim, MethodSpec::Cesaro, MethodSpec::Statistical];

fn rat() -> impl Strategy<Value = Rat> {
    (-256i64..=256, 1i64..=16).prop_map(|(p, q)| Rat::new(p, q))
}

fn end() -> impl Strategy<Value = ExtRat> {
    prop_oneof![9 => rat().prop_map(ExtRat::Finite), 1 => Just(ExtRat::NegInf), 1 => Just(ExtRat::PosInf)]
}

fn interval() -> impl Strategy<Value = Option<Interval>> {
    (end(), any::<bool>(), end(), any::<bool>()).prop_map(|(a, ac, b, bc)| {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        Interval::new(lo, ac, hi, bc)
    })
}

fn set() -> impl Strategy<Value = RSet> {
    prop::collection::vec(interval(), 0..=5).prop_map(|v| RSet::from_intervals(v.into_iter().flatten()))
}

fn bounded_set() -> impl Strategy<Value = RSet> {
    set().prop_map(|a| a.intersect(&RSet::open(Rat::int(-40), Rat::int(40))))
}

fn family() -> impl Strategy<Value = IndexFamily> {
    prop_oneof![
        Just(IndexFamily::Squares),
        Just(IndexFamily::PowersOfTwo),
        (1u64..=10, 1u64..=10).prop_map(|(a, d)| IndexFamily::ap(a, d)),
        prop::collection::btree_set(1u64..=40, 0..4).prop_map(IndexFamily::finite),
    ]
}

fn small_rats(max: usize) -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec(rat(), 0..=max)
}

fn plain_seq() -> impl Strategy<Value = SeqSpec> {
    prop_oneof![
        (small_rats(3), rat()).prop_map(|(p, t)| SeqSpec::eventually_constant(p, t)),
        (small_rats(3), prop::collection::vec(rat(), 1..=4)).prop_map(|(p, c)| SeqSpec::periodic(p, c)),
        (rat(), rat(), family()).prop_map(|(b, s, f)| SeqSpec::spike(b, s, f)),
    ]
}

fn seq() -> impl Strategy<Value = SeqSpec> {
    prop_oneof![
        3 => plain_seq(),
        1 => (small_rats(4), plain_seq()).prop_map(|(v, b)| SeqSpec::tabulated(v, b)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn de_morgan(a in set(), b in set()) {
        prop_assert_eq!(a.union(&b).complement(), a.complement().intersect(&b.complement()));
        prop_assert_eq!(a.intersect(&b).complement(), a.complement().union(&b.complement()));
        prop_assert_eq!(a.complement().complement(), a);
    }

    #[test]
    fn open_iff_complement_closed(a in set()) {
        for m in &EXACT {
            prop_assert_eq!(is_g_open(m, &a).unwrap(), is_g_closed(m, &a.complement()).unwrap());
        }
    }

    #[test]
    fn hull_is_monotone_extensive_idempotent(a in set(), c in set()) {
        let b = a.union(&c);
        for m in &EXACT {
            let ha = hull(m, &a).unwrap();
            prop_assert!(a.is_subset(&ha));
            prop_assert!(ha.is_subset(&hull(m, &b).unwrap()));
            prop_assert_eq!(hull(m, &ha).unwrap(), ha.clone());
            let k = kernel(m, &a).unwrap();
            prop_assert!(k.is_subset(&a));
        }
    }

    #[test]
    fn closure_and_interior_are_extremal(a in set()) {
        for m in &EXACT {
            let c = g_closure(m, &a).unwrap().set;
            prop_assert!(a.is_subset(&c) && is_g_closed(m, &c).unwrap());
            let i = g_interior(m, &a).unwrap().set;
            prop_assert!(i.is_subset(&a) && is_g_open(m, &i).unwrap());
            prop_assert_eq!(g_interior(m, &a.complement()).unwrap().set, c.complement());
        }
    }

    // A regular method extends the ordinary limit, so its hull contains the
    // ordinary closure.
    #[test]
    fn regular_hulls_contain_the_closure(a in set()) {
        for m in &EXACT {
            prop_assert!(a.closure().is_subset(&hull(m, &a).unwrap()));
        }
    }

    #[test]
    fn lim_connectedness_is_ordinary(a in set()) {
        prop_assume!(!a.is_empty());
        let r = is_g_connected(&MethodSpec::Lim, &a).unwrap();
        prop_assert_eq!(r.connected, a.is_connected_ordinary());
        if let Some((f, k)) = r.separation {
            prop_assert_eq!(f.union(&k), a);
            prop_assert!(f.intersect(&k).is_empty());
        }
    }

    #[test]
    fn set_text_round_trips(a in set()) {
        prop_assert_eq!(parse_set(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn sequence_text_round_trips(s in seq()) {
        prop_assume!(s.validate().is_ok());
        prop_assert_eq!(parse_seq(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn normalize_preserves_terms(s in seq()) {
        prop_assume!(s.validate().is_ok());
        let n = s.normalize();
        for i in 1..=300 {
            prop_assert_eq!(n.eval(i), s.eval(i));
        }
    }

    #[test]
    fn summation_methods_are_additive(x in seq(), y in seq(), g in rat()) {
        prop_assume!(x.validate().is_ok() && y.validate().is_ok());
        for m in [MethodSpec::Cesaro, MethodSpec::Statistical] {
            let (gx, gy) = (m.g_limit(&x), m.g_limit(&y));
            if let Some(v) = gx.value() {
                prop_assert_eq!(m.g_limit(&x.translate(&g)).value().cloned(), Some(v + &g));
                prop_assert_eq!(m.g_limit(&x.negate()).value().cloned(), Some(-v.clone()));
            }
            if let (Some(a), Some(b), Ok(sum)) = (gx.value(), gy.value(), x.add(&y)) {
                prop_assert_eq!(m.g_limit(&sum).value().cloned(), Some(a + b));
            }
        }
    }

    #[test]
    fn ap_density_times_step_is_one(a in 1u64..=50, d in 1u64..=50) {
        prop_assert_eq!(IndexFamily::ap(a, d).natural_density() * Rat::int(d as i64), Rat::one());
    }

    #[test]
    fn symmetrize_is_a_fixed_point(u in set(), r in 1i64..=8) {
        let u = u.union(&RSet::open(Rat::new(-1, r), Rat::new(1, r)));
        let v = symmetrize(&u).unwrap();
        prop_assert_eq!(v.negate(), v.clone());
        prop_assert!(v.is_subset(&u));
        prop_assert_eq!(symmetrize(&v).unwrap(), v);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn closure_gap_is_at_most_one_over_k(a in bounded_set(), k in 1usize..=64) {
        let base = NeighborhoodBase::default_base(k).unwrap();
        let r = closure_via_base(&MethodSpec::Lim, &a, &base).unwrap();
        prop_assert!(r.passed, "{}", r);
    }
}
