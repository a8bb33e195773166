//! G-connectedness by enumerating splits at component granularity.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::methods::{check_g_continuity, MethodSpec};
use crate::realsets::RSet;
use crate::sequence::PointMap;

use super::{g_closure, hull, is_relatively_g_closed};

/// Splits are enumerated exhaustively, so component counts are capped.
pub const MAX_COMPONENTS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectednessReport {
    pub connected: bool,
    /// `(F, K)` with `F ∪ K = A`, disjoint, nonempty, both relatively
    /// G-closed in `A`.
    pub separation: Option<(RSet, RSet)>,
    pub splits_examined: usize,
}

/// Splitting below component granularity is impossible when every G-closed
/// set is topologically closed: a relatively closed split of an interval
/// would disconnect it in the ordinary topology. Checked for each
/// component's hull rather than assumed.
fn assert_hulls_closed(m: &MethodSpec, components: &[RSet]) -> Result<()> {
    for c in components {
        let h = hull(m, c)?;
        if !h.is_closed() {
            return Err(Error::unsupported(format!(
                "hull of {c} under {m} is {h}, which is not topologically closed; component-level splitting would be unsound"
            )));
        }
    }
    Ok(())
}

pub fn is_g_connected(m: &MethodSpec, a: &RSet) -> Result<ConnectednessReport> {
    if a.is_empty() {
        return Err(Error::precondition("connectedness needs a nonempty set"));
    }
    let comps = a.components();
    let c = comps.len();
    if c > MAX_COMPONENTS {
        return Err(Error::precondition(format!(
            "{c} components exceed the split enumeration limit of {MAX_COMPONENTS}"
        )));
    }
    assert_hulls_closed(m, &comps)?;
    let mut examined = 0;
    // Assignments are words over {F < K} read by component index, in
    // lexicographic order; bit (c-1-j) of `code` puts component j in K.
    for code in 1..(1u32 << c) - 1 {
        examined += 1;
        let (mut f, mut k) = (RSet::empty(), RSet::empty());
        for (j, comp) in comps.iter().enumerate() {
            if code >> (c - 1 - j) & 1 == 1 {
                k = k.union(comp);
            } else {
                f = f.union(comp);
            }
        }
        if is_relatively_g_closed(m, &f, a)? && is_relatively_g_closed(m, &k, a)? {
            for side in [&f, &k] {
                let cl = g_closure(m, side)?.set;
                if !cl.is_closed() {
                    return Err(Error::unsupported(format!("G-closure {cl} is not topologically closed")));
                }
            }
            let sound = f.union(&k) == *a && f.intersect(&k).is_empty() && !f.is_empty() && !k.is_empty();
            if !sound {
                return Err(Error::Internal(format!("invalid separation {f} | {k} of {a}")));
            }
            return Ok(ConnectednessReport {
                connected: false,
                separation: Some((f, k)),
                splits_examined: examined,
            });
        }
    }
    Ok(ConnectednessReport {
        connected: true,
        separation: None,
        splits_examined: examined,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawCheck {
    pub law: String,
    /// Whether the law's hypotheses held on this input.
    pub applicable: bool,
    /// The conclusion held, or the law did not apply.
    pub holds: bool,
    pub detail: String,
}

/// A union of G-connected sets sharing a common point is G-connected.
pub fn union_with_common_point(m: &MethodSpec, family: &[RSet]) -> Result<LawCheck> {
    let law = "union of connected sets with a common point".to_string();
    let common = family.iter().fold(RSet::reals(), |acc, s| acc.intersect(s));
    let all_connected = family
        .iter()
        .map(|s| Ok(!s.is_empty() && is_g_connected(m, s)?.connected))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|b| b);
    if family.is_empty() || common.is_empty() || !all_connected {
        return Ok(LawCheck {
            law,
            applicable: false,
            holds: true,
            detail: "hypotheses not met".into(),
        });
    }
    let union = family.iter().fold(RSet::empty(), |acc, s| acc.union(s));
    let report = is_g_connected(m, &union)?;
    Ok(LawCheck {
        law,
        applicable: true,
        holds: report.connected,
        detail: format!("union {union} is {}", if report.connected { "connected" } else { "separated" }),
    })
}

/// A G-continuous image of a G-connected set is G-connected. The map's
/// G-continuity is checked on the standard corpus first.
pub fn continuous_image(m: &MethodSpec, map: &PointMap, a: &RSet) -> Result<LawCheck> {
    let law = "continuous image of a connected set".to_string();
    let continuous = check_g_continuity(m, map, &crate::corpus::standard_corpus()).holds;
    if a.is_empty() || !continuous || !is_g_connected(m, a)?.connected {
        return Ok(LawCheck {
            law,
            applicable: false,
            holds: true,
            detail: "hypotheses not met".into(),
        });
    }
    let image = map.image(a);
    let report = is_g_connected(m, &image)?;
    Ok(LawCheck {
        law,
        applicable: true,
        holds: report.connected,
        detail: format!("image {image} under x -> {map}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::Rat;

    fn i(n: i64) -> Rat {
        Rat::int(n)
    }

    #[test]
    fn connectedness_table() {
        let lim = MethodSpec::Lim;
        let ces = MethodSpec::Cesaro;
        let unit = RSet::closed(i(0), i(1));
        let two = unit.union(&RSet::closed(i(2), i(3)));
        assert!(is_g_connected(&lim, &unit).unwrap().connected);
        let r = is_g_connected(&lim, &two).unwrap();
        assert_eq!(r.separation, Some((unit.clone(), RSet::closed(i(2), i(3)))));
        assert!(is_g_connected(&ces, &unit).unwrap().connected);
        let r = is_g_connected(&ces, &RSet::points([i(0), i(1)])).unwrap();
        assert_eq!(r.separation, Some((RSet::point(i(0)), RSet::point(i(1)))));
        let r = is_g_connected(&ces, &two).unwrap();
        assert_eq!(r.separation, Some((unit, RSet::closed(i(2), i(3)))));
        assert!(is_g_connected(&lim, &RSet::empty()).is_err());
    }

    #[test]
    fn open_pieces_touching_in_closure_stay_connected_for_lim() {
        // (0,1) ∪ (1,2): the pieces are relatively closed in A, so the set
        // is separated, matching ordinary disconnectedness.
        let a = RSet::open(i(0), i(1)).union(&RSet::open(i(1), i(2)));
        assert!(!is_g_connected(&MethodSpec::Lim, &a).unwrap().connected);
        // Under Cesàro the hull of each piece reaches into the other.
        let a = RSet::closed(i(0), i(1)).union(&RSet::open(i(1), i(2)));
        assert!(is_g_connected(&MethodSpec::Cesaro, &a).unwrap().connected);
    }

    #[test]
    fn laws() {
        let lim = MethodSpec::Lim;
        let p = union_with_common_point(&lim, &[RSet::closed(i(0), i(1)), RSet::closed(i(1), i(2))]).unwrap();
        assert!(p.applicable && p.holds);
        let p = union_with_common_point(&lim, &[RSet::closed(i(0), i(1))]).unwrap();
        assert!(p.applicable && p.holds);
        let p = continuous_image(&lim, &PointMap::affine(i(2), i(1)), &RSet::closed(i(0), i(1))).unwrap();
        assert!(p.applicable && p.holds);
        assert!(p.detail.contains("[1,3]"));
    }
}
