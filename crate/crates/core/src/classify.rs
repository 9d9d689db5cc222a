//! Legendrian classification for unknots, torus knots and the figure-eight
//! knot. All three are Legendrian simple, so a class is pinned down by
//! `(knot, tb, rot)` and the realizable pairs form a union of stabilization
//! cones hanging below finitely many peaks.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

use crate::front::Sign;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("unknown knot {0:?}; expected `unknot`, `torus:p,q` or `fig8`")]
    InvalidKnot(String),
    #[error("torus:{p},{q} is the unknot; write `unknot` instead")]
    TrivialTorus { p: i64, q: i64 },
    #[error("torus:{p},{q} is a link, not a knot (gcd > 1)")]
    NotCoprime { p: i64, q: i64 },
    #[error("(tb, rot) = ({tb}, {rot}) is not realized by {knot}")]
    Unrealizable { knot: KnotType, tb: i64, rot: i64 },
    #[error("peaks ({a_tb}, {a_rot}) and ({b_tb}, {b_rot}) are not adjacent peaks")]
    NotAdjacent {
        a_tb: i64,
        a_rot: i64,
        b_tb: i64,
        b_rot: i64,
    },
    #[error("{0}")]
    Unsupported(String),
}

/// Torus knots are kept in the windows `p > q > 1` (positive) and
/// `p < 0 < q < |p|` (negative).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KnotType {
    Unknot,
    Torus { p: i64, q: i64 },
    FigureEight,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LegendrianClass {
    knot: KnotType,
    tb: i64,
    rot: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Peak {
    pub tb: i64,
    pub rot: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Isotopy {
    Isotopic,
    Distinct,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MountainRange {
    pub knot: KnotType,
    pub depth: u32,
    pub pairs: BTreeSet<(i64, i64)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    /// `-chi` of a minimal Seifert surface.
    pub bennequin: i64,
    /// The Kauffman-polynomial bound for negative torus knots; `None` for
    /// positive ones.
    pub fuchs_tabachnikov: Option<i64>,
    pub max_tb: i64,
    /// `max_tb` lies strictly below every available bound.
    pub strict: bool,
}

impl KnotType {
    /// Canonical torus knot `T(p, q)`, using `T(p,q) = T(q,p) = T(-p,-q)`.
    pub fn torus(p: i64, q: i64) -> Result<KnotType, ClassifyError> {
        if p == 0 || q == 0 {
            return Err(ClassifyError::InvalidKnot(format!("torus:{p},{q}")));
        }
        if p.gcd(&q) != 1 {
            return Err(ClassifyError::NotCoprime { p, q });
        }
        let (p, q) = if q < 0 { (-p, -q) } else { (p, q) };
        let (big, small) = (p.abs().max(q), p.abs().min(q));
        if small == 1 {
            return Err(ClassifyError::TrivialTorus { p, q });
        }
        Ok(if p > 0 {
            KnotType::Torus { p: big, q: small }
        } else {
            KnotType::Torus { p: -big, q: small }
        })
    }

    pub fn is_negative_torus(&self) -> bool {
        matches!(self, KnotType::Torus { p, .. } if *p < 0)
    }
}

impl fmt::Display for KnotType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotType::Unknot => write!(f, "unknot"),
            KnotType::Torus { p, q } => write!(f, "torus:{p},{q}"),
            KnotType::FigureEight => write!(f, "fig8"),
        }
    }
}

impl FromStr for KnotType {
    type Err = ClassifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let invalid = || ClassifyError::InvalidKnot(s.to_string());
        match s.trim() {
            "unknot" => Ok(KnotType::Unknot),
            "fig8" => Ok(KnotType::FigureEight),
            other => {
                let rest = other.strip_prefix("torus:").ok_or_else(invalid)?;
                let (p, q) = rest.split_once(',').ok_or_else(invalid)?;
                let p = p.trim().parse().map_err(|_| invalid())?;
                let q = q.trim().parse().map_err(|_| invalid())?;
                KnotType::torus(p, q)
            }
        }
    }
}

impl LegendrianClass {
    pub fn new(knot: KnotType, tb: i64, rot: i64) -> Result<Self, ClassifyError> {
        if realizable(knot, tb, rot) {
            Ok(LegendrianClass { knot, tb, rot })
        } else {
            Err(ClassifyError::Unrealizable { knot, tb, rot })
        }
    }

    pub fn knot(&self) -> KnotType {
        self.knot
    }

    pub fn tb(&self) -> i64 {
        self.tb
    }

    pub fn rot(&self) -> i64 {
        self.rot
    }
}

impl fmt::Display for LegendrianClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} tb={} rot={}", self.knot, self.tb, self.rot)
    }
}

/// Euler characteristic of a minimal-genus Seifert surface.
pub fn euler_char(k: KnotType) -> i64 {
    match k {
        KnotType::Unknot => 1,
        KnotType::Torus { p, q } => p.abs() + q.abs() - (p * q).abs(),
        KnotType::FigureEight => -1,
    }
}

pub fn max_tb(k: KnotType) -> i64 {
    match k {
        KnotType::Unknot => -1,
        KnotType::Torus { p, q } if p > 0 => p * q - p - q,
        KnotType::Torus { p, q } => p * q,
        KnotType::FigureEight => -3,
    }
}

/// Rotation numbers at maximal `tb`. For a negative torus knot these are
/// `+-(|p| - q - 2qk)` for `0 <= k < (|p| - q)/q`; otherwise just `0`.
pub fn peak_rotations(k: KnotType) -> BTreeSet<i64> {
    match k {
        KnotType::Torus { p, q } if p < 0 => {
            let a = p.abs() - q;
            // k < a/q  <=>  k*q < a
            (0..)
                .take_while(|k| k * q < a)
                .flat_map(|k| [a - 2 * q * k, -(a - 2 * q * k)])
                .collect()
        }
        _ => BTreeSet::from([0]),
    }
}

pub fn peaks(k: KnotType) -> Vec<Peak> {
    let tb = max_tb(k);
    peak_rotations(k)
        .into_iter()
        .map(|rot| Peak { tb, rot })
        .collect()
}

fn in_cone(peak: Peak, tb: i64, rot: i64) -> bool {
    let depth = peak.tb - tb;
    depth >= 0 && (rot - peak.rot).abs() <= depth && (rot - peak.rot - depth) % 2 == 0
}

/// `(tb, rot)` is reached from some peak by stabilizations.
pub fn realizable(k: KnotType, tb: i64, rot: i64) -> bool {
    peaks(k).into_iter().any(|peak| in_cone(peak, tb, rot))
}

/// `tb + |rot| <= -chi`, the Bennequin inequality.
pub fn satisfies_bennequin(k: KnotType, tb: i64, rot: i64) -> bool {
    tb + rot.abs() <= -euler_char(k)
}

pub fn decide_isotopy(a: &LegendrianClass, b: &LegendrianClass) -> Isotopy {
    if a == b {
        Isotopy::Isotopic
    } else {
        Isotopy::Distinct
    }
}

pub fn stabilize_class(c: &LegendrianClass, sign: Sign) -> LegendrianClass {
    let rot = match sign {
        Sign::Plus => c.rot + 1,
        Sign::Minus => c.rot - 1,
    };
    LegendrianClass {
        knot: c.knot,
        tb: c.tb - 1,
        rot,
    }
}

pub fn mountain_range(k: KnotType, depth: u32) -> MountainRange {
    let top = max_tb(k);
    let rots = peak_rotations(k);
    let (lo, hi) = (*rots.first().unwrap(), *rots.last().unwrap());
    let mut pairs = BTreeSet::new();
    for d in 0..=i64::from(depth) {
        let tb = top - d;
        for rot in lo - d..=hi + d {
            if realizable(k, tb, rot) {
                pairs.insert((tb, rot));
            }
        }
    }
    MountainRange { knot: k, depth, pairs }
}

impl MountainRange {
    /// Pairs ordered by rotation ascending, then `tb` descending.
    pub fn ordered(&self) -> Vec<(i64, i64)> {
        let mut v: Vec<_> = self.pairs.iter().copied().collect();
        v.sort_by_key(|&(tb, rot)| (rot, -tb));
        v
    }
}

/// The valley between two neighbouring peaks of a negative torus knot: the
/// highest class both peaks stabilize to. Writing `|p| = mq + e`, the gap
/// between neighbouring peak rotations is `2e` or `2(q - e)`.
pub fn common_destabilization(k: KnotType, a: Peak, b: Peak) -> Result<(i64, i64), ClassifyError> {
    let KnotType::Torus { p, q } = k else {
        return Err(ClassifyError::Unsupported(format!("{k} has a single peak")));
    };
    if p > 0 {
        return Err(ClassifyError::Unsupported(format!("{k} has a single peak")));
    }
    let not_adjacent = || ClassifyError::NotAdjacent {
        a_tb: a.tb,
        a_rot: a.rot,
        b_tb: b.tb,
        b_rot: b.rot,
    };
    let rots = peak_rotations(k);
    let top = max_tb(k);
    if a.tb != top || b.tb != top || !rots.contains(&a.rot) || !rots.contains(&b.rot) || a == b {
        return Err(not_adjacent());
    }
    let (lo, hi) = (a.rot.min(b.rot), a.rot.max(b.rot));
    if rots.range(lo + 1..hi).next().is_some() {
        return Err(not_adjacent());
    }
    let gap = hi - lo;
    let e = p.abs() % q;
    debug_assert!(gap == 2 * e || gap == 2 * (q - e));
    Ok((top - gap / 2, lo + gap / 2))
}

pub fn bounds_report(k: KnotType) -> Result<BoundsReport, ClassifyError> {
    let KnotType::Torus { p, q } = k else {
        return Err(ClassifyError::Unsupported(format!(
            "bounds are only tabulated for torus knots, not {k}"
        )));
    };
    let bennequin = -euler_char(k);
    let max = max_tb(k);
    let fuchs_tabachnikov = (p < 0).then(|| {
        let a = p.abs();
        if q % 2 == 0 {
            -a * q
        } else {
            -a * q + a - q
        }
    });
    let strict = max < bennequin && fuchs_tabachnikov.is_none_or(|ft| max < ft);
    Ok(BoundsReport {
        bennequin,
        fuchs_tabachnikov,
        max_tb: max,
        strict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(p: i64, q: i64) -> KnotType {
        KnotType::torus(p, q).unwrap()
    }

    #[test]
    fn canonical_torus() {
        assert_eq!(t(2, 3), KnotType::Torus { p: 3, q: 2 });
        assert_eq!(t(-3, -2), KnotType::Torus { p: 3, q: 2 });
        assert_eq!(t(3, -7), KnotType::Torus { p: -7, q: 3 });
        assert_eq!(t(-2, 5), KnotType::Torus { p: -5, q: 2 });
        assert_eq!(t(2, -5), KnotType::Torus { p: -5, q: 2 });
        assert!(matches!(KnotType::torus(5, 1), Err(ClassifyError::TrivialTorus { .. })));
        assert!(matches!(KnotType::torus(4, 2), Err(ClassifyError::NotCoprime { .. })));
        assert!(KnotType::torus(0, 3).is_err());
        let msg = KnotType::torus(-4, 1).unwrap_err().to_string();
        assert!(msg.contains("unknot"));
    }

    #[test]
    fn knot_strings() {
        for s in ["unknot", "fig8", "torus:-7,3", "torus:3,2"] {
            assert_eq!(s.parse::<KnotType>().unwrap().to_string(), s);
        }
        assert_eq!("torus:2,3".parse::<KnotType>().unwrap(), t(3, 2));
        assert!("torus:3".parse::<KnotType>().is_err());
        assert!("trefoil".parse::<KnotType>().is_err());
    }

    #[test]
    fn basic_values() {
        assert_eq!(euler_char(t(3, 2)), -1);
        assert_eq!(euler_char(KnotType::Unknot), 1);
        assert_eq!(euler_char(KnotType::FigureEight), -1);
        assert_eq!(max_tb(t(3, 2)), 1);
        assert_eq!(max_tb(t(-7, 3)), -21);
        assert_eq!(max_tb(KnotType::FigureEight), -3);
        assert_eq!(peak_rotations(t(-7, 3)), BTreeSet::from([-4, -2, 2, 4]));
        assert_eq!(peak_rotations(t(-3, 2)), BTreeSet::from([-1, 1]));
        assert_eq!(peak_rotations(t(5, 2)), BTreeSet::from([0]));
    }

    #[test]
    fn realizability() {
        assert!(realizable(t(-7, 3), -22, 3));
        assert!(!realizable(KnotType::FigureEight, -4, 0));
        assert!(realizable(KnotType::Unknot, -3, 2));
        assert!(!realizable(KnotType::Unknot, -3, 4));
        assert!(!realizable(t(-7, 3), -21, 0));
        assert!(LegendrianClass::new(t(3, 2), 2, 1).is_err());
    }

    #[test]
    fn isotopy_and_stabilization() {
        let c = |k, tb, r| LegendrianClass::new(k, tb, r).unwrap();
        let a = c(t(-7, 3), -22, 3);
        assert_eq!(decide_isotopy(&a, &a), Isotopy::Isotopic);
        assert_eq!(
            decide_isotopy(&c(t(-7, 3), -21, 2), &c(t(-7, 3), -21, 4)),
            Isotopy::Distinct
        );
        assert_eq!(
            decide_isotopy(&c(t(3, 2), 1, 0), &c(KnotType::Unknot, -1, 0)),
            Isotopy::Distinct
        );
        assert_eq!(stabilize_class(&c(t(-7, 3), -21, 4), Sign::Minus), a);
        let u = stabilize_class(&c(KnotType::Unknot, -1, 0), Sign::Plus);
        assert_eq!((u.tb(), u.rot()), (-2, 1));
    }

    #[test]
    fn ranges() {
        let r = mountain_range(KnotType::Unknot, 2);
        let want = BTreeSet::from([(-1, 0), (-2, -1), (-2, 1), (-3, 0), (-3, -2), (-3, 2)]);
        assert_eq!(r.pairs, want);
        assert_eq!(mountain_range(KnotType::FigureEight, 0).pairs, BTreeSet::from([(-3, 0)]));
        let n = mountain_range(t(-7, 3), 2);
        for pair in [(-21, 2), (-21, -4), (-22, 1), (-22, -3), (-22, 5), (-23, 0)] {
            assert!(n.pairs.contains(&pair), "{pair:?}");
        }
        assert_eq!(r.ordered()[0], (-3, -2));
    }

    #[test]
    fn valleys() {
        let p = |tb, rot| Peak { tb, rot };
        assert_eq!(common_destabilization(t(-7, 3), p(-21, 4), p(-21, 2)), Ok((-22, 3)));
        assert_eq!(common_destabilization(t(-7, 3), p(-21, 2), p(-21, -2)), Ok((-23, 0)));
        assert_eq!(common_destabilization(t(-5, 2), p(-10, 3), p(-10, 1)), Ok((-11, 2)));
        assert!(matches!(
            common_destabilization(t(-7, 3), p(-21, 4), p(-21, -2)),
            Err(ClassifyError::NotAdjacent { .. })
        ));
        assert!(common_destabilization(t(-7, 3), p(-21, 4), p(-21, 4)).is_err());
        assert!(common_destabilization(t(3, 2), p(1, 0), p(1, 0)).is_err());
    }

    #[test]
    fn valleys_match_cone_scan() {
        for ap in 3..=11i64 {
            for q in 2..=5 {
                let Ok(k) = KnotType::torus(-ap, q) else { continue };
                let ps = peaks(k);
                for w in ps.windows(2) {
                    let (tb, rot) = common_destabilization(k, w[0], w[1]).unwrap();
                    // first level where the two cones meet, by direct scan
                    let first = (0..)
                        .map(|d| w[0].tb - d)
                        .find_map(|tb| {
                            (w[0].rot - 40..=w[1].rot + 40)
                                .find(|&r| in_cone(w[0], tb, r) && in_cone(w[1], tb, r))
                                .map(|r| (tb, r))
                        })
                        .unwrap();
                    assert_eq!((tb, rot), first, "{k}");
                }
            }
        }
    }

    #[test]
    fn caption_formula_cross_check() {
        // peaks as q(n2 - n1) - e with n1 + n2 = m - 1, |p| = mq + e
        for ap in 3..=15i64 {
            for q in 2..ap {
                let Ok(k) = KnotType::torus(-ap, q) else { continue };
                let (m, e) = (ap / q, ap % q);
                let caption: BTreeSet<i64> = (0..m)
                    .flat_map(|n1| {
                        let r = q * ((m - 1 - n1) - n1) - e;
                        [r, -r]
                    })
                    .collect();
                assert_eq!(caption, peak_rotations(k), "{k}");
            }
        }
    }

    #[test]
    fn bounds() {
        let b = bounds_report(t(-5, 3)).unwrap();
        assert_eq!((b.bennequin, b.fuchs_tabachnikov, b.max_tb), (7, Some(-13), -15));
        assert!(b.strict);
        let b = bounds_report(t(3, 2)).unwrap();
        assert_eq!((b.bennequin, b.max_tb, b.strict), (1, 1, false));
        let b = bounds_report(t(-4, 3)).unwrap();
        assert!(b.fuchs_tabachnikov.unwrap() > b.max_tb);
        assert!(bounds_report(KnotType::FigureEight).is_err());
    }
}
