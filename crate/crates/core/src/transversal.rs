//! Transversal knots through their Legendrian approximations.
//!
//! The knot types handled here are stably simple, so a transversal class is
//! determined by its knot type and self-linking number, and the realizable
//! self-linking numbers are exactly the values `tb + rot` over the
//! Legendrian mountain range: every odd integer up to the maximum.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

use crate::classify::{peaks, Isotopy, KnotType, LegendrianClass};
use crate::front::Sign;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransversalError {
    #[error("self-linking number {sl} is not realized by {knot} (must be odd and at most {max})")]
    Unrealizable { knot: KnotType, sl: i64, max: i64 },
    #[error("invalid cable ({p},{q}): need gcd(|p|, q) = 1 and 0 < q < |p|")]
    InvalidCable { p: i64, q: i64 },
    #[error("empty cabling list")]
    EmptyCabling,
    #[error("cannot parse cabling list {0:?}; expected `p1,q1;p2,q2;...`")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TransversalClass {
    knot: KnotType,
    sl: i64,
}

/// An iterated cable of the unknot: cable `(p1,q1)` first, then `(p2,q2)` of
/// the result, and so on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CablingList(Vec<(i64, i64)>);

impl TransversalClass {
    pub fn new(knot: KnotType, sl: i64) -> Result<Self, TransversalError> {
        let max = max_sl(knot);
        if sl.is_odd() && sl <= max {
            Ok(TransversalClass { knot, sl })
        } else {
            Err(TransversalError::Unrealizable { knot, sl, max })
        }
    }

    pub fn knot(&self) -> KnotType {
        self.knot
    }

    pub fn sl(&self) -> i64 {
        self.sl
    }
}

/// Self-linking number of the positive or negative transverse push-off.
pub fn push_off_sl(c: &LegendrianClass, sign: Sign) -> i64 {
    match sign {
        Sign::Plus => c.tb() + c.rot(),
        Sign::Minus => c.tb() - c.rot(),
    }
}

/// `tb + rot`, unchanged by positive stabilization.
pub fn stable_invariant(c: &LegendrianClass) -> i64 {
    c.tb() + c.rot()
}

pub fn max_sl(k: KnotType) -> i64 {
    match k {
        KnotType::Unknot => -1,
        KnotType::Torus { p, q } if p > 0 => p * q - p - q,
        KnotType::Torus { p, q } => p * q + p.abs() - q,
        KnotType::FigureEight => -3,
    }
}

/// Largest `tb + rot` over the peaks, computed from the Legendrian side.
pub fn max_sl_from_peaks(k: KnotType) -> i64 {
    peaks(k)
        .into_iter()
        .map(|p| p.tb + p.rot)
        .max()
        .expect("every knot type has a peak")
}

pub fn decide_transversal(a: &TransversalClass, b: &TransversalClass) -> Isotopy {
    if a == b {
        Isotopy::Isotopic
    } else {
        Isotopy::Distinct
    }
}

impl CablingList {
    pub fn new(cables: Vec<(i64, i64)>) -> Result<Self, TransversalError> {
        if cables.is_empty() {
            return Err(TransversalError::EmptyCabling);
        }
        for &(p, q) in &cables {
            if !(0 < q && q < p.abs()) || p.abs().gcd(&q) != 1 {
                return Err(TransversalError::InvalidCable { p, q });
            }
        }
        Ok(CablingList(cables))
    }

    pub fn cables(&self) -> &[(i64, i64)] {
        &self.0
    }
}

impl FromStr for CablingList {
    type Err = TransversalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse_err = || TransversalError::Parse(s.to_string());
        let cables = s
            .split(';')
            .filter(|c| !c.trim().is_empty())
            .map(|c| {
                let (p, q) = c.split_once(',').ok_or_else(parse_err)?;
                Ok((
                    p.trim().parse().map_err(|_| parse_err())?,
                    q.trim().parse().map_err(|_| parse_err())?,
                ))
            })
            .collect::<Result<Vec<_>, _>>()?;
        CablingList::new(cables)
    }
}

impl fmt::Display for CablingList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(p, q)| format!("{p},{q}")).collect();
        write!(f, "{}", parts.join(";"))
    }
}

/// Maximal self-linking number of an iterated cable:
/// `a1 = (q1 - 1) p1`, `a_i = (q_i - 1) p_i - a_{i-1} q_i^2`,
/// `b = q1 ... qn`, result `a_n - b`.
pub fn iterated_max_sl(cables: &CablingList) -> i64 {
    let mut a = 0i64;
    let mut b = 1i64;
    for (i, &(p, q)) in cables.0.iter().enumerate() {
        a = if i == 0 {
            (q - 1) * p
        } else {
            (q - 1) * p - a * q * q
        };
        b *= q;
    }
    a - b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(p: i64, q: i64) -> KnotType {
        KnotType::torus(p, q).unwrap()
    }

    #[test]
    fn push_offs() {
        let c = LegendrianClass::new(t(-3, 2), -6, 1).unwrap();
        assert_eq!(push_off_sl(&c, Sign::Plus), -5);
        assert_eq!(push_off_sl(&c, Sign::Plus) - push_off_sl(&c, Sign::Minus), 2);
        let u = LegendrianClass::new(KnotType::Unknot, -1, 0).unwrap();
        assert_eq!(push_off_sl(&u, Sign::Plus), -1);
        assert_eq!(push_off_sl(&u, Sign::Minus), -1);
        let p = LegendrianClass::new(t(3, 2), 1, 0).unwrap();
        assert_eq!(stable_invariant(&p), 1);
    }

    #[test]
    fn maxima() {
        assert_eq!(max_sl(t(-7, 3)), -17);
        assert_eq!(max_sl(KnotType::FigureEight), -3);
        assert_eq!(max_sl(KnotType::Unknot), -1);
        for k in [t(-7, 3), t(5, 2), t(-11, 4), KnotType::Unknot, KnotType::FigureEight] {
            assert_eq!(max_sl(k), max_sl_from_peaks(k));
        }
    }

    #[test]
    fn decisions() {
        let c = |k, sl| TransversalClass::new(k, sl).unwrap();
        assert_eq!(decide_transversal(&c(t(3, 2), -1), &c(t(3, 2), -1)), Isotopy::Isotopic);
        let f = KnotType::FigureEight;
        assert_eq!(decide_transversal(&c(f, -3), &c(f, -5)), Isotopy::Distinct);
        assert!(matches!(
            TransversalClass::new(t(3, 2), 3),
            Err(TransversalError::Unrealizable { max: 1, .. })
        ));
        assert!(TransversalClass::new(t(3, 2), -2).is_err());
    }

    #[test]
    fn cables() {
        let l = |s: &str| iterated_max_sl(&s.parse().unwrap());
        assert_eq!(l("3,2"), 1);
        assert_eq!(l("-3,2"), -5);
        assert_eq!(l("3,2;5,2"), -11);
        assert_eq!("3,2;5,2".parse::<CablingList>().unwrap().to_string(), "3,2;5,2");
        assert!(matches!(
            "3,2;4,2".parse::<CablingList>(),
            Err(TransversalError::InvalidCable { p: 4, q: 2 })
        ));
        assert!(matches!("2,3".parse::<CablingList>(), Err(TransversalError::InvalidCable { .. })));
        assert!(matches!("".parse::<CablingList>(), Err(TransversalError::EmptyCabling)));
        assert!(matches!("3;2".parse::<CablingList>(), Err(TransversalError::Parse(_))));
    }
}
