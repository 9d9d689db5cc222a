//! Exact slope arithmetic on the torus: reduced extended rationals, the
//! Farey tessellation, negative continued fractions and the action of the
//! figure-eight monodromy `[[2, 1], [1, 1]]`.
//!
//! A slope `y/x` is the slope of the integral vector `(x, y)`. With this
//! convention the monodromy sends `inf -> 1`, `0 -> 1/2` and `1/2 -> 3/5`.
//! Everything here is exact; the irrational fixed slope of the monodromy is
//! only ever compared against through the sign of `s^2 + s - 1`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::Signed;
use thiserror::Error;

/// Integer types the lattice code runs over (`i64`, `i128`, `BigInt`, ...).
pub trait Int: Integer + Signed + Clone + fmt::Debug + fmt::Display + Hash {}

impl<T> Int for T where T: Integer + Signed + Clone + fmt::Debug + fmt::Display + Hash {}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("0/0 does not name a slope")]
    InvalidSlope,
    #[error("an edge needs two distinct slopes, got {0} twice")]
    DegenerateEdge(String),
    #[error("{0} and {1} are not joined by an edge of the Farey tessellation")]
    NotAnEdge(String, String),
    #[error("continued fraction of -p/q needs coprime p > q > 0, got p={0}, q={1}")]
    InvalidFraction(String, String),
    #[error("cannot parse slope {0:?}")]
    Parse(String),
}

/// A reduced slope `num/den`. `den == 0` is the single point at infinity,
/// stored as `1/0`; otherwise `den > 0` and the sign lives on `num`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Slope<T = i64> {
    num: T,
    den: T,
}

/// An integral vector `(x, y)` in the homology lattice of the torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntegralVector<T = i64> {
    pub x: T,
    pub y: T,
}

/// Which side of the attracting fixed slope of the monodromy a rational
/// slope lies on. `Below < Above`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FixedPointSide {
    Below,
    Above,
}

impl<T: Int> Slope<T> {
    /// Reduces `num/den`; any `k/0` with `k != 0` becomes infinity.
    pub fn new(num: T, den: T) -> Result<Self, LatticeError> {
        if num.is_zero() && den.is_zero() {
            return Err(LatticeError::InvalidSlope);
        }
        if den.is_zero() {
            return Ok(Self::infinity());
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / g.clone(), den / g);
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        Ok(Slope { num, den })
    }

    pub fn infinity() -> Self {
        Slope {
            num: T::one(),
            den: T::zero(),
        }
    }

    pub fn integer(n: T) -> Self {
        Slope {
            num: n,
            den: T::one(),
        }
    }

    pub fn num(&self) -> &T {
        &self.num
    }

    pub fn den(&self) -> &T {
        &self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    /// Canonical primitive vector `(den, num)`; infinity is `(0, 1)`.
    pub fn vector(&self) -> IntegralVector<T> {
        IntegralVector {
            x: self.den.clone(),
            y: self.num.clone(),
        }
    }

    /// Slope `y/x` of a nonzero vector.
    pub fn from_vector(v: &IntegralVector<T>) -> Result<Self, LatticeError> {
        Self::new(v.y.clone(), v.x.clone())
    }
}

impl<T: Int> IntegralVector<T> {
    pub fn new(x: T, y: T) -> Self {
        IntegralVector { x, y }
    }

    pub fn is_primitive(&self) -> bool {
        self.x.gcd(&self.y).is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        IntegralVector::new(self.x.clone() + other.x.clone(), self.y.clone() + other.y.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        IntegralVector::new(self.x.clone() - other.x.clone(), self.y.clone() - other.y.clone())
    }

    pub fn neg(&self) -> Self {
        IntegralVector::new(-self.x.clone(), -self.y.clone())
    }
}

impl<T: Int> Ord for Slope<T> {
    /// Real-line order with infinity above every finite slope.
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => (self.num.clone() * other.den.clone())
                .cmp(&(other.num.clone() * self.den.clone())),
        }
    }
}

impl<T: Int> PartialOrd for Slope<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Int> fmt::Display for Slope<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl<T: Int + FromStr> FromStr for Slope<T> {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "inf" {
            return Ok(Self::infinity());
        }
        let parse = |t: &str| t.trim().parse::<T>().map_err(|_| LatticeError::Parse(s.to_string()));
        match s.split_once('/') {
            Some((n, d)) => Self::new(parse(n)?, parse(d)?),
            None => Ok(Self::integer(parse(s)?)),
        }
    }
}

impl<T: Int> fmt::Display for IntegralVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Canonical reduced slope; `(k, 0)` maps to infinity.
pub fn reduce_slope<T: Int>(num: T, den: T) -> Result<Slope<T>, LatticeError> {
    Slope::new(num, den)
}

/// `u.x * v.y - u.y * v.x`. For primitive classes its absolute value is the
/// geometric intersection number of the two curves.
pub fn farey_det<T: Int>(u: &IntegralVector<T>, v: &IntegralVector<T>) -> T {
    u.x.clone() * v.y.clone() - u.y.clone() * v.x.clone()
}

pub fn is_farey_edge<T: Int>(s: &Slope<T>, t: &Slope<T>) -> Result<bool, LatticeError> {
    if s == t {
        return Err(LatticeError::DegenerateEdge(s.to_string()));
    }
    Ok(farey_det(&s.vector(), &t.vector()).abs().is_one())
}

fn require_edge<T: Int>(s: &Slope<T>, t: &Slope<T>) -> Result<(), LatticeError> {
    if is_farey_edge(s, t)? {
        Ok(())
    } else {
        Err(LatticeError::NotAnEdge(s.to_string(), t.to_string()))
    }
}

/// `(a + c)/(b + d)` on the canonical representatives.
pub fn mediant<T: Int>(s: &Slope<T>, t: &Slope<T>) -> Result<Slope<T>, LatticeError> {
    require_edge(s, t)?;
    Slope::from_vector(&s.vector().add(&t.vector()))
}

/// The two slopes completing the edge `(s, t)` to a Farey triangle:
/// the mediant first, the difference class second.
pub fn triangle_completions<T: Int>(
    s: &Slope<T>,
    t: &Slope<T>,
) -> Result<(Slope<T>, Slope<T>), LatticeError> {
    require_edge(s, t)?;
    let (u, v) = (s.vector(), t.vector());
    Ok((Slope::from_vector(&u.add(&v))?, Slope::from_vector(&u.sub(&v))?))
}

/// Negative continued fraction `[r0, ..., rk]` of `-p/q`, every entry `<= -2`:
/// `-p/q = r0 - 1/(r1 - 1/(... - 1/rk))`.
pub fn neg_cf<T: Int>(p: T, q: T) -> Result<Vec<T>, LatticeError> {
    let invalid = || LatticeError::InvalidFraction(p.to_string(), q.to_string());
    if !(q.is_positive() && p > q) || !p.gcd(&q).is_one() {
        return Err(invalid());
    }
    let mut out = Vec::new();
    let (mut a, mut b) = (p.clone(), q.clone());
    while !b.is_zero() {
        let c = a.div_ceil(&b);
        out.push(-c.clone());
        let next = c * b.clone() - a;
        a = b;
        b = next;
    }
    // the recursion is trusted only after it reproduces -p/q
    if evaluate_neg_cf(&out) != Some(Slope::new(-p.clone(), q.clone())?) {
        return Err(invalid());
    }
    Ok(out)
}

/// Folds `r0 - 1/(r1 - 1/(... - 1/rk))`; `None` for an empty list or a
/// zero denominator on the way.
pub fn evaluate_neg_cf<T: Int>(entries: &[T]) -> Option<Slope<T>> {
    let (last, rest) = entries.split_last()?;
    let (mut num, mut den) = (last.clone(), T::one());
    for r in rest.iter().rev() {
        if num.is_zero() {
            return None;
        }
        // r - den/num
        let next_num = r.clone() * num.clone() - den;
        den = num;
        num = next_num;
    }
    Slope::new(num, den).ok()
}

/// The monodromy `Psi(x, y) = (2x + y, x + y)` of the punctured-torus fiber
/// of the figure-eight complement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Monodromy;

impl Monodromy {
    pub const MATRIX: [[i64; 2]; 2] = [[2, 1], [1, 1]];

    pub fn determinant() -> i64 {
        let m = Self::MATRIX;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    /// `Psi^k v`; negative `k` uses `Psi^-1(x, y) = (x - y, 2y - x)`.
    pub fn apply_vector<T: Int>(v: &IntegralVector<T>, k: i64) -> IntegralVector<T> {
        let mut out = v.clone();
        for _ in 0..k.unsigned_abs() {
            let (x, y) = (out.x.clone(), out.y.clone());
            out = if k > 0 {
                IntegralVector::new(x.clone() + x.clone() + y.clone(), x + y)
            } else {
                IntegralVector::new(x.clone() - y.clone(), y.clone() + y - x)
            };
        }
        out
    }
}

/// Slope of `Psi^k` applied to the primitive vector of `s`.
pub fn monodromy_apply<T: Int>(s: &Slope<T>, k: i64) -> Slope<T> {
    Slope::from_vector(&Monodromy::apply_vector(&s.vector(), k))
        .expect("Psi is invertible, so a primitive vector never maps to zero")
}

/// Position relative to the attracting fixed slope `(sqrt(5) - 1)/2`,
/// decided by the sign of `num^2 + num*den - den^2` on positive slopes.
/// Infinity is above, non-positive slopes are below.
pub fn cmp_fixed<T: Int>(s: &Slope<T>) -> FixedPointSide {
    if s.is_infinite() {
        return FixedPointSide::Above;
    }
    if !s.num.is_positive() {
        return FixedPointSide::Below;
    }
    let (n, d) = (s.num.clone(), s.den.clone());
    let value = n.clone() * n.clone() + n * d.clone() - d.clone() * d;
    if value.is_positive() {
        FixedPointSide::Above
    } else {
        FixedPointSide::Below
    }
}

/// Whether `s` lies in the slope interval `[s1, s0]`; when `s0 < s1` the
/// interval wraps through infinity: `[s1, inf] U [-inf, s0]`.
pub fn slope_in_range<T: Int>(s: &Slope<T>, s0: &Slope<T>, s1: &Slope<T>) -> bool {
    if s1 <= s0 {
        s1 <= s && s <= s0
    } else {
        s >= s1 || s <= s0
    }
}

/// Number of mediant steps needed to reach `s` from `0` and `inf` in the
/// full-circle tessellation: `0, inf` have depth 0, `1, -1` depth 1, and so
/// on. Equals the sum of the partial quotients of `|s|`.
pub fn farey_depth<T: Int>(s: &Slope<T>) -> T {
    if s.is_infinite() {
        return T::zero();
    }
    let (mut a, mut b) = (s.num.abs(), s.den.clone());
    let mut depth = T::zero();
    while !b.is_zero() {
        let (quot, rem) = a.div_rem(&b);
        depth = depth + quot;
        a = b;
        b = rem;
    }
    depth
}
