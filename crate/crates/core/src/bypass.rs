//! Dividing curves on the punctured-torus fiber of the figure-eight knot
//! complement, and the bypass moves that reshape them.
//!
//! A configuration records which arc classes occur (slopes) and how many
//! parallel arcs each carries. Because the fiber can be pushed around the
//! complement by the monodromy `Psi`, configurations are only interesting up
//! to `Psi`. Every orbit has a canonical representative: all slopes in
//! `[0, inf]` and not all in `Psi([0, inf]) = [1/2, 1]`. Moves are worked out
//! on the canonical representative and transported back, so they commute
//! with `Psi` by construction.
//!
//! On canonical triangles the attracting slope `p = (sqrt5 - 1)/2` splits
//! the picture into three cases:
//!
//! - all slopes above `p`: the triangle lies in `[1, inf]` and climbs the
//!   Farey tree towards `{1, 2, inf}`, the tight terminal state;
//! - all slopes below `p`: the triangle lies in `[0, 1/2]` and climbs towards
//!   `{0, 1/3, 1/2}`, then crosses into the straddling case;
//! - straddling `p`: only `{0, 1, inf}` (terminal, overtwisted) and
//!   `{0, 1/2, 1}` occur.
//!
//! With more than three arcs the engine looks for a move that produces a
//! boundary-parallel dividing curve, which destabilizes the boundary knot.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::lattice::{
    cmp_fixed, farey_depth, is_farey_edge, monodromy_apply, FixedPointSide, IntegralVector,
    LatticeError,
};
use crate::Slope;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BypassError {
    #[error("slopes {0} do not span a Farey triangle")]
    NotATriangle(String),
    #[error("slopes {0} are not joined by a Farey edge")]
    NotAnEdge(String),
    #[error("parity: {0}")]
    ParityError(String),
    #[error("not a valid dividing configuration: {0}")]
    TaxonomyError(String),
    #[error("cannot parse configuration {0:?}")]
    Parse(String),
    #[error("move {0} is not legal here")]
    IllegalMove(String),
    #[error("no verdict after {steps} moves")]
    NonTermination { steps: usize },
    #[error("no legal move from {0}")]
    Stuck(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Dividing set on the punctured torus. Slopes are stored in increasing
/// order with their multiplicities alongside.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DividingConfig {
    /// `arcs` parallel arcs of one slope plus `closed` parallel closed curves.
    TypeI { slope: Slope, arcs: u32, closed: u32 },
    TypeII { slopes: [Slope; 2], mults: [u32; 2] },
    TypeIII { slopes: [Slope; 3], mults: [u32; 3] },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveTag {
    /// Replace the youngest slope by one below the others.
    FirstKind,
    /// Replace the youngest slope by one above the others.
    SecondKind,
    /// `{v1, v2, v1+v2} -> {v1, v1+v2, 2v1+v2}` across the fixed slope.
    CaseThreeA,
    /// `{v1, v2, v1+v2} -> {v1+v2, v2, v1+2v2}` across the fixed slope.
    CaseThreeB,
    /// Three arc classes merge into one.
    CollapseToI,
    /// One arc class splits into a Farey triangle.
    ExpandFromI,
    /// The bypass creates a boundary-parallel arc: two fewer arcs.
    Destabilize,
}

/// A bypass move, carrying its effect on slopes and the resulting
/// configuration (`None` when it destabilizes).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    pub tag: MoveTag,
    /// Slope of the curve along which the bypass is found.
    pub annulus_slope: Slope,
    pub removed: Vec<Slope>,
    pub added: Vec<Slope>,
    result: Option<DividingConfig>,
    tb_after: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MoveOutcome {
    Config(DividingConfig),
    DestabilizationFound { tb_after: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalizationOutcome {
    StandardTight { trace: Vec<Move> },
    Overtwisted { trace: Vec<Move> },
    Destabilizes { trace: Vec<Move>, steps: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Destabilizes { trace: Vec<Move>, steps: usize },
    NoneFoundWithinLimit { explored: usize },
}

/// The two terminal orbits of maximal-`tb` configurations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    StandardTight,
    Overtwisted,
}

impl fmt::Display for MoveTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn join(slopes: &[Slope]) -> String {
    if slopes.is_empty() {
        "-".to_string()
    } else {
        slopes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for Move {
    /// `tag removed→added`; a destabilization shows the new `tb`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tag {
            MoveTag::Destabilize => write!(
                f,
                "{} {}→tb={}",
                self.tag,
                join(&self.removed),
                self.tb_after
            ),
            _ => write!(f, "{} {}→{}", self.tag, join(&self.removed), join(&self.added)),
        }
    }
}

impl Move {
    /// The same move seen after applying `Psi^k` to everything.
    pub fn conjugate(&self, k: i64) -> Move {
        let map = |v: &[Slope]| v.iter().map(|s| monodromy_apply(s, k)).collect();
        Move {
            tag: self.tag,
            annulus_slope: monodromy_apply(&self.annulus_slope, k),
            removed: map(&self.removed),
            added: map(&self.added),
            result: self.result.as_ref().map(|c| monodromy_config(c, k)),
            tb_after: self.tb_after,
        }
    }

    pub fn is_destabilizing(&self) -> bool {
        self.tag == MoveTag::Destabilize
    }
}

impl DividingConfig {
    /// Builds and validates a configuration from arc classes and a number
    /// of closed curves.
    pub fn from_classes(mut classes: Vec<(Slope, u32)>, closed: u32) -> Result<Self, BypassError> {
        classes.sort();
        let slopes: Vec<Slope> = classes.iter().map(|c| c.0).collect();
        let listed = join(&slopes);
        if classes.is_empty() || classes.len() > 3 {
            return Err(BypassError::TaxonomyError(format!(
                "need one to three arc classes, got {}",
                classes.len()
            )));
        }
        if classes.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(BypassError::TaxonomyError(format!(
                "repeated arc slope in {listed}; parallel arcs share one class"
            )));
        }
        if classes.iter().any(|c| c.1 == 0) {
            return Err(BypassError::TaxonomyError("arc multiplicities must be positive".into()));
        }
        if closed > 0 && classes.len() > 1 {
            return Err(BypassError::TaxonomyError(
                "closed dividing curves only occur with a single arc class".into(),
            ));
        }
        match classes.len() {
            1 => {
                let (slope, arcs) = classes[0];
                if closed == 0 {
                    return Err(BypassError::TaxonomyError(
                        "a single arc class comes with parallel closed curves".into(),
                    ));
                }
                if arcs % 2 == 0 {
                    return Err(BypassError::ParityError(format!(
                        "a single arc class needs an odd number of arcs, got {arcs}"
                    )));
                }
                Ok(DividingConfig::TypeI {
                    slope,
                    arcs,
                    closed,
                })
            }
            2 => {
                if !is_farey_edge(&slopes[0], &slopes[1])? {
                    return Err(BypassError::NotAnEdge(listed));
                }
                if classes.iter().any(|c| c.1 % 2 == 1) {
                    return Err(BypassError::ParityError(
                        "two arc classes need even multiplicities".into(),
                    ));
                }
                Ok(DividingConfig::TypeII {
                    slopes: [slopes[0], slopes[1]],
                    mults: [classes[0].1, classes[1].1],
                })
            }
            _ => {
                for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                    if !is_farey_edge(&slopes[i], &slopes[j])? {
                        return Err(BypassError::NotATriangle(listed));
                    }
                }
                let parity = classes[0].1 % 2;
                if classes.iter().any(|c| c.1 % 2 != parity) {
                    return Err(BypassError::ParityError(
                        "three arc classes need multiplicities of one parity".into(),
                    ));
                }
                Ok(DividingConfig::TypeIII {
                    slopes: [slopes[0], slopes[1], slopes[2]],
                    mults: [classes[0].1, classes[1].1, classes[2].1],
                })
            }
        }
    }

    /// Arc classes with multiplicities, in increasing slope order.
    pub fn classes(&self) -> Vec<(Slope, u32)> {
        match self {
            DividingConfig::TypeI { slope, arcs, .. } => vec![(*slope, *arcs)],
            DividingConfig::TypeII { slopes, mults } => {
                slopes.iter().copied().zip(mults.iter().copied()).collect()
            }
            DividingConfig::TypeIII { slopes, mults } => {
                slopes.iter().copied().zip(mults.iter().copied()).collect()
            }
        }
    }

    pub fn slopes(&self) -> Vec<Slope> {
        self.classes().into_iter().map(|c| c.0).collect()
    }

    pub fn closed(&self) -> u32 {
        match self {
            DividingConfig::TypeI { closed, .. } => *closed,
            _ => 0,
        }
    }

    pub fn arc_count(&self) -> u32 {
        self.classes().iter().map(|c| c.1).sum()
    }

    /// Largest Farey depth among the slopes.
    pub fn depth(&self) -> i64 {
        self.slopes().iter().map(farey_depth).max().unwrap_or(0)
    }

    fn map_slopes(&self, f: impl Fn(&Slope) -> Slope) -> DividingConfig {
        let classes = self.classes().into_iter().map(|(s, m)| (f(&s), m)).collect();
        DividingConfig::from_classes(classes, self.closed())
            .expect("slope maps used here preserve the Farey structure")
    }
}

impl fmt::Display for DividingConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self {
            DividingConfig::TypeI { .. } => "I",
            DividingConfig::TypeII { .. } => "II",
            DividingConfig::TypeIII { .. } => "III",
        };
        let classes: Vec<String> = self
            .classes()
            .iter()
            .map(|(s, m)| format!("{s}x{m}"))
            .collect();
        write!(f, "{label}:{}", classes.join(","))?;
        if self.closed() > 0 {
            write!(f, "+{}c", self.closed())?;
        }
        Ok(())
    }
}

impl FromStr for DividingConfig {
    type Err = BypassError;

    /// `III:1,2,inf`, `III:1x1,2x1,infx1`, `II:1x2,infx2`, `I:infx5+1c`.
    /// Multiplicities default to 1.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse_err = || BypassError::Parse(s.to_string());
        let (label, body) = s.trim().split_once(':').ok_or_else(parse_err)?;
        let expected = match label.trim() {
            "I" => 1,
            "II" => 2,
            "III" => 3,
            _ => return Err(parse_err()),
        };
        let (arcs, closed) = match body.split_once('+') {
            Some((arcs, closed)) => {
                let n = closed.trim().strip_suffix('c').ok_or_else(parse_err)?;
                (arcs, n.trim().parse::<u32>().map_err(|_| parse_err())?)
            }
            None => (body, 0),
        };
        let classes = arcs
            .split(',')
            .map(|class| {
                let (slope, mult) = match class.split_once('x') {
                    Some((slope, mult)) => (slope, mult.trim().parse::<u32>().map_err(|_| parse_err())?),
                    None => (class, 1),
                };
                Ok((slope.parse::<Slope>()?, mult))
            })
            .collect::<Result<Vec<_>, BypassError>>()?;
        if classes.len() != expected {
            return Err(BypassError::TaxonomyError(format!(
                "type {label} has {expected} arc class(es), got {}",
                classes.len()
            )));
        }
        DividingConfig::from_classes(classes, closed)
    }
}

pub fn make_config(spec: &str) -> Result<DividingConfig, BypassError> {
    spec.parse()
}

/// `tb` of the boundary knot: minus half the boundary intersections with
/// the dividing set, i.e. minus the number of arcs.
pub fn config_tb(c: &DividingConfig) -> i64 {
    -i64::from(c.arc_count())
}

pub fn monodromy_config(c: &DividingConfig, k: i64) -> DividingConfig {
    c.map_slopes(|s| monodromy_apply(s, k))
}

fn in_positive_window(s: &Slope) -> bool {
    s.is_infinite() || *s.num() >= 0
}

fn in_image_window(s: &Slope) -> bool {
    let half = Slope::new(1, 2).unwrap();
    half <= *s && *s <= Slope::integer(1)
}

/// The `k` with `Psi^k(c)` canonical, together with that representative.
pub fn canonical_form(c: &DividingConfig) -> (i64, DividingConfig) {
    let mut k = 0;
    let mut slopes = c.slopes();
    while !slopes.iter().all(in_positive_window) {
        slopes = slopes.iter().map(|s| monodromy_apply(s, 1)).collect();
        k += 1;
    }
    while slopes.iter().all(in_image_window) {
        slopes = slopes.iter().map(|s| monodromy_apply(s, -1)).collect();
        k -= 1;
    }
    (k, monodromy_config(c, k))
}

/// Youngest vertex of a Farey triangle in the positive quadrant: the one
/// whose vector is the sum of the other two.
fn youngest(tri: &[Slope; 3]) -> usize {
    let v: Vec<IntegralVector> = tri.iter().map(|s| s.vector()).collect();
    (0..3)
        .find(|&i| {
            let (a, b) = (&v[(i + 1) % 3], &v[(i + 2) % 3]);
            a.add(b) == v[i]
        })
        .expect("positive Farey triangles have a mediant vertex")
}

/// The two older neighbours of a positive finite slope: the triangle in
/// which it is the youngest vertex is `{left, s, right}`.
fn stern_brocot_parents(s: &Slope) -> (Slope, Slope) {
    let (a, b) = (*s.num(), *s.den());
    debug_assert!(a > 0 && b > 0);
    if b == 1 {
        return (Slope::integer(a - 1), Slope::infinity());
    }
    // a*d - b*c = 1 with 0 < d < b
    let d = (1..b).find(|d| (a * d) % b == 1).expect("a is invertible mod b");
    let c = (a * d - 1) / b;
    (
        Slope::new(c, d).unwrap(),
        Slope::new(a - c, b - d).unwrap(),
    )
}

/// Which case of the normalization a canonical slope set falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Case {
    Above,
    Below,
    Straddle,
}

fn case_of(slopes: &[Slope]) -> Case {
    let sides: BTreeSet<FixedPointSide> = slopes.iter().map(cmp_fixed).collect();
    match (sides.contains(&FixedPointSide::Above), sides.contains(&FixedPointSide::Below)) {
        (true, false) => Case::Above,
        (false, true) => Case::Below,
        _ => Case::Straddle,
    }
}

fn sl(text: &str) -> Slope {
    text.parse().expect("literal slope")
}

fn root_tight() -> [Slope; 3] {
    [sl("1"), sl("2"), sl("inf")]
}

fn root_overtwisted() -> [Slope; 3] {
    [sl("0"), sl("1"), sl("inf")]
}

fn straddle_second() -> [Slope; 3] {
    [sl("0"), sl("1/2"), sl("1")]
}

fn psi(s: &Slope) -> Slope {
    monodromy_apply(s, 1)
}

struct Builder<'a> {
    source: &'a DividingConfig,
    moves: Vec<Move>,
}

impl Builder<'_> {
    fn destabilize(&mut self, annulus: Slope) {
        self.moves.push(Move {
            tag: MoveTag::Destabilize,
            annulus_slope: annulus,
            removed: self.source.slopes(),
            added: vec![],
            result: None,
            tb_after: config_tb(self.source) + 2,
        });
    }

    /// Swap one slope for another, the new class inheriting the arcs.
    fn replace(&mut self, tag: MoveTag, annulus: Slope, old: Slope, new: Slope) {
        let classes = self
            .source
            .classes()
            .into_iter()
            .map(|(s, m)| if s == old { (new, m) } else { (s, m) })
            .collect();
        let result = DividingConfig::from_classes(classes, 0).expect("flips keep a Farey configuration");
        self.push(tag, annulus, vec![old], vec![new], result);
    }

    /// Replace the youngest slope by the third vertex of the neighbouring
    /// triangle on the far side of the other two.
    fn flip_youngest(&mut self, annulus: Slope, young: Slope, keep: [Slope; 2]) {
        let (u, v) = (keep[0].vector(), keep[1].vector());
        let new = Slope::from_vector(&u.sub(&v)).unwrap();
        let tag = if new < keep[0] && new < keep[1] {
            MoveTag::FirstKind
        } else {
            MoveTag::SecondKind
        };
        self.replace(tag, annulus, young, new);
    }

    fn push(&mut self, tag: MoveTag, annulus: Slope, removed: Vec<Slope>, added: Vec<Slope>, result: DividingConfig) {
        self.moves.push(Move {
            tag,
            annulus_slope: annulus,
            removed,
            added,
            tb_after: config_tb(&result),
            result: Some(result),
        });
    }
}

/// Moves on a canonical configuration, in order of preference.
fn canonical_moves(c: &DividingConfig) -> Vec<Move> {
    let mut b = Builder {
        source: c,
        moves: Vec::new(),
    };
    let arcs = c.arc_count();
    match c {
        DividingConfig::TypeI { slope, arcs: n, .. } => {
            let annulus = psi(slope);
            let triangle: [Slope; 3] = if slope.is_infinite() {
                if *n > 3 {
                    b.destabilize(annulus);
                }
                root_tight()
            } else if *slope.num() == 0 {
                root_overtwisted()
            } else {
                let (l, r) = stern_brocot_parents(slope);
                [l, *slope, r]
            };
            let classes = triangle
                .iter()
                .map(|t| (*t, if t == slope { n - 2 } else { 1 }))
                .collect();
            let added: Vec<Slope> = triangle.iter().filter(|t| *t != slope).copied().collect();
            let result = DividingConfig::from_classes(classes, 0).expect("expansion yields a triangle");
            b.push(MoveTag::ExpandFromI, annulus, vec![], added, result);
        }
        DividingConfig::TypeII { slopes, .. } => {
            let near = match case_of(slopes) {
                Case::Below => slopes[1],
                _ => slopes[0],
            };
            b.destabilize(psi(&near));
            let (d0, d1) = (farey_depth(&slopes[0]), farey_depth(&slopes[1]));
            if d0 != d1 {
                let (young, old) = if d0 > d1 {
                    (slopes[0], slopes[1])
                } else {
                    (slopes[1], slopes[0])
                };
                // the edge young-old came from the edge old-(young - old)
                let other = Slope::from_vector(&young.vector().sub(&old.vector())).unwrap();
                if in_positive_window(&other) {
                    let tag = if other < old {
                        MoveTag::FirstKind
                    } else {
                        MoveTag::SecondKind
                    };
                    b.replace(tag, psi(&near), young, other);
                }
            }
        }
        DividingConfig::TypeIII { slopes, mults } => {
            let all_thick = mults.iter().all(|&m| m > 1);
            if *slopes == root_tight() {
                if arcs > 3 {
                    b.destabilize(psi(&slopes[0]));
                }
            } else if *slopes == root_overtwisted() {
                if arcs > 3 {
                    b.destabilize(psi(&slopes[2]));
                }
                // v1 = 0, v2 = inf: {v1, v2, v1+v2} -> {v1, v1+v2, 2v1+v2}
                b.replace(MoveTag::CaseThreeA, psi(&slopes[2]), slopes[2], sl("1/2"));
            } else if *slopes == straddle_second() {
                if all_thick {
                    b.destabilize(psi(&slopes[1]));
                }
                // v1 = 0, v2 = 1: {v1, v2, v1+v2} -> {v1+v2, v2, v1+2v2}
                b.replace(MoveTag::CaseThreeB, psi(&slopes[1]), slopes[0], sl("2/3"));
            } else {
                let case = case_of(slopes);
                let (annulus, target) = match case {
                    Case::Above => (psi(&slopes[0]), 0),
                    _ => (psi(&slopes[1]), 2),
                };
                if all_thick {
                    b.destabilize(annulus);
                }
                let y = youngest(slopes);
                let keep = [slopes[(y + 1) % 3], slopes[(y + 2) % 3]];
                let keep = if keep[0] < keep[1] { keep } else { [keep[1], keep[0]] };
                b.flip_youngest(annulus, slopes[y], keep);
                let others_thin = (0..3).filter(|&i| i != target).all(|i| mults[i] == 1);
                if others_thin && arcs % 2 == 1 {
                    let result = DividingConfig::TypeI {
                        slope: slopes[target],
                        arcs,
                        closed: 1,
                    };
                    let removed = (0..3).filter(|&i| i != target).map(|i| slopes[i]).collect();
                    b.push(MoveTag::CollapseToI, annulus, removed, vec![], result);
                }
            }
        }
    }
    b.moves
}

/// Legal bypass moves from `c`, destabilizing ones included. Preferred
/// moves come first.
pub fn legal_moves(c: &DividingConfig) -> Vec<Move> {
    let (k, canon) = canonical_form(c);
    canonical_moves(&canon)
        .iter()
        .map(|m| m.conjugate(-k))
        .collect()
}

pub fn apply_move(c: &DividingConfig, m: &Move) -> Result<MoveOutcome, BypassError> {
    if !legal_moves(c).contains(m) {
        return Err(BypassError::IllegalMove(m.to_string()));
    }
    Ok(match &m.result {
        Some(next) => MoveOutcome::Config(next.clone()),
        None => MoveOutcome::DestabilizationFound { tb_after: m.tb_after },
    })
}

/// Terminal verdict of a three-arc configuration, if it has reached one.
pub fn terminal_verdict(c: &DividingConfig) -> Option<Verdict> {
    if c.arc_count() != 3 {
        return None;
    }
    match canonical_form(c).1 {
        DividingConfig::TypeIII { slopes, .. } if slopes == root_tight() => Some(Verdict::StandardTight),
        DividingConfig::TypeIII { slopes, .. } if slopes == root_overtwisted() => Some(Verdict::Overtwisted),
        _ => None,
    }
}

/// `10 * depth^2`, with depth at least 1.
pub fn default_step_limit(c: &DividingConfig) -> usize {
    let d = c.depth().max(1) as usize;
    10 * d * d
}

/// Follows preferred moves until a verdict or a destabilization.
pub fn normalize(c: &DividingConfig, step_limit: usize) -> Result<NormalizationOutcome, BypassError> {
    let mut current = c.clone();
    let mut trace = Vec::new();
    loop {
        match terminal_verdict(&current) {
            Some(Verdict::StandardTight) => return Ok(NormalizationOutcome::StandardTight { trace }),
            Some(Verdict::Overtwisted) => return Ok(NormalizationOutcome::Overtwisted { trace }),
            None => {}
        }
        let moves = legal_moves(&current);
        if let Some(d) = moves.iter().find(|m| m.is_destabilizing()) {
            trace.push(d.clone());
            let steps = trace.len();
            return Ok(NormalizationOutcome::Destabilizes { trace, steps });
        }
        if trace.len() >= step_limit {
            return Err(BypassError::NonTermination { steps: trace.len() });
        }
        let m = moves
            .into_iter()
            .next()
            .ok_or_else(|| BypassError::Stuck(current.to_string()))?;
        current = m.result.clone().expect("non-destabilizing moves have a result");
        trace.push(m);
    }
}

/// Breadth-first search over all move sequences for one that ends in a
/// destabilization. `step_limit` bounds the number of configurations
/// examined.
pub fn find_destabilization(c: &DividingConfig, step_limit: usize) -> SearchOutcome {
    let mut parent: HashMap<DividingConfig, Option<(DividingConfig, Move)>> = HashMap::new();
    let mut queue = VecDeque::from([c.clone()]);
    parent.insert(c.clone(), None);
    let mut explored = 0;
    while let Some(current) = queue.pop_front() {
        if explored >= step_limit {
            break;
        }
        explored += 1;
        let moves = legal_moves(&current);
        if let Some(d) = moves.iter().find(|m| m.is_destabilizing()) {
            let mut trace = vec![d.clone()];
            let mut at = current;
            while let Some(Some((prev, m))) = parent.get(&at) {
                trace.push(m.clone());
                at = prev.clone();
            }
            trace.reverse();
            let steps = trace.len();
            return SearchOutcome::Destabilizes { trace, steps };
        }
        for m in moves {
            let next = m.result.clone().expect("non-destabilizing moves have a result");
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((current.clone(), m)));
                queue.push_back(next);
            }
        }
    }
    SearchOutcome::NoneFoundWithinLimit { explored }
}

/// Every verdict reachable from a three-arc configuration along any order
/// of legal moves. A single element means the verdict is independent of
/// the choices made.
pub fn reachable_verdicts(c: &DividingConfig, limit: usize) -> Result<BTreeSet<Verdict>, BypassError> {
    let mut seen = BTreeSet::new();
    let mut verdicts = BTreeSet::new();
    let mut stack = vec![c.clone()];
    while let Some(current) = stack.pop() {
        if !seen.insert(current.to_string()) {
            continue;
        }
        if seen.len() > limit {
            return Err(BypassError::NonTermination { steps: seen.len() });
        }
        if let Some(v) = terminal_verdict(&current) {
            verdicts.insert(v);
            continue;
        }
        for m in legal_moves(&current) {
            if let Some(next) = m.result {
                stack.push(next);
            }
        }
    }
    Ok(verdicts)
}

/// A potential on three-arc configurations that every non-destabilizing
/// move lowers; zero exactly at the two terminal states. Measured in the
/// canonical representative by Farey-tree distance to the terminal orbit.
pub fn progress_measure(c: &DividingConfig) -> Option<i64> {
    if c.arc_count() != 3 {
        return None;
    }
    let below_base = 4;
    match canonical_form(c).1 {
        DividingConfig::TypeIII { slopes, .. } => {
            if slopes == root_tight() || slopes == root_overtwisted() {
                return Some(0);
            }
            if slopes == straddle_second() {
                return Some(2);
            }
            let young = farey_depth(&slopes[youngest(&slopes)]);
            Some(match case_of(&slopes) {
                Case::Above => 2 * (young - 2),
                _ => 2 * (young - 3) + below_base,
            })
        }
        DividingConfig::TypeI { slope, .. } => Some(if slope.is_infinite() || *slope.num() == 0 {
            1
        } else if cmp_fixed(&slope) == FixedPointSide::Above {
            2 * (farey_depth(&slope) - 2) + 1
        } else {
            2 * (farey_depth(&slope) - 3) + below_base + 1
        }),
        DividingConfig::TypeII { .. } => None,
    }
}

/// All Farey triangles whose vertices have depth at most `depth`.
pub fn farey_triangles(depth: i64) -> Vec<[Slope; 3]> {
    // {a, b, c} with c the youngest; children sit across (a, c) and (c, b)
    fn grow(a: Slope, b: Slope, c: Slope, depth: i64, out: &mut Vec<[Slope; 3]>) {
        if farey_depth(&c) > depth {
            return;
        }
        let mut tri = [a, b, c];
        tri.sort();
        out.push(tri);
        for (x, y, far) in [(a, c, b), (c, b, a)] {
            let (sum, diff) = (x.vector().add(&y.vector()), x.vector().sub(&y.vector()));
            let sum = Slope::from_vector(&sum).unwrap();
            let child = if sum == far {
                Slope::from_vector(&diff).unwrap()
            } else {
                sum
            };
            grow(x, y, child, depth, out);
        }
    }
    let mut out = Vec::new();
    for apex in ["1", "-1"] {
        grow(sl("0"), sl("inf"), sl(apex), depth, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(s: &str) -> DividingConfig {
        s.parse().unwrap()
    }

    #[test]
    fn parsing_and_validation() {
        assert_eq!(cfg("III:1,2,inf"), cfg("III:1x1,2x1,infx1"));
        assert_eq!(cfg("III:inf,1,2").to_string(), "III:1x1,2x1,infx1");
        assert_eq!(cfg("I:infx5+1c").to_string(), "I:infx5+1c");
        assert_eq!(cfg("II:1x2,infx2").to_string(), "II:1x2,infx2");
        assert!(matches!(make_config("III:1/3,2/3,inf"), Err(BypassError::NotATriangle(_))));
        assert!(matches!(make_config("III:1x1,2x2,infx1"), Err(BypassError::ParityError(_))));
        assert!(matches!(make_config("II:1x2,infx3"), Err(BypassError::ParityError(_))));
        assert!(matches!(make_config("I:1x4+1c"), Err(BypassError::ParityError(_))));
        assert!(matches!(make_config("II:1x2,infx2+1c"), Err(BypassError::TaxonomyError(_))));
        assert!(matches!(make_config("II:1x2"), Err(BypassError::TaxonomyError(_))));
        assert!(matches!(make_config("I:1x3"), Err(BypassError::TaxonomyError(_))));
        assert!(matches!(make_config("II:0x2,2x2"), Err(BypassError::NotAnEdge(_))));
        assert!(make_config("IV:1").is_err());
        assert!(make_config("I:1x3+1c").is_ok());
    }

    #[test]
    fn thurston_bennequin() {
        assert_eq!(config_tb(&cfg("III:1,2,inf")), -3);
        assert_eq!(config_tb(&cfg("II:1x2,infx2")), -4);
        assert_eq!(config_tb(&cfg("I:infx5+1c")), -5);
    }

    #[test]
    fn monodromy_on_configs() {
        assert_eq!(monodromy_config(&cfg("III:1,2,inf"), 1), cfg("III:2/3,3/4,1"));
        assert_eq!(monodromy_config(&cfg("III:0,1,inf"), 1), cfg("III:1/2,2/3,1"));
        let c = cfg("III:1x1,3/2x3,2x1");
        assert_eq!(monodromy_config(&monodromy_config(&c, 3), -3), c);
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(canonical_form(&cfg("III:2/3,3/4,1")), (-1, cfg("III:1,2,inf")));
        assert_eq!(canonical_form(&cfg("III:0,-1,inf")).1, cfg("III:0,1/2,1"));
        assert_eq!(canonical_form(&cfg("I:1x3+1c")).1, cfg("I:infx3+1c"));
    }

    #[test]
    fn parents() {
        assert_eq!(stern_brocot_parents(&sl("2")), (sl("1"), sl("inf")));
        assert_eq!(stern_brocot_parents(&sl("1")), (sl("0"), sl("inf")));
        assert_eq!(stern_brocot_parents(&sl("2/5")), (sl("1/3"), sl("1/2")));
        assert_eq!(stern_brocot_parents(&sl("5/3")), (sl("3/2"), sl("2")));
    }

    #[test]
    fn terminal_states() {
        assert!(legal_moves(&cfg("III:1,2,inf")).is_empty());
        assert!(legal_moves(&cfg("III:2/3,3/4,1")).is_empty());
        assert!(matches!(
            normalize(&cfg("III:1,2,inf"), 10),
            Ok(NormalizationOutcome::StandardTight { trace }) if trace.is_empty()
        ));
        assert!(matches!(
            normalize(&cfg("III:0,1,inf"), 10),
            Ok(NormalizationOutcome::Overtwisted { .. })
        ));
    }

    #[test]
    fn first_kind_flip() {
        // {v1, v2, v1+v2} with v1 = (1,2), v2 = (0,1): to {v1 - v2, v2, v1}
        let c = cfg("III:2,3,inf");
        let m = legal_moves(&c).into_iter().find(|m| m.tag == MoveTag::FirstKind).unwrap();
        assert_eq!(m.to_string(), "FirstKind 3→1");
        assert_eq!(apply_move(&c, &m), Ok(MoveOutcome::Config(cfg("III:1,2,inf"))));
    }

    #[test]
    fn case_one_climbs() {
        let c = cfg("III:3/2,5/3,2");
        let out = normalize(&c, 50).unwrap();
        let NormalizationOutcome::StandardTight { trace } = out else { panic!("{out:?}") };
        assert!(!trace.is_empty());
        let lines: Vec<String> = trace.iter().map(|m| m.to_string()).collect();
        assert_eq!(lines[0], "FirstKind 5/3→1");
    }

    #[test]
    fn type_two_destabilizes() {
        let c = cfg("II:1x2,infx2");
        assert!(legal_moves(&c).iter().any(Move::is_destabilizing));
        assert!(matches!(
            normalize(&c, 10),
            Ok(NormalizationOutcome::Destabilizes { steps: 1, .. })
        ));
        let m = legal_moves(&c).into_iter().find(Move::is_destabilizing).unwrap();
        assert_eq!(
            apply_move(&c, &m),
            Ok(MoveOutcome::DestabilizationFound { tb_after: -2 })
        );
    }

    #[test]
    fn illegal_move_rejected() {
        let m = legal_moves(&cfg("III:2,3,inf")).remove(0);
        assert!(matches!(
            apply_move(&cfg("III:1,2,inf"), &m),
            Err(BypassError::IllegalMove(_))
        ));
    }

    #[test]
    fn collapse_and_expand() {
        let c = cfg("III:2,5/2,3");
        let collapse = legal_moves(&c)
            .into_iter()
            .find(|m| m.tag == MoveTag::CollapseToI)
            .unwrap();
        assert_eq!(apply_move(&c, &collapse), Ok(MoveOutcome::Config(cfg("I:2x3+1c"))));
        let expand = legal_moves(&cfg("I:infx3+1c")).remove(0);
        assert_eq!(expand.tag, MoveTag::ExpandFromI);
        assert_eq!(
            apply_move(&cfg("I:infx3+1c"), &expand),
            Ok(MoveOutcome::Config(cfg("III:1,2,inf")))
        );
    }

    #[test]
    fn destabilization_search() {
        for s in ["I:infx5+1c", "II:1x2,infx2", "III:2x1,3x1,infx3", "III:0x3,1/2x1,1x1"] {
            assert!(
                matches!(find_destabilization(&cfg(s), 1000), SearchOutcome::Destabilizes { .. }),
                "{s}"
            );
        }
    }

    #[test]
    fn triangle_enumeration() {
        assert_eq!(farey_triangles(1).len(), 2);
        assert_eq!(farey_triangles(5).len(), 62);
        for t in farey_triangles(4) {
            let c = DividingConfig::from_classes(t.iter().map(|s| (*s, 1)).collect(), 0);
            assert!(c.is_ok());
        }
    }

    #[test]
    fn measure_decreases() {
        for t in farey_triangles(6) {
            let c = DividingConfig::from_classes(t.iter().map(|s| (*s, 1)).collect(), 0).unwrap();
            if terminal_verdict(&c).is_some() {
                continue;
            }
            let before = progress_measure(&c).unwrap();
            for m in legal_moves(&c) {
                let next = m.result.clone().unwrap();
                assert!(progress_measure(&next).unwrap() < before, "{c} {m}");
            }
        }
    }
}
