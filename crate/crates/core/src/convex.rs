//! Arithmetic consequences of convex surface theory: twisting and `tb`
//! read off dividing curves on a torus, rotation numbers of Legendrian
//! unknots bounding convex disks, and counts of tight structures on solid
//! tori.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::lattice::{farey_det, neg_cf, IntegralVector, LatticeError};
use crate::Slope;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConvexError {
    #[error("curve {curve} is parallel to the dividing slope {slope}; twisting is 0 but the curve cannot be made Legendrian with this formula")]
    ZeroIntersection { curve: String, slope: String },
    #[error("a dividing set needs at least one pair of curves")]
    NoCurves,
    #[error("curve {0} is not primitive")]
    NotPrimitive(String),
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// `2n` parallel dividing curves of the given slope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusDividingSet {
    slope: Slope,
    pairs: u64,
}

impl TorusDividingSet {
    pub fn new(slope: Slope, pairs: u64) -> Result<Self, ConvexError> {
        if pairs == 0 {
            return Err(ConvexError::NoCurves);
        }
        Ok(TorusDividingSet { slope, pairs })
    }

    pub fn slope(&self) -> &Slope {
        &self.slope
    }

    pub fn pairs(&self) -> u64 {
        self.pairs
    }

    /// Half the number of intersections with a curve of class `v`.
    fn half_intersection(&self, v: &IntegralVector) -> i64 {
        self.pairs as i64 * farey_det(v, &self.slope.vector()).abs()
    }
}

/// Twisting of a Legendrian curve relative to the surface framing:
/// minus half its intersection count with the dividing set.
pub fn twist_from_dividing(curve: &IntegralVector, d: &TorusDividingSet) -> Result<i64, ConvexError> {
    if !curve.is_primitive() {
        return Err(ConvexError::NotPrimitive(curve.to_string()));
    }
    if farey_det(curve, &d.slope.vector()) == 0 {
        return Err(ConvexError::ZeroIntersection {
            curve: curve.to_string(),
            slope: d.slope.to_string(),
        });
    }
    Ok(-d.half_intersection(curve))
}

/// `tb` of a `(p, q)` torus knot sitting as a Legendrian curve on a convex
/// torus: the torus framing `pq` minus half the intersections with the
/// dividing curves.
pub fn torus_tb(p: i64, q: i64, d: &TorusDividingSet) -> i64 {
    p * q - d.half_intersection(&IntegralVector::new(p, q))
}

/// A non-crossing chord diagram on a disk with the regions of its
/// complement signed alternately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiskChordDiagram {
    /// `matching[i]` is the endpoint joined to boundary point `i`.
    matching: Vec<usize>,
    /// Region containing the boundary arc from point `i` to point `i + 1`.
    region_of_arc: Vec<usize>,
    /// `true` for positive regions.
    signs: Vec<bool>,
}

impl DiskChordDiagram {
    /// Signs the regions of `matching`, giving the region that contains
    /// boundary arc 0 the sign `root_positive`.
    pub fn new(matching: Vec<usize>, root_positive: bool) -> Self {
        let points = matching.len();
        let mut region_of_arc = vec![usize::MAX; points];
        let mut regions = 0;
        for start in 0..points {
            if region_of_arc[start] != usize::MAX {
                continue;
            }
            let mut arc = start;
            while region_of_arc[arc] == usize::MAX {
                region_of_arc[arc] = regions;
                // walk to the end of the arc, then along its chord
                arc = matching[(arc + 1) % points];
            }
            regions += 1;
        }
        // regions on the two sides of a chord at point a hold arcs a-1 and a
        let mut neighbours = vec![Vec::new(); regions];
        for a in 0..points {
            let (x, y) = (region_of_arc[(a + points - 1) % points], region_of_arc[a]);
            neighbours[x].push(y);
            neighbours[y].push(x);
        }
        let mut signs = vec![None; regions];
        let mut queue = VecDeque::from([region_of_arc[0]]);
        signs[region_of_arc[0]] = Some(root_positive);
        while let Some(r) = queue.pop_front() {
            let s = signs[r].unwrap();
            for &n in &neighbours[r] {
                match signs[n] {
                    None => {
                        signs[n] = Some(!s);
                        queue.push_back(n);
                    }
                    Some(t) => assert_ne!(s, t, "non-crossing diagrams are two-colourable"),
                }
            }
        }
        DiskChordDiagram {
            matching,
            region_of_arc,
            signs: signs.into_iter().map(|s| s.expect("region graph is connected")).collect(),
        }
    }

    pub fn chords(&self) -> usize {
        self.matching.len() / 2
    }

    pub fn matching(&self) -> &[usize] {
        &self.matching
    }

    pub fn region_count(&self) -> usize {
        self.signs.len()
    }

    /// Whether the two regions meeting along the chord at point `a` carry
    /// opposite signs.
    pub fn alternates_at(&self, a: usize) -> bool {
        let n = self.matching.len();
        let x = self.region_of_arc[(a + n - 1) % n];
        let y = self.region_of_arc[a];
        self.signs[x] != self.signs[y]
    }

    /// `chi(positive part) - chi(negative part)`; every region is a disk.
    pub fn rotation(&self) -> i64 {
        self.signs
            .iter()
            .map(|&s| if s { 1 } else { -1 })
            .sum()
    }
}

/// All non-crossing perfect matchings of `2m` points on a circle.
pub fn non_crossing_matchings(m: usize) -> Vec<Vec<usize>> {
    // matchings of the interval [lo, lo + 2k) as lists of pairs
    fn pairs(lo: usize, k: usize) -> Vec<Vec<(usize, usize)>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        // lo is matched to lo + 2j + 1, enclosing j chords
        for j in 0..k {
            let partner = lo + 2 * j + 1;
            for inner in pairs(lo + 1, j) {
                for outer in pairs(partner + 1, k - 1 - j) {
                    let mut v = vec![(lo, partner)];
                    v.extend(inner.iter().copied());
                    v.extend(outer.iter().copied());
                    out.push(v);
                }
            }
        }
        out
    }
    pairs(0, m)
        .into_iter()
        .map(|ps| {
            let mut matching = vec![0; 2 * m];
            for (a, b) in ps {
                matching[a] = b;
                matching[b] = a;
            }
            matching
        })
        .collect()
}

/// Rotation numbers of Legendrian unknots with `tb = -m` bounding a convex
/// disk, over every dividing set (`m` non-crossing arcs) and both signings.
pub fn disk_rotation_set(m: usize) -> BTreeSet<i64> {
    non_crossing_matchings(m)
        .into_iter()
        .flat_map(|matching| {
            [true, false].map(|root| DiskChordDiagram::new(matching.clone(), root).rotation())
        })
        .collect()
}

/// Number of tight contact structures on a solid torus with boundary
/// slope `-p/q` (two dividing curves), from the continued fraction
/// `[r0, ..., rk]` of `-p/q`: `|(r0 + 1) ... (r_{k-1} + 1) r_k|`.
pub fn tight_count(p: i64, q: i64) -> Result<u64, ConvexError> {
    let cf = neg_cf(p, q)?;
    let (last, rest) = cf.split_last().expect("continued fractions are nonempty");
    let product = rest.iter().map(|r| (r + 1).unsigned_abs()).product::<u64>();
    Ok(product * last.unsigned_abs())
}

/// A bypass attached to a torus with two dividing curves of slope `-1/m`
/// changes the slope to `-1/(m+1)`. Other slopes are outside this rule.
pub fn torus_bypass_step(slope: &Slope) -> Result<Slope, ConvexError> {
    if *slope.num() == -1 && *slope.den() >= 1 {
        Ok(Slope::new(-1, slope.den() + 1)?)
    } else {
        Err(ConvexError::Unsupported(format!(
            "bypass step is only tabulated for slopes -1/m, got {slope}"
        )))
    }
}
