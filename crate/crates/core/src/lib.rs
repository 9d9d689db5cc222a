//! Classical invariants and classification of Legendrian and transversal
//! knots: unknots, torus knots and the figure-eight knot.
//!
//! The modules build on each other roughly bottom-up:
//!
//! - [`lattice`]: slopes, the Farey tessellation, negative continued
//!   fractions and the figure-eight monodromy.
//! - [`front`]: front diagrams and their `tb`, rotation and writhe.
//! - [`classify`]: peaks, mountain ranges and Legendrian isotopy decisions.
//! - [`transversal`]: self-linking numbers and transversal classification.
//! - [`convex`]: dividing-curve arithmetic on tori and disks.
//! - [`bypass`]: the bypass rewrite system on the punctured-torus fiber.

pub mod bypass;
pub mod classify;
pub mod convex;
pub mod front;
pub mod lattice;
pub mod transversal;

pub use lattice::{FixedPointSide, IntegralVector, LatticeError, Monodromy};

/// Slopes over `i64`, the width used throughout the classification code.
pub type Slope = lattice::Slope<i64>;
/// Slopes over `i128`, for moderately long monodromy orbits.
pub type WideSlope = lattice::Slope<i128>;
/// Arbitrary-precision slopes; `Psi^k` grows like Fibonacci numbers.
pub type BigSlope = lattice::Slope<num_bigint::BigInt>;
