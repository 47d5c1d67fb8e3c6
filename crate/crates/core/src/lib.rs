#![no_std]
#![warn(missing_docs)]

//! Numerical potential theory on bounded multiply-connected planar domains.
//!
//! The crate computes harmonic measures, Green functions and logarithmic
//! capacities, period integrals of harmonic fields along homology cycles,
//! and weighted Bergman kernels for higher derivatives. On top of those it
//! extracts the set of points where the weighted higher-derivative Suita
//! inequality becomes an equality, which for planar domains reduces to the
//! integer condition `(k+1) u_j(z0) + c_j ∈ ℤ` on the harmonic measures
//! `u_j` and the weight periods `c_j`.
//!
//! Everything here is pure computation over immutable values; file formats,
//! the command line and parallel grid sampling live in the `suita` crate.
//!
//! Points of the plane are represented as [`C64`] values throughout.

// `num_traits::Float` supplies f64 math without std; when std is linked in by
// another crate its inherent methods take precedence and the import goes unused.
#![allow(unused_imports)]
// Negated comparisons deliberately reject NaN; index loops mirror the maths.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bergman;
pub mod error;
pub mod geometry;
pub mod green;
pub mod laplace;
pub mod linalg;
pub mod locus;
pub mod periods;
pub mod quadrature;

mod contour;

pub use error::{Error, Result};
pub use geometry::{
    BoundaryCurve, Containment, CurveId, Cycle, Loop, PlanarDomain, Winding,
};
pub use green::GreenData;
pub use laplace::{DirichletProblem, HarmonicMeasureSet, HarmonicSolution, LaplaceSolver};
pub use periods::{Calibration, PeriodVector, WeightFamily, WeightSpec};

/// Complex double, used both for points of the plane and for complex gradients
/// `u_x + i u_y`.
pub type C64 = num_complex::Complex64;

/// Distance from `x` to the nearest integer.
pub fn dist_to_integer(x: f64) -> f64 {
    use num_traits::Float;
    (x - x.round()).abs()
}
