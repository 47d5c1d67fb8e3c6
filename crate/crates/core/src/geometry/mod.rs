//! Planar domains bounded by analytic curves, point classification, winding
//! numbers and homology cycles.
//!
//! Every curve is stored counterclockwise. The outward normal of a curve is its
//! unit tangent turned clockwise by a right angle, so for the outer curve it
//! points out of the domain and for a hole it points into the domain.

mod curve;
pub(crate) mod cycle;
mod domain;

pub use curve::{BoundaryCurve, CurveShape, MAX_FOURIER_COEFFS};
pub use cycle::{homology_coefficients, standard_cycles, winding_number, Cycle, Loop, Winding};
pub use domain::{Containment, CurveId, PlanarDomain};
