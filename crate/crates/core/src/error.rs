//! Error type shared by every module of the crate.

use alloc::string::String;
use core::fmt;

use crate::geometry::CurveId;

/// Result alias used across the crate.
pub type Result<T, E = Error> = core::result::Result<T, E>;

/// What is wrong with a single boundary curve.
#[derive(Debug, Clone, PartialEq)]
pub enum CurveDefect {
    /// Circle radius is zero, negative or not finite.
    BadRadius(f64),
    /// A Fourier curve needs at least one nonzero oscillating mode.
    Degenerate,
    /// More Fourier coefficients than the supported maximum.
    TooManyCoefficients(usize),
    /// A coefficient or parameter is NaN or infinite.
    NonFinite,
    /// `|z'(t)|` vanishes (numerically) somewhere on the curve.
    VanishingTangent,
    /// The sampled curve crosses itself.
    SelfIntersecting,
}

impl fmt::Display for CurveDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveDefect::BadRadius(r) => write!(f, "radius must be positive and finite (got {r})"),
            CurveDefect::Degenerate => f.write_str("curve has no oscillating Fourier mode"),
            CurveDefect::TooManyCoefficients(n) => {
                write!(f, "{n} Fourier coefficients exceed the maximum of 64")
            }
            CurveDefect::NonFinite => f.write_str("non-finite coefficient"),
            CurveDefect::VanishingTangent => f.write_str("tangent vector vanishes"),
            CurveDefect::SelfIntersecting => f.write_str("curve is not simple (self-intersection)"),
        }
    }
}

/// Errors raised by the numerical routines.
///
/// [`Error::is_validation`] separates bad input from numerical failure.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A single curve violates its invariants.
    #[error("invalid {curve}: {defect}")]
    InvalidCurve {
        /// Offending curve.
        curve: CurveId,
        /// What is wrong with it.
        defect: CurveDefect,
    },
    /// Two boundary curves intersect or touch.
    #[error("{first} and {second} overlap")]
    CurvesOverlap {
        /// First curve.
        first: CurveId,
        /// Second curve.
        second: CurveId,
    },
    /// A hole is not enclosed by the outer curve.
    #[error("hole {} lies outside the outer curve", .hole + 1)]
    HoleOutsideOuter {
        /// Zero-based hole index.
        hole: usize,
    },
    /// One hole encloses another.
    #[error("hole {} encloses hole {}", .outer + 1, .inner + 1)]
    NestedHoles {
        /// Enclosing hole (zero-based).
        outer: usize,
        /// Enclosed hole (zero-based).
        inner: usize,
    },
    /// The point is not inside the domain.
    #[error("point ({x}, {y}) is outside the domain")]
    PointOutside {
        /// Real part.
        x: f64,
        /// Imaginary part.
        y: f64,
    },
    /// The point is closer to the boundary than the evaluation clearance.
    #[error("point ({x}, {y}) is within {distance:e} of the boundary")]
    NearBoundary {
        /// Real part.
        x: f64,
        /// Imaginary part.
        y: f64,
        /// Distance to the nearest boundary curve.
        distance: f64,
    },
    /// The point coincides (numerically) with a singularity.
    #[error("point ({x}, {y}) is too close to a singularity")]
    NearSingularity {
        /// Real part.
        x: f64,
        /// Imaginary part.
        y: f64,
    },
    /// The point is too close to the integration cycle.
    #[error("point is within {distance:e} of the cycle")]
    NearCycle {
        /// Distance between the point and the cycle.
        distance: f64,
    },
    /// An offset cycle around a hole leaves the domain.
    #[error("cycle around hole {} leaves the domain; try an offset fraction of {suggested_fraction}", .hole + 1)]
    CycleExitsDomain {
        /// Zero-based hole index.
        hole: usize,
        /// A smaller offset fraction that is worth trying.
        suggested_fraction: f64,
    },
    /// Bad numeric parameter or unmet precondition.
    #[error("{0}")]
    InvalidInput(String),
    /// Weight specification is inconsistent with the domain.
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    /// The boundary integral system is singular or too ill-conditioned.
    #[error("boundary integral system is ill-conditioned (condition estimate {estimate:e}, {nodes} nodes per curve)")]
    IllConditioned {
        /// Nodes per curve.
        nodes: usize,
        /// One-norm condition estimate (infinite when singular).
        estimate: f64,
    },
    /// Weighted Gram matrix failed the Cholesky factorization.
    #[error("weighted Gram matrix is numerically indefinite at basis function {index} ({nodes} quadrature nodes); try {suggested_nodes} nodes or a lower degree")]
    GramIndefinite {
        /// Pivot that failed.
        index: usize,
        /// Quadrature nodes used.
        nodes: usize,
        /// Suggested node count.
        suggested_nodes: usize,
    },
    /// The jet constraint cannot be imposed with the given basis.
    #[error("jet constraint is rank deficient: {0}")]
    ConstraintRankDeficient(String),
}

impl Error {
    /// True for errors caused by invalid input rather than numerical failure.
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::IllConditioned { .. }
                | Error::GramIndefinite { .. }
                | Error::ConstraintRankDeficient(_)
        )
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
