//! Green functions `G(z, z0) = log|z - z0| + h(z)` and the logarithmic
//! capacity `c_β(z0) = exp h(z0)` in the translation chart `w = z - z0`.

use num_traits::Float;

use crate::error::{Error, Result};
use crate::geometry::PlanarDomain;
use crate::laplace::{HarmonicSolution, LaplaceSolver};
use crate::C64;

/// Green function with pole `z0`; the regular part `h` solves the Dirichlet
/// problem with data `-log|ζ - z0|`.
#[derive(Debug, Clone)]
pub struct GreenData {
    pole: C64,
    regular: HarmonicSolution,
}

impl GreenData {
    /// Pole `z0`.
    pub fn pole(&self) -> C64 {
        self.pole
    }

    /// Regular part `h`.
    pub fn regular_part(&self) -> &HarmonicSolution {
        &self.regular
    }

    /// Domain of the Green function.
    pub fn domain(&self) -> &PlanarDomain {
        self.regular.domain()
    }

    fn check_pole_distance(&self, z: C64) -> Result<()> {
        if (z - self.pole).norm() <= self.domain().clearance() {
            return Err(Error::NearSingularity { x: z.re, y: z.im });
        }
        Ok(())
    }

    /// `G(z, z0)`.
    pub fn value(&self, z: C64) -> Result<f64> {
        self.check_pole_distance(z)?;
        Ok((z - self.pole).norm().ln() + self.regular.evaluate(z)?)
    }

    /// `∇_z G(z, z0)` as `∂x + i ∂y`.
    pub fn gradient(&self, z: C64) -> Result<C64> {
        self.check_pole_distance(z)?;
        let d = z - self.pole;
        Ok(d / d.norm_sqr() + self.regular.gradient(z)?)
    }

    /// Logarithmic capacity `c_β(z0) = exp h(z0)`.
    pub fn capacity(&self) -> f64 {
        self.regular.evaluate_unchecked(self.pole).exp()
    }
}

/// Green function of the solver's domain with pole `z0`.
pub fn green_function(solver: &LaplaceSolver, z0: C64) -> Result<GreenData> {
    solver.domain().require_inside(z0)?;
    let regular = solver.solve(move |_, _, z| -(z - z0).norm().ln())?;
    Ok(GreenData { pole: z0, regular })
}
