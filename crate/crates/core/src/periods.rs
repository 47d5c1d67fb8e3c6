//! Period integrals `(1/2π) ∮_γ d̃v = (1/2π) ∮_γ (v_x dy - v_y dx)` of harmonic
//! fields along cycles, the characters they induce, and the cycle-wise test
//! `(χ_{z0})^{k+1} = χ_{-u}`.
//!
//! Two orientations appear. Raw periods are taken on counterclockwise cycles
//! with the normal equal to the tangent turned clockwise. In that orientation
//! the Green period on the canonical cycle `γ_j` is `-u_j(z0)` modulo 1, while
//! the equality condition is stated with the normal on `γ_j` pointing towards
//! hole `j` (the domain's outward normal on `Γ_j`). [`Calibration`] fixes the
//! sign between the two once, on the annulus; weight periods are reported in
//! the calibrated orientation so the condition reads `(k+1) u_j + c_j ∈ ℤ`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::geometry::cycle::winding_raw;
use crate::geometry::{ BoundaryCurve, Containment, Cycle, PlanarDomain};
use crate::green::{green_function, GreenData};
use crate::laplace::{HarmonicMeasureSet, LaplaceSolver};
use crate::{dist_to_integer, C64};

/// Trapezoid nodes per smooth loop for period quadratures.
pub const PERIOD_NODES: usize = 512;

/// Offset of the canonical cycles, as a fraction of each hole's gap.
pub const CYCLE_OFFSET_FRACTION: f64 = 0.5;

/// Family of the function `c(t)` in the weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightFamily {
    /// `c(t) = 1`.
    One,
    /// `c(t) = e^{-βt}`, `β ≥ 0`.
    ExpDecay {
        /// Decay rate.
        beta: f64,
    },
}

impl WeightFamily {
    /// `c(t)`.
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            WeightFamily::One => 1.0,
            WeightFamily::ExpDecay { beta } => (-beta * t).exp(),
        }
    }

    /// `∫_0^∞ c(t) e^{-t} dt`.
    pub fn integral(&self) -> f64 {
        match self {
            WeightFamily::One => 1.0,
            WeightFamily::ExpDecay { beta } => 1.0 / (1.0 + beta),
        }
    }

    /// `β`, zero for the constant family.
    pub fn beta(&self) -> f64 {
        match self {
            WeightFamily::One => 0.0,
            WeightFamily::ExpDecay { beta } => *beta,
        }
    }
}

/// A logarithmic term `s log|z - q|` of `v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogCharge {
    /// Charge location `q`.
    pub point: C64,
    /// Strength `s`.
    pub strength: f64,
}

/// `v(z) = Σ s_i log|z - q_i| + Re P(z)` with `P(z) = Σ p_m z^m`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct WeightPotential {
    /// Logarithmic charges.
    pub logs: Vec<LogCharge>,
    /// Polynomial coefficients `p_0, p_1, ...`.
    pub poly: Vec<C64>,
}

impl WeightPotential {
    /// `v ≡ 0`.
    pub fn zero() -> Self {
        Self::default()
    }

    /// `v(z)`; `-∞` at a positive charge.
    pub fn value(&self, z: C64) -> f64 {
        let logs: f64 = self.logs.iter().map(|c| c.strength * (z - c.point).norm().ln()).sum();
        logs + self.poly_value(z).re
    }

    fn poly_value(&self, z: C64) -> C64 {
        self.poly.iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    fn poly_derivative(&self, z: C64) -> C64 {
        self.poly
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(C64::new(0.0, 0.0), |acc, (m, c)| acc * z + c * m as f64)
    }

    /// `∇v` as `∂x + i ∂y`: `Σ s (z - q)/|z - q|² + conj(P'(z))`.
    pub fn gradient(&self, z: C64) -> C64 {
        let logs: C64 = self.logs.iter().map(|c| (z - c.point) / (z - c.point).norm_sqr() * c.strength).sum();
        logs + self.poly_derivative(z).conj()
    }

    /// True when `v ≡ 0`.
    pub fn is_zero(&self) -> bool {
        self.logs.iter().all(|c| c.strength == 0.0) && self.poly.iter().all(|c| c.norm() == 0.0)
    }
}

/// The data `(k, a, c, v)` defining the weight
/// `ρ_{z0} = e^{-2(k+1-a) G(·, z0) - 2v} c(-2a G(·, z0))`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSpec {
    /// Derivative order.
    pub k: u32,
    /// Positive exponent parameter.
    pub a: f64,
    /// `c(t)`.
    pub family: WeightFamily,
    /// The potential `v`.
    pub v: WeightPotential,
}

impl WeightSpec {
    /// Trivial weight for order `k`: `a = k + 1`, `c ≡ 1`, `v ≡ 0`.
    pub fn trivial(k: u32) -> Self {
        WeightSpec { k, a: f64::from(k) + 1.0, family: WeightFamily::One, v: WeightPotential::zero() }
    }

    /// Same weight with a different potential.
    pub fn with_potential(mut self, v: WeightPotential) -> Self {
        self.v = v;
        self
    }

    /// True when `ρ = e^{-2v}`, i.e. `a = k + 1` and `c ≡ 1`.
    pub fn is_green_free(&self) -> bool {
        self.a == f64::from(self.k) + 1.0 && self.family == WeightFamily::One
    }

    /// Checks the weight against a domain: `a > 0`, `β ≥ 0`, and charges
    /// inside the domain carry positive integer strength.
    pub fn validate(&self, domain: &PlanarDomain) -> Result<()> {
        if !(self.a > 0.0 && self.a.is_finite()) {
            return Err(Error::InvalidWeight(alloc::format!("a must be positive (got {})", self.a)));
        }
        if let WeightFamily::ExpDecay { beta } = self.family {
            if !(beta >= 0.0 && beta.is_finite()) {
                return Err(Error::InvalidWeight(alloc::format!("beta must be nonnegative (got {beta})")));
            }
        }
        for c in &self.v.logs {
            if !(c.strength.is_finite() && c.point.re.is_finite() && c.point.im.is_finite()) {
                return Err(Error::InvalidWeight("non-finite log charge".into()));
            }
            match domain.contains(c.point) {
                Containment::Outside => {}
                Containment::NearBoundary(_) => {
                    return Err(Error::InvalidWeight(alloc::format!(
                        "log charge at ({}, {}) lies on the boundary",
                        c.point.re,
                        c.point.im
                    )))
                }
                Containment::Inside => {
                    if c.strength < 1.0 || c.strength.fract() != 0.0 {
                        return Err(Error::InvalidWeight(alloc::format!(
                            "log charge at ({}, {}) inside the domain needs a positive integer strength (got {})",
                            c.point.re,
                            c.point.im,
                            c.strength
                        )));
                    }
                }
            }
        }
        if self.v.poly.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::InvalidWeight("non-finite polynomial coefficient".into()));
        }
        Ok(())
    }
}

/// Orientation in which a [`PeriodVector`] is expressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeriodOrientation {
    /// Counterclockwise cycles, normal = tangent turned clockwise.
    Counterclockwise,
    /// Normal towards the enclosed hole, fixed by [`Calibration`].
    Calibrated,
}

/// Normalized periods `(1/2π) ∮_{γ_j} d̃v`, one per canonical cycle.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodVector {
    /// Period values.
    pub values: Vec<f64>,
    /// Orientation of the values.
    pub orientation: PeriodOrientation,
}

/// Sign relating counterclockwise Green periods to harmonic measures:
/// `P_j ≡ sign · u_j(z0) (mod 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Calibration {
    sign: f64,
}

impl Calibration {
    /// Runs the calibration on the annulus `1 < |z| < 2` with pole `1.5`
    /// against the closed form `u_1 = (log 2 - log|z|) / log 2`.
    pub fn run() -> Result<Self> {
        let outer = BoundaryCurve::circle(C64::new(0.0, 0.0), 2.0).map_err(|_| Error::invalid("calibration domain"))?;
        let hole = BoundaryCurve::circle(C64::new(0.0, 0.0), 1.0).map_err(|_| Error::invalid("calibration domain"))?;
        let annulus = PlanarDomain::new(outer, vec![hole])?;
        let z0 = C64::new(1.5, 0.0);
        let g = green_function(&LaplaceSolver::new(&annulus, 64)?, z0)?;
        let period = green_periods(&g, &[Cycle::circle(C64::new(0.0, 0.0), 1.2)?])?.values[0];
        let u1 = (2f64.ln() - 1.5f64.ln()) / 2f64.ln();
        let sign = if dist_to_integer(period + u1) < 1e-6 {
            -1.0
        } else if dist_to_integer(period - u1) < 1e-6 {
            1.0
        } else {
            return Err(Error::invalid("orientation calibration failed to match the annulus harmonic measure"));
        };
        Ok(Calibration { sign })
    }

    /// `±1`.
    pub fn sign(&self) -> f64 {
        self.sign
    }

    /// Harmonic measure recovered from a counterclockwise Green period on the
    /// canonical cycle around hole `j`, given the winding of that cycle
    /// around the pole.
    pub fn measure_from_green_period(&self, period: f64, pole_winding: i64) -> f64 {
        self.sign * (period - pole_winding as f64)
    }
}

/// `∮_γ d̃v = ∮_γ (v_x dy - v_y dx)` for a gradient field given as `∂x + i ∂y`.
pub fn tilde_d_integral(mut grad: impl FnMut(C64) -> Result<C64>, gamma: &Cycle) -> Result<f64> {
    gamma
        .loops()
        .iter()
        .map(|lp| lp.integrate(PERIOD_NODES, |z, dz| Ok((grad(z)?.conj() * dz).im)))
        .sum()
}

/// Unrounded `(1/2π) ∮_γ d̃ log|· - q|`, i.e. the winding number of `γ`
/// around `q` before rounding.
fn log_period(gamma: &Cycle, q: C64, clearance: f64) -> Result<f64> {
    let distance = gamma.distance(q);
    if distance <= clearance {
        return Err(Error::NearCycle { distance });
    }
    Ok(winding_raw(gamma, q))
}

/// Counterclockwise Green periods `P_j = (1/2π) ∮_{γ_j} d̃G(·, z0)`.
///
/// The logarithmic part contributes exactly the winding number of `γ_j`
/// around the pole; only the regular part is integrated by quadrature.
pub fn green_periods(g: &GreenData, cycles: &[Cycle]) -> Result<PeriodVector> {
    let clearance = g.domain().clearance();
    let values = cycles
        .iter()
        .map(|gamma| {
            let pole = log_period(gamma, g.pole(), clearance)?;
            let regular = tilde_d_integral(|z| g.regular_part().gradient(z), gamma)? / TAU;
            Ok(pole + regular)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PeriodVector { values, orientation: PeriodOrientation::Counterclockwise })
}

/// Weight periods `c_j = sign · (1/2π) ∮_{γ_j} d̃v`, in the calibrated
/// orientation.
pub fn weight_periods(w: &WeightSpec, cycles: &[Cycle], calibration: &Calibration) -> Result<PeriodVector> {
    let poly_only = WeightPotential { logs: Vec::new(), poly: w.v.poly.clone() };
    let values = cycles
        .iter()
        .map(|gamma| {
            let mut p = tilde_d_integral(|z| Ok(poly_only.gradient(z)), gamma)? / TAU;
            for c in &w.v.logs {
                p += c.strength * log_period(gamma, c.point, 0.0)?;
            }
            Ok(calibration.sign * p + 0.0) // no negative zero
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PeriodVector { values, orientation: PeriodOrientation::Calibrated })
}

/// Character values `e^{2πi P_j}` of a period vector.
pub fn characters(periods: &PeriodVector) -> Vec<C64> {
    periods.values.iter().map(|p| C64::from_polar(1.0, TAU * p)).collect()
}

/// Per-cycle value of `(χ_{z0})^{k+1} / χ_{-u}`; equal to 1 exactly when the
/// equality condition holds on that cycle.
pub fn character_mismatch(
    green: &PeriodVector,
    weight: &PeriodVector,
    k: u32,
    calibration: &Calibration,
) -> Vec<C64> {
    green
        .values
        .iter()
        .zip(&weight.values)
        .map(|(p, c)| {
            let c_ccw = match weight.orientation {
                PeriodOrientation::Calibrated => calibration.sign * c,
                PeriodOrientation::Counterclockwise => *c,
            };
            C64::from_polar(1.0, TAU * ((f64::from(k) + 1.0) * p + c_ccw))
        })
        .collect()
}

/// Outcome of the equality test on one canonical cycle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleCheck {
    /// `dist((k+1) u_j(z0) + c_j, ℤ)`.
    pub residual: f64,
    /// `residual ≤ tol`.
    pub pass: bool,
}

/// Cycle-wise test of `(χ_{z0})^{k+1} = χ_{-u}` at the pole of `g`.
pub fn character_equality_test(
    g: &GreenData,
    w: &WeightSpec,
    measures: &HarmonicMeasureSet,
    weight_periods: &PeriodVector,
    tol: f64,
) -> Result<Vec<CycleCheck>> {
    let z0 = g.pole();
    if !w.v.value(z0).is_finite() {
        return Err(Error::InvalidWeight("v(z0) = -∞".into()));
    }
    if weight_periods.orientation != PeriodOrientation::Calibrated {
        return Err(Error::invalid("weight periods must be in the calibrated orientation"));
    }
    let u = measures.values(z0)?;
    Ok(u.iter()
        .zip(&weight_periods.values)
        .map(|(u, c)| {
            let residual = dist_to_integer((f64::from(w.k) + 1.0) * u + c);
            CycleCheck { residual, pass: residual <= tol }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::standard_cycles;
    use approx::assert_abs_diff_eq;

    fn annulus() -> PlanarDomain {
        PlanarDomain::new(
            BoundaryCurve::circle(C64::new(0.0, 0.0), 2.0).unwrap(),
            vec![BoundaryCurve::circle(C64::new(0.0, 0.0), 1.0).unwrap()],
        )
        .unwrap()
    }

    #[test]
    fn calibration_sign_is_negative() {
        assert_eq!(Calibration::run().unwrap().sign(), -1.0);
    }

    #[test]
    fn tilde_d_examples() {
        let unit = Cycle::circle(C64::new(0.0, 0.0), 1.0).unwrap();
        let log = tilde_d_integral(|z| Ok(z / z.norm_sqr()), &unit).unwrap();
        assert_abs_diff_eq!(log, TAU, epsilon = 1e-13);
        // Re(z³ + 2z) is single valued: zero flux.
        let poly = WeightPotential { logs: Vec::new(), poly: vec![C64::new(0.0, 0.0), C64::new(2.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)] };
        assert_abs_diff_eq!(tilde_d_integral(|z| Ok(poly.gradient(z)), &unit).unwrap(), 0.0, epsilon = 1e-12);
        let q = C64::new(3.0, 1.0);
        let outside = tilde_d_integral(|z| Ok((z - q) / (z - q).norm_sqr()), &unit).unwrap();
        assert_abs_diff_eq!(outside, 0.0, epsilon = 1e-13);
    }

    #[test]
    fn weight_period_examples() {
        let cal = Calibration::run().unwrap();
        let cycles = standard_cycles(&annulus(), 0.35).unwrap();
        let zero = weight_periods(&WeightSpec::trivial(1), &cycles, &cal).unwrap();
        assert_eq!(zero.values, vec![0.0]);
        let s = 0.3;
        let v = WeightPotential { logs: vec![LogCharge { point: C64::new(0.0, 0.0), strength: s }], poly: Vec::new() };
        let c = weight_periods(&WeightSpec::trivial(1).with_potential(v), &cycles, &cal).unwrap();
        assert_abs_diff_eq!(c.values[0], -s, epsilon = 1e-13);
        let quad = WeightPotential { logs: Vec::new(), poly: vec![C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)] };
        let c = weight_periods(&WeightSpec::trivial(1).with_potential(quad), &cycles, &cal).unwrap();
        assert_abs_diff_eq!(c.values[0], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn weight_validation() {
        let d = annulus();
        let inside = WeightPotential { logs: vec![LogCharge { point: C64::new(1.5, 0.0), strength: 0.5 }], poly: Vec::new() };
        assert!(matches!(WeightSpec::trivial(0).with_potential(inside).validate(&d), Err(Error::InvalidWeight(_))));
        let integer = WeightPotential { logs: vec![LogCharge { point: C64::new(1.5, 0.0), strength: 2.0 }], poly: Vec::new() };
        assert!(WeightSpec::trivial(0).with_potential(integer).validate(&d).is_ok());
        let mut bad = WeightSpec::trivial(0);
        bad.a = 0.0;
        assert!(bad.validate(&d).is_err());
        assert_abs_diff_eq!(WeightFamily::ExpDecay { beta: 1.0 }.integral(), 0.5);
    }
}
