use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_traits::Float;

use super::curve::{polygon_self_intersects, BoundaryCurve};
use super::domain::{Containment, PlanarDomain};
use crate::error::{Error, Result};
use crate::C64;

/// A smooth closed loop: a base curve pushed along its outward normal by a
/// fixed distance and traversed `turns` times (negative for clockwise).
#[derive(Debug, Clone, PartialEq)]
pub struct Loop {
    base: BoundaryCurve,
    offset: f64,
    turns: i32,
}

impl Loop {
    /// Loop traversing `base` once counterclockwise.
    pub fn new(base: BoundaryCurve) -> Self {
        Loop { base, offset: 0.0, turns: 1 }
    }

    /// Counterclockwise circle.
    pub fn circle(center: C64, radius: f64) -> Result<Self> {
        BoundaryCurve::circle(center, radius)
            .map(Loop::new)
            .map_err(|defect| Error::invalid(alloc::format!("cycle circle: {defect}")))
    }

    /// Pushes the loop along the base curve's outward normal by `distance`.
    pub fn offset(mut self, distance: f64) -> Self {
        self.offset = distance;
        self
    }

    /// Sets the signed number of traversals.
    pub fn turns(mut self, turns: i32) -> Self {
        self.turns = turns;
        self
    }

    /// Signed number of traversals.
    pub fn turn_count(&self) -> i32 {
        self.turns
    }

    /// Point at parameter `t` of one counterclockwise traversal.
    pub fn point(&self, t: f64) -> C64 {
        self.base.point(t) + self.base.outward_normal(t) * self.offset
    }

    /// Derivative at `t` of one counterclockwise traversal: `z'(1 + δκ)`.
    pub fn derivative(&self, t: f64) -> C64 {
        self.base.derivative(t) * (1.0 + self.offset * self.base.curvature(t))
    }

    /// `∮ f(z) dz`-style trapezoid sum over the loop including its turn count:
    /// returns `turns · (2π/n) Σ g(z(t_i), z'(t_i))`.
    pub fn integrate<E>(&self, n: usize, mut g: impl FnMut(C64, C64) -> core::result::Result<f64, E>) -> core::result::Result<f64, E> {
        let mut acc = 0.0;
        for i in 0..n {
            let t = TAU * i as f64 / n as f64;
            acc += g(self.point(t), self.derivative(t))?;
        }
        Ok(acc * TAU / n as f64 * self.turns as f64)
    }

    fn samples(&self, n: usize) -> Vec<C64> {
        (0..n).map(|i| self.point(TAU * i as f64 / n as f64)).collect()
    }
}

/// A 1-cycle: a formal sum of smooth closed loops, optionally labelled as the
/// canonical cycle around a hole.
#[derive(Debug, Clone, PartialEq)]
pub struct Cycle {
    loops: Vec<Loop>,
    label: Option<usize>,
}

impl Cycle {
    /// Cycle made of the given loops.
    pub fn new(loops: Vec<Loop>) -> Self {
        Cycle { loops, label: None }
    }

    /// Single counterclockwise circle.
    pub fn circle(center: C64, radius: f64) -> Result<Self> {
        Ok(Cycle::new(vec![Loop::circle(center, radius)?]))
    }

    /// The loops of the cycle.
    pub fn loops(&self) -> &[Loop] {
        &self.loops
    }

    /// Zero-based hole index when this is a canonical cycle.
    pub fn label(&self) -> Option<usize> {
        self.label
    }

    /// Same cycle traversed in the opposite direction.
    pub fn reversed(&self) -> Self {
        Cycle {
            loops: self.loops.iter().map(|l| l.clone().turns(-l.turns)).collect(),
            label: self.label,
        }
    }

    /// Trapezoid samples of every loop.
    pub fn sample_points(&self, per_loop: usize) -> Vec<C64> {
        self.loops.iter().flat_map(|l| l.samples(per_loop)).collect()
    }

    /// Smallest distance from `p` to the sampled cycle.
    pub fn distance(&self, p: C64) -> f64 {
        self.sample_points(1024).iter().map(|z| (z - p).norm()).fold(f64::INFINITY, f64::min)
    }
}

/// Winding number together with the rounding residual of the quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Winding {
    /// Rounded winding number.
    pub value: i64,
    /// `|quadrature - value|` before rounding.
    pub residual: f64,
}

/// Winding number of `gamma` around `p` from the quadrature of
/// `(1/2π) ∮ Im(dz / (z - p))`.
///
/// The node count is doubled until two successive values agree, so points
/// close to the cycle still get an accurate count.
pub fn winding_number(gamma: &Cycle, p: C64, clearance: f64) -> Result<Winding> {
    let distance = gamma.distance(p);
    if distance <= clearance {
        return Err(Error::NearCycle { distance });
    }
    let total = winding_raw(gamma, p);
    let value = total.round();
    Ok(Winding { value: value as i64, residual: (total - value).abs() })
}

/// Unrounded `(1/2π) ∮_γ Im(dz / (z - p))`, refined by node doubling.
pub(crate) fn winding_raw(gamma: &Cycle, p: C64) -> f64 {
    let mut total = 0.0;
    for lp in &gamma.loops {
        let mut n = 256;
        let mut prev = f64::NAN;
        loop {
            let w = lp.integrate::<()>(n, |z, dz| Ok((dz / (z - p)).im)).unwrap_or(0.0) / TAU;
            if (w - prev).abs() < 1e-13 || n >= 1 << 22 {
                total += w;
                break;
            }
            prev = w;
            n *= 2;
        }
    }
    total
}

/// Canonical homology basis: for each hole, its boundary pushed into the
/// domain by `fraction × (gap to the nearest other curve)`.
///
/// The resulting cycle winds once around its own hole and zero times around
/// every other hole.
pub fn standard_cycles(domain: &PlanarDomain, fraction: f64) -> Result<Vec<Cycle>> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::invalid("offset fraction must lie in (0, 1)"));
    }
    let mut cycles = Vec::with_capacity(domain.holes().len());
    for (j, hole) in domain.holes().iter().enumerate() {
        let delta = fraction * domain.hole_gap(j);
        let lp = Loop::new(hole.clone()).offset(delta);
        let exits = |lp: &Loop| {
            let pts = lp.samples(512);
            let cusp = (0..512).any(|i| 1.0 + delta * hole.curvature(TAU * i as f64 / 512.0) <= 0.0);
            cusp || polygon_self_intersects(&pts)
                || pts.iter().any(|&z| !matches!(domain.contains(z), Containment::Inside))
        };
        if exits(&lp) {
            return Err(Error::CycleExitsDomain { hole: j, suggested_fraction: fraction / 2.0 });
        }
        cycles.push(Cycle { loops: vec![lp], label: Some(j) });
    }
    for (j, gamma) in cycles.iter().enumerate() {
        for i in 0..domain.holes().len() {
            let w = winding_number(gamma, domain.hole_point(i), domain.clearance())?;
            let expected = i64::from(i == j);
            if w.value != expected || w.residual > 1e-9 {
                return Err(Error::CycleExitsDomain { hole: j, suggested_fraction: fraction / 2.0 });
            }
        }
    }
    Ok(cycles)
}

/// Coefficients of `gamma` in the canonical homology basis, i.e. its winding
/// numbers around a representative point of each hole.
pub fn homology_coefficients(gamma: &Cycle, domain: &PlanarDomain) -> Result<Vec<i64>> {
    (0..domain.holes().len())
        .map(|j| winding_number(gamma, domain.hole_point(j), domain.clearance()).map(|w| w.value))
        .collect()
}
