//! Dirichlet problems on multiply-connected domains.
//!
//! The solution is represented as a double-layer potential over every
//! boundary curve plus one logarithmic source per hole,
//!
//! ```text
//! u(x) = (1/2π) ∮ μ(y) ∂/∂n_y log|y - x| ds_y + Σ_k A_k log|x - a_k|,
//! A_k  = ∮_{Γ_k} μ ds,
//! ```
//!
//! where `a_k` is a point inside hole `k`. Tying `A_k` to the density integral
//! removes the null space the plain double layer has on multiply-connected
//! domains. The integral equation is discretized with the periodic trapezoid
//! rule (Nyström) and solved densely.
//!
//! Interior evaluation writes the double layer as the real part of a Cauchy
//! integral `v` over the positively oriented boundary. After each solve the
//! boundary trace of `v`,
//!
//! ```text
//! τ(x) = μ(x) + (1/2πi) ∮ (μ(y) - μ(x)) / (y - x) dy,
//! ```
//!
//! is computed once (the integrand is smooth; its diagonal value uses a
//! spectral derivative of `μ`). Since `τ` is the trace of a holomorphic
//! function, the compensated (barycentric) Cauchy sum
//!
//! ```text
//! v(x) = Σ τ_j ω_j/(y_j - x) / Σ ω_j/(y_j - x)
//! ```
//!
//! stays accurate arbitrarily close to the boundary.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_traits::Float;

use crate::error::{Error, Result};
use crate::geometry::{CurveId, PlanarDomain};
use crate::linalg::{Lu, Matrix};
use crate::C64;

/// Condition estimates above this are reported as ill-conditioned.
pub const CONDITION_LIMIT: f64 = 1e12;

/// Default number of nodes per boundary curve.
pub const DEFAULT_NODES: usize = 256;

/// Boundary data as a function of `(curve, parameter t, point z(t))`.
pub type BoundaryFn = Arc<dyn Fn(CurveId, f64, C64) -> f64 + Send + Sync>;

/// Trapezoid discretization of every boundary curve of a domain.
#[derive(Debug)]
pub struct Discretization {
    domain: PlanarDomain,
    nodes_per_curve: usize,
    curves: Vec<CurveId>,
    params: Vec<f64>,
    points: Vec<C64>,
    /// Positively oriented complex weights `dy` (holes run clockwise).
    weights: Vec<C64>,
    arc: Vec<f64>,
    curvature: Vec<f64>,
    anchors: Vec<C64>,
}

impl Discretization {
    fn new(domain: &PlanarDomain, n: usize) -> Self {
        let total = n * domain.connectivity();
        let mut d = Discretization {
            domain: domain.clone(),
            nodes_per_curve: n,
            curves: Vec::with_capacity(total),
            params: Vec::with_capacity(total),
            points: Vec::with_capacity(total),
            weights: Vec::with_capacity(total),
            arc: Vec::with_capacity(total),
            curvature: Vec::with_capacity(total),
            anchors: (0..domain.holes().len()).map(|k| domain.hole_point(k)).collect(),
        };
        let h = TAU / n as f64;
        for (id, curve) in domain.curves() {
            let sign = if id == CurveId::Outer { 1.0 } else { -1.0 };
            for i in 0..n {
                let t = h * i as f64;
                let dz = curve.derivative(t);
                d.curves.push(id);
                d.params.push(t);
                d.points.push(curve.point(t));
                d.weights.push(dz * (sign * h));
                d.arc.push(dz.norm() * h);
                d.curvature.push(curve.curvature(t));
            }
        }
        d
    }

    /// Domain being discretized.
    pub fn domain(&self) -> &PlanarDomain {
        &self.domain
    }

    /// Nodes per curve.
    pub fn nodes_per_curve(&self) -> usize {
        self.nodes_per_curve
    }

    /// Boundary nodes, outer curve first.
    pub fn points(&self) -> &[C64] {
        &self.points
    }

    fn system_matrix(&self) -> Matrix {
        let total = self.points.len();
        let n = self.nodes_per_curve;
        let mut a = Matrix::zeros(total, total);
        for i in 0..total {
            let x = self.points[i];
            let row = a.row_mut(i);
            for j in 0..total {
                row[j] = if i == j {
                    let sigma = if self.curves[i] == CurveId::Outer { 1.0 } else { -1.0 };
                    0.5 + sigma * self.curvature[i] * self.arc[i] / (4.0 * PI)
                } else {
                    (self.weights[j] / (self.points[j] - x)).im / TAU
                };
            }
            for (k, anchor) in self.anchors.iter().enumerate() {
                let lg = (x - anchor).norm().ln();
                let start = (k + 1) * n;
                for j in start..start + n {
                    row[j] += lg * self.arc[j];
                }
            }
        }
        a
    }

    /// Compensated Cauchy evaluation for several densities at once. Returns
    /// the real parts and, when asked, the complex gradients `∂x + i ∂y`.
    fn cauchy(&self, x: C64, densities: &[&[C64]], with_gradient: bool) -> (Vec<f64>, Vec<C64>) {
        let m = densities.len();
        let mut s0 = C64::new(0.0, 0.0);
        let mut s1 = vec![C64::new(0.0, 0.0); m];
        for j in 0..self.points.len() {
            let r = self.weights[j] / (self.points[j] - x);
            s0 += r;
            for (acc, tau) in s1.iter_mut().zip(densities) {
                *acc += r * tau[j];
            }
        }
        let v: Vec<C64> = s1.iter().map(|s| s / s0).collect();
        let mut grads = Vec::new();
        if with_gradient {
            let mut t = vec![C64::new(0.0, 0.0); m];
            for j in 0..self.points.len() {
                let d = self.points[j] - x;
                let r = self.weights[j] / (d * d);
                for ((acc, tau), vk) in t.iter_mut().zip(densities).zip(&v) {
                    *acc += r * (tau[j] - vk);
                }
            }
            grads = t.iter().map(|t| (t / s0).conj()).collect();
        }
        (v.iter().map(|v| v.re).collect(), grads)
    }

    /// Boundary trace `τ` of the Cauchy integral of the real density `μ`.
    fn trace(&self, mu: &[f64]) -> Vec<C64> {
        let n = self.nodes_per_curve;
        let h = TAU / n as f64;
        let total = self.points.len();
        let mut dmu = vec![0.0; total];
        for c in 0..total / n {
            spectral_derivative(&mu[c * n..(c + 1) * n], &mut dmu[c * n..(c + 1) * n]);
        }
        let two_pi_i = C64::new(0.0, TAU);
        (0..total)
            .map(|i| {
                let x = self.points[i];
                let sign = if self.curves[i] == CurveId::Outer { 1.0 } else { -1.0 };
                let mut acc = C64::new(sign * dmu[i] * h, 0.0);
                for j in 0..total {
                    if j != i {
                        acc += self.weights[j] * ((mu[j] - mu[i]) / (self.points[j] - x));
                    }
                }
                mu[i] + acc / two_pi_i
            })
            .collect()
    }

    fn log_terms(&self, x: C64, strengths: &[f64]) -> (f64, C64) {
        let mut val = 0.0;
        let mut grad = C64::new(0.0, 0.0);
        for (a, s) in self.anchors.iter().zip(strengths) {
            let d = x - a;
            val += s * d.norm().ln();
            grad += d / d.norm_sqr() * s;
        }
        (val, grad)
    }
}

/// Derivative in `t` of a periodic function sampled at `2πi/n`, by direct
/// DFT with the Nyquist mode dropped.
fn spectral_derivative(f: &[f64], out: &mut [f64]) {
    let n = f.len();
    let coeffs: Vec<C64> = (0..n)
        .map(|k| {
            f.iter()
                .enumerate()
                .map(|(j, v)| C64::from_polar(*v, -TAU * ((j * k) % n) as f64 / n as f64))
                .sum::<C64>()
                / n as f64
        })
        .collect();
    for (j, o) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for (k, c) in coeffs.iter().enumerate() {
            let m = if 2 * k < n { k as f64 } else if 2 * k == n { continue } else { k as f64 - n as f64 };
            let e = C64::from_polar(1.0, TAU * ((j * k) % n) as f64 / n as f64);
            acc += (c * e * C64::new(0.0, m)).re;
        }
        *o = acc;
    }
}

/// Dirichlet problem: a domain, boundary data and the node count per curve.
#[derive(Clone)]
pub struct DirichletProblem {
    domain: PlanarDomain,
    data: BoundaryFn,
    nodes: usize,
}

impl core::fmt::Debug for DirichletProblem {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("DirichletProblem").field("domain", &self.domain).field("nodes", &self.nodes).finish_non_exhaustive()
    }
}

impl DirichletProblem {
    /// Problem with data `f(curve, t, z(t))`.
    pub fn new(domain: PlanarDomain, nodes: usize, f: impl Fn(CurveId, f64, C64) -> f64 + Send + Sync + 'static) -> Self {
        DirichletProblem { domain, data: Arc::new(f), nodes }
    }
}

/// Factored boundary integral operator for one domain and node count; solves
/// any number of Dirichlet problems on that domain.
#[derive(Debug, Clone)]
pub struct LaplaceSolver {
    disc: Arc<Discretization>,
    lu: Arc<Lu>,
    condition: f64,
}

impl LaplaceSolver {
    /// Discretizes and factors the operator. `nodes` must be even and ≥ 16.
    pub fn new(domain: &PlanarDomain, nodes: usize) -> Result<Self> {
        if nodes < 16 || nodes % 2 != 0 {
            return Err(Error::invalid(alloc::format!("nodes per curve must be even and at least 16 (got {nodes})")));
        }
        let disc = Discretization::new(domain, nodes);
        let lu = Lu::factor(disc.system_matrix()).ok_or(Error::IllConditioned { nodes, estimate: f64::INFINITY })?;
        let condition = lu.condition_estimate();
        if !(condition < CONDITION_LIMIT) {
            return Err(Error::IllConditioned { nodes, estimate: condition });
        }
        Ok(LaplaceSolver { disc: Arc::new(disc), lu: Arc::new(lu), condition })
    }

    /// Domain of the solver.
    pub fn domain(&self) -> &PlanarDomain {
        &self.disc.domain
    }

    /// Nodes per curve.
    pub fn nodes(&self) -> usize {
        self.disc.nodes_per_curve
    }

    /// One-norm condition estimate of the discretized operator.
    pub fn condition(&self) -> f64 {
        self.condition
    }

    /// Solves with data `f(curve, t, z(t))`.
    pub fn solve(&self, f: impl Fn(CurveId, f64, C64) -> f64 + Send + Sync + 'static) -> Result<HarmonicSolution> {
        self.solve_data(Arc::new(f))
    }

    fn solve_data(&self, data: BoundaryFn) -> Result<HarmonicSolution> {
        let disc = &self.disc;
        let rhs: Vec<f64> = (0..disc.points.len())
            .map(|j| data(disc.curves[j], disc.params[j], disc.points[j]))
            .collect();
        if let Some(j) = rhs.iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid(alloc::format!(
                "boundary data is not finite at {} (t = {})",
                disc.curves[j],
                disc.params[j]
            )));
        }
        let density = self.lu.solve(&rhs);
        let n = disc.nodes_per_curve;
        let log_strengths = (0..disc.anchors.len())
            .map(|k| {
                let start = (k + 1) * n;
                (start..start + n).map(|j| density[j] * disc.arc[j]).sum()
            })
            .collect();
        let trace = disc.trace(&density);
        let mut sol = HarmonicSolution { disc: disc.clone(), density, trace, log_strengths, boundary_residual: 0.0 };
        sol.boundary_residual = sol.midpoint_residual(&data);
        Ok(sol)
    }

    /// Harmonic measures `u_1..u_{n-1}` of the holes.
    pub fn harmonic_measures(&self) -> Result<HarmonicMeasureSet> {
        let measures = (0..self.domain().holes().len())
            .map(|j| self.solve(move |c, _, _| if c == CurveId::Hole(j) { 1.0 } else { 0.0 }))
            .collect::<Result<Vec<_>>>()?;
        Ok(HarmonicMeasureSet { measures })
    }
}

/// Solves one Dirichlet problem from scratch.
pub fn solve_dirichlet(problem: &DirichletProblem) -> Result<HarmonicSolution> {
    LaplaceSolver::new(&problem.domain, problem.nodes)?.solve_data(problem.data.clone())
}

/// Harmonic measures of the holes of `domain` with `nodes` per curve.
pub fn harmonic_measures(domain: &PlanarDomain, nodes: usize) -> Result<HarmonicMeasureSet> {
    LaplaceSolver::new(domain, nodes)?.harmonic_measures()
}

/// A solved Dirichlet problem, evaluable with gradient inside the domain.
#[derive(Debug, Clone)]
pub struct HarmonicSolution {
    disc: Arc<Discretization>,
    density: Vec<f64>,
    trace: Vec<C64>,
    log_strengths: Vec<f64>,
    boundary_residual: f64,
}

impl HarmonicSolution {
    /// Domain of the solution.
    pub fn domain(&self) -> &PlanarDomain {
        &self.disc.domain
    }

    /// Double-layer density at the boundary nodes.
    pub fn density(&self) -> &[f64] {
        &self.density
    }

    /// Strengths of the logarithmic sources, one per hole.
    pub fn log_strengths(&self) -> &[f64] {
        &self.log_strengths
    }

    /// Nodes per curve used for the solve.
    pub fn nodes(&self) -> usize {
        self.disc.nodes_per_curve
    }

    /// Largest deviation from the data at parameter midpoints between nodes,
    /// measured by the inward limit of the interior evaluation.
    pub fn boundary_residual(&self) -> f64 {
        self.boundary_residual
    }

    /// Value at an interior point.
    pub fn evaluate(&self, p: C64) -> Result<f64> {
        self.disc.domain.require_inside(p)?;
        Ok(self.evaluate_unchecked(p))
    }

    /// Gradient `(∂u/∂x, ∂u/∂y)` at an interior point, as `∂x + i ∂y`.
    pub fn gradient(&self, p: C64) -> Result<C64> {
        self.disc.domain.require_inside(p)?;
        let (_, g) = self.disc.cauchy(p, &[&self.trace], true);
        Ok(g[0] + self.disc.log_terms(p, &self.log_strengths).1)
    }

    pub(crate) fn evaluate_unchecked(&self, p: C64) -> f64 {
        let (v, _) = self.disc.cauchy(p, &[&self.trace], false);
        v[0] + self.disc.log_terms(p, &self.log_strengths).0
    }

    fn midpoint_residual(&self, data: &BoundaryFn) -> f64 {
        let disc = &self.disc;
        let n = disc.nodes_per_curve;
        let eps = 10.0 * disc.domain.clearance();
        let mut worst: f64 = 0.0;
        for (id, curve) in disc.domain.curves() {
            // Inward direction: against the curve normal for the outer curve,
            // along it for holes.
            let inward = if id == CurveId::Outer { -1.0 } else { 1.0 };
            for i in 0..n {
                let t = TAU * (i as f64 + 0.5) / n as f64;
                let z = curve.point(t);
                let nrm = curve.outward_normal(t) * inward;
                // Quadratic extrapolation to the boundary from three offsets.
                let u = |s: f64| self.evaluate_unchecked(z + nrm * (s * eps));
                let limit = 3.0 * u(1.0) - 3.0 * u(2.0) + u(3.0);
                worst = worst.max((limit - data(id, t, z)).abs());
            }
        }
        worst
    }
}

/// Harmonic measures `u_1..u_{n-1}`; `u_j` is 1 on hole `j` and 0 on every
/// other curve. The outer measure is `u_n = 1 - Σ u_j`.
#[derive(Debug, Clone)]
pub struct HarmonicMeasureSet {
    measures: Vec<HarmonicSolution>,
}

impl HarmonicMeasureSet {
    /// Number of hole measures (`n - 1`).
    pub fn len(&self) -> usize {
        self.measures.len()
    }

    /// True for a simply connected domain.
    pub fn is_empty(&self) -> bool {
        self.measures.is_empty()
    }

    /// The solution for hole `j` (zero-based).
    pub fn measure(&self, j: usize) -> &HarmonicSolution {
        &self.measures[j]
    }

    /// `u_j(p)` for every hole.
    pub fn values(&self, p: C64) -> Result<Vec<f64>> {
        Ok(self.values_and_gradients_inner(p, false)?.0)
    }

    /// `u_j(p)` and `∇u_j(p)` for every hole.
    pub fn values_and_gradients(&self, p: C64) -> Result<(Vec<f64>, Vec<C64>)> {
        self.values_and_gradients_inner(p, true)
    }

    /// `u_n(p) = 1 - Σ_j u_j(p)`.
    pub fn outer_value(&self, p: C64) -> Result<f64> {
        Ok(1.0 - self.values(p)?.iter().sum::<f64>())
    }

    fn values_and_gradients_inner(&self, p: C64, grad: bool) -> Result<(Vec<f64>, Vec<C64>)> {
        let Some(first) = self.measures.first() else {
            return Ok((Vec::new(), Vec::new()));
        };
        let disc = &first.disc;
        disc.domain.require_inside(p)?;
        let dens: Vec<&[C64]> = self.measures.iter().map(|m| m.trace.as_slice()).collect();
        let (mut vals, mut grads) = disc.cauchy(p, &dens, grad);
        for (j, m) in self.measures.iter().enumerate() {
            let (lv, lg) = disc.log_terms(p, &m.log_strengths);
            vals[j] += lv;
            if grad {
                grads[j] += lg;
            }
        }
        Ok((vals, grads))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::BoundaryCurve;
    use approx::assert_abs_diff_eq;

    fn circle(x: f64, y: f64, r: f64) -> BoundaryCurve {
        BoundaryCurve::circle(C64::new(x, y), r).unwrap()
    }

    fn disc() -> PlanarDomain {
        PlanarDomain::new(circle(0.0, 0.0, 1.0), Vec::new()).unwrap()
    }

    fn annulus() -> PlanarDomain {
        PlanarDomain::new(circle(0.0, 0.0, 2.0), vec![circle(0.0, 0.0, 1.0)]).unwrap()
    }

    #[test]
    fn constant_data() {
        let s = LaplaceSolver::new(&disc(), 64).unwrap().solve(|_, _, _| 1.0).unwrap();
        assert_abs_diff_eq!(s.evaluate(C64::new(0.3, -0.5)).unwrap(), 1.0, epsilon = 1e-13);
        assert_abs_diff_eq!(s.gradient(C64::new(0.3, -0.5)).unwrap().norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn linear_data_on_disc() {
        let s = LaplaceSolver::new(&disc(), 64).unwrap().solve(|_, _, z| z.re).unwrap();
        assert_abs_diff_eq!(s.evaluate(C64::new(0.3, 0.4)).unwrap(), 0.3, epsilon = 1e-13);
        assert_abs_diff_eq!(s.evaluate(C64::new(0.1, 0.0)).unwrap(), 0.1, epsilon = 1e-13);
        let g = s.gradient(C64::new(-0.2, 0.7)).unwrap();
        assert_abs_diff_eq!(g.re, 1.0, epsilon = 1e-11);
        assert_abs_diff_eq!(g.im, 0.0, epsilon = 1e-11);
    }

    #[test]
    fn annulus_harmonic_measure() {
        let hm = harmonic_measures(&annulus(), 128).unwrap();
        let u = |r: f64| (2f64.ln() - r.ln()) / 2f64.ln();
        assert_abs_diff_eq!(hm.values(C64::new(2f64.sqrt(), 0.0)).unwrap()[0], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(hm.values(C64::new(0.0, 2f64.powf(0.75))).unwrap()[0], 0.25, epsilon = 1e-12);
        for r in [1.001, 1.2, 1.7, 1.999] {
            let (v, g) = hm.values_and_gradients(C64::from_polar(r, 0.3)).unwrap();
            assert_abs_diff_eq!(v[0], u(r), epsilon = 1e-10);
            let expected = C64::from_polar(-1.0 / (r * 2f64.ln()), 0.3);
            assert_abs_diff_eq!((g[0] - expected).norm(), 0.0, epsilon = 1e-7);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(LaplaceSolver::new(&disc(), 15), Err(Error::InvalidInput(_))));
        assert!(matches!(LaplaceSolver::new(&disc(), 8), Err(Error::InvalidInput(_))));
        let s = LaplaceSolver::new(&annulus(), 32).unwrap().solve(|_, _, _| 0.0).unwrap();
        assert!(matches!(s.evaluate(C64::new(0.5, 0.0)), Err(Error::PointOutside { .. })));
        assert!(matches!(s.gradient(C64::new(2.0, 1e-9)), Err(Error::NearBoundary { .. })));
        let bad = LaplaceSolver::new(&annulus(), 32).unwrap().solve(|_, _, _| f64::NAN);
        assert!(matches!(bad, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn solution_residual_is_small() {
        let s = LaplaceSolver::new(&annulus(), 128).unwrap().solve(|_, _, z| (z * z).re).unwrap();
        assert!(s.boundary_residual() < 1e-8, "{}", s.boundary_residual());
    }
}
