//! Weighted Bergman kernels for higher derivatives,
//! `B^{(k)}(z0) = sup |f^{(k)}(z0)/k!|² / ∫_Ω |f|² ρ dA`, and the Suita ratio.
//!
//! The supremum is the reciprocal of the minimal energy
//! `E = inf { ∫_Ω |f|² ρ dA : f = (z - z0)^k + O((z - z0)^{k+1}) }`. With the
//! (1,1)-form convention `|F|² = 2|f|² dA` the leading factor 2 in the form
//! definition cancels, which the disc value `B^{(0)}(0) = 1/π` confirms.
//!
//! The constraint is built into the trial space: `f = w^k g` with
//! `w = (z - z0)/s` and `g` ranging over polynomials in `(z - c)/R` and
//! negative powers `(d_j/(z - a_j))^p` around each hole, so only the single
//! condition `g(z0) s^{-k} = 1` remains and is eliminated in closed form.
//! Increasing the degree nests the trial spaces, so `B` grows monotonically
//! towards the kernel.
//!
//! Weights that vanish or blow up like a power of `|z - z0|` are integrated on
//! rays from `z0` with a Gauss–Jacobi rule absorbing the power; smooth
//! weights use rays from the outer curve's centroid. A clipped midpoint grid
//! is available as a fallback for awkward geometry.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};
use core::ops::Range;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::geometry::{BoundaryCurve, Containment, CurveShape, PlanarDomain};
use crate::green::GreenData;
use crate::linalg::Cholesky;
use crate::periods::{WeightPotential, WeightSpec};
use crate::quadrature::{gauss_jacobi_01, gauss_legendre};
use crate::C64;

/// Relative pivot threshold of the Gram factorization.
const PIVOT_TOL: f64 = 1e-13;
/// Default node budget of the area quadrature.
pub const DEFAULT_NODE_BUDGET: usize = 200_000;

/// Trial functions `φ_p` before the `w^k` factor.
#[derive(Debug, Clone, PartialEq)]
pub struct HolomorphicBasis {
    center: C64,
    radius: f64,
    anchors: Vec<(C64, f64)>,
    degree: usize,
}

impl HolomorphicBasis {
    /// Polynomials of degree `≤ degree` in `(z - c)/R` and, for each hole,
    /// `(d_j/(z - a_j))^p`, `p = 1..degree`, where `a_j` is the hole's anchor
    /// and `d_j` its distance to the hole's boundary.
    pub fn new(domain: &PlanarDomain, degree: usize) -> Result<Self> {
        let center = domain.outer().centroid();
        let radius = domain.outer().samples().iter().map(|z| (z - center).norm()).fold(0.0, f64::max);
        let anchors = domain
            .holes()
            .iter()
            .enumerate()
            .map(|(j, hole)| {
                let a = domain.hole_point(j);
                if !hole.encloses(a) {
                    return Err(Error::invalid("hole anchor is not inside its hole"));
                }
                Ok((a, hole.distance(a).0))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(HolomorphicBasis { center, radius, anchors, degree })
    }

    /// Number of trial functions.
    pub fn dimension(&self) -> usize {
        self.degree + 1 + self.anchors.len() * self.degree
    }

    /// Highest power used.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Scale `R` of the polynomial part.
    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Writes `φ_p(z)` into `out`.
    pub fn eval_into(&self, z: C64, out: &mut [C64]) {
        let mut idx = 0;
        let t = (z - self.center) / self.radius;
        let mut pw = C64::new(1.0, 0.0);
        for _ in 0..=self.degree {
            out[idx] = pw;
            pw *= t;
            idx += 1;
        }
        for &(a, d) in &self.anchors {
            let t = d / (z - a);
            let mut pw = t;
            for _ in 0..self.degree {
                out[idx] = pw;
                pw *= t;
                idx += 1;
            }
        }
    }

    /// `φ_p(z)` as a vector.
    pub fn eval(&self, z: C64) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); self.dimension()];
        self.eval_into(z, &mut out);
        out
    }
}

/// Area rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AreaRule {
    /// Trapezoid in angle, Gauss–Legendre (Gauss–Jacobi next to a power
    /// singularity) along each ray's intersection with the domain.
    Polar {
        /// Rays.
        angles: usize,
        /// Radial nodes per interval.
        radial: usize,
    },
    /// Midpoints of the `cells × cells` grid cells lying fully inside.
    ClippedGrid {
        /// Cells per axis.
        cells: usize,
    },
}

impl AreaRule {
    /// Polar rule sized for trial degree `m` and order `k`.
    pub fn for_degree(m: usize, k: u32) -> Self {
        let p = m + k as usize;
        AreaRule::Polar { angles: (4 * p + 64).max(128), radial: (p + 24).max(32) }
    }

    /// Polar rule with roughly `budget` nodes per radial interval.
    pub fn with_budget(budget: usize) -> Self {
        let angles = ((2 * budget) as f64).sqrt().max(16.0) as usize;
        AreaRule::Polar { angles, radial: (budget / angles).max(8) }
    }
}

/// An area quadrature node: `∫ F dA ≈ Σ weight · F(z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AreaNode {
    /// Location.
    pub z: C64,
    /// Weight.
    pub weight: f64,
}

/// Area quadrature over the domain. With `singular = Some(γ)` the polar rule
/// is centred at `center` and the first radial interval carries the factor
/// `r^γ` of the integrand (including the polar Jacobian) analytically.
pub fn area_nodes(domain: &PlanarDomain, rule: AreaRule, center: C64, singular: Option<f64>) -> Result<Vec<AreaNode>> {
    match rule {
        AreaRule::Polar { angles, radial } => polar_nodes(domain, angles, radial, center, singular),
        AreaRule::ClippedGrid { cells } => Ok(grid_nodes(domain, cells)),
    }
}

fn polar_nodes(domain: &PlanarDomain, angles: usize, radial: usize, o: C64, singular: Option<f64>) -> Result<Vec<AreaNode>> {
    if angles < 4 || radial < 2 {
        return Err(Error::invalid("polar quadrature needs at least 4 rays and 2 radial nodes"));
    }
    let (gx, gw) = gauss_legendre(radial);
    let jacobi = singular.map(|g| gauss_jacobi_01(radial, g));
    let dtheta = TAU / angles as f64;
    let mut nodes = Vec::new();
    for i in 0..angles {
        let u = C64::from_polar(1.0, (i as f64 + 0.5) * dtheta);
        let mut cuts: Vec<f64> = domain.curves().flat_map(|(_, c)| ray_crossings(c, o, u)).collect();
        cuts.sort_by(f64::total_cmp);
        let mut lo = 0.0;
        for &hi in &cuts {
            if hi - lo > 1e-14 && matches!(domain.contains(o + u * (0.5 * (lo + hi))), Containment::Inside) {
                match (&jacobi, singular) {
                    (Some((jx, jw)), Some(g)) if lo == 0.0 => {
                        for (x, w) in jx.iter().zip(jw) {
                            let r = hi * x;
                            nodes.push(AreaNode { z: o + u * r, weight: dtheta * w * hi.powf(g + 1.0) * r.powf(1.0 - g) });
                        }
                    }
                    _ => {
                        let half = 0.5 * (hi - lo);
                        for (x, w) in gx.iter().zip(&gw) {
                            let r = lo + half * (x + 1.0);
                            nodes.push(AreaNode { z: o + u * r, weight: dtheta * w * half * r });
                        }
                    }
                }
            }
            lo = hi;
        }
    }
    Ok(nodes)
}

/// Distances `r > 0` at which `o + r u` meets the curve.
fn ray_crossings(curve: &BoundaryCurve, o: C64, u: C64) -> Vec<f64> {
    match curve.shape() {
        CurveShape::Circle { center, radius } => {
            let d = o - center;
            let b = (u.conj() * d).re;
            let disc = b * b - (d.norm_sqr() - radius * radius);
            if disc < 0.0 {
                return Vec::new();
            }
            let s = disc.sqrt();
            [-b - s, -b + s].into_iter().filter(|&r| r > 0.0).collect()
        }
        CurveShape::Fourier { .. } => {
            let side = |t: f64| (u.conj() * (curve.point(t) - o)).im;
            let pts = curve.samples();
            let n = pts.len();
            let mut out = Vec::new();
            for i in 0..n {
                let (a, b) = (pts[i], pts[(i + 1) % n]);
                let (fa, fb) = ((u.conj() * (a - o)).im, (u.conj() * (b - o)).im);
                if (fa > 0.0) == (fb > 0.0) {
                    continue;
                }
                // Safeguarded Newton on the curve parameter.
                let (mut t0, mut t1) = (TAU * i as f64 / n as f64, TAU * (i + 1) as f64 / n as f64);
                let mut f0 = fa;
                let mut t = 0.5 * (t0 + t1);
                for _ in 0..60 {
                    let f = side(t);
                    if f == 0.0 {
                        break;
                    }
                    if (f > 0.0) == (f0 > 0.0) {
                        t0 = t;
                        f0 = f;
                    } else {
                        t1 = t;
                    }
                    let df = (u.conj() * curve.derivative(t)).im;
                    let tn = t - f / df;
                    let next = if tn > t0.min(t1) && tn < t0.max(t1) { tn } else { 0.5 * (t0 + t1) };
                    if (next - t).abs() < 1e-15 {
                        t = next;
                        break;
                    }
                    t = next;
                }
                let r = (u.conj() * (curve.point(t) - o)).re;
                if r > 0.0 {
                    out.push(r);
                }
            }
            out
        }
    }
}

fn grid_nodes(domain: &PlanarDomain, cells: usize) -> Vec<AreaNode> {
    let (lo, hi) = domain.bounding_box();
    let (hx, hy) = ((hi.re - lo.re) / cells as f64, (hi.im - lo.im) / cells as f64);
    let half_diag = 0.5 * hx.hypot(hy);
    let mut nodes = Vec::new();
    for j in 0..cells {
        for i in 0..cells {
            let z = lo + C64::new((i as f64 + 0.5) * hx, (j as f64 + 0.5) * hy);
            if domain.is_inside_with_margin(z, half_diag) {
                nodes.push(AreaNode { z, weight: hx * hy });
            }
        }
    }
    nodes
}

/// `ρ_{z0} = e^{-2(k+1-a) G(·, z0) - 2v} c(-2a G(·, z0))`.
#[derive(Debug, Clone, Copy)]
pub struct Weight<'a> {
    spec: &'a WeightSpec,
    green: &'a GreenData,
}

/// Binds a weight specification to the Green function with pole `z0`.
pub fn build_weight<'a>(spec: &'a WeightSpec, green: &'a GreenData) -> Weight<'a> {
    Weight { spec, green }
}

impl Weight<'_> {
    /// Pole `z0`.
    pub fn pole(&self) -> C64 {
        self.green.pole()
    }

    /// True when the weight carries a power of `|z - z0|`.
    pub fn is_singular(&self) -> bool {
        !self.spec.is_green_free()
    }

    /// `ρ(z)`.
    pub fn eval(&self, z: C64) -> Result<f64> {
        let v = self.spec.v.value(z);
        self.eval_with(z, v)
    }

    fn eval_with(&self, z: C64, v: f64) -> Result<f64> {
        let s = self.spec;
        let kk = f64::from(s.k) + 1.0;
        let mut exponent = -2.0 * v;
        let mut factor = 1.0;
        if !s.is_green_free() {
            let g = self.green.value(z)?;
            exponent -= 2.0 * (kk - s.a) * g;
            factor = s.family.eval(-2.0 * s.a * g);
        }
        Ok(exponent.exp() * factor)
    }
}

/// Gram data for one weighted minimization, assembled from quadrature
/// nodes. Partial sums over node ranges can be computed independently and
/// combined in range order with [`BergmanProblem::finish`].
pub struct BergmanProblem<'a> {
    weight: Weight<'a>,
    basis: HolomorphicBasis,
    nodes: Vec<AreaNode>,
    scale: f64,
    /// Interior log charges `(q, s)`, folded into the trial functions.
    zeros: Vec<(C64, u32)>,
    /// `v` without the interior charges.
    reduced_v: WeightPotential,
}

impl<'a> BergmanProblem<'a> {
    /// Sets up the minimization for `B^{(k)}(z0)` with trial degree `degree`.
    pub fn new(weight: Weight<'a>, degree: usize, rule: AreaRule) -> Result<Self> {
        let spec = weight.spec;
        let domain = weight.green.domain();
        let z0 = weight.pole();
        spec.validate(domain)?;
        if (degree as u64) < u64::from(spec.k) {
            return Err(Error::ConstraintRankDeficient(alloc::format!(
                "trial degree {degree} is below the derivative order {}",
                spec.k
            )));
        }
        if !spec.v.value(z0).is_finite() {
            return Err(Error::InvalidWeight("v(z0) = -∞".into()));
        }
        let basis = HolomorphicBasis::new(domain, degree)?;
        let mut zeros = Vec::new();
        let mut reduced_v = WeightPotential { logs: Vec::new(), poly: spec.v.poly.clone() };
        for c in &spec.v.logs {
            if matches!(domain.contains(c.point), Containment::Inside) {
                zeros.push((c.point, c.strength as u32));
            } else {
                reduced_v.logs.push(*c);
            }
        }
        let center = if weight.is_singular() { z0 } else { domain.outer().centroid() };
        let gamma = weight.is_singular().then(|| 2.0 * spec.a * (1.0 + spec.family.beta()) - 1.0);
        let nodes = area_nodes(domain, rule, center, gamma)?;
        if nodes.is_empty() {
            return Err(Error::invalid("area quadrature produced no nodes"));
        }
        let scale = basis.radius();
        Ok(BergmanProblem { weight, basis, nodes, scale, zeros, reduced_v })
    }

    /// Quadrature nodes.
    pub fn nodes(&self) -> &[AreaNode] {
        &self.nodes
    }

    /// Trial space dimension.
    pub fn dimension(&self) -> usize {
        self.basis.dimension()
    }

    /// `ρ(z) |P(z)|²` where `P = Π ((z - q)/R)^s` over interior charges.
    fn reduced_weight(&self, z: C64) -> Result<f64> {
        let mut rho = self.weight.eval_with(z, self.reduced_v.value(z))?;
        for &(_, s) in &self.zeros {
            rho *= self.scale.powi(-2 * s as i32);
        }
        Ok(rho)
    }

    /// `ψ_p(z) = ((z - z0)/R)^k φ_p(z)`.
    fn trial_into(&self, z: C64, out: &mut [C64]) {
        self.basis.eval_into(z, out);
        let w = ((z - self.weight.pole()) / self.scale).powu(self.weight.spec.k);
        for o in out.iter_mut() {
            *o *= w;
        }
    }

    /// Lower triangle of `Σ_{nodes[range]} weight ρ conj(ψ_p) ψ_q`, together
    /// with the largest weight value seen.
    pub fn partial_gram(&self, range: Range<usize>) -> Result<(Vec<C64>, f64)> {
        let d = self.dimension();
        let mut h = vec![C64::new(0.0, 0.0); d * d];
        let mut psi = vec![C64::new(0.0, 0.0); d];
        let mut rho_max = 0.0f64;
        for node in &self.nodes[range] {
            let rho = self.reduced_weight(node.z)?;
            rho_max = rho_max.max(rho);
            self.trial_into(node.z, &mut psi);
            let w = node.weight * rho;
            for p in 0..d {
                let cp = psi[p].conj() * w;
                let row = &mut h[p * d..p * d + p + 1];
                for (q, hpq) in row.iter_mut().enumerate() {
                    *hpq += cp * psi[q];
                }
            }
        }
        Ok((h, rho_max))
    }

    /// Combines partial Gram sums (in order) and solves the minimization.
    pub fn finish(&self, partials: Vec<(Vec<C64>, f64)>) -> Result<BergmanEstimate> {
        let d = self.dimension();
        let mut h = vec![C64::new(0.0, 0.0); d * d];
        let mut rho_max = 0.0f64;
        for (part, m) in partials {
            for (a, b) in h.iter_mut().zip(part) {
                *a += b;
            }
            rho_max = rho_max.max(m);
        }
        // The stored lower triangle holds conj(ψ_p) ψ_q for q ≤ p, i.e. H_pq
        // with H = ∫ conj(ψ) ψᵀ ρ.
        let scale: Vec<f64> = (0..d).map(|p| 1.0 / h[p * d + p].re.sqrt()).collect();
        if scale.iter().any(|s| !s.is_finite()) {
            let index = scale.iter().position(|s| !s.is_finite()).unwrap_or(0);
            return Err(self.indefinite(index));
        }
        for p in 0..d {
            for q in 0..=p {
                h[p * d + q] *= scale[p] * scale[q];
            }
        }
        let chol = Cholesky::factor(d, &h, PIVOT_TOL).map_err(|index| self.indefinite(index))?;
        let z0 = self.weight.pole();
        let k = self.weight.spec.k;
        let mut lead = C64::new(1.0, 0.0);
        for &(q, s) in &self.zeros {
            lead *= ((z0 - q) / self.scale).powu(s);
        }
        lead /= self.scale.powi(k as i32);
        let phi = self.basis.eval(z0);
        // Constraint Σ a_p c_p = 1 with c_p = lead φ_p(z0); the minimizer is
        // a = H⁻¹ conj(c) / B with B = conj(c)ᴴ H⁻¹ conj(c).
        let c_hat: Vec<C64> = phi.iter().zip(&scale).map(|(p, s)| (lead * p).conj() * s).collect();
        let x = chol.solve(&c_hat);
        let b = c_hat.iter().zip(&x).map(|(c, x)| (c.conj() * x).re).sum::<f64>();
        if !(b > 0.0 && b.is_finite()) {
            return Err(Error::ConstraintRankDeficient("trial functions cannot meet the constraint at z0".into()));
        }
        let coefficients = x.iter().zip(&scale).map(|(x, s)| x * s / b).collect();
        Ok(BergmanEstimate {
            value: b,
            energy: 1.0 / b,
            coefficients,
            dimension: d,
            nodes: self.nodes.len(),
            max_weight: rho_max,
            basis: self.basis.clone(),
            pole: z0,
            order: k,
            scale: self.scale,
            zeros: self.zeros.clone(),
        })
    }

    fn indefinite(&self, index: usize) -> Error {
        Error::GramIndefinite { index, nodes: self.nodes.len(), suggested_nodes: 4 * self.nodes.len() }
    }

    /// Sequential assembly and solve.
    pub fn solve(&self) -> Result<BergmanEstimate> {
        let part = self.partial_gram(0..self.nodes.len())?;
        self.finish(vec![part])
    }
}

/// A truncated Bergman kernel value and its minimizer.
#[derive(Debug, Clone, PartialEq)]
pub struct BergmanEstimate {
    /// `B`.
    pub value: f64,
    /// Minimal energy `E = 1/B`.
    pub energy: f64,
    /// Minimizer coefficients on the trial functions.
    pub coefficients: Vec<C64>,
    /// Trial space dimension.
    pub dimension: usize,
    /// Quadrature nodes used.
    pub nodes: usize,
    /// Largest weight value at a node.
    pub max_weight: f64,
    basis: HolomorphicBasis,
    pole: C64,
    order: u32,
    scale: f64,
    zeros: Vec<(C64, u32)>,
}

impl BergmanEstimate {
    /// Minimizer `f(z)`.
    pub fn minimizer(&self, z: C64) -> C64 {
        let phi = self.basis.eval(z);
        let mut f: C64 = phi.iter().zip(&self.coefficients).map(|(p, a)| p * a).sum();
        f *= ((z - self.pole) / self.scale).powu(self.order);
        for &(q, s) in &self.zeros {
            f *= ((z - q) / self.scale).powu(s);
        }
        f
    }

    /// Taylor coefficients `f^{(i)}(z0)/i!`, `i = 0..count`, by a Cauchy
    /// integral over the circle of radius `r` around the pole.
    pub fn taylor_coefficients(&self, count: usize, r: f64) -> Vec<C64> {
        let n = 128.max(4 * count);
        let samples: Vec<C64> =
            (0..n).map(|j| self.minimizer(self.pole + C64::from_polar(r, TAU * j as f64 / n as f64))).collect();
        (0..count)
            .map(|i| {
                let s: C64 = samples
                    .iter()
                    .enumerate()
                    .map(|(j, f)| f * C64::from_polar(1.0, -TAU * (i * j) as f64 / n as f64))
                    .sum();
                s / (n as f64 * r.powi(i as i32))
            })
            .collect()
    }
}

/// `B^{(k)}_{Ω,ρ_{z0}}(z0)` over trial degree `degree`, where `z0` is the
/// pole of `green`.
pub fn bergman_kernel_k(spec: &WeightSpec, green: &GreenData, degree: usize, rule: AreaRule) -> Result<BergmanEstimate> {
    BergmanProblem::new(build_weight(spec, green), degree, rule)?.solve()
}

/// `(∫ c e^{-t} dt) (π/a) e^{-2v(z0)} B / c_β(z0)^{2(k+1)}`; at least 1, with
/// equality exactly on the equality locus.
pub fn suita_ratio(spec: &WeightSpec, green: &GreenData, estimate: &BergmanEstimate) -> Result<f64> {
    let z0 = green.pole();
    let v0 = spec.v.value(z0);
    if !v0.is_finite() {
        return Err(Error::InvalidWeight("v(z0) = -∞".into()));
    }
    let cb = green.capacity();
    if !(cb > 0.0 && cb.is_finite()) {
        return Err(Error::invalid("capacity evaluation failed"));
    }
    let kk = f64::from(spec.k) + 1.0;
    Ok(spec.family.integral() * (PI / spec.a) * (-2.0 * v0).exp() * estimate.value / cb.powf(2.0 * kk))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::green::green_function;
    use crate::laplace::LaplaceSolver;
    use approx::assert_relative_eq;

    fn disc(r: f64) -> PlanarDomain {
        PlanarDomain::new(BoundaryCurve::circle(C64::new(0.0, 0.0), r).unwrap(), Vec::new()).unwrap()
    }

    #[test]
    fn disc_area() {
        let d = disc(1.0);
        let nodes = area_nodes(&d, AreaRule::Polar { angles: 32, radial: 8 }, C64::new(0.3, 0.1), None).unwrap();
        let area: f64 = nodes.iter().map(|n| n.weight).sum();
        assert_relative_eq!(area, PI, max_relative = 1e-6);
        let nodes = area_nodes(&d, AreaRule::Polar { angles: 16, radial: 8 }, C64::new(0.0, 0.0), Some(2.0)).unwrap();
        let m: f64 = nodes.iter().map(|n| n.weight * n.z.norm()).sum();
        assert_relative_eq!(m, TAU / 3.0, max_relative = 1e-12);
    }

    #[test]
    fn disc_kernel_orders() {
        let d = disc(1.0);
        let solver = LaplaceSolver::new(&d, 64).unwrap();
        let g = green_function(&solver, C64::new(0.0, 0.0)).unwrap();
        for k in 0..4 {
            let spec = WeightSpec::trivial(k);
            let est = bergman_kernel_k(&spec, &g, k as usize + 4, AreaRule::for_degree(k as usize + 4, k)).unwrap();
            assert_relative_eq!(est.value, (f64::from(k) + 1.0) / PI, max_relative = 1e-10);
            assert_relative_eq!(suita_ratio(&spec, &g, &est).unwrap(), 1.0, max_relative = 1e-9);
            let t = est.taylor_coefficients(k as usize + 1, 0.3);
            assert!((t[k as usize] - 1.0).norm() < 1e-9);
        }
    }

    #[test]
    fn singular_weight_on_disc() {
        // a = 1, k = 1: ρ = e^{-2G} = 1/|z|² on the unit disc; the minimizer
        // is f = z with energy ∫ dA = π.
        let d = disc(1.0);
        let g = green_function(&LaplaceSolver::new(&d, 64).unwrap(), C64::new(0.0, 0.0)).unwrap();
        let mut spec = WeightSpec::trivial(1);
        spec.a = 1.0;
        let est = bergman_kernel_k(&spec, &g, 6, AreaRule::for_degree(6, 1)).unwrap();
        assert_relative_eq!(est.value, 1.0 / PI, max_relative = 1e-10);
        assert_relative_eq!(suita_ratio(&spec, &g, &est).unwrap(), 1.0, max_relative = 1e-9);
    }

    #[test]
    fn degree_below_order_rejected() {
        let d = disc(1.0);
        let g = green_function(&LaplaceSolver::new(&d, 32).unwrap(), C64::new(0.0, 0.0)).unwrap();
        let r = bergman_kernel_k(&WeightSpec::trivial(3), &g, 2, AreaRule::for_degree(2, 3));
        assert!(matches!(r, Err(Error::ConstraintRankDeficient(_))));
    }
}
