//! The equality locus `{z0 : (k+1) u_j(z0) + c_j ∈ ℤ, j = 1..n-1}`.
//!
//! Harmonic measures and their gradients are sampled once on a regular grid
//! ([`SampledField`]); every extraction and search reuses those samples, so the
//! expensive part can be computed in parallel by the caller and assembled with
//! [`SampledField::from_samples`].
//!
//! Doubly connected domains give level curves of `(k+1) u_1 + c_1`, traced
//! by marching squares and pulled onto the level by Newton steps along the
//! gradient. Higher connectivity gives isolated points, seeded per grid cell
//! and refined by damped Gauss–Newton on `z ↦ ((k+1) u_j(z) + c_j - m_j)_j`.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::Float;

use crate::contour::contours;
use crate::error::{Error, Result};
use crate::geometry::{standard_cycles, PlanarDomain};
use crate::laplace::{HarmonicMeasureSet, LaplaceSolver};
use crate::periods::{weight_periods, Calibration, PeriodOrientation, PeriodVector, WeightSpec, CYCLE_OFFSET_FRACTION};
use crate::{dist_to_integer, C64};

/// Default membership tolerance.
pub const DEFAULT_TOL: f64 = 1e-4;
/// Newton iteration cap.
pub const MAX_NEWTON_ITERATIONS: usize = 40;
/// Grid nodes closer than this many cells to the boundary are not sampled.
pub const GRID_MARGIN_CELLS: f64 = 2.0;
/// Largest order accepted by [`find_equality_point`].
pub const MAX_SEARCH_ORDER: u32 = 200;

/// Parameters of a locus extraction.
#[derive(Debug, Clone, PartialEq)]
pub struct LocusQuery {
    /// Weight; `k` and the potential `v` enter the condition.
    pub weight: WeightSpec,
    /// Grid nodes per axis.
    pub resolution: usize,
    /// Membership tolerance, in `(0, 0.5)`.
    pub tol: f64,
    /// Newton-refine extracted vertices and points.
    pub refine: bool,
}

impl LocusQuery {
    /// Query with the default tolerance and refinement on.
    pub fn new(weight: WeightSpec, resolution: usize) -> Self {
        LocusQuery { weight, resolution, tol: DEFAULT_TOL, refine: true }
    }

    /// Same query with another tolerance.
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    /// Checks `tol ∈ (0, 0.5)` and `resolution ≥ 16`.
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol < 0.5) {
            return Err(Error::invalid("tolerance must lie in (0, 0.5)"));
        }
        if self.resolution < 16 {
            return Err(Error::invalid("grid resolution must be at least 16"));
        }
        Ok(())
    }
}

/// `max_j dist((k+1) u_j(z) + c_j, ℤ)`; zero for simply connected domains.
pub fn condition_residual(z: C64, measures: &HarmonicMeasureSet, periods: &[f64], k: u32) -> Result<f64> {
    let u = measures.values(z)?;
    Ok(residual_of(&u, periods, k))
}

fn residual_of(u: &[f64], periods: &[f64], k: u32) -> f64 {
    let kk = f64::from(k) + 1.0;
    u.iter().zip(periods).map(|(u, c)| dist_to_integer(kk * u + c)).fold(0.0, f64::max)
}

/// Regular sampling grid over the domain's bounding box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridLayout {
    /// Lower-left node.
    pub origin: C64,
    /// Horizontal spacing.
    pub dx: f64,
    /// Vertical spacing.
    pub dy: f64,
    /// Nodes per row.
    pub nx: usize,
    /// Rows.
    pub ny: usize,
}

impl GridLayout {
    /// `resolution × resolution` nodes spanning the bounding box.
    pub fn new(domain: &PlanarDomain, resolution: usize) -> Result<Self> {
        if resolution < 2 {
            return Err(Error::invalid("grid resolution must be at least 2"));
        }
        let (lo, hi) = domain.bounding_box();
        let steps = (resolution - 1) as f64;
        Ok(GridLayout { origin: lo, dx: (hi.re - lo.re) / steps, dy: (hi.im - lo.im) / steps, nx: resolution, ny: resolution })
    }

    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    /// Always false for a constructed layout.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Node `idx` in row-major order.
    pub fn node(&self, idx: usize) -> C64 {
        self.at((idx % self.nx) as f64, (idx / self.nx) as f64)
    }

    /// Point at fractional grid coordinates.
    pub fn at(&self, i: f64, j: f64) -> C64 {
        self.origin + C64::new(i * self.dx, j * self.dy)
    }

    /// Larger of the two spacings.
    pub fn step(&self) -> f64 {
        self.dx.max(self.dy)
    }

    /// Minimum boundary distance of a sampled node.
    pub fn margin(&self) -> f64 {
        GRID_MARGIN_CELLS * self.step()
    }
}

/// Harmonic measures and gradients at one grid node.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSample {
    /// `u_j`, `j = 1..n-1`.
    pub values: Vec<f64>,
    /// `∇u_j` as `∂x + i ∂y`.
    pub gradients: Vec<C64>,
}

/// Samples node `idx`; `None` when the node is outside the domain or within
/// the grid margin of the boundary.
pub fn sample_node(domain: &PlanarDomain, measures: &HarmonicMeasureSet, layout: &GridLayout, idx: usize) -> Result<Option<FieldSample>> {
    let z = layout.node(idx);
    if !domain.is_inside_with_margin(z, layout.margin()) {
        return Ok(None);
    }
    let (values, gradients) = measures.values_and_gradients(z)?;
    Ok(Some(FieldSample { values, gradients }))
}

/// Harmonic measures sampled on a grid.
#[derive(Debug, Clone)]
pub struct SampledField {
    layout: GridLayout,
    samples: Vec<Option<FieldSample>>,
}

impl SampledField {
    /// Samples every node sequentially.
    pub fn sample(domain: &PlanarDomain, measures: &HarmonicMeasureSet, layout: GridLayout) -> Result<Self> {
        let samples = (0..layout.len()).map(|i| sample_node(domain, measures, &layout, i)).collect::<Result<Vec<_>>>()?;
        Self::from_samples(layout, samples)
    }

    /// Assembles samples computed elsewhere, in row-major node order.
    pub fn from_samples(layout: GridLayout, samples: Vec<Option<FieldSample>>) -> Result<Self> {
        if samples.len() != layout.len() {
            return Err(Error::invalid("sample count does not match the grid"));
        }
        Ok(SampledField { layout, samples })
    }

    /// Grid layout.
    pub fn layout(&self) -> &GridLayout {
        &self.layout
    }

    /// Sample at node `idx`.
    pub fn sample_at(&self, idx: usize) -> Option<&FieldSample> {
        self.samples[idx].as_ref()
    }

    /// Condition residual at every node, NaN where unsampled.
    pub fn residual_grid(&self, periods: &[f64], k: u32) -> ResidualGrid {
        let values = self
            .samples
            .iter()
            .map(|s| s.as_ref().map_or(f64::NAN, |s| residual_of(&s.values, periods, k)))
            .collect();
        ResidualGrid { layout: self.layout, values }
    }

    fn level_field(&self, j: usize, kk: f64, c: f64) -> Vec<f64> {
        self.samples.iter().map(|s| s.as_ref().map_or(f64::NAN, |s| kk * s.values[j] + c)).collect()
    }
}

/// `max_j dist((k+1)u_j + c_j, ℤ)` on the grid (NaN outside the sampled set).
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualGrid {
    /// Grid layout.
    pub layout: GridLayout,
    /// Row-major values.
    pub values: Vec<f64>,
}

impl ResidualGrid {
    /// Smallest sampled residual and where it occurs.
    pub fn minimum(&self) -> Option<(C64, f64)> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_nan())
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, v)| (self.layout.node(i), *v))
    }
}

/// A level curve of `(k+1) u_1 + c_1` at integer level `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocusCurve {
    /// Integer level.
    pub m: i64,
    /// Vertices.
    pub points: Vec<C64>,
    /// Condition residual at each vertex.
    pub residuals: Vec<f64>,
    /// Whether the last vertex joins the first.
    pub closed: bool,
}

/// An isolated equality point.
#[derive(Debug, Clone, PartialEq)]
pub struct LocusPoint {
    /// Integer vector `(m_1..m_{n-1})`.
    pub m: Vec<i64>,
    /// Location.
    pub z: C64,
    /// Condition residual.
    pub residual: f64,
}

/// Locus extraction output.
#[derive(Debug, Clone, PartialEq)]
pub struct LocusReport {
    /// Order `k`.
    pub k: u32,
    /// Calibrated weight periods `c_j`.
    pub periods: Vec<f64>,
    /// Level curves (doubly connected domains).
    pub curves: Vec<LocusCurve>,
    /// Equality points (connectivity ≥ 3).
    pub points: Vec<LocusPoint>,
    /// Seeds or vertices whose refinement did not reach the tolerance; the
    /// residual is the one reached.
    pub unresolved: Vec<LocusPoint>,
    /// Sampled residual field.
    pub residual_grid: ResidualGrid,
}

impl LocusReport {
    /// No curves and no points.
    pub fn is_empty(&self) -> bool {
        self.curves.is_empty() && self.points.is_empty()
    }
}

/// Outcome of [`feasibility_bound`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Feasibility {
    /// No point can satisfy the condition with `v ≡ 0`.
    Impossible,
    /// The counting bound does not rule out equality.
    Possible,
}

/// With `v ≡ 0`, equality needs positive integers `m_1..m_n` summing to
/// `k + 1`, which is impossible when `k < n - 1`.
pub fn feasibility_bound(domain: &PlanarDomain, k: u32) -> Feasibility {
    if (k as usize) + 1 < domain.connectivity() {
        Feasibility::Impossible
    } else {
        Feasibility::Possible
    }
}

/// An equality point found by [`find_equality_point`].
#[derive(Debug, Clone, PartialEq)]
pub struct EqualityPoint {
    /// Smallest order with a point.
    pub k: u32,
    /// Location.
    pub z: C64,
    /// Condition residual.
    pub residual: f64,
    /// Levels `m_j = (k+1) u_j(z)`.
    pub m: Vec<i64>,
}

/// Extraction over a sampled field; the weight periods must be calibrated.
pub struct LocusEngine<'a> {
    domain: &'a PlanarDomain,
    measures: &'a HarmonicMeasureSet,
    field: &'a SampledField,
}

impl<'a> LocusEngine<'a> {
    /// Binds a domain, its harmonic measures and a sampled field.
    pub fn new(domain: &'a PlanarDomain, measures: &'a HarmonicMeasureSet, field: &'a SampledField) -> Self {
        LocusEngine { domain, measures, field }
    }

    /// Extracts the locus for order `k` and weight periods `periods`.
    pub fn extract(&self, k: u32, periods: &PeriodVector, tol: f64, refine: bool) -> Result<LocusReport> {
        if periods.orientation != PeriodOrientation::Calibrated {
            return Err(Error::invalid("locus extraction needs calibrated weight periods"));
        }
        let c = &periods.values;
        if c.len() != self.measures.len() {
            return Err(Error::invalid("period count does not match the number of holes"));
        }
        if !(tol > 0.0 && tol < 0.5) {
            return Err(Error::invalid("tolerance must lie in (0, 0.5)"));
        }
        let mut report = LocusReport {
            k,
            periods: c.clone(),
            curves: Vec::new(),
            points: Vec::new(),
            unresolved: Vec::new(),
            residual_grid: self.field.residual_grid(c, k),
        };
        match c.len() {
            0 => {}
            1 => self.level_curves(k, c[0], tol, refine, &mut report)?,
            _ => self.isolated_points(k, c, tol, refine, &mut report)?,
        }
        Ok(report)
    }

    fn level_curves(&self, k: u32, c: f64, tol: f64, refine: bool, report: &mut LocusReport) -> Result<()> {
        let kk = f64::from(k) + 1.0;
        let layout = self.field.layout();
        let f = self.field.level_field(0, kk, c);
        for m in admissible_levels(c, kk) {
            for line in contours(layout.nx, layout.ny, &f, m as f64) {
                let mut points = Vec::with_capacity(line.points.len());
                let mut residuals = Vec::with_capacity(line.points.len());
                let mut dropped = false;
                for &(i, j) in &line.points {
                    let z0 = layout.at(i, j);
                    let (z, r) = if refine { self.newton(z0, kk, &[c], &[m])? } else { (z0, self.level_residual(z0, kk, &[c], &[m])) };
                    if r <= tol {
                        points.push(z);
                        residuals.push(r);
                    } else {
                        dropped = true;
                        report.unresolved.push(LocusPoint { m: vec![m], z, residual: r });
                    }
                }
                if !points.is_empty() {
                    report.curves.push(LocusCurve { m, points, residuals, closed: line.closed && !dropped });
                }
            }
        }
        report.curves.sort_by(|a, b| a.m.cmp(&b.m).then_with(|| cmp_z(leftmost(&a.points), leftmost(&b.points))));
        Ok(())
    }

    fn isolated_points(&self, k: u32, c: &[f64], tol: f64, refine: bool, report: &mut LocusReport) -> Result<()> {
        let kk = f64::from(k) + 1.0;
        let layout = *self.field.layout();
        let nj = c.len();
        let mut found: Vec<LocusPoint> = Vec::new();
        let mut failed: Vec<LocusPoint> = Vec::new();
        for cj in 0..layout.ny - 1 {
            for ci in 0..layout.nx - 1 {
                let corners = [(ci, cj), (ci + 1, cj), (ci + 1, cj + 1), (ci, cj + 1)];
                let samples: Option<Vec<&FieldSample>> =
                    corners.iter().map(|&(i, j)| self.field.sample_at(j * layout.nx + i)).collect();
                let Some(samples) = samples else { continue };
                let mut ranges = Vec::with_capacity(nj);
                for j in 0..nj {
                    let vals = samples.iter().map(|s| kk * s.values[j] + c[j]);
                    let lo = vals.clone().fold(f64::INFINITY, f64::min);
                    let hi = vals.fold(f64::NEG_INFINITY, f64::max);
                    // Curvature allowance from the spread of the gradients.
                    let mut spread = 0.0f64;
                    for a in 0..4 {
                        for b in a + 1..4 {
                            spread = spread.max((samples[a].gradients[j] - samples[b].gradients[j]).norm());
                        }
                    }
                    let margin = 0.25 * kk * spread * layout.step();
                    let levels: Vec<i64> = ((lo - margin).ceil() as i64..=(hi + margin).floor() as i64)
                        .filter(|&m| (m as f64) > c[j] && (m as f64) < c[j] + kk)
                        .collect();
                    if levels.is_empty() {
                        break;
                    }
                    ranges.push(levels);
                }
                if ranges.len() < nj {
                    continue;
                }
                let center = layout.at(ci as f64 + 0.5, cj as f64 + 0.5);
                let value: Vec<f64> = (0..nj).map(|j| samples.iter().map(|s| kk * s.values[j] + c[j]).sum::<f64>() / 4.0).collect();
                let grad: Vec<C64> = (0..nj).map(|j| samples.iter().map(|s| s.gradients[j] * kk).sum::<C64>() / 4.0).collect();
                for m in combinations(&ranges) {
                    let resid: Vec<f64> = (0..nj).map(|j| value[j] - m[j] as f64).collect();
                    let seed = match gauss_newton_step(&resid, &grad) {
                        Some(step) => {
                            if step.re.abs() > layout.dx || step.im.abs() > layout.dy {
                                continue;
                            }
                            center + step
                        }
                        None => center,
                    };
                    let (z, r) = if refine { self.newton(seed, kk, c, &m)? } else { (seed, self.level_residual(seed, kk, c, &m)) };
                    let point = LocusPoint { m, z, residual: r };
                    if r <= tol {
                        found.push(point);
                    } else {
                        failed.push(point);
                    }
                }
            }
        }
        let radius = GRID_MARGIN_CELLS * layout.step();
        let found = dedup(found, radius);
        let failed: Vec<LocusPoint> = dedup(failed, radius)
            .into_iter()
            .filter(|f| !found.iter().any(|p| p.m == f.m && (p.z - f.z).norm() <= radius))
            .collect();
        report.points = found;
        report.unresolved.extend(failed);
        Ok(())
    }

    /// `max_j |(k+1) u_j + c_j - m_j|`, infinite outside the domain.
    fn level_residual(&self, z: C64, kk: f64, c: &[f64], m: &[i64]) -> f64 {
        match self.measures.values(z) {
            Ok(u) => u.iter().zip(c).zip(m).map(|((u, c), m)| (kk * u + c - *m as f64).abs()).fold(0.0, f64::max),
            Err(_) => f64::INFINITY,
        }
    }

    /// Damped Gauss–Newton on `((k+1) u_j + c_j - m_j)_j`, halving the step
    /// until the residual decreases.
    fn newton(&self, z0: C64, kk: f64, c: &[f64], m: &[i64]) -> Result<(C64, f64)> {
        let eval = |z: C64| -> Option<(Vec<f64>, Vec<C64>)> {
            if !self.domain.is_inside_with_margin(z, 0.0) {
                return None;
            }
            let (u, g) = self.measures.values_and_gradients(z).ok()?;
            let r = u.iter().zip(c).zip(m).map(|((u, c), m)| kk * u + c - *m as f64).collect();
            Some((r, g.iter().map(|g| g * kk).collect()))
        };
        let norm = |r: &[f64]| r.iter().fold(0.0f64, |a, b| a.max(b.abs()));
        let Some((mut r, mut g)) = eval(z0) else { return Ok((z0, f64::INFINITY)) };
        let mut z = z0;
        for _ in 0..MAX_NEWTON_ITERATIONS {
            let current = norm(&r);
            if current < 1e-13 {
                break;
            }
            let Some(step) = gauss_newton_step(&r, &g) else { break };
            let mut t = 1.0;
            let mut accepted = None;
            while t > 1e-3 {
                let trial = z + step * t;
                if let Some((rt, gt)) = eval(trial) {
                    if norm(&rt) < current {
                        accepted = Some((trial, rt, gt));
                        break;
                    }
                }
                t *= 0.5;
            }
            let Some((zn, rn, gn)) = accepted else { break };
            z = zn;
            r = rn;
            g = gn;
        }
        Ok((z, norm(&r)))
    }

    /// Smallest `k ∈ [n-1, k_max]` with an equality point for `v ≡ 0`.
    pub fn search(&self, k_max: u32, target: f64) -> Result<Option<EqualityPoint>> {
        let n = self.domain.connectivity();
        let zero = PeriodVector { values: vec![0.0; n - 1], orientation: PeriodOrientation::Calibrated };
        let k_min = (n - 1) as u32;
        if k_max < k_min {
            return Ok(None);
        }
        for k in k_min..=k_max {
            let report = self.extract(k, &zero, target, true)?;
            if let Some(best) = report.points.iter().min_by(|a, b| a.residual.total_cmp(&b.residual).then_with(|| cmp_z(a.z, b.z))) {
                return Ok(Some(EqualityPoint { k, z: best.z, residual: best.residual, m: best.m.clone() }));
            }
        }
        Ok(None)
    }
}

/// Integers `m` with `0 < m - c < k + 1`.
fn admissible_levels(c: f64, kk: f64) -> impl Iterator<Item = i64> {
    let lo = c.floor() as i64 + 1;
    let hi = (c + kk).ceil() as i64 - 1;
    (lo..=hi).filter(move |&m| (m as f64) > c && (m as f64) < c + kk)
}

/// Minimum-norm solution of `J δ = -r` where row `j` of `J` is `∇f_j`.
fn gauss_newton_step(r: &[f64], g: &[C64]) -> Option<C64> {
    let (mut a11, mut a12, mut a22, mut b1, mut b2) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (r, g) in r.iter().zip(g) {
        a11 += g.re * g.re;
        a12 += g.re * g.im;
        a22 += g.im * g.im;
        b1 -= g.re * r;
        b2 -= g.im * r;
    }
    let scale = a11 + a22;
    if !(scale > 0.0) || !scale.is_finite() {
        return None;
    }
    let det = a11 * a22 - a12 * a12;
    if det.abs() > 1e-10 * scale * scale {
        Some(C64::new((a22 * b1 - a12 * b2) / det, (a11 * b2 - a12 * b1) / det))
    } else {
        // Rank one: step along the dominant gradient direction.
        let dir = if a11 >= a22 { C64::new(a11, a12) } else { C64::new(a12, a22) };
        let dir = dir / dir.norm();
        let along = b1 * dir.re + b2 * dir.im;
        Some(dir * (along / scale))
    }
}

fn combinations(ranges: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for r in ranges {
        out = out.into_iter().flat_map(|p| r.iter().map(move |&m| {
            let mut q = p.clone();
            q.push(m);
            q
        })).collect();
    }
    out
}

fn cmp_z(a: C64, b: C64) -> Ordering {
    a.re.total_cmp(&b.re).then_with(|| a.im.total_cmp(&b.im))
}

fn leftmost(points: &[C64]) -> C64 {
    points.iter().copied().min_by(|a, b| cmp_z(*a, *b)).unwrap_or_default()
}

/// Keeps the lowest-residual point of every cluster of equal `m` within
/// `radius`; output sorted by `m`, then position.
fn dedup(mut points: Vec<LocusPoint>, radius: f64) -> Vec<LocusPoint> {
    points.sort_by(|a, b| a.residual.total_cmp(&b.residual).then_with(|| cmp_z(a.z, b.z)));
    let mut kept: Vec<LocusPoint> = Vec::new();
    for p in points {
        if !kept.iter().any(|q| q.m == p.m && (q.z - p.z).norm() <= radius) {
            kept.push(p);
        }
    }
    kept.sort_by(|a, b| a.m.cmp(&b.m).then_with(|| cmp_z(a.z, b.z)));
    kept
}

/// Full pipeline: harmonic measures at `nodes` per curve, calibrated weight
/// periods, sequential grid sampling, extraction.
pub fn extract_locus(domain: &PlanarDomain, query: &LocusQuery, nodes: usize) -> Result<LocusReport> {
    query.validate()?;
    query.weight.validate(domain)?;
    let measures = LaplaceSolver::new(domain, nodes)?.harmonic_measures()?;
    let periods = locus_periods(domain, &query.weight)?;
    let field = SampledField::sample(domain, &measures, GridLayout::new(domain, query.resolution)?)?;
    LocusEngine::new(domain, &measures, &field).extract(query.weight.k, &periods, query.tol, query.refine)
}

/// Calibrated weight periods on the canonical cycles of `domain`.
pub fn locus_periods(domain: &PlanarDomain, weight: &WeightSpec) -> Result<PeriodVector> {
    if domain.holes().is_empty() {
        return Ok(PeriodVector { values: Vec::new(), orientation: PeriodOrientation::Calibrated });
    }
    let cycles = standard_cycles(domain, CYCLE_OFFSET_FRACTION)?;
    weight_periods(weight, &cycles, &Calibration::run()?)
}

/// Smallest `k ≤ k_max` with a point whose residual is at most `target`, for
/// triply connected domains and `v ≡ 0`.
pub fn find_equality_point(domain: &PlanarDomain, k_max: u32, target: f64, resolution: usize, nodes: usize) -> Result<Option<EqualityPoint>> {
    check_search(domain, k_max)?;
    if feasibility_bound(domain, k_max) == Feasibility::Impossible {
        return Ok(None);
    }
    let measures = LaplaceSolver::new(domain, nodes)?.harmonic_measures()?;
    let field = SampledField::sample(domain, &measures, GridLayout::new(domain, resolution)?)?;
    LocusEngine::new(domain, &measures, &field).search(k_max, target)
}

/// Preconditions of the equality-point search.
pub fn check_search(domain: &PlanarDomain, k_max: u32) -> Result<()> {
    if domain.connectivity() != 3 {
        return Err(Error::InvalidInput(alloc::format!(
            "equality-point search needs a triply connected domain (got connectivity {})",
            domain.connectivity()
        )));
    }
    if k_max > MAX_SEARCH_ORDER {
        return Err(Error::InvalidInput(alloc::format!("kmax must not exceed {MAX_SEARCH_ORDER}")));
    }
    Ok(())
}
