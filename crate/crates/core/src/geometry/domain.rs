use alloc::vec::Vec;
use core::f64::consts::TAU;
use core::fmt;

use num_traits::Float;

use super::curve::{segments_intersect, BoundaryCurve};
use crate::error::{Error, Result};
use crate::C64;

/// Identifies one boundary component of a [`PlanarDomain`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurveId {
    /// The outer curve, boundary of the unbounded complementary component.
    Outer,
    /// Zero-based hole index.
    Hole(usize),
}

impl fmt::Display for CurveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveId::Outer => f.write_str("outer curve"),
            CurveId::Hole(j) => write!(f, "hole {}", j + 1),
        }
    }
}

/// Result of classifying a point against a domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Containment {
    /// Strictly inside, farther than the clearance from every curve.
    Inside,
    /// Outside the closed domain, farther than the clearance from every curve.
    Outside,
    /// Within the clearance of a boundary curve; carries the distance.
    NearBoundary(f64),
}

/// Bounded domain of connectivity `n`: one outer curve and `n - 1` holes.
#[derive(Debug, Clone)]
pub struct PlanarDomain {
    outer: BoundaryCurve,
    holes: Vec<BoundaryCurve>,
    hole_points: Vec<C64>,
    clearance: f64,
}

impl PlanarDomain {
    /// Relative clearance used when none is given: `1e-6 × diameter`.
    pub const DEFAULT_RELATIVE_CLEARANCE: f64 = 1e-6;

    /// Validates the configuration of the curves and builds the domain.
    pub fn new(outer: BoundaryCurve, holes: Vec<BoundaryCurve>) -> Result<Self> {
        let clearance = Self::DEFAULT_RELATIVE_CLEARANCE * outer.diameter();
        for (j, hole) in holes.iter().enumerate() {
            if curves_cross(&outer, hole) || min_separation(&outer, hole) < clearance {
                return Err(Error::CurvesOverlap { first: CurveId::Outer, second: CurveId::Hole(j) });
            }
            if !hole.samples().iter().all(|&p| outer.encloses(p)) {
                return Err(Error::HoleOutsideOuter { hole: j });
            }
        }
        for i in 0..holes.len() {
            for j in (i + 1)..holes.len() {
                if curves_cross(&holes[i], &holes[j]) || min_separation(&holes[i], &holes[j]) < clearance {
                    return Err(Error::CurvesOverlap { first: CurveId::Hole(i), second: CurveId::Hole(j) });
                }
                if holes[i].encloses(holes[j].samples()[0]) {
                    return Err(Error::NestedHoles { outer: i, inner: j });
                }
                if holes[j].encloses(holes[i].samples()[0]) {
                    return Err(Error::NestedHoles { outer: j, inner: i });
                }
            }
        }
        let hole_points = holes.iter().map(BoundaryCurve::interior_point).collect();
        Ok(PlanarDomain { outer, holes, hole_points, clearance })
    }

    /// Replaces the near-boundary clearance.
    pub fn with_clearance(mut self, clearance: f64) -> Self {
        self.clearance = clearance;
        self
    }

    /// Overrides the anchor point of hole `j` (used for the logarithmic
    /// sources and the negative-power trial functions).
    pub fn with_hole_point(mut self, j: usize, p: C64) -> Result<Self> {
        let hole = self.holes.get(j).ok_or_else(|| Error::invalid("hole index out of range"))?;
        if !hole.encloses(p) || hole.distance(p).0 <= self.clearance {
            return Err(Error::InvalidInput(alloc::format!("anchor ({}, {}) is not strictly inside hole {}", p.re, p.im, j + 1)));
        }
        self.hole_points[j] = p;
        Ok(self)
    }

    /// Connectivity `n` (number of boundary curves).
    pub fn connectivity(&self) -> usize {
        self.holes.len() + 1
    }

    /// The outer curve.
    pub fn outer(&self) -> &BoundaryCurve {
        &self.outer
    }

    /// The hole curves.
    pub fn holes(&self) -> &[BoundaryCurve] {
        &self.holes
    }

    /// Curve by identifier.
    pub fn curve(&self, id: CurveId) -> &BoundaryCurve {
        match id {
            CurveId::Outer => &self.outer,
            CurveId::Hole(j) => &self.holes[j],
        }
    }

    /// All curves, outer first.
    pub fn curves(&self) -> impl Iterator<Item = (CurveId, &BoundaryCurve)> + '_ {
        core::iter::once((CurveId::Outer, &self.outer))
            .chain(self.holes.iter().enumerate().map(|(j, h)| (CurveId::Hole(j), h)))
    }

    /// A representative point strictly inside hole `j`; also the anchor of
    /// the auxiliary logarithmic sources.
    pub fn hole_point(&self, j: usize) -> C64 {
        self.hole_points[j]
    }

    /// Diameter of the outer curve's bounding box.
    pub fn diameter(&self) -> f64 {
        self.outer.diameter()
    }

    /// Bounding box of the domain.
    pub fn bounding_box(&self) -> (C64, C64) {
        self.outer.bounding_box()
    }

    /// Near-boundary clearance.
    pub fn clearance(&self) -> f64 {
        self.clearance
    }

    /// Distance from `p` to the nearest boundary curve.
    pub fn boundary_distance(&self, p: C64) -> f64 {
        self.curves().map(|(_, c)| c.distance(p).0).fold(f64::INFINITY, f64::min)
    }

    /// Classifies `p`.
    pub fn contains(&self, p: C64) -> Containment {
        let d = self.boundary_distance(p);
        if d < self.clearance {
            return Containment::NearBoundary(d);
        }
        if self.outer.encloses(p) && !self.holes.iter().any(|h| h.encloses(p)) {
            Containment::Inside
        } else {
            Containment::Outside
        }
    }

    /// True when `p` is inside and at least `margin` from the boundary.
    pub fn is_inside_with_margin(&self, p: C64, margin: f64) -> bool {
        matches!(self.contains(p), Containment::Inside) && self.boundary_distance(p) >= margin
    }

    /// Fails unless `p` is strictly inside (beyond the clearance).
    pub fn require_inside(&self, p: C64) -> Result<()> {
        match self.contains(p) {
            Containment::Inside => Ok(()),
            Containment::Outside => Err(Error::PointOutside { x: p.re, y: p.im }),
            Containment::NearBoundary(distance) => Err(Error::NearBoundary { x: p.re, y: p.im, distance }),
        }
    }

    /// Minimal distance between hole `j` and every other boundary curve.
    pub fn hole_gap(&self, j: usize) -> f64 {
        let hole = &self.holes[j];
        self.curves()
            .filter(|(id, _)| *id != CurveId::Hole(j))
            .map(|(_, c)| min_separation(hole, c))
            .fold(f64::INFINITY, f64::min)
    }
}

fn boxes_overlap(a: &BoundaryCurve, b: &BoundaryCurve) -> bool {
    let (alo, ahi) = a.bounding_box();
    let (blo, bhi) = b.bounding_box();
    !(ahi.re < blo.re || bhi.re < alo.re || ahi.im < blo.im || bhi.im < alo.im)
}

fn polygon(c: &BoundaryCurve, n: usize) -> Vec<C64> {
    (0..n).map(|i| c.point(TAU * i as f64 / n as f64)).collect()
}

fn curves_cross(a: &BoundaryCurve, b: &BoundaryCurve) -> bool {
    if !boxes_overlap(a, b) {
        return false;
    }
    let n = 512;
    let pa = polygon(a, n);
    let pb = polygon(b, n);
    for i in 0..n {
        let (p, q) = (pa[i], pa[(i + 1) % n]);
        for j in 0..n {
            let (r, s) = (pb[j], pb[(j + 1) % n]);
            if p.re.max(q.re) < r.re.min(s.re)
                || r.re.max(s.re) < p.re.min(q.re)
                || p.im.max(q.im) < r.im.min(s.im)
                || r.im.max(s.im) < p.im.min(q.im)
            {
                continue;
            }
            if segments_intersect(p, q, r, s) {
                return true;
            }
        }
    }
    false
}

/// Minimal distance between two curves, refined from the samples of `a`.
fn min_separation(a: &BoundaryCurve, b: &BoundaryCurve) -> f64 {
    let coarse: Vec<f64> = a.samples().iter().map(|&p| b.distance(p).0).collect();
    let n = coarse.len();
    let mut best = f64::INFINITY;
    for i in 0..n {
        if coarse[i] <= coarse[(i + n - 1) % n] && coarse[i] <= coarse[(i + 1) % n] {
            // Golden-section search on the neighbouring parameter interval.
            let h = TAU / n as f64;
            let t0 = TAU * i as f64 / n as f64;
            let f = |t: f64| b.distance(a.point(t)).0;
            let (mut lo, mut hi) = (t0 - h, t0 + h);
            let g = 0.5 * (5.0f64.sqrt() - 1.0);
            let mut x1 = hi - g * (hi - lo);
            let mut x2 = lo + g * (hi - lo);
            let (mut f1, mut f2) = (f(x1), f(x2));
            for _ in 0..60 {
                if f1 < f2 {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - g * (hi - lo);
                    f1 = f(x1);
                } else {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + g * (hi - lo);
                    f2 = f(x2);
                }
            }
            best = best.min(f1.min(f2)).min(coarse[i]);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn circle(x: f64, y: f64, r: f64) -> BoundaryCurve {
        BoundaryCurve::circle(C64::new(x, y), r).unwrap()
    }

    fn annulus() -> PlanarDomain {
        PlanarDomain::new(circle(0.0, 0.0, 2.0), alloc::vec![circle(0.0, 0.0, 1.0)]).unwrap()
    }

    #[test]
    fn annulus_and_disc() {
        assert_eq!(annulus().connectivity(), 2);
        let disc = PlanarDomain::new(circle(0.0, 0.0, 1.0), Vec::new()).unwrap();
        assert_eq!(disc.connectivity(), 1);
    }

    #[test]
    fn contains_annulus_points() {
        let a = annulus();
        assert_eq!(a.contains(C64::new(1.5, 0.0)), Containment::Inside);
        assert_eq!(a.contains(C64::new(0.5, 0.0)), Containment::Outside);
        assert_eq!(a.contains(C64::new(2.5, 0.0)), Containment::Outside);
        assert!(matches!(a.contains(C64::new(2.0000001, 0.0)), Containment::NearBoundary(d) if d < 2e-7));
    }

    #[test]
    fn intersecting_holes_rejected() {
        let r = PlanarDomain::new(circle(0.0, 0.0, 3.0), alloc::vec![circle(-0.5, 0.0, 0.7), circle(0.5, 0.0, 0.7)]);
        assert_eq!(r.unwrap_err(), Error::CurvesOverlap { first: CurveId::Hole(0), second: CurveId::Hole(1) });
    }

    #[test]
    fn hole_outside_and_nested() {
        let r = PlanarDomain::new(circle(0.0, 0.0, 1.0), alloc::vec![circle(5.0, 0.0, 0.5)]);
        assert_eq!(r.unwrap_err(), Error::HoleOutsideOuter { hole: 0 });
        let r = PlanarDomain::new(circle(0.0, 0.0, 3.0), alloc::vec![circle(0.0, 0.0, 2.0), circle(0.0, 0.0, 0.5)]);
        assert_eq!(r.unwrap_err(), Error::NestedHoles { outer: 0, inner: 1 });
        let r = PlanarDomain::new(circle(0.0, 0.0, 1.0), alloc::vec![circle(0.5, 0.0, 0.6)]);
        assert_eq!(r.unwrap_err(), Error::CurvesOverlap { first: CurveId::Outer, second: CurveId::Hole(0) });
    }

    #[test]
    fn gaps() {
        let d = PlanarDomain::new(circle(0.0, 0.0, 3.0), alloc::vec![circle(-1.0, 0.0, 0.5), circle(1.2, 0.0, 0.4)]).unwrap();
        assert_abs_diff_eq!(d.hole_gap(0), 1.3, epsilon = 1e-9);
        assert_abs_diff_eq!(d.hole_gap(1), 1.3, epsilon = 1e-9);
        let e = PlanarDomain::new(circle(0.0, 0.0, 3.0), alloc::vec![circle(-1.0, 0.0, 0.5), circle(1.2, 0.0, 0.6)]).unwrap();
        assert_abs_diff_eq!(e.hole_gap(1), 1.1, epsilon = 1e-9);
    }
}
