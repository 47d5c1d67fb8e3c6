use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_traits::Float;

use crate::error::CurveDefect;
use crate::C64;

/// Maximum number of Fourier coefficients accepted for a curve.
pub const MAX_FOURIER_COEFFS: usize = 64;

/// Number of cached samples used for distance queries and validation.
const SAMPLES: usize = 256;

/// Geometric description of a closed analytic curve.
#[derive(Debug, Clone, PartialEq)]
pub enum CurveShape {
    /// `center + radius e^{it}`.
    Circle {
        /// Center of the circle.
        center: C64,
        /// Radius, positive.
        radius: f64,
    },
    /// `z(t) = Σ c_m e^{imt}` over the listed `(m, c_m)` modes.
    Fourier {
        /// Mode numbers and coefficients.
        modes: Vec<(i32, C64)>,
    },
}

/// A simple closed analytic curve, parametrized counterclockwise over `[0, 2π)`.
#[derive(Debug, Clone)]
pub struct BoundaryCurve {
    shape: CurveShape,
    samples: Vec<C64>,
    bbox: (C64, C64),
}

impl PartialEq for BoundaryCurve {
    fn eq(&self, other: &Self) -> bool {
        self.shape == other.shape
    }
}

impl BoundaryCurve {
    /// Circle of the given center and radius.
    pub fn circle(center: C64, radius: f64) -> Result<Self, CurveDefect> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(CurveDefect::BadRadius(radius));
        }
        if !(center.re.is_finite() && center.im.is_finite()) {
            return Err(CurveDefect::NonFinite);
        }
        Ok(Self::from_shape(CurveShape::Circle { center, radius }))
    }

    /// Curve from Fourier coefficients listed in the order of modes
    /// `0, 1, -1, 2, -2, ...`.
    ///
    /// A clockwise parametrization is reversed, so the stored curve is always
    /// counterclockwise.
    pub fn fourier(coeffs: &[C64]) -> Result<Self, CurveDefect> {
        if coeffs.len() > MAX_FOURIER_COEFFS {
            return Err(CurveDefect::TooManyCoefficients(coeffs.len()));
        }
        if coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(CurveDefect::NonFinite);
        }
        let mut modes: Vec<(i32, C64)> = coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| (mode_of_index(i), c))
            .filter(|(m, c)| *m == 0 || c.norm() > 0.0)
            .collect();
        if modes.iter().all(|(m, _)| *m == 0) {
            return Err(CurveDefect::Degenerate);
        }
        // Signed area π Σ m |c_m|²; negative means clockwise.
        let area: f64 = modes.iter().map(|(m, c)| *m as f64 * c.norm_sqr()).sum::<f64>() * PI;
        if area == 0.0 {
            return Err(CurveDefect::Degenerate);
        }
        if area < 0.0 {
            for (m, _) in modes.iter_mut() {
                *m = -*m;
            }
        }
        modes.sort_by_key(|(m, _)| *m);
        let curve = Self::from_shape(CurveShape::Fourier { modes });
        curve.validate()?;
        Ok(curve)
    }

    fn from_shape(shape: CurveShape) -> Self {
        let mut curve = BoundaryCurve { shape, samples: Vec::new(), bbox: (C64::new(0.0, 0.0), C64::new(0.0, 0.0)) };
        curve.samples = (0..SAMPLES).map(|i| curve.point(TAU * i as f64 / SAMPLES as f64)).collect();
        let (mut lo, mut hi) = (curve.samples[0], curve.samples[0]);
        for z in &curve.samples {
            lo = C64::new(lo.re.min(z.re), lo.im.min(z.im));
            hi = C64::new(hi.re.max(z.re), hi.im.max(z.im));
        }
        // Pad by the worst chord sagitta so the box encloses the true curve.
        let pad = match &curve.shape {
            CurveShape::Circle { .. } => 0.0,
            CurveShape::Fourier { modes } => {
                let h = TAU / SAMPLES as f64;
                modes.iter().map(|(m, c)| (*m as f64).powi(2) * c.norm()).sum::<f64>() * h * h / 8.0
            }
        };
        curve.bbox = (lo - C64::new(pad, pad), hi + C64::new(pad, pad));
        if let CurveShape::Circle { center, radius } = curve.shape {
            curve.bbox = (center - C64::new(radius, radius), center + C64::new(radius, radius));
        }
        curve
    }

    /// Underlying shape.
    pub fn shape(&self) -> &CurveShape {
        &self.shape
    }

    /// `z(t)`.
    pub fn point(&self, t: f64) -> C64 {
        match &self.shape {
            CurveShape::Circle { center, radius } => center + C64::from_polar(*radius, t),
            CurveShape::Fourier { modes } => modes.iter().map(|(m, c)| c * C64::from_polar(1.0, *m as f64 * t)).sum(),
        }
    }

    /// `z'(t)`.
    pub fn derivative(&self, t: f64) -> C64 {
        match &self.shape {
            CurveShape::Circle { radius, .. } => C64::new(0.0, *radius) * C64::from_polar(1.0, t),
            CurveShape::Fourier { modes } => modes
                .iter()
                .map(|(m, c)| c * C64::new(0.0, *m as f64) * C64::from_polar(1.0, *m as f64 * t))
                .sum(),
        }
    }

    /// `z''(t)`.
    pub fn second_derivative(&self, t: f64) -> C64 {
        match &self.shape {
            CurveShape::Circle { radius, .. } => -*radius * C64::from_polar(1.0, t),
            CurveShape::Fourier { modes } => modes
                .iter()
                .map(|(m, c)| c * (-((*m as f64).powi(2))) * C64::from_polar(1.0, *m as f64 * t))
                .sum(),
        }
    }

    /// Signed curvature; positive where the curve turns left.
    pub fn curvature(&self, t: f64) -> f64 {
        let d1 = self.derivative(t);
        let d2 = self.second_derivative(t);
        (d1.conj() * d2).im / d1.norm().powi(3)
    }

    /// Unit normal pointing out of the region enclosed by the curve.
    pub fn outward_normal(&self, t: f64) -> C64 {
        let d = self.derivative(t);
        C64::new(0.0, -1.0) * d / d.norm()
    }

    /// Enclosed area.
    pub fn area(&self) -> f64 {
        match &self.shape {
            CurveShape::Circle { radius, .. } => PI * radius * radius,
            CurveShape::Fourier { modes } => PI * modes.iter().map(|(m, c)| *m as f64 * c.norm_sqr()).sum::<f64>(),
        }
    }

    /// Area centroid of the enclosed region.
    pub fn centroid(&self) -> C64 {
        match &self.shape {
            CurveShape::Circle { center, .. } => *center,
            CurveShape::Fourier { .. } => {
                // Cx = (1/A)∮ x²/2 dy, Cy = -(1/A)∮ y²/2 dx, trapezoid rule.
                let n = 512;
                let (mut cx, mut cy) = (0.0, 0.0);
                for i in 0..n {
                    let t = TAU * i as f64 / n as f64;
                    let z = self.point(t);
                    let d = self.derivative(t);
                    cx += 0.5 * z.re * z.re * d.im;
                    cy -= 0.5 * z.im * z.im * d.re;
                }
                let h = TAU / n as f64;
                C64::new(cx * h, cy * h) / self.area()
            }
        }
    }

    /// A point strictly inside the region enclosed by the curve.
    pub fn interior_point(&self) -> C64 {
        let c = self.centroid();
        if self.encloses(c) && self.distance(c).0 > 1e-3 * self.diameter() {
            return c;
        }
        // Non-convex curve: step inward from the sample with the largest inscribed room.
        let mut best = c;
        let mut best_dist = 0.0;
        for i in 0..SAMPLES {
            let t = TAU * i as f64 / SAMPLES as f64;
            for frac in [0.25, 0.1, 0.03] {
                let p = self.point(t) - self.outward_normal(t) * (frac * self.diameter());
                if self.encloses(p) {
                    let d = self.distance(p).0;
                    if d > best_dist {
                        best_dist = d;
                        best = p;
                    }
                }
            }
        }
        best
    }

    /// Cached samples at `t_i = 2πi/256`.
    pub fn samples(&self) -> &[C64] {
        &self.samples
    }

    /// Axis-aligned box `(lower-left, upper-right)` enclosing the curve.
    pub fn bounding_box(&self) -> (C64, C64) {
        self.bbox
    }

    /// Diagonal of the bounding box.
    pub fn diameter(&self) -> f64 {
        (self.bbox.1 - self.bbox.0).norm()
    }

    /// Distance from `p` to the curve and the parameter of the nearest point.
    pub fn distance(&self, p: C64) -> (f64, f64) {
        if let CurveShape::Circle { center, radius } = self.shape {
            let d = p - center;
            let t = if d.norm() > 0.0 { wrap(d.im.atan2(d.re)) } else { 0.0 };
            return ((d.norm() - radius).abs(), t);
        }
        let n = self.samples.len();
        let dist2: Vec<f64> = self.samples.iter().map(|z| (z - p).norm_sqr()).collect();
        // Refine every discrete local minimum with Newton on d/dt |z(t) - p|².
        let mut best = (f64::INFINITY, 0.0);
        for i in 0..n {
            let prev = dist2[(i + n - 1) % n];
            let next = dist2[(i + 1) % n];
            if dist2[i] <= prev && dist2[i] <= next {
                let t = self.refine_nearest(p, TAU * i as f64 / n as f64);
                let d = (self.point(t) - p).norm();
                if d < best.0 {
                    best = (d, t);
                }
            }
        }
        best
    }

    fn refine_nearest(&self, p: C64, t0: f64) -> f64 {
        let h = TAU / self.samples.len() as f64;
        let (lo, hi) = (t0 - h, t0 + h);
        let mut t = t0;
        for _ in 0..30 {
            let z = self.point(t) - p;
            let d1 = self.derivative(t);
            let d2 = self.second_derivative(t);
            let g = (z.conj() * d1).re;
            let dg = d1.norm_sqr() + (z.conj() * d2).re;
            if dg <= 0.0 {
                break;
            }
            let step = g / dg;
            let next = (t - step).clamp(lo, hi);
            if (next - t).abs() < 1e-15 {
                t = next;
                break;
            }
            t = next;
        }
        wrap(t)
    }

    /// True when `p` lies in the open region enclosed by the curve.
    ///
    /// Uses the side of the nearest boundary point, which is exact as long as
    /// the nearest point is found.
    pub fn encloses(&self, p: C64) -> bool {
        let (lo, hi) = self.bbox;
        if p.re < lo.re || p.re > hi.re || p.im < lo.im || p.im > hi.im {
            return false;
        }
        if let CurveShape::Circle { center, radius } = self.shape {
            return (p - center).norm() < radius;
        }
        let (d, t) = self.distance(p);
        if d == 0.0 {
            return false;
        }
        let off = p - self.point(t);
        (self.outward_normal(t).conj() * off).re < 0.0
    }

    /// Checks that the tangent never vanishes and that the curve is simple.
    pub(crate) fn validate(&self) -> Result<(), CurveDefect> {
        let n = 1024;
        let scale = self.diameter();
        let mut min_speed = f64::INFINITY;
        let mut pts = Vec::with_capacity(n);
        for i in 0..n {
            let t = TAU * i as f64 / n as f64;
            min_speed = min_speed.min(self.derivative(t).norm());
            pts.push(self.point(t));
        }
        if !(min_speed > 1e-9 * scale) {
            return Err(CurveDefect::VanishingTangent);
        }
        if polygon_self_intersects(&pts) {
            return Err(CurveDefect::SelfIntersecting);
        }
        Ok(())
    }
}

fn wrap(t: f64) -> f64 {
    let r = t % TAU;
    if r < 0.0 {
        r + TAU
    } else {
        r
    }
}

fn mode_of_index(i: usize) -> i32 {
    let i = i as i32;
    if i % 2 == 1 {
        (i + 1) / 2
    } else {
        -(i / 2)
    }
}

fn cross(a: C64, b: C64) -> f64 {
    a.re * b.im - a.im * b.re
}

/// Proper or touching intersection of segments `[a, b]` and `[c, d]`.
pub(crate) fn segments_intersect(a: C64, b: C64, c: C64, d: C64) -> bool {
    let d1 = cross(b - a, c - a);
    let d2 = cross(b - a, d - a);
    let d3 = cross(d - c, a - c);
    let d4 = cross(d - c, b - c);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    let on = |p: C64, q: C64, r: C64, s: f64| {
        s == 0.0 && r.re >= p.re.min(q.re) && r.re <= p.re.max(q.re) && r.im >= p.im.min(q.im) && r.im <= p.im.max(q.im)
    };
    on(a, b, c, d1) || on(a, b, d, d2) || on(c, d, a, d3) || on(c, d, b, d4)
}

pub(crate) fn polygon_self_intersects(pts: &[C64]) -> bool {
    let n = pts.len();
    for i in 0..n {
        let (a, b) = (pts[i], pts[(i + 1) % n]);
        for j in (i + 2)..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (c, d) = (pts[j], pts[(j + 1) % n]);
            if a.re.max(b.re) < c.re.min(d.re)
                || c.re.max(d.re) < a.re.min(b.re)
                || a.im.max(b.im) < c.im.min(d.im)
                || c.im.max(d.im) < a.im.min(b.im)
            {
                continue;
            }
            if segments_intersect(a, b, c, d) {
                return true;
            }
        }
    }
    false
}
