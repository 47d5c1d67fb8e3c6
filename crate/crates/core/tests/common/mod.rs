//! Fixtures and closed-form oracles shared by the integration tests.
#![allow(dead_code)]

use suita_core::{BoundaryCurve, PlanarDomain, C64};

pub fn c(x: f64, y: f64) -> C64 {
    C64::new(x, y)
}

pub fn disc() -> PlanarDomain {
    PlanarDomain::new(BoundaryCurve::circle(c(0.0, 0.0), 1.0).unwrap(), vec![]).unwrap()
}

/// The annulus 1 < |z| < 2.
pub fn annulus() -> PlanarDomain {
    PlanarDomain::new(
        BoundaryCurve::circle(c(0.0, 0.0), 2.0).unwrap(),
        vec![BoundaryCurve::circle(c(0.0, 0.0), 1.0).unwrap()],
    )
    .unwrap()
}

/// Mirror-symmetric triply connected domain: |z| < 2.5 minus two discs of
/// radius 1/2 centred at ±1.
pub fn triple() -> PlanarDomain {
    PlanarDomain::new(
        BoundaryCurve::circle(c(0.0, 0.0), 2.5).unwrap(),
        vec![
            BoundaryCurve::circle(c(-1.0, 0.0), 0.5).unwrap(),
            BoundaryCurve::circle(c(1.0, 0.0), 0.5).unwrap(),
        ],
    )
    .unwrap()
}

/// Harmonic measure of the inner circle of the annulus 1 < |z| < 2.
pub fn annulus_u1(z: C64) -> f64 {
    (2.0 / z.norm()).ln() / 2f64.ln()
}

const RHO: f64 = 0.5;
const TERMS: i32 = 60;

/// Image product `(1−x) Π_{k≥1} (1−ρ^{2k}x)(1−ρ^{2k}/x)` for ρ < |w| < 1.
fn prime(x: C64) -> C64 {
    let mut p = C64::new(1.0, 0.0) - x;
    for k in 1..=TERMS {
        let q = RHO.powi(2 * k);
        p *= (C64::new(1.0, 0.0) - x * q) * (C64::new(1.0, 0.0) - q / x);
    }
    p
}

/// Green function of 1 < |z| < 2 by reflection series (rescaled to ρ < |w| < 1).
pub fn annulus_green(z: C64, z0: C64) -> f64 {
    let (w, a) = (z / 2.0, z0 / 2.0);
    (a * prime(w / a) / prime(w * a.conj())).norm().ln() - a.norm().ln() * w.norm().ln() / RHO.ln()
}

/// Logarithmic capacity of 1 < |z| < 2 at `z0` by reflection series.
pub fn annulus_capacity(z0: C64) -> f64 {
    let a = z0.norm() / 2.0;
    let mut log_c = -prime(C64::new(a * a, 0.0)).norm().ln() - a.ln() * a.ln() / RHO.ln();
    for k in 1..=TERMS {
        log_c += 2.0 * (1.0 - RHO.powi(2 * k)).ln();
    }
    log_c.exp() / 2.0
}
