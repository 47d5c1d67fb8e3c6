//! Randomised invariants.

mod common;

use std::f64::consts::TAU;
use std::sync::OnceLock;

use common::*;
use proptest::prelude::*;
use suita_core::geometry::{homology_coefficients, standard_cycles, winding_number};
use suita_core::green::green_function;
use suita_core::locus::condition_residual;
use suita_core::periods::CYCLE_OFFSET_FRACTION;
use suita_core::{dist_to_integer, Containment, HarmonicMeasureSet, LaplaceSolver, PlanarDomain, C64};

fn triple_solver() -> &'static (PlanarDomain, LaplaceSolver, HarmonicMeasureSet) {
    static CELL: OnceLock<(PlanarDomain, LaplaceSolver, HarmonicMeasureSet)> = OnceLock::new();
    CELL.get_or_init(|| {
        let d = triple();
        let s = LaplaceSolver::new(&d, 256).unwrap();
        let m = s.harmonic_measures().unwrap();
        (d, s, m)
    })
}

fn interior_point(d: &PlanarDomain, x: f64, y: f64, margin: f64) -> Option<C64> {
    let z = c(x, y);
    (matches!(d.contains(z), Containment::Inside) && d.boundary_distance(z) > margin).then_some(z)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn measures_partition_unity(x in -2.5..2.5f64, y in -2.5..2.5f64) {
        let (d, _, m) = triple_solver();
        if let Some(z) = interior_point(d, x, y, 0.02) {
            let u = m.values(z).unwrap();
            let outer = m.outer_value(z).unwrap();
            prop_assert!((u.iter().sum::<f64>() + outer - 1.0).abs() < 1e-12);
            for v in u.iter().chain([&outer]) {
                prop_assert!(*v > 0.0 && *v < 1.0);
            }
        }
    }

    #[test]
    fn green_negative_and_symmetric(x in -2.5..2.5f64, y in -2.5..2.5f64, s in -2.5..2.5f64, t in -2.5..2.5f64) {
        let (d, solver, _) = triple_solver();
        // Poles need a couple of node spacings of room for the boundary data to resolve.
        if let (Some(z), Some(w)) = (interior_point(d, x, y, 0.1), interior_point(d, s, t, 0.1)) {
            prop_assume!((z - w).norm() > 0.05);
            let gz = green_function(solver, z).unwrap();
            let gw = green_function(solver, w).unwrap();
            let a = gz.value(w).unwrap();
            prop_assert!(a < 0.0);
            prop_assert!((a - gw.value(z).unwrap()).abs() < 1e-6);
        }
    }

    #[test]
    fn residual_ignores_integer_shifts(x in -2.5..2.5f64, y in -2.5..2.5f64, k in 0u32..6, p in -1.0..1.0f64, n in -3i32..3) {
        let (d, _, m) = triple_solver();
        if let Some(z) = interior_point(d, x, y, 0.02) {
            let a = condition_residual(z, m, &[p, -p], k).unwrap();
            let b = condition_residual(z, m, &[p + f64::from(n), -p], k).unwrap();
            prop_assert!((a - b).abs() < 1e-12);
            prop_assert!((0.0..=0.5).contains(&a));
        }
    }

    #[test]
    fn integer_distance(x in -1e6..1e6f64) {
        let r = dist_to_integer(x);
        prop_assert!((0.0..=0.5).contains(&r));
        prop_assert!((dist_to_integer(x + 7.0) - r).abs() < 1e-6);
    }

    #[test]
    fn annulus_oracle_symmetric(r in 1.05..1.95f64, t in 0.0..TAU, s in 1.05..1.95f64, u in 0.0..TAU) {
        let z = C64::from_polar(r, t);
        let w = C64::from_polar(s, u);
        prop_assume!((z - w).norm() > 1e-3);
        prop_assert!((annulus_green(z, w) - annulus_green(w, z)).abs() < 1e-11);
        prop_assert!(annulus_green(z, w) < 0.0);
    }
}

#[test]
fn standard_cycles_form_a_basis() {
    let d = triple();
    let cycles = standard_cycles(&d, CYCLE_OFFSET_FRACTION).unwrap();
    for (j, gamma) in cycles.iter().enumerate() {
        let coeffs = homology_coefficients(gamma, &d).unwrap();
        let expected: Vec<i64> = (0..cycles.len()).map(|i| i64::from(i == j)).collect();
        assert_eq!(coeffs, expected);
        let w = winding_number(gamma, d.hole_point(j), d.clearance()).unwrap();
        assert_eq!(w.value, 1);
    }
}
