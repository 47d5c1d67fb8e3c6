//! One-dimensional quadrature rules.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_traits::Float;

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
///
/// Nodes come from Newton iteration on `P_n` started at the Chebyshev-like
/// guess `cos(π(i - 1/4)/(n + 1/2))`; accurate to rounding for `n ≤ 1000`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0, "need at least one node");
    let mut x = alloc::vec![0.0; n];
    let mut w = alloc::vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, z);
        if d != 0.0 {
            dp = d;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// `(P_n(z), P_n'(z))` by the three-term recurrence.
fn legendre(n: usize, z: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, z);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Gauss–Legendre rule mapped to `[a, b]`.
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    (x.iter().map(|t| mid + half * t).collect(), w.iter().map(|v| v * half).collect())
}

/// Periodic trapezoid nodes `2πi/n` with the common weight `2π/n`.
pub fn trapezoid(n: usize) -> (Vec<f64>, f64) {
    ((0..n).map(|i| TAU * i as f64 / n as f64).collect(), TAU / n as f64)
}

/// Nodes and weights for `∫_0^1 x^γ f(x) dx`, `γ > -1` (Gauss–Jacobi with
/// `α = 0`, `β = γ`, mapped from `[-1, 1]`), via Golub–Welsch.
pub fn gauss_jacobi_01(n: usize, gamma: f64) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0 && gamma > -1.0, "need n > 0 and γ > -1");
    let b = gamma;
    let mut d = alloc::vec![0.0; n];
    let mut e = alloc::vec![0.0; n];
    for (i, di) in d.iter_mut().enumerate() {
        let s = 2.0 * i as f64 + b;
        *di = if i == 0 { b / (b + 2.0) } else { b * b / (s * (s + 2.0)) };
    }
    for i in 1..n {
        let k = i as f64;
        let s = 2.0 * k + b;
        e[i - 1] = (4.0 * k * k * (k + b) * (k + b) / (s * s * (s + 1.0) * (s - 1.0))).sqrt();
    }
    let mut z = alloc::vec![0.0; n];
    z[0] = 1.0;
    tridiagonal_ql(&mut d, &mut e, &mut z);
    // μ0 = 2^{γ+1}/(γ+1); mapping to [0, 1] divides the weights by 2^{γ+1}.
    let mu = 1.0 / (gamma + 1.0);
    let mut pairs: Vec<(f64, f64)> = d.iter().zip(&z).map(|(t, v)| ((1.0 + t) / 2.0, mu * v * v)).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

/// Implicit QL on a symmetric tridiagonal matrix (`d` diagonal, `e[i]` the
/// entry between `i` and `i + 1`), applying the rotations to the row vector `z`.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64], z: &mut [f64]) {
    let n = d.len();
    for l in 0..n {
        for _ in 0..60 {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn exact_for_polynomials() {
        for n in [1, 2, 5, 16, 64] {
            let (x, w) = gauss_legendre(n);
            assert_abs_diff_eq!(w.iter().sum::<f64>(), 2.0, epsilon = 1e-13);
            let deg = 2 * n - 1;
            let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32 - 1)).sum();
            // ∫ x^{deg-1} over [-1,1], deg - 1 even
            assert_abs_diff_eq!(q, 2.0 / deg as f64, epsilon = 1e-13);
        }
    }

    #[test]
    fn mapped_interval() {
        let (x, w) = gauss_legendre_on(12, 1.0, 2.0);
        let q: f64 = x.iter().zip(&w).map(|(x, w)| w / x).sum();
        assert_abs_diff_eq!(q, 2f64.ln(), epsilon = 1e-14);
    }

    #[test]
    fn trapezoid_spectral_on_periodic() {
        // ∫_0^{2π} 1/(2 + cos t) dt = 2π/√3
        let (t, h) = trapezoid(64);
        let q: f64 = t.iter().map(|t| h / (2.0 + t.cos())).sum();
        assert_abs_diff_eq!(q, TAU / 3f64.sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn jacobi_weight_moments() {
        let (x, w) = gauss_jacobi_01(12, 0.0);
        let (gx, gw) = gauss_legendre_on(12, 0.0, 1.0);
        for i in 0..12 {
            assert!((x[i] - gx[i]).abs() < 1e-13 && (w[i] - gw[i]).abs() < 1e-13);
        }
        for gamma in [-0.5, 0.3, 2.7] {
            let (x, w) = gauss_jacobi_01(10, gamma);
            for p in 0..15 {
                let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(p)).sum();
                assert!((q - 1.0 / (gamma + p as f64 + 1.0)).abs() < 1e-13, "{gamma} {p}");
            }
        }
    }
}
