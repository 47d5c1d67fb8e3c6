//! Marching squares on a regular grid with masked (NaN) nodes.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

/// A level curve in fractional grid coordinates `(i, j)`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Polyline {
    pub points: Vec<(f64, f64)>,
    /// The last point connects back to the first.
    pub closed: bool,
}

/// Edge of the grid: `(vertical, i, j)`; horizontal edges join `(i, j)` to
/// `(i+1, j)`, vertical ones `(i, j)` to `(i, j+1)`.
type EdgeKey = (bool, usize, usize);

/// Level set `{values = level}` of a row-major `nx × ny` field. Cells with a
/// NaN corner are skipped, so curves end where the mask begins.
pub(crate) fn contours(nx: usize, ny: usize, values: &[f64], level: f64) -> Vec<Polyline> {
    debug_assert_eq!(values.len(), nx * ny);
    let at = |i: usize, j: usize| values[j * nx + i] - level;
    let mut crossing: BTreeMap<EdgeKey, (f64, f64)> = BTreeMap::new();
    let mut segments: Vec<(EdgeKey, EdgeKey)> = Vec::new();

    let mut edge_point = |key: EdgeKey| -> EdgeKey {
        crossing.entry(key).or_insert_with(|| {
            let (vertical, i, j) = key;
            let (a, b) = if vertical { (at(i, j), at(i, j + 1)) } else { (at(i, j), at(i + 1, j)) };
            let t = if a == b { 0.5 } else { (a / (a - b)).clamp(0.0, 1.0) };
            if vertical {
                (i as f64, j as f64 + t)
            } else {
                (i as f64 + t, j as f64)
            }
        });
        key
    };

    for j in 0..ny.saturating_sub(1) {
        for i in 0..nx.saturating_sub(1) {
            let c = [at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)];
            if c.iter().any(|v| v.is_nan()) {
                continue;
            }
            let b = c.map(|v| v >= 0.0);
            let edges = [(false, i, j), (true, i + 1, j), (false, i, j + 1), (true, i, j)];
            let cut: Vec<usize> = (0..4).filter(|&e| b[e] != b[(e + 1) % 4]).collect();
            match cut.len() {
                2 => segments.push((edge_point(edges[cut[0]]), edge_point(edges[cut[1]]))),
                4 => {
                    let center = c.iter().sum::<f64>() / 4.0 >= 0.0;
                    let pairs = if center == b[0] { [(0, 1), (2, 3)] } else { [(3, 0), (1, 2)] };
                    for (p, q) in pairs {
                        segments.push((edge_point(edges[p]), edge_point(edges[q])));
                    }
                }
                _ => {}
            }
        }
    }

    let mut incident: BTreeMap<EdgeKey, Vec<usize>> = BTreeMap::new();
    for (s, (a, b)) in segments.iter().enumerate() {
        incident.entry(*a).or_default().push(s);
        incident.entry(*b).or_default().push(s);
    }
    let mut used = vec![false; segments.len()];
    let mut out = Vec::new();
    let walk = |start: EdgeKey, first: usize, used: &mut Vec<bool>| {
        let mut keys = vec![start];
        let mut cur = start;
        let mut seg = Some(first);
        while let Some(s) = seg {
            used[s] = true;
            let (a, b) = segments[s];
            cur = if a == cur { b } else { a };
            keys.push(cur);
            seg = incident[&cur].iter().copied().find(|&t| !used[t]);
        }
        let closed = keys.len() > 2 && keys.first() == keys.last();
        if closed {
            keys.pop();
        }
        Polyline { points: keys.iter().map(|k| crossing[k]).collect(), closed }
    };
    let ends: Vec<(EdgeKey, usize)> =
        incident.iter().filter(|(_, s)| s.len() == 1).map(|(k, s)| (*k, s[0])).collect();
    for (key, s) in ends {
        if !used[s] {
            out.push(walk(key, s, &mut used));
        }
    }
    for s in 0..segments.len() {
        if !used[s] {
            out.push(walk(segments[s].0, s, &mut used));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(n: usize, f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
        (0..n * n).map(|k| f((k % n) as f64, (k / n) as f64)).collect()
    }

    #[test]
    fn circle_is_one_closed_curve() {
        let n = 41;
        let v = field(n, |x, y| ((x - 20.0).powi(2) + (y - 20.0).powi(2)).sqrt());
        let curves = contours(n, n, &v, 10.0);
        assert_eq!(curves.len(), 1);
        assert!(curves[0].closed);
        for &(x, y) in &curves[0].points {
            let r = ((x - 20.0).powi(2) + (y - 20.0).powi(2)).sqrt();
            assert!((r - 10.0).abs() < 0.1);
        }
    }

    #[test]
    fn masked_rows_cut_curves_open() {
        let n = 21;
        let mut v = field(n, |x, _| x);
        for j in 8..12 {
            for i in 0..n {
                v[j * n + i] = f64::NAN;
            }
        }
        let curves = contours(n, n, &v, 10.5);
        assert_eq!(curves.len(), 2);
        assert!(curves.iter().all(|c| !c.closed));
        assert!(contours(n, n, &v, 100.0).is_empty());
    }

    #[test]
    fn saddle_produces_two_curves() {
        let n = 21;
        let v = field(n, |x, y| (x - 10.0) * (y - 10.0) + 0.01);
        let curves = contours(n, n, &v, 0.0);
        assert_eq!(curves.len(), 2);
    }
}
