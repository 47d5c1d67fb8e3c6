//! Domain and weight files.
//!
//! Domain: `{"curves": [{"kind": "circle", "center": [x, y], "radius": r,
//! "role": "outer" | "hole"} | {"kind": "fourier", "coeffs": [[re, im], ...],
//! "role": ...}], "clearance": c?}`; holes may carry `"anchor": [x, y]`.
//!
//! Weight: `{"k": int?, "a": real?, "c": {"kind": "one" | "exp", "beta": real}?,
//! "v": {"logs": [{"q": [x, y], "s": real}], "poly": [[re, im], ...]}?}`.

use std::path::Path;

use serde::Deserialize;
use suita_core::error::CurveDefect;
use suita_core::periods::{LogCharge, WeightFamily, WeightPotential, WeightSpec};
use suita_core::{BoundaryCurve, PlanarDomain, C64};
use thiserror::Error;

/// Reasons a domain or weight file is rejected.
#[derive(Debug, Error)]
pub enum SpecError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed {what}: {message}")]
    Malformed { what: &'static str, message: String },
    #[error("domain has no outer curve")]
    NoOuter,
    #[error("domain has {0} outer curves; exactly one is allowed")]
    ManyOuter(usize),
    #[error("curve {index}: {defect}")]
    Curve { index: usize, defect: CurveDefect },
    #[error("anchor given for the outer curve")]
    OuterAnchor,
    #[error(transparent)]
    Domain(#[from] suita_core::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Role {
    Outer,
    Hole,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum CurveSpec {
    Circle { center: [f64; 2], radius: f64, role: Role, anchor: Option<[f64; 2]> },
    Fourier { coeffs: Vec<[f64; 2]>, role: Role, anchor: Option<[f64; 2]> },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DomainFile {
    curves: Vec<CurveSpec>,
    clearance: Option<f64>,
}

fn point(p: [f64; 2]) -> C64 {
    C64::new(p[0], p[1])
}

/// Parses and validates a domain description.
pub fn parse_domain(text: &str) -> Result<PlanarDomain, SpecError> {
    let file: DomainFile =
        serde_json::from_str(text).map_err(|e| SpecError::Malformed { what: "domain", message: e.to_string() })?;
    let mut outer = Vec::new();
    let mut holes = Vec::new();
    for (index, spec) in file.curves.iter().enumerate() {
        let (curve, role, anchor) = match spec {
            CurveSpec::Circle { center, radius, role, anchor } => (BoundaryCurve::circle(point(*center), *radius), *role, *anchor),
            CurveSpec::Fourier { coeffs, role, anchor } => {
                let c: Vec<C64> = coeffs.iter().map(|&c| point(c)).collect();
                (BoundaryCurve::fourier(&c), *role, *anchor)
            }
        };
        let curve = curve.map_err(|defect| SpecError::Curve { index, defect })?;
        match role {
            Role::Outer if anchor.is_some() => return Err(SpecError::OuterAnchor),
            Role::Outer => outer.push(curve),
            Role::Hole => holes.push((curve, anchor)),
        }
    }
    let outer = match outer.len() {
        0 => return Err(SpecError::NoOuter),
        1 => outer.pop().expect("one outer curve"),
        n => return Err(SpecError::ManyOuter(n)),
    };
    let anchors: Vec<Option<[f64; 2]>> = holes.iter().map(|h| h.1).collect();
    let mut domain = PlanarDomain::new(outer, holes.into_iter().map(|h| h.0).collect())?;
    if let Some(c) = file.clearance {
        if !(c > 0.0 && c.is_finite()) {
            return Err(SpecError::Malformed { what: "domain", message: "clearance must be positive".into() });
        }
        domain = domain.with_clearance(c);
    }
    for (j, a) in anchors.into_iter().enumerate() {
        if let Some(a) = a {
            domain = domain.with_hole_point(j, point(a))?;
        }
    }
    Ok(domain)
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum FamilySpec {
    One,
    Exp { beta: f64 },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChargeSpec {
    q: [f64; 2],
    s: f64,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct PotentialSpec {
    #[serde(default)]
    logs: Vec<ChargeSpec>,
    #[serde(default)]
    poly: Vec<[f64; 2]>,
}

/// A weight file before `k` is settled.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightFile {
    k: Option<u32>,
    a: Option<f64>,
    c: Option<FamilySpec>,
    #[serde(default)]
    v: PotentialSpec,
}

impl WeightFile {
    /// Order stated in the file.
    pub fn k(&self) -> Option<u32> {
        self.k
    }

    /// Weight for order `k`; `a` defaults to `k + 1`, `c` to one, `v` to 0.
    pub fn resolve(&self, k: u32) -> WeightSpec {
        WeightSpec {
            k,
            a: self.a.unwrap_or(f64::from(k) + 1.0),
            family: match self.c {
                None | Some(FamilySpec::One) => WeightFamily::One,
                Some(FamilySpec::Exp { beta }) => WeightFamily::ExpDecay { beta },
            },
            v: WeightPotential {
                logs: self.v.logs.iter().map(|c| LogCharge { point: point(c.q), strength: c.s }).collect(),
                poly: self.v.poly.iter().map(|&c| point(c)).collect(),
            },
        }
    }
}

/// Parses a weight description.
pub fn parse_weight(text: &str) -> Result<WeightFile, SpecError> {
    serde_json::from_str(text).map_err(|e| SpecError::Malformed { what: "weight", message: e.to_string() })
}

/// Reads a file into a string.
pub fn read(path: &Path) -> Result<String, SpecError> {
    std::fs::read_to_string(path).map_err(|source| SpecError::Io { path: path.display().to_string(), source })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn annulus_and_disc() {
        let d = parse_domain(
            r#"{"curves":[{"kind":"circle","center":[0,0],"radius":2,"role":"outer"},
                          {"kind":"circle","center":[0,0],"radius":1,"role":"hole"}]}"#,
        )
        .unwrap();
        assert_eq!(d.connectivity(), 2);
        let d = parse_domain(r#"{"curves":[{"kind":"fourier","coeffs":[[0,0],[1,0]],"role":"outer"}]}"#).unwrap();
        assert_eq!(d.connectivity(), 1);
    }

    #[test]
    fn distinct_diagnostics() {
        let overlap = r#"{"curves":[{"kind":"circle","center":[0,0],"radius":3,"role":"outer"},
            {"kind":"circle","center":[-0.5,0],"radius":1,"role":"hole"},
            {"kind":"circle","center":[0.5,0],"radius":1,"role":"hole"}]}"#;
        assert!(matches!(parse_domain(overlap), Err(SpecError::Domain(suita_core::Error::CurvesOverlap { .. }))));
        let outside = r#"{"curves":[{"kind":"circle","center":[0,0],"radius":1,"role":"outer"},
            {"kind":"circle","center":[5,0],"radius":1,"role":"hole"}]}"#;
        assert!(matches!(parse_domain(outside), Err(SpecError::Domain(suita_core::Error::HoleOutsideOuter { .. }))));
        assert!(matches!(parse_domain("{"), Err(SpecError::Malformed { .. })));
        assert!(matches!(parse_domain(r#"{"curves":[]}"#), Err(SpecError::NoOuter)));
        let bad = r#"{"curves":[{"kind":"circle","center":[0,0],"radius":-1,"role":"outer"}]}"#;
        assert!(matches!(parse_domain(bad), Err(SpecError::Curve { index: 0, .. })));
    }

    #[test]
    fn weight_defaults() {
        let w = parse_weight(r#"{"v":{"logs":[{"q":[0,0],"s":0.5}]}}"#).unwrap();
        let spec = w.resolve(2);
        assert_eq!(spec.a, 3.0);
        assert_eq!(spec.v.logs.len(), 1);
        let w = parse_weight(r#"{"k":1,"a":0.5,"c":{"kind":"exp","beta":2}}"#).unwrap();
        assert_eq!(w.resolve(1).family, WeightFamily::ExpDecay { beta: 2.0 });
        assert!(parse_weight(r#"{"k":1,"bogus":0}"#).is_err());
    }
}
