//! Command implementations. Each returns the full output text so that the
//! caller can write it in one piece after all parallel work has finished.

use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use suita_core::bergman::{build_weight, suita_ratio, AreaRule, BergmanProblem};
use suita_core::geometry::standard_cycles;
use suita_core::green::green_function;
use suita_core::locus::{check_search, feasibility_bound, sample_node, Feasibility, GridLayout, LocusEngine, ResidualGrid, SampledField};
use suita_core::periods::{
    character_equality_test, character_mismatch, characters, green_periods, weight_periods, CYCLE_OFFSET_FRACTION,
};
use suita_core::{Calibration, Containment, HarmonicMeasureSet, LaplaceSolver, PlanarDomain, WeightSpec, C64};

use crate::spec::{parse_domain, parse_weight, read, WeightFile};
use crate::{CliError, Command, Common};

/// Nodes per parallel Gram partial sum; fixed so the summation order does
/// not depend on the thread count.
const GRAM_CHUNK: usize = 2048;

/// Thread pool honouring `SUITA_THREADS`.
pub fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("SUITA_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::Validation(format!("SUITA_THREADS must be a positive integer (got `{v}`)")))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| CliError::Numerical(format!("cannot start worker threads: {e}")))
}

fn load_domain(path: &Path) -> Result<PlanarDomain, CliError> {
    Ok(parse_domain(&read(path)?)?)
}

fn load_weight(path: Option<&Path>) -> Result<WeightFile, CliError> {
    match path {
        Some(p) => Ok(parse_weight(&read(p)?)?),
        None => Ok(WeightFile::default()),
    }
}

fn resolve_k(flag: Option<u32>, file: &WeightFile) -> Result<u32, CliError> {
    match (flag, file.k()) {
        (Some(a), Some(b)) if a != b => Err(CliError::Validation(format!("--k {a} disagrees with k = {b} in the weight file"))),
        (Some(k), _) | (None, Some(k)) => Ok(k),
        (None, None) => Err(CliError::Validation("derivative order missing: pass --k or set k in the weight file".into())),
    }
}

fn c64(p: (f64, f64)) -> C64 {
    C64::new(p.0, p.1)
}

fn xy(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Numerical(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn solver(common: &Common) -> Result<(PlanarDomain, LaplaceSolver), CliError> {
    let domain = load_domain(&common.domain)?;
    let solver = LaplaceSolver::new(&domain, common.nodes)?;
    Ok((domain, solver))
}

/// Grid nodes over the bounding box that lie inside the domain.
fn inside_nodes(domain: &PlanarDomain, grid: usize) -> Result<Vec<C64>, CliError> {
    let layout = GridLayout::new(domain, grid)?;
    Ok((0..layout.len())
        .into_par_iter()
        .map(|i| layout.node(i))
        .filter(|&z| matches!(domain.contains(z), Containment::Inside))
        .collect())
}

fn sample_field(domain: &PlanarDomain, measures: &HarmonicMeasureSet, grid: usize) -> Result<SampledField, CliError> {
    let layout = GridLayout::new(domain, grid)?;
    let samples = (0..layout.len())
        .into_par_iter()
        .map(|i| sample_node(domain, measures, &layout, i))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SampledField::from_samples(layout, samples)?)
}

/// Dispatches a command.
pub fn execute(command: &Command) -> Result<String, CliError> {
    match command {
        Command::Check { domain } => check(domain),
        Command::HarmonicMeasure { common, at, grid } => harmonic_measure(common, *at, *grid),
        Command::Green { common, pole, at, grid } => green(common, *pole, *at, *grid),
        Command::Capacity { common, points } => capacity(common, points),
        Command::Periods { common, weight, pole } => periods(common, weight.as_deref(), *pole),
        Command::Locus { common, k, weight, grid, tol, no_refine, residual_csv } => {
            locus(common, *k, weight.as_deref(), *grid, *tol, !no_refine, residual_csv.as_deref())
        }
        Command::Bergman { common, k, weight, point, degree, quad_nodes, sweep } => {
            bergman(common, *k, weight.as_deref(), *point, *degree, *quad_nodes, *sweep)
        }
        Command::Feasibility { common, kmax, target, grid } => feasibility(common, *kmax, *target, *grid),
    }
}

#[derive(Serialize)]
struct CheckReport {
    connectivity: usize,
    diameter: f64,
    clearance: f64,
    bounding_box: [[f64; 2]; 2],
    anchors: Vec<[f64; 2]>,
    cycle_offset_fraction: f64,
}

fn check(path: &Path) -> Result<String, CliError> {
    let domain = load_domain(path)?;
    standard_cycles(&domain, CYCLE_OFFSET_FRACTION)?;
    let (lo, hi) = domain.bounding_box();
    json(&CheckReport {
        connectivity: domain.connectivity(),
        diameter: domain.diameter(),
        clearance: domain.clearance(),
        bounding_box: [xy(lo), xy(hi)],
        anchors: (0..domain.holes().len()).map(|j| xy(domain.hole_point(j))).collect(),
        cycle_offset_fraction: CYCLE_OFFSET_FRACTION,
    })
}

fn harmonic_measure(common: &Common, at: Option<(f64, f64)>, grid: Option<usize>) -> Result<String, CliError> {
    let (domain, solver) = solver(common)?;
    let measures = solver.harmonic_measures()?;
    let n = domain.connectivity();
    let points = match (at, grid) {
        (Some(p), _) => vec![c64(p)],
        (None, Some(g)) => inside_nodes(&domain, g)?,
        (None, None) => return Err(CliError::Validation("pass --at x,y or --grid N".into())),
    };
    let rows = points
        .par_iter()
        .map(|&z| {
            let u = measures.values(z)?;
            let mut row = format!("{},{}", z.re, z.im);
            for v in &u {
                write!(row, ",{v}").expect("string write");
            }
            write!(row, ",{}", 1.0 - u.iter().sum::<f64>()).expect("string write");
            Ok(row)
        })
        .collect::<Result<Vec<_>, suita_core::Error>>()?;
    let mut out = String::from("x,y");
    for j in 1..=n {
        write!(out, ",u_{j}").expect("string write");
    }
    out.push('\n');
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
    Ok(out)
}

fn green(common: &Common, pole: (f64, f64), at: Option<(f64, f64)>, grid: Option<usize>) -> Result<String, CliError> {
    let (domain, solver) = solver(common)?;
    let g = green_function(&solver, c64(pole))?;
    match (at, grid) {
        (Some(p), _) => Ok(format!("{}\n", g.value(c64(p))?)),
        (None, Some(n)) => {
            let rows: Vec<String> = inside_nodes(&domain, n)?
                .par_iter()
                .filter_map(|&z| g.value(z).ok().map(|v| format!("{},{},{v}\n", z.re, z.im)))
                .collect();
            Ok(std::iter::once("x,y,G\n".to_string()).chain(rows).collect())
        }
        (None, None) => Err(CliError::Validation("pass --at x,y or --grid N".into())),
    }
}

fn read_points(path: &Path) -> Result<Vec<C64>, CliError> {
    let text = read(path)?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut points = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let bad = |what: &str| CliError::Validation(format!("{} row {}: {what}", path.display(), i + 1));
        let record = record.map_err(|e| bad(&e.to_string()))?;
        let coord = |j: usize| record.get(j).and_then(|v| v.parse::<f64>().ok()).filter(|v| v.is_finite());
        match (coord(0), coord(1)) {
            (Some(x), Some(y)) => points.push(C64::new(x, y)),
            _ if i == 0 => {} // header
            _ => return Err(bad("expected finite x,y")),
        }
    }
    Ok(points)
}

fn capacity(common: &Common, points: &Path) -> Result<String, CliError> {
    let (_, solver) = solver(common)?;
    let pts = read_points(points)?;
    let rows = pts
        .par_iter()
        .map(|&z| Ok(format!("{},{},{}\n", z.re, z.im, green_function(&solver, z)?.capacity())))
        .collect::<Result<Vec<_>, suita_core::Error>>()?;
    Ok(std::iter::once("x,y,c_beta\n".to_string()).chain(rows).collect())
}

#[derive(Serialize)]
struct Complex {
    re: f64,
    im: f64,
}

impl From<C64> for Complex {
    fn from(z: C64) -> Self {
        Complex { re: z.re, im: z.im }
    }
}

#[derive(Serialize)]
struct PeriodsReport {
    calibration_sign: f64,
    k: u32,
    green_periods: Option<Vec<f64>>,
    weight_periods: Vec<f64>,
    characters: Vec<Complex>,
    mismatch: Vec<Complex>,
    residuals: Vec<f64>,
}

fn periods(common: &Common, weight: Option<&Path>, pole: Option<(f64, f64)>) -> Result<String, CliError> {
    let (domain, solver) = solver(common)?;
    let file = load_weight(weight)?;
    let spec = file.resolve(file.k().unwrap_or(0));
    spec.validate(&domain)?;
    let calibration = Calibration::run()?;
    let cycles = standard_cycles(&domain, CYCLE_OFFSET_FRACTION)?;
    let wp = weight_periods(&spec, &cycles, &calibration)?;
    let mut report = PeriodsReport {
        calibration_sign: calibration.sign(),
        k: spec.k,
        green_periods: None,
        weight_periods: wp.values.clone(),
        characters: Vec::new(),
        mismatch: Vec::new(),
        residuals: Vec::new(),
    };
    if let Some(p) = pole {
        let g = green_function(&solver, c64(p))?;
        let gp = green_periods(&g, &cycles)?;
        report.characters = characters(&gp).into_iter().map(Complex::from).collect();
        report.mismatch = character_mismatch(&gp, &wp, spec.k, &calibration).into_iter().map(Complex::from).collect();
        let measures = solver.harmonic_measures()?;
        report.residuals = character_equality_test(&g, &spec, &measures, &wp, 0.5)?.iter().map(|c| c.residual).collect();
        report.green_periods = Some(gp.values);
    }
    json(&report)
}

#[derive(Serialize)]
struct CurveOut {
    m: i64,
    closed: bool,
    points: Vec<[f64; 2]>,
}

#[derive(Serialize)]
struct PointOut {
    m: Vec<i64>,
    z: [f64; 2],
    residual: f64,
}

#[derive(Serialize)]
struct LocusOut {
    k: u32,
    periods: Vec<f64>,
    curves: Vec<CurveOut>,
    points: Vec<PointOut>,
    unresolved: Vec<PointOut>,
    min_grid_residual: Option<f64>,
    grid_residual_csv: Option<String>,
}

fn residual_csv(grid: &ResidualGrid) -> String {
    let mut out = String::from("x,y,residual\n");
    for (i, v) in grid.values.iter().enumerate() {
        if !v.is_nan() {
            let z = grid.layout.node(i);
            writeln!(out, "{},{},{v}", z.re, z.im).expect("string write");
        }
    }
    out
}

fn locus(
    common: &Common,
    k: Option<u32>,
    weight: Option<&Path>,
    grid: usize,
    tol: f64,
    refine: bool,
    csv: Option<&Path>,
) -> Result<String, CliError> {
    let (domain, solver) = solver(common)?;
    let file = load_weight(weight)?;
    let spec: WeightSpec = file.resolve(resolve_k(k, &file)?);
    let query = suita_core::locus::LocusQuery { weight: spec, resolution: grid, tol, refine };
    query.validate()?;
    query.weight.validate(&domain)?;
    let measures = solver.harmonic_measures()?;
    let periods = suita_core::locus::locus_periods(&domain, &query.weight)?;
    let field = sample_field(&domain, &measures, grid)?;
    let report = LocusEngine::new(&domain, &measures, &field).extract(query.weight.k, &periods, tol, refine)?;
    let csv_name = match csv {
        Some(path) => {
            std::fs::write(path, residual_csv(&report.residual_grid))
                .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", path.display())))?;
            Some(path.display().to_string())
        }
        None => None,
    };
    let point = |p: &suita_core::locus::LocusPoint| PointOut { m: p.m.clone(), z: xy(p.z), residual: p.residual };
    json(&LocusOut {
        k: report.k,
        periods: report.periods.clone(),
        curves: report
            .curves
            .iter()
            .map(|c| CurveOut { m: c.m, closed: c.closed, points: c.points.iter().map(|&z| xy(z)).collect() })
            .collect(),
        points: report.points.iter().map(point).collect(),
        unresolved: report.unresolved.iter().map(point).collect(),
        min_grid_residual: report.residual_grid.minimum().map(|m| m.1),
        grid_residual_csv: csv_name,
    })
}

#[derive(Serialize)]
struct SweepPoint {
    #[serde(rename = "M")]
    m: usize,
    #[serde(rename = "B")]
    b: f64,
}

#[derive(Serialize)]
struct BergmanOut {
    #[serde(rename = "B")]
    b: f64,
    #[serde(rename = "E")]
    e: f64,
    #[serde(rename = "D")]
    d: usize,
    capacity: f64,
    ratio: f64,
    nodes: usize,
    max_weight: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    convergence: Option<Vec<SweepPoint>>,
}

fn bergman(
    common: &Common,
    k: Option<u32>,
    weight: Option<&Path>,
    point: (f64, f64),
    degree: usize,
    quad_nodes: Option<usize>,
    sweep: bool,
) -> Result<String, CliError> {
    let (_, solver) = solver(common)?;
    let file = load_weight(weight)?;
    let spec = file.resolve(resolve_k(k, &file)?);
    let g = green_function(&solver, c64(point))?;
    let estimate = |m: usize| {
        let rule = quad_nodes.map_or_else(|| AreaRule::for_degree(m, spec.k), AreaRule::with_budget);
        let problem = BergmanProblem::new(build_weight(&spec, &g), m, rule)?;
        let n = problem.nodes().len();
        let ranges: Vec<_> = (0..n).step_by(GRAM_CHUNK).map(|s| s..(s + GRAM_CHUNK).min(n)).collect();
        let partials = ranges.into_par_iter().map(|r| problem.partial_gram(r)).collect::<Result<Vec<_>, _>>()?;
        problem.finish(partials)
    };
    let est = estimate(degree)?;
    let convergence = if sweep {
        let mut degrees: Vec<usize> = (spec.k as usize..degree).step_by(5).collect();
        degrees.push(degree);
        let mut out = Vec::new();
        for m in degrees {
            let b = if m == degree { est.value } else { estimate(m)?.value };
            out.push(SweepPoint { m, b });
        }
        Some(out)
    } else {
        None
    };
    json(&BergmanOut {
        b: est.value,
        e: est.energy,
        d: est.dimension,
        capacity: g.capacity(),
        ratio: suita_ratio(&spec, &g, &est)?,
        nodes: est.nodes,
        max_weight: est.max_weight,
        convergence,
    })
}

#[derive(Serialize)]
struct FeasibilityOut {
    bound: &'static str,
    found: bool,
    k: Option<u32>,
    z: Option<[f64; 2]>,
    residual: Option<f64>,
    m: Option<Vec<i64>>,
}

fn feasibility(common: &Common, kmax: u32, target: f64, grid: usize) -> Result<String, CliError> {
    let (domain, solver) = solver(common)?;
    check_search(&domain, kmax)?;
    if !(target > 0.0 && target < 0.5) {
        return Err(CliError::Validation("target must lie in (0, 0.5)".into()));
    }
    let mut out = FeasibilityOut { bound: "possible", found: false, k: None, z: None, residual: None, m: None };
    if feasibility_bound(&domain, kmax) == Feasibility::Impossible {
        out.bound = "impossible";
        return json(&out);
    }
    let measures = solver.harmonic_measures()?;
    let field = sample_field(&domain, &measures, grid)?;
    if let Some(p) = LocusEngine::new(&domain, &measures, &field).search(kmax, target)? {
        out.found = true;
        out.k = Some(p.k);
        out.z = Some(xy(p.z));
        out.residual = Some(p.residual);
        out.m = Some(p.m);
    }
    json(&out)
}
