//! Solves and N-sweeps.

use std::io::Write;
use std::path::Path;
use std::time::Instant;

use num_complex::Complex;
use qmfs_core::geometry::make_source_pool;
use qmfs_core::solver::{assemble, solve_with};
use qmfs_core::{BoundaryData, ComplexVector3, DipoleProblem, MfsAnsatz, ProblemKind, SolverPath};
use rayon::prelude::*;
use serde::Deserialize;

use crate::config::{BoundarySpec, ProblemConfig};
use crate::error::CliError;

pub const CSV_HEADER: [&str; 6] = ["N", "errE", "errH", "residual", "cond", "wall_ms"];

/// One solve.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRecord {
    pub n: usize,
    pub nodes: usize,
    /// NaN when there is no exact reference.
    pub err_e: f64,
    pub err_h: f64,
    pub residual_norm: f64,
    pub condition_estimate: f64,
    pub wall_time_ms: f64,
    pub solver_path: SolverPath,
}

#[derive(Debug, Deserialize)]
struct SampleRow {
    x1: f64,
    x2: f64,
    x3: f64,
    f1_re: f64,
    f1_im: f64,
    f2_re: f64,
    f2_im: f64,
    f3_re: f64,
    f3_im: f64,
}

/// Reads a boundary samples file into points and tangential values.
pub fn read_samples(path: &Path) -> Result<(Vec<[f64; 3]>, Vec<ComplexVector3<f64>>), CliError> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_path(path)?;
    let mut points = Vec::new();
    let mut values = Vec::new();
    for row in reader.deserialize() {
        let r: SampleRow = row?;
        points.push([r.x1, r.x2, r.x3]);
        values.push(ComplexVector3::new(
            Complex::new(r.f1_re, r.f1_im),
            Complex::new(r.f2_re, r.f2_im),
            Complex::new(r.f3_re, r.f3_im),
        ));
    }
    Ok((points, values))
}

fn dipole_problem(cfg: &ProblemConfig, n: usize, nodes: usize) -> Result<DipoleProblem<f64>, CliError> {
    let BoundarySpec::Dipole { moment, position } = cfg.boundary else {
        unreachable!("dipole problem requested for samples data")
    };
    Ok(DipoleProblem {
        surface: cfg.surface.build()?,
        medium: cfg.medium.build()?,
        kind: cfg.mode.into(),
        moment,
        position,
        aux_scale: cfg.aux_scale,
        sources: n,
        nodes,
        eval_radius: cfg.eval.radius,
        eval_count: cfg.eval.count,
        solver: cfg.solver.options(),
    })
}

fn solve_samples(cfg: &ProblemConfig, path: &Path, n: usize) -> Result<ResultRecord, CliError> {
    let surface = cfg.surface.build()?;
    let (_, pair) = cfg.medium.build()?.derive_wave_numbers()?;
    let (points, values) = read_samples(path)?;
    if 4 * points.len() < 8 * n {
        return Err(CliError::config(
            "boundary.path",
            format!("{} samples cannot determine N = {n}", points.len()),
        ));
    }
    let weight = 0.0;
    let nodes = points
        .iter()
        .map(|p| surface.sample_at(*p, weight))
        .collect::<Result<Vec<_>, _>>()?;
    let kind: ProblemKind = cfg.mode.into();
    let pool = make_source_pool(&surface, kind.source_side(), cfg.aux_scale, n)?;
    let ansatz = MfsAnsatz::with_shared_pool(pair, pool)?;
    let system = assemble(&nodes, &ansatz, &BoundaryData::samples(values))?;
    let report = solve_with(&system, &cfg.solver.options())?;
    Ok(ResultRecord {
        n,
        nodes: nodes.len(),
        err_e: f64::NAN,
        err_h: f64::NAN,
        residual_norm: report.residual_norm,
        condition_estimate: report.condition_estimate,
        wall_time_ms: 0.0,
        solver_path: report.solver_path,
    })
}

/// Solves the `index`-th N of the config.
pub fn solve_one(cfg: &ProblemConfig, index: usize) -> Result<ResultRecord, CliError> {
    let n = cfg.n_values()[index];
    let start = Instant::now();
    let mut record = match &cfg.boundary {
        BoundarySpec::Dipole { .. } => {
            let nodes = cfg.nodes_for(index, n);
            let result = dipole_problem(cfg, n, nodes)?.run()?;
            ResultRecord {
                n,
                nodes,
                err_e: result.err_e,
                err_h: result.err_h,
                residual_norm: result.report.residual_norm,
                condition_estimate: result.report.condition_estimate,
                wall_time_ms: 0.0,
                solver_path: result.report.solver_path,
            }
        }
        BoundarySpec::Samples { path } => solve_samples(cfg, path, n)?,
    };
    record.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(record)
}

/// Every N of the config, solved independently and concurrently; records
/// come back in ascending N.
pub fn sweep(cfg: &ProblemConfig) -> Result<Vec<ResultRecord>, CliError> {
    let count = cfg.n_values().len();
    let mut records = (0..count)
        .into_par_iter()
        .map(|i| solve_one(cfg, i))
        .collect::<Result<Vec<_>, _>>()?;
    records.sort_by_key(|r| r.n);
    Ok(records)
}

/// CSV with the fixed header. `wall_ms` is written as 0 unless `timing`
/// is set, so reruns are byte-identical.
pub fn write_csv<W: Write>(out: W, records: &[ResultRecord], timing: bool) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        let wall = if timing { r.wall_time_ms } else { 0.0 };
        w.write_record([
            r.n.to_string(),
            format!("{:e}", r.err_e),
            format!("{:e}", r.err_h),
            format!("{:e}", r.residual_norm),
            format!("{:e}", r.condition_estimate),
            format!("{:e}", wall),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// `0.334E-03` style with three significant digits.
pub fn fortran_notation(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0.000E+00".into();
    }
    let mut exp = x.abs().log10().floor() as i32 + 1;
    let mut mantissa = x / 10f64.powi(exp);
    if (mantissa.abs() * 1000.0).round() >= 1000.0 {
        exp += 1;
        mantissa /= 10.0;
    }
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa:.3}E{sign}{:02}", exp.abs())
}

/// Human-facing table with Fortran-style exponents.
pub fn format_table(records: &[ResultRecord]) -> String {
    let mut s = format!("{:>4}  {:>10}  {:>10}\n", "N", "errE", "errH");
    for r in records {
        s += &format!("{:>4}  {:>10}  {:>10}\n", r.n, fortran_notation(r.err_e), fortran_notation(r.err_h));
    }
    s
}
