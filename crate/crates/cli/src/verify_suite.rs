//! Pass/fail table of the operator, quadrature and radiation checks.

use num_complex::Complex;
use qmfs_core::geometry::{fibonacci_directions, sample_surface};
use qmfs_core::kernels::{kernel, theta};
use qmfs_core::scalar::vec3;
use qmfs_core::verify::{check_annihilation, check_factorization, cauchy_reproduce, radiation_decay, FdCheckConfig};
use qmfs_core::{Biquaternion64, KernelSign, SurfaceGeometry64, WaveNumber64};

use crate::config::{CheckKind, ProblemConfig};
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    /// Passes when `value < bound`.
    Below,
    /// Passes when `value ≥ bound`.
    AtLeast,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRow {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub kind: Bound,
}

impl CheckRow {
    fn below(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self { name: name.into(), value, bound, kind: Bound::Below }
    }

    fn at_least(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self { name: name.into(), value, bound, kind: Bound::AtLeast }
    }

    pub fn passed(&self) -> bool {
        match self.kind {
            Bound::Below => self.value < self.bound,
            Bound::AtLeast => self.value >= self.bound,
        }
    }
}

fn sign_label(sign: KernelSign) -> &'static str {
    match sign {
        KernelSign::Plus => "K+",
        KernelSign::Minus => "K-",
    }
}

/// 50 points with `0.5 ≤ |x| ≤ 3`.
fn annihilation_points() -> Vec<[f64; 3]> {
    fibonacci_directions::<f64>(50, 0.3)
        .into_iter()
        .enumerate()
        .map(|(i, u)| vec3::scale(0.5 + 2.5 * i as f64 / 49.0, u))
        .collect()
}

fn factorization(alpha: WaveNumber64) -> Result<Vec<CheckRow>, CliError> {
    let cfg = FdCheckConfig::shells(1e-3, &[0.8, 1.4, 2.5], 8, 1e-3)?;
    let a = alpha.value();
    let plane = move |x: [f64; 3]| Biquaternion64::new(
        (Complex::<f64>::i() * a * x[2]).exp(),
        Complex::new(0.0, 0.0),
        (Complex::<f64>::i() * a * x[0]).exp(),
        Complex::new(0.0, 0.0),
    );
    let y0 = [0.1, -0.05, 0.2];
    let point = move |x: [f64; 3]| Biquaternion64::from_scalar(theta(alpha, vec3::sub(x, y0)).expect("off source"));
    Ok(vec![
        CheckRow::below("factorization/plane-wave", check_factorization(alpha, &plane, &cfg), cfg.tolerance),
        CheckRow::below("factorization/point-source", check_factorization(alpha, &point, &cfg), cfg.tolerance),
    ])
}

fn annihilation(alpha: WaveNumber64) -> Result<Vec<CheckRow>, CliError> {
    let extra = WaveNumber64::new(Complex::new(2.0, 0.5))?;
    let cfg = FdCheckConfig::new(1e-4, annihilation_points(), 1e-6)?;
    let mut rows = Vec::new();
    for a in [alpha, extra] {
        for sign in [KernelSign::Plus, KernelSign::Minus] {
            let k = move |x: [f64; 3]| kernel(a, sign, x).expect("off origin");
            let name = format!("annihilation/{} alpha={}", sign_label(sign), a.value());
            rows.push(CheckRow::below(name, check_annihilation(a, sign, &k, &cfg), cfg.tolerance));
        }
    }
    Ok(rows)
}

fn cauchy(alpha: WaveNumber64) -> Result<Vec<CheckRow>, CliError> {
    let sphere = SurfaceGeometry64::unit_sphere();
    let coarse = sample_surface(&sphere, 500)?;
    let fine = sample_surface(&sphere, 2000)?;
    let source = [0.0, 0.0, 0.1];
    let x = [0.0, 0.0, 3.0];
    let mut rows = Vec::new();
    for sign in [KernelSign::Plus, KernelSign::Minus] {
        let e500 = cauchy_reproduce(alpha, sign, source, &coarse, x)?.error;
        let e2000 = cauchy_reproduce(alpha, sign, source, &fine, x)?.error;
        rows.push(CheckRow::below(format!("cauchy/{}", sign_label(sign)), e2000, 1e-3));
        rows.push(CheckRow::below(format!("cauchy-refinement/{}", sign_label(sign)), e2000 / e500, 0.5));
    }
    Ok(rows)
}

fn radiation(alpha: WaveNumber64, wrong_sign: bool) -> Vec<CheckRow> {
    let radii = [10.0, 20.0, 40.0];
    [KernelSign::Plus, KernelSign::Minus]
        .into_iter()
        .map(|sign| {
            let k = move |x: [f64; 3]| kernel(alpha, sign, vec3::sub(x, [0.1, 0.0, -0.2])).expect("off source");
            let tested = if wrong_sign { sign.flip() } else { sign };
            let table = radiation_decay(&k, tested, &radii, 50);
            let worst = table
                .windows(2)
                .map(|w| w[0].value / w[1].value)
                .fold(f64::INFINITY, f64::min);
            CheckRow::at_least(format!("radiation/{}", sign_label(sign)), worst, 1.5)
        })
        .collect()
}

/// Runs the checks listed in the config, in order.
pub fn run_checks(cfg: &ProblemConfig) -> Result<Vec<CheckRow>, CliError> {
    let alpha = cfg.medium.build()?.alpha()?;
    let mut rows = Vec::new();
    for check in &cfg.verify.checks {
        match check {
            CheckKind::Factorization => rows.extend(factorization(alpha)?),
            CheckKind::Annihilation => rows.extend(annihilation(alpha)?),
            CheckKind::Cauchy => rows.extend(cauchy(alpha)?),
            CheckKind::Radiation => rows.extend(radiation(alpha, cfg.verify.wrong_kernel_sign)),
        }
    }
    Ok(rows)
}

pub fn format_checks(rows: &[CheckRow]) -> String {
    let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(5).max(5);
    let mut s = format!("{:<width$}  {:>10}  {:>12}  status\n", "check", "value", "bound");
    for r in rows {
        let op = match r.kind {
            Bound::Below => "<",
            Bound::AtLeast => ">=",
        };
        let status = if r.passed() { "PASS" } else { "FAIL" };
        s += &format!("{:<width$}  {:>10.3e}  {:>2} {:>9.3e}  {status}\n", r.name, r.value, op, r.bound);
    }
    s
}
