//! Self-checks runnable on demand: density normalization, closed-form
//! moments against quadrature, the order of the truncated Laurent series,
//! and estimator and text round trips.
//!
//! The quadrature oracle splits each defining integral at x = 1 and maps
//! the tail to `y = 1/x ∈ (0, 1]`:
//!
//! ```text
//! ∫₁^∞ x^k f(x) dx = ∫₀¹ α y^(α−k−1) exp(−y^α) dy
//! ```
//!
//! which is bounded for `k ≤ α − 1` and integrable for all `k < α`. It never
//! calls the Gamma function; the centered moments use the oracle's own mean.

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;

use crate::distribution::{FrechetParams, FrechetShape};
use crate::error::{Error, Result};
use crate::estimation::{alpha_exact, DEFAULT_MAX_ITER, DEFAULT_TOLERANCE};
use crate::quadrature::{integrate, Integral, Tolerance};
use crate::sampling::{format_value, sample_sequential, SamplerConfig};
use crate::special::{LaurentCoefficients, LAURENT};

pub const DEFAULT_ALPHA_GRID: [f64; 7] = [2.5, 3.5, 5.0, 8.0, 12.0, 20.0, 50.0];
pub const LAURENT_POINTS: [f64; 4] = [1e-1, 1e-2, 1e-3, 1e-4];

pub const NORMALIZATION_TOLERANCE: f64 = 1e-10;
pub const MOMENT_TOLERANCE: f64 = 1e-7;
/// Allowed growth of the scaled remainder relative to its value at z = 0.1.
pub const LAURENT_GROWTH: f64 = 2.0;
pub const ROUND_TRIP_TOLERANCE: f64 = 1e-8;
pub const CDF_TOLERANCE: f64 = 1e-12;

/// Integration settings of the oracle, tighter than the checks they serve.
pub const ORACLE_TOLERANCE: Tolerance = Tolerance {
    absolute: 0.0,
    relative: 1e-13,
    max_intervals: 4000,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Normalization,
    Moments,
    Laurent,
    RoundTrip,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Normalization, Suite::Moments, Suite::Laurent, Suite::RoundTrip];

    /// Position in [`Suite::ALL`].
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Normalization => "normalization",
            Suite::Moments => "moments",
            Suite::Laurent => "laurent",
            Suite::RoundTrip => "roundtrip",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckConfig {
    pub alpha_grid: Vec<f64>,
    /// Highest moment order compared with quadrature.
    pub max_order: u32,
    pub laurent: LaurentCoefficients,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            alpha_grid: DEFAULT_ALPHA_GRID.to_vec(),
            max_order: 12,
            laurent: LAURENT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRow {
    pub suite: Suite,
    pub label: String,
    pub alpha: Option<f64>,
    pub measured: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl CheckRow {
    fn new(suite: Suite, label: String, alpha: Option<f64>, measured: f64, threshold: f64) -> Self {
        CheckRow {
            suite,
            label,
            alpha,
            measured,
            threshold,
            // NaN fails
            passed: measured <= threshold,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub rows: Vec<CheckRow>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    /// Earliest suite, in [`Suite::ALL`] order, with a failing row.
    pub fn first_failure(&self) -> Option<Suite> {
        Suite::ALL
            .into_iter()
            .find(|s| self.rows.iter().any(|r| r.suite == *s && !r.passed))
    }
}

fn sum(a: Integral, b: Integral) -> Integral {
    Integral {
        value: a.value + b.value,
        error: a.error + b.error,
        intervals: a.intervals + b.intervals,
        converged: a.converged && b.converged,
    }
}

/// `E[(X − c)^k]` for the one-parameter law by quadrature.
fn oracle_moment_about(alpha: f64, k: u32, center: f64, tol: Tolerance) -> Integral {
    let kf = f64::from(k);
    let head = integrate(
        |x: f64| {
            let t = x.powf(-alpha);
            if !t.is_finite() {
                return 0.0;
            }
            (x - center).powi(k as i32) * alpha * (-(alpha + 1.0) * x.ln() - t).exp()
        },
        0.0,
        1.0,
        tol,
    );
    let tail = integrate(
        |y: f64| {
            (1.0 - center * y).powi(k as i32) * alpha * y.powf(alpha - kf - 1.0) * (-y.powf(alpha)).exp()
        },
        0.0,
        1.0,
        tol,
    );
    sum(head, tail)
}

fn check_order(alpha: f64, k: u32) -> Result<()> {
    if alpha > 0.0 && alpha.is_finite() && f64::from(k) < alpha {
        Ok(())
    } else {
        Err(Error::UndefinedMoment { order: k, alpha })
    }
}

/// `∫ x^k f(x) dx`; order 0 is the total mass.
pub fn oracle_raw_moment(alpha: f64, k: u32, tol: Tolerance) -> Result<Integral> {
    check_order(alpha, k)?;
    Ok(oracle_moment_about(alpha, k, 0.0, tol))
}

/// `∫ (x − μ)^k f(x) dx` with μ itself from quadrature.
pub fn oracle_centered_moment(alpha: f64, k: u32, tol: Tolerance) -> Result<Integral> {
    check_order(alpha, k.max(1))?;
    let mean = oracle_moment_about(alpha, 1, 0.0, tol).value;
    Ok(oracle_moment_about(alpha, k, mean, tol))
}

fn relative_error(value: f64, reference: f64) -> f64 {
    (value - reference).abs() / reference.abs().max(f64::MIN_POSITIVE)
}

fn normalization_rows(alpha: f64) -> Result<Vec<CheckRow>> {
    let mass = oracle_raw_moment(alpha, 0, ORACLE_TOLERANCE)?;
    Ok(vec![CheckRow::new(
        Suite::Normalization,
        "integral of pdf".into(),
        Some(alpha),
        (mass.value - 1.0).abs(),
        NORMALIZATION_TOLERANCE,
    )])
}

fn moment_rows(alpha: f64, max_order: u32) -> Result<Vec<CheckRow>> {
    let shape = FrechetShape::new(alpha)?;
    let mut rows = Vec::new();
    for k in (1..=max_order).take_while(|&k| f64::from(k) < alpha) {
        let raw = oracle_raw_moment(alpha, k, ORACLE_TOLERANCE)?;
        rows.push(CheckRow::new(
            Suite::Moments,
            format!("raw k={k}"),
            Some(alpha),
            relative_error(shape.raw_moment(k)?, raw.value),
            MOMENT_TOLERANCE,
        ));
        if k >= 2 {
            let centered = oracle_centered_moment(alpha, k, ORACLE_TOLERANCE)?;
            rows.push(CheckRow::new(
                Suite::Moments,
                format!("centered k={k}"),
                Some(alpha),
                relative_error(shape.centered_moment(k)?, centered.value),
                MOMENT_TOLERANCE,
            ));
        }
    }
    Ok(rows)
}

/// `|laurent(z, order) − Γ(z)| / z^(order+1)` over [`LAURENT_POINTS`],
/// each bounded by `LAURENT_GROWTH` times its value at the first point.
fn laurent_rows(coefficients: &LaurentCoefficients) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    for order in [1usize, 2] {
        let scaled = |z: f64| -> Result<f64> {
            Ok(coefficients.remainder(z, order)?.abs() / z.powi(order as i32 + 1))
        };
        let bound = LAURENT_GROWTH * scaled(LAURENT_POINTS[0])?;
        for z in LAURENT_POINTS {
            rows.push(CheckRow::new(
                Suite::Laurent,
                format!("order {order} z={z:e}"),
                None,
                scaled(z)?,
                bound,
            ));
        }
    }
    Ok(rows)
}

fn round_trip_rows(alpha: f64) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    if alpha > 2.0 {
        let v = FrechetShape::new(alpha)?.variance()?;
        let measured = match alpha_exact(v, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER) {
            Ok(r) => relative_error(r.alpha, alpha),
            Err(_) => f64::INFINITY,
        };
        rows.push(CheckRow::new(
            Suite::RoundTrip,
            "exact alpha from variance".into(),
            Some(alpha),
            measured,
            ROUND_TRIP_TOLERANCE,
        ));
    }
    let params = FrechetParams::new(0.0, 1.0, alpha)?;
    let mut worst = 0.0f64;
    for p in [1e-6, 0.01, 0.5, 0.99, 1.0 - 1e-6] {
        worst = worst.max((params.cdf(params.quantile(p)?) - p).abs());
    }
    rows.push(CheckRow::new(
        Suite::RoundTrip,
        "cdf(quantile(p))".into(),
        Some(alpha),
        worst,
        CDF_TOLERANCE,
    ));
    let draws = sample_sequential(&SamplerConfig::new(1, 1000, params)?);
    let mismatches = draws
        .iter()
        .filter(|&&x| format_value(x).parse::<f64>().ok() != Some(x))
        .count();
    rows.push(CheckRow::new(
        Suite::RoundTrip,
        "sample text round trip".into(),
        Some(alpha),
        mismatches as f64,
        0.0,
    ));
    Ok(rows)
}

fn rows_for_alpha(alpha: f64, config: &CheckConfig) -> Result<Vec<CheckRow>> {
    let mut rows = normalization_rows(alpha)?;
    rows.extend(moment_rows(alpha, config.max_order)?);
    rows.extend(round_trip_rows(alpha)?);
    Ok(rows)
}

/// Runs every suite. Grid points are processed in parallel when the
/// `parallel` feature is on; row order is the same either way.
pub fn run_checks(config: &CheckConfig) -> Result<CheckReport> {
    for &alpha in &config.alpha_grid {
        FrechetShape::new(alpha)?;
    }
    #[cfg(feature = "parallel")]
    let per_alpha: Vec<Result<Vec<CheckRow>>> = config
        .alpha_grid
        .par_iter()
        .map(|&a| rows_for_alpha(a, config))
        .collect();
    #[cfg(not(feature = "parallel"))]
    let per_alpha: Vec<Result<Vec<CheckRow>>> = config
        .alpha_grid
        .iter()
        .map(|&a| rows_for_alpha(a, config))
        .collect();

    let mut rows = Vec::new();
    for part in per_alpha {
        rows.extend(part?);
    }
    rows.extend(laurent_rows(&config.laurent)?);
    // group by suite, keeping grid order inside each
    rows.sort_by_key(|r| r.suite.index());
    Ok(CheckReport { rows })
}
