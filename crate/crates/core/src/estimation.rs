//! Inference of the shape α from a variance.
//!
//! Expanding `Γ(1 + z)` about zero turns `V = Γ(1 − 2/α) − Γ(1 − 1/α)²`
//! into a polynomial in `u = 1/α`:
//!
//! ```text
//! V ≈ (π²/6) u²                                  (through z²)
//! V ≈ (π²/6) u² + ((γπ² + 6ζ(3))/3) u³           (through z³)
//! ```
//!
//! The first gives `α ≈ π / √(6V)`; the second is a cubic with exactly one
//! positive root. `alpha_exact` solves the variance equation itself.

use serde::Serialize;

use crate::distribution::{FrechetParams, FrechetShape};
use crate::error::{Error, Result};
use crate::roots::brent;
use crate::special::CONSTANTS;
use crate::stats::SampleStats;

pub const DEFAULT_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 200;

/// Smallest α the exact solver considers; V diverges at α = 2.
pub const MIN_EXACT_ALPHA: f64 = 2.0 + 1e-9;
/// Largest α reached while expanding the bracket.
pub const MAX_EXACT_ALPHA: f64 = 1e9;
/// Search range for the skewness match in [`fit_location_scale`].
pub const MAX_FIT_ALPHA: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    Order1,
    Order2Cardano,
    ExactRoot,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::Order1 => "order1",
            Method::Order2Cardano => "order2",
            Method::ExactRoot => "exact",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EstimateResult {
    pub alpha: f64,
    pub method: Method,
    /// `|V(alpha) − v|`; `None` when `alpha ≤ 2` and the variance diverges.
    pub residual: Option<f64>,
    /// Zero for the closed forms.
    pub iterations: usize,
}

/// `a3 u³ + a2 u² = rhs` with `u = 1/α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CubicCoefficients {
    pub a3: f64,
    pub a2: f64,
    pub rhs: f64,
}

impl CubicCoefficients {
    pub fn for_variance(v: f64) -> Self {
        let k = CONSTANTS;
        let pi_sq = 6.0 * k.pi_sq_over_6;
        CubicCoefficients {
            a3: (k.euler_gamma * pi_sq + 6.0 * k.apery) / 3.0,
            a2: k.pi_sq_over_6,
            rhs: v,
        }
    }

    /// `a3 u³ + a2 u² − rhs`.
    pub fn residual(&self, u: f64) -> f64 {
        u * u * (self.a3 * u + self.a2) - self.rhs
    }

    fn derivative(&self, u: f64) -> f64 {
        u * (3.0 * self.a3 * u + 2.0 * self.a2)
    }

    /// The unique positive root for `rhs > 0`, from Cardano's formula (one
    /// real root) or the trigonometric form (three real roots), followed by
    /// at most two Newton steps.
    pub fn positive_root(&self) -> f64 {
        // u³ + b u² − c = 0, then u = t − b/3 gives t³ + p t + q = 0
        let b = self.a2 / self.a3;
        let c = self.rhs / self.a3;
        let shift = b / 3.0;
        let p = -b * b / 3.0;
        let q = 2.0 * b * b * b / 27.0 - c;
        let disc = q * q / 4.0 + p * p * p / 27.0;
        let t = if disc > 0.0 {
            // stable pairing of the two cube roots
            let a = -(q.abs() / 2.0 + disc.sqrt()).cbrt().copysign(q);
            if a == 0.0 {
                0.0
            } else {
                a - p / (3.0 * a)
            }
        } else {
            // largest of the three real roots; the other two are negative
            let r = (-p / 3.0).sqrt();
            let cos_arg = (3.0 * q / (2.0 * p) * (-3.0 / p).sqrt()).clamp(-1.0, 1.0);
            2.0 * r * (cos_arg.acos() / 3.0).cos()
        };
        let mut u = t - shift;
        for _ in 0..2 {
            let slope = self.derivative(u);
            if slope <= 0.0 {
                break;
            }
            let step = self.residual(u) / slope;
            if step == 0.0 {
                break;
            }
            u -= step;
        }
        u
    }
}

fn check_variance(v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("variance", v))
    }
}

fn variance_of(alpha: f64) -> Result<f64> {
    FrechetShape::new(alpha)?.variance()
}

fn residual_at(alpha: f64, v: f64) -> Option<f64> {
    if alpha > 2.0 {
        variance_of(alpha).ok().map(|value| (value - v).abs())
    } else {
        None
    }
}

/// `α ≈ π / √(6V)`.
pub fn alpha_order1(v: f64) -> Result<EstimateResult> {
    check_variance(v)?;
    let alpha = std::f64::consts::PI / (6.0 * v).sqrt();
    Ok(EstimateResult {
        alpha,
        method: Method::Order1,
        residual: residual_at(alpha, v),
        iterations: 0,
    })
}

/// α from the positive root of the cubic in `1/α`.
pub fn alpha_order2(v: f64) -> Result<EstimateResult> {
    check_variance(v)?;
    let u = CubicCoefficients::for_variance(v).positive_root();
    let alpha = 1.0 / u;
    Ok(EstimateResult {
        alpha,
        method: Method::Order2Cardano,
        residual: residual_at(alpha, v),
        iterations: 0,
    })
}

/// Solves `Γ(1 − 2/α) − Γ(1 − 1/α)² = v` for `α > 2`.
///
/// Starts from the order-1 estimate, expands a bracket by doubling α (or
/// halving its distance to 2), then runs Brent's method until the bracket
/// is a few ulps wide. The final residual must satisfy
/// `|V(α) − v| ≤ tol · max(1, v)`.
pub fn alpha_exact(v: f64, tol: f64, max_iter: usize) -> Result<EstimateResult> {
    check_variance(v)?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let f = |alpha: f64| variance_of(alpha).map(|value| value - v);

    let start = alpha_order1(v)?.alpha.clamp(2.5_f64.min(MAX_EXACT_ALPHA), MAX_EXACT_ALPHA);
    let f_start = f(start)?;
    let mut iterations = 1;
    let (lo, hi, f_lo, f_hi) = if f_start == 0.0 {
        return Ok(EstimateResult {
            alpha: start,
            method: Method::ExactRoot,
            residual: Some(0.0),
            iterations,
        });
    } else if f_start > 0.0 {
        // V too large: root lies above
        let (mut lo, mut f_lo) = (start, f_start);
        loop {
            let hi = (2.0 * lo).min(MAX_EXACT_ALPHA);
            let f_hi = f(hi)?;
            iterations += 1;
            if f_hi <= 0.0 {
                break (lo, hi, f_lo, f_hi);
            }
            if hi >= MAX_EXACT_ALPHA {
                return Err(Error::NoBracket(format!(
                    "variance {v} is below V({MAX_EXACT_ALPHA:e})"
                )));
            }
            if iterations >= max_iter {
                return Err(Error::NoConvergence(iterations));
            }
            lo = hi;
            f_lo = f_hi;
        }
    } else {
        let (mut hi, mut f_hi) = (start, f_start);
        loop {
            let lo = (2.0 + (hi - 2.0) / 2.0).max(MIN_EXACT_ALPHA);
            let f_lo = f(lo)?;
            iterations += 1;
            if f_lo >= 0.0 {
                break (lo, hi, f_lo, f_hi);
            }
            if lo <= MIN_EXACT_ALPHA {
                return Err(Error::NoBracket(format!(
                    "variance {v} exceeds V(2 + 1e-9)"
                )));
            }
            if iterations >= max_iter {
                return Err(Error::NoConvergence(iterations));
            }
            hi = lo;
            f_hi = f_lo;
        }
    };

    let budget = max_iter.saturating_sub(iterations);
    let root = brent(f, lo, hi, f_lo, f_hi, budget).map_err(|e| match e {
        Error::NoConvergence(_) => Error::NoConvergence(max_iter),
        other => other,
    })?;
    iterations += root.iterations;
    let residual = root.fx.abs();
    if residual > tol * v.max(1.0) {
        return Err(Error::NoConvergence(iterations));
    }
    Ok(EstimateResult {
        alpha: root.x,
        method: Method::ExactRoot,
        residual: Some(residual),
        iterations,
    })
}

/// Moment-matching fit of location, scale and shape.
///
/// The skewness depends on α alone and decreases from +∞ at α = 3 to the
/// Gumbel value 1.1395… as α → ∞, so α is the root of
/// `skewness(α) = sample skewness` on `(3, 1e6]`. Then
/// `s = √(sample variance / V(α))` and `m = sample mean − s Ω₁`.
pub fn fit_location_scale(stats: &SampleStats, tol: f64) -> Result<FrechetParams> {
    if stats.count < 3 {
        return Err(Error::InsufficientData {
            needed: 3,
            got: stats.count,
        });
    }
    if stats.variance.is_nan() || stats.variance <= 0.0 {
        return Err(Error::DegenerateFit("sample variance is zero".into()));
    }
    let target = match stats.skewness {
        Some(g) if g > 0.0 && g.is_finite() => g,
        _ => {
            return Err(Error::DegenerateFit(
                "sample skewness must be positive".into(),
            ))
        }
    };
    let f = |alpha: f64| Ok(FrechetShape::new(alpha)?.skewness() - target);

    let lo = 3.0 + 1e-9;
    let hi = MAX_FIT_ALPHA;
    let (f_lo, f_hi) = (f(lo)?, f(hi)?);
    if f_hi > 0.0 {
        return Err(Error::DegenerateFit(format!(
            "sample skewness {target} is below the smallest Fréchet skewness {:.6}",
            f_hi + target
        )));
    }
    if f_lo < 0.0 {
        return Err(Error::DegenerateFit(format!(
            "sample skewness {target} is too large to match"
        )));
    }
    let root = brent(f, lo, hi, f_lo, f_hi, DEFAULT_MAX_ITER)?;
    if root.fx.abs() > tol * target.max(1.0) {
        return Err(Error::DegenerateFit(format!(
            "no shape matches skewness {target} within {tol:e}"
        )));
    }
    let shape = FrechetShape::new(root.x)?;
    let scale = (stats.variance / shape.variance()?).sqrt();
    let location = stats.mean - scale * shape.mean()?;
    FrechetParams::new(location, scale, root.x)
}
