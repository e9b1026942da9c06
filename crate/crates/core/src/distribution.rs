//! The one-parameter and location-scale Fréchet distributions.
//!
//! The one-parameter density is `f(x; α) = α x^(−α−1) exp(−x^(−α))` on
//! `x > 0`; the location-scale family shifts by `m` and stretches by `s`.
//! Raw moments are `Ω_k = Γ(1 − k/α)`, finite only for `k < α`. Centered
//! moments follow from the binomial expansion
//!
//! ```text
//! μ_{k,c} = Σ_{p=0}^{k} C(k, p) (−Ω₁)^(k−p) Ω_p,   Ω₀ = 1
//! ```
//!
//! and the normalized (reduced) centered moments divide by `μ_{2,c}^(k/2)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::special::{gamma, log_gamma, ZETA};

/// Skewness and kurtosis use the normalized centered moments instead of
/// the closed Ω forms from this shape upward.
pub(crate) const SERIES_MIN_ALPHA: f64 = 20.0;
/// Centered moments use the cancellation-free series up to this order,
/// unless `k` is so close to α that the series needs too many terms.
const SERIES_MAX_ORDER: u32 = 300;
const SERIES_MAX_TERMS: usize = 200_000;
/// Relative rounding bound above which the binomial sum is refused.
const MAX_BINOMIAL_ERROR: f64 = 1e-9;

/// Upper bound on the inner-series length for `centered_moment_series`.
fn series_terms(k: u32, alpha: f64) -> usize {
    let ratio = f64::from(k) / alpha;
    let bound = f64::from(k) + (39.0 + f64::from(k) - (1.0 - ratio).ln()) / -ratio.ln();
    if bound.is_finite() && bound < usize::MAX as f64 {
        bound.ceil() as usize
    } else {
        usize::MAX
    }
}

/// One-parameter Fréchet distribution with shape `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrechetShape {
    alpha: f64,
}

/// Location-scale Fréchet distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrechetParams {
    location: f64,
    scale: f64,
    alpha: f64,
}

/// Moments of one order, `None` where the moment does not exist.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentReport {
    pub order: u32,
    pub raw: Option<f64>,
    pub centered: Option<f64>,
    pub normalized: Option<f64>,
    /// `order < alpha`
    pub defined: bool,
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "shape alpha must be positive and finite, got {alpha}"
        )))
    }
}

impl FrechetShape {
    pub fn new(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(FrechetShape { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    fn require_defined(&self, k: u32) -> Result<()> {
        if (k as f64) < self.alpha {
            Ok(())
        } else {
            Err(Error::UndefinedMoment {
                order: k,
                alpha: self.alpha,
            })
        }
    }

    /// Ω_k for `0 ≤ k < α`.
    fn omega(&self, k: u32) -> Result<f64> {
        if k == 0 {
            return Ok(1.0);
        }
        let arg = 1.0 - k as f64 / self.alpha;
        // exp(ln Γ) uses the series about 1 directly; below 1/2 the
        // recurrence in `gamma` keeps the relative accuracy.
        if arg > 0.5 {
            Ok(log_gamma(arg)?.exp())
        } else {
            gamma(arg)
        }
    }

    /// `E[X^k] = Γ(1 − k/α)`, defined for `1 ≤ k < α`.
    pub fn raw_moment(&self, k: u32) -> Result<f64> {
        if k == 0 {
            return Err(Error::InvalidParameter("raw moment order must be at least 1".into()));
        }
        self.require_defined(k)?;
        self.omega(k)
    }

    /// `E[(X − E X)^k]`, defined for `2 ≤ k < α`.
    pub fn centered_moment(&self, k: u32) -> Result<f64> {
        if k < 2 {
            return Err(Error::InvalidParameter(
                "centered moment order must be at least 2".into(),
            ));
        }
        self.require_defined(k)?;
        if k <= SERIES_MAX_ORDER && series_terms(k, self.alpha) <= SERIES_MAX_TERMS {
            self.centered_moment_series(k)
        } else {
            self.centered_moment_binomial(k)
        }
    }

    fn centered_moment_binomial(&self, k: u32) -> Result<f64> {
        let omega1 = self.omega(1)?;
        let mut sum = 0.0;
        let mut magnitude = 0.0;
        let mut binom = 1.0;
        for p in 0..=k {
            let sign = if (k - p).is_multiple_of(2) { 1.0 } else { -1.0 };
            let term = binom * omega1.powi((k - p) as i32) * self.omega(p)?;
            sum += sign * term;
            magnitude += term;
            binom = binom * (k - p) as f64 / (p + 1) as f64;
        }
        if magnitude * f64::EPSILON > MAX_BINOMIAL_ERROR * sum.abs() {
            return Err(Error::PrecisionLoss {
                order: k,
                alpha: self.alpha,
            });
        }
        Ok(sum)
    }

    /// Large-α form of the binomial expansion. With
    /// `c_n = ζ(n) / (n αⁿ)` and `L = Σ c_n`,
    ///
    /// ```text
    /// Ω_p / Ω₁^p = e^(−Lp) g(p),   g(p) = exp(Σ_{n≥2} c_n pⁿ)
    /// μ_{k,c} = Ω₁^k Σ_j C(k, j) (e^(−L) − 1)^(k−j) e^(−jL) Δʲg(0)
    /// Δʲg(0) = Σ_{m≥j} g_m j! S(m, j)
    /// ```
    ///
    /// where `g_m` are the power-series coefficients of `g` and `S` are
    /// Stirling numbers of the second kind. Every `g_m` is positive and the
    /// outer terms shrink with `j`, so nothing cancels; the plain binomial
    /// sum subtracts terms of order one to get a result of order `α^(−k)`.
    ///
    /// In the scaled variables `h_m = g_m α^m` and `U(m, j) = j! S(m, j) / α^m`
    /// everything stays in range: `h_m → e^(−γ)` and `U(m, j) ≤ (j/α)^m`.
    /// The inner sums run until every new term is decreasing and below
    /// 1e-17 of its partial sum, or until the bound `(j/α)^m` on the terms
    /// guarantees it.
    fn centered_moment_series(&self, k: u32) -> Result<f64> {
        let k = k as usize;
        let alpha = self.alpha;
        let max_terms = series_terms(k as u32, alpha);

        let mut linear = 0.0;
        let mut power = 1.0 / alpha;
        for (n, zeta) in (2..).zip(ZETA) {
            power /= alpha;
            linear += zeta * power / n as f64;
        }

        // m h_m = Σ_{n=2}^{m} ζ(n) h_{m−n}, with ζ(n) = 1 + (ζ(n) − 1)
        let mut h = vec![1.0, 0.0];
        let mut prefix = 1.0; // h_0 + … + h_{m−2}
        let mut scaled = vec![0.0; k + 1];
        scaled[0] = 1.0;
        let mut differences = vec![0.0; k + 1];
        differences[0] = 1.0;
        let mut previous = vec![f64::INFINITY; k + 1];
        for m in 1..=max_terms {
            if m >= 2 {
                let excess: f64 = (2..=m.min(ZETA.len() + 1))
                    .map(|n| (ZETA[n - 2] - 1.0) * h[m - n])
                    .sum();
                h.push((prefix + excess) / m as f64);
                prefix += h[m - 1];
            }
            let hm = h[m];
            for j in (1..=k.min(m)).rev() {
                scaled[j] = j as f64 / alpha * (scaled[j] + scaled[j - 1]);
            }
            scaled[0] = 0.0;
            let mut settled = m > k;
            for j in 1..=k.min(m) {
                let term = hm * scaled[j];
                differences[j] += term;
                settled &= term <= previous[j] && term <= 1e-17 * differences[j];
                previous[j] = term;
            }
            if settled {
                break;
            }
        }

        let shrink = (-linear).exp();
        let shrink_m1 = (-linear).exp_m1();
        let mut sum = 0.0;
        let mut binom = 1.0;
        for (j, diff) in differences.iter().enumerate() {
            sum += binom * shrink_m1.powi((k - j) as i32) * shrink.powi(j as i32) * diff;
            binom = binom * (k - j) as f64 / (j + 1) as f64;
        }
        Ok(self.omega(1)?.powi(k as i32) * sum)
    }

    /// `μ_{k,c} / μ_{2,c}^(k/2)`, defined for `2 ≤ k < α` and `α > 2`.
    pub fn normalized_centered_moment(&self, k: u32) -> Result<f64> {
        if k < 2 {
            return Err(Error::InvalidParameter(
                "normalized moment order must be at least 2".into(),
            ));
        }
        if self.alpha <= 2.0 {
            return Err(Error::UndefinedMoment {
                order: 2,
                alpha: self.alpha,
            });
        }
        let centered = self.centered_moment(k)?;
        let variance = self.centered_moment(2)?;
        Ok(centered / variance_power(variance, k))
    }

    /// Skewness; `+∞` for `α ≤ 3` where the third moment diverges.
    pub fn skewness(&self) -> f64 {
        if self.alpha <= 3.0 {
            return f64::INFINITY;
        }
        if self.alpha >= SERIES_MIN_ALPHA {
            return self
                .normalized_centered_moment(3)
                .expect("alpha > 3 so the third moment exists");
        }
        let [o1, o2, o3] = self.omegas::<3>();
        (o3 - 3.0 * o2 * o1 + 2.0 * o1.powi(3)) / (o2 - o1 * o1).powf(1.5)
    }

    /// Excess kurtosis `ζ_{4,c} − 3`; `+∞` for `α ≤ 4`.
    pub fn excess_kurtosis(&self) -> f64 {
        if self.alpha <= 4.0 {
            return f64::INFINITY;
        }
        if self.alpha >= SERIES_MIN_ALPHA {
            return self
                .normalized_centered_moment(4)
                .expect("alpha > 4 so the fourth moment exists")
                - 3.0;
        }
        let [o1, o2, o3, o4] = self.omegas::<4>();
        -6.0 + (o4 - 4.0 * o3 * o1 + 3.0 * o2 * o2) / (o2 - o1 * o1).powi(2)
    }

    fn omegas<const N: usize>(&self) -> [f64; N] {
        std::array::from_fn(|i| {
            self.omega(i as u32 + 1)
                .expect("caller checked that all orders are below alpha")
        })
    }

    /// `Ω₂ − Ω₁²`, finite for `α > 2`.
    pub fn variance(&self) -> Result<f64> {
        if self.alpha <= 2.0 {
            return Err(Error::UndefinedMoment {
                order: 2,
                alpha: self.alpha,
            });
        }
        self.centered_moment(2)
    }

    pub fn mean(&self) -> Result<f64> {
        self.raw_moment(1)
    }

    /// Moments of orders `1..=max_order`.
    pub fn moment_report(&self, max_order: u32) -> Vec<MomentReport> {
        (1..=max_order)
            .map(|k| {
                let defined = (k as f64) < self.alpha;
                let raw = self.raw_moment(k).ok();
                let (centered, normalized) = if k == 1 {
                    (raw.map(|_| 0.0), None)
                } else {
                    (
                        self.centered_moment(k).ok(),
                        self.normalized_centered_moment(k).ok(),
                    )
                };
                MomentReport {
                    order: k,
                    raw,
                    centered,
                    normalized,
                    defined,
                }
            })
            .collect()
    }
}

fn variance_power(variance: f64, k: u32) -> f64 {
    let even = variance.powi((k / 2) as i32);
    if k.is_multiple_of(2) {
        even
    } else {
        even * variance.sqrt()
    }
}

impl FrechetParams {
    pub fn new(location: f64, scale: f64, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "scale must be positive and finite, got {scale}"
            )));
        }
        if !location.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "location must be finite, got {location}"
            )));
        }
        Ok(FrechetParams {
            location,
            scale,
            alpha,
        })
    }

    pub fn location(&self) -> f64 {
        self.location
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn shape(&self) -> FrechetShape {
        FrechetShape { alpha: self.alpha }
    }

    pub fn pdf(&self, x: f64) -> f64 {
        if x <= self.location {
            return 0.0;
        }
        let ln_z = ((x - self.location) / self.scale).ln();
        let t = (-self.alpha * ln_z).exp();
        // α/s · z^(−α−1) · e^(−z^(−α)), combined in the exponent
        self.alpha / self.scale * (-(1.0 + self.alpha) * ln_z - t).exp()
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= self.location {
            return 0.0;
        }
        let z = (x - self.location) / self.scale;
        (-z.powf(-self.alpha)).exp()
    }

    /// Inverse of the cdf, `m + s (−ln p)^(−1/α)`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::domain("quantile", p));
        }
        Ok(self.location + self.scale * (-p.ln()).powf(-1.0 / self.alpha))
    }

    pub fn mean(&self) -> Result<f64> {
        Ok(self.location + self.scale * self.shape().mean()?)
    }

    /// `s² (Ω₂ − Ω₁²)` for `α > 2`.
    pub fn variance(&self) -> Result<f64> {
        Ok(self.scale * self.scale * self.shape().variance()?)
    }
}

impl From<FrechetShape> for FrechetParams {
    fn from(shape: FrechetShape) -> Self {
        FrechetParams {
            location: 0.0,
            scale: 1.0,
            alpha: shape.alpha,
        }
    }
}
