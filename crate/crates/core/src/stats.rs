//! Sample statistics of ingested or generated data.
//!
//! Two passes over fixed-size chunks: the first accumulates the mean, the
//! second the central power sums. Chunk partials are combined in chunk
//! order, so the parallel and sequential paths give bit-identical results.
//!
//! Estimators, with `m_j = Σ(x − x̄)^j / n`:
//!
//! - variance `Σ(x − x̄)² / (n − 1)`;
//! - skewness `G1 = g1 √(n(n − 1)) / (n − 2)`, `g1 = m3 / m2^(3/2)`, for n ≥ 3;
//! - excess kurtosis `G2 = ((n + 1) g2 + 6)(n − 1) / ((n − 2)(n − 3))`,
//!   `g2 = m4 / m2² − 3`, for n ≥ 4.

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;

use crate::distribution::FrechetParams;
use crate::error::{Error, Result};

const CHUNK: usize = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleStats {
    pub count: usize,
    pub mean: f64,
    /// Unbiased (divisor n − 1).
    pub variance: f64,
    /// `None` when fewer than three values or zero spread.
    pub skewness: Option<f64>,
    /// `None` when fewer than four values or zero spread.
    pub excess_kurtosis: Option<f64>,
}

impl SampleStats {
    /// Population moments of `params` dressed up as sample statistics of
    /// `count` draws. Skewness and kurtosis are `None` where they diverge.
    pub fn from_distribution(params: &FrechetParams, count: usize) -> Result<Self> {
        let shape = params.shape();
        let finite = |x: f64| if x.is_finite() { Some(x) } else { None };
        Ok(SampleStats {
            count,
            mean: params.mean()?,
            variance: params.variance()?,
            skewness: finite(shape.skewness()),
            excess_kurtosis: finite(shape.excess_kurtosis()),
        })
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct PowerSums {
    s1: f64,
    s2: f64,
    s3: f64,
    s4: f64,
}

impl PowerSums {
    fn of(chunk: &[f64], center: f64) -> Self {
        chunk.iter().fold(PowerSums::default(), |acc, &x| {
            let d = x - center;
            let d2 = d * d;
            PowerSums {
                s1: acc.s1 + d,
                s2: acc.s2 + d2,
                s3: acc.s3 + d2 * d,
                s4: acc.s4 + d2 * d2,
            }
        })
    }

    fn add(self, other: Self) -> Self {
        PowerSums {
            s1: self.s1 + other.s1,
            s2: self.s2 + other.s2,
            s3: self.s3 + other.s3,
            s4: self.s4 + other.s4,
        }
    }
}

fn validate(data: &[f64]) -> Result<()> {
    if data.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: data.len(),
        });
    }
    if let Some(bad) = data.iter().find(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "sample contains a non-finite value {bad}"
        )));
    }
    Ok(())
}

fn finish(n: usize, sums: PowerSums) -> SampleStats {
    let nf = n as f64;
    // s1 is the rounding residue of the first pass; remove its contribution
    let m2 = (sums.s2 - sums.s1 * sums.s1 / nf) / nf;
    let m3 = sums.s3 / nf;
    let m4 = sums.s4 / nf;
    let variance = m2 * nf / (nf - 1.0);
    let spread = m2 > 0.0;
    let skewness = (n >= 3 && spread).then(|| {
        let g1 = m3 / m2.powf(1.5);
        g1 * (nf * (nf - 1.0)).sqrt() / (nf - 2.0)
    });
    let excess_kurtosis = (n >= 4 && spread).then(|| {
        let g2 = m4 / (m2 * m2) - 3.0;
        ((nf + 1.0) * g2 + 6.0) * (nf - 1.0) / ((nf - 2.0) * (nf - 3.0))
    });
    SampleStats {
        count: n,
        mean: 0.0,
        variance,
        skewness,
        excess_kurtosis,
    }
}

fn ordered_sum(parts: impl IntoIterator<Item = f64>) -> f64 {
    parts.into_iter().fold(0.0, |a, b| a + b)
}

pub fn sample_stats_sequential(data: &[f64]) -> Result<SampleStats> {
    validate(data)?;
    let n = data.len();
    let mean = ordered_sum(data.chunks(CHUNK).map(|c| c.iter().sum::<f64>())) / n as f64;
    let sums = data
        .chunks(CHUNK)
        .map(|c| PowerSums::of(c, mean))
        .fold(PowerSums::default(), PowerSums::add);
    Ok(SampleStats {
        mean,
        ..finish(n, sums)
    })
}

#[cfg(feature = "parallel")]
pub fn sample_stats_parallel(data: &[f64]) -> Result<SampleStats> {
    validate(data)?;
    let n = data.len();
    let partial: Vec<f64> = data.par_chunks(CHUNK).map(|c| c.iter().sum::<f64>()).collect();
    let mean = ordered_sum(partial) / n as f64;
    let partial: Vec<PowerSums> = data.par_chunks(CHUNK).map(|c| PowerSums::of(c, mean)).collect();
    let sums = partial.into_iter().fold(PowerSums::default(), PowerSums::add);
    Ok(SampleStats {
        mean,
        ..finish(n, sums)
    })
}

/// Count, mean, unbiased variance, skewness and excess kurtosis of `data`.
pub fn sample_stats(data: &[f64]) -> Result<SampleStats> {
    #[cfg(feature = "parallel")]
    {
        sample_stats_parallel(data)
    }
    #[cfg(not(feature = "parallel"))]
    {
        sample_stats_sequential(data)
    }
}
