//! Fréchet distribution moments, shape estimation from the variance, seeded
//! sampling and plain-text sample files.

#![allow(clippy::excessive_precision)]

pub mod diagnostics;
pub mod distribution;
pub mod error;
pub mod estimation;
pub mod quadrature;
mod roots;
pub mod sampling;
pub mod special;
pub mod stats;
pub mod tables;

pub use distribution::{FrechetParams, FrechetShape, MomentReport};
pub use error::{Error, Result};
pub use estimation::{EstimateResult, Method};
pub use sampling::SamplerConfig;
pub use stats::SampleStats;
