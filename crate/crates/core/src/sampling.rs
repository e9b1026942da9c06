//! Seeded inverse-cdf sampling and plain-text sample files.
//!
//! The generator is PCG-XSL-RR 128/64 (`rand_pcg::Pcg64`) seeded through
//! `seed_from_u64`. Each draw consumes exactly one 64-bit output `r`, mapped
//! to `u = (⌊r / 2¹²⌋ + ½) / 2⁵²`, which lies strictly inside (0, 1), and
//! then to `x = m + s (−ln u)^(−1/α)`. Because every value uses one output,
//! the parallel path can jump each chunk's generator ahead with `advance`
//! and reproduce the sequential stream exactly.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use rand_core::{Rng, SeedableRng};
use rand_pcg::Pcg64;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::distribution::FrechetParams;
use crate::error::{Error, Result};

#[cfg(feature = "parallel")]
const CHUNK: usize = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplerConfig {
    pub seed: u64,
    pub count: usize,
    pub params: FrechetParams,
}

impl SamplerConfig {
    pub fn new(seed: u64, count: usize, params: FrechetParams) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidParameter("sample count must be at least 1".into()));
        }
        Ok(SamplerConfig { seed, count, params })
    }
}

/// Stream of draws; one instance per thread.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: Pcg64,
    location: f64,
    scale: f64,
    neg_inv_alpha: f64,
}

impl Sampler {
    pub fn new(seed: u64, params: FrechetParams) -> Self {
        Sampler {
            rng: Pcg64::seed_from_u64(seed),
            location: params.location(),
            scale: params.scale(),
            neg_inv_alpha: -1.0 / params.alpha(),
        }
    }

    /// Skips the next `draws` values in O(log draws).
    pub fn jump(&mut self, draws: u64) {
        self.rng.advance(u128::from(draws));
    }

    pub fn next_uniform(&mut self) -> f64 {
        // 52 bits so that k + ½ stays exact for every k
        ((self.rng.next_u64() >> 12) as f64 + 0.5) * (1.0 / (1u64 << 52) as f64)
    }

    pub fn draw(&mut self) -> f64 {
        let u = self.next_uniform();
        let x = self.location + self.scale * (-u.ln()).powf(self.neg_inv_alpha);
        // s·(…) can vanish next to a large |m|; keep the support open
        if x > self.location {
            x
        } else {
            self.location.next_up()
        }
    }

    pub fn fill(&mut self, out: &mut [f64]) {
        for slot in out {
            *slot = self.draw();
        }
    }
}

impl Iterator for Sampler {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        Some(self.draw())
    }
}

pub fn sample_sequential(config: &SamplerConfig) -> Vec<f64> {
    let mut out = vec![0.0; config.count];
    Sampler::new(config.seed, config.params).fill(&mut out);
    out
}

#[cfg(feature = "parallel")]
pub fn sample_parallel(config: &SamplerConfig) -> Vec<f64> {
    let base = Sampler::new(config.seed, config.params);
    let mut out = vec![0.0; config.count];
    out.par_chunks_mut(CHUNK).enumerate().for_each(|(i, chunk)| {
        let mut sampler = base.clone();
        sampler.jump((i * CHUNK) as u64);
        sampler.fill(chunk);
    });
    out
}

/// `config.count` draws. Output depends only on the config, not on the
/// thread count or on the `parallel` feature.
pub fn sample(config: &SamplerConfig) -> Vec<f64> {
    #[cfg(feature = "parallel")]
    {
        sample_parallel(config)
    }
    #[cfg(not(feature = "parallel"))]
    {
        sample_sequential(config)
    }
}

/// Scientific notation with 17 significant digits; parses back to the same bits.
pub fn format_value(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_number(token: &str, line: usize) -> Result<f64> {
    match token.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(Error::Parse {
            line,
            token: token.to_string(),
        }),
    }
}

fn split_fields(line: &str) -> Vec<&str> {
    if line.contains(',') {
        line.split(',').map(str::trim).collect()
    } else {
        line.split_whitespace().collect()
    }
}

/// Parses sample text: one value per line, or one column of a comma- or
/// whitespace-delimited table. The first non-blank line is a header when
/// any of its fields is not a number. Blank lines are skipped.
///
/// With several columns, `column` must name one in the header; with a
/// single column it is optional but still checked against the header.
pub fn parse_samples(text: &str, column: Option<&str>) -> Result<Vec<f64>> {
    let mut rows = text
        .lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty())
        .peekable();

    let Some(&(first_line, first)) = rows.peek() else {
        return Err(Error::EmptyInput);
    };
    let first_fields = split_fields(first);
    let width = first_fields.len();
    let has_header = first_fields.iter().any(|f| parse_number(f, first_line).is_err());
    if has_header {
        rows.next();
    }

    let index = match (column, has_header) {
        (Some(name), true) => first_fields
            .iter()
            .position(|f| *f == name)
            .ok_or_else(|| Error::Format(format!("no column named {name:?} in header")))?,
        (Some(name), false) => {
            return Err(Error::Format(format!(
                "column {name:?} requested but the input has no header row"
            )))
        }
        (None, _) if width == 1 => 0,
        (None, _) => {
            return Err(Error::Format(format!(
                "input has {width} columns; select one by header name"
            )))
        }
    };

    let mut values = Vec::new();
    for (line, text) in rows {
        let fields = split_fields(text);
        if fields.len() != width {
            return Err(Error::Format(format!(
                "line {line}: expected {width} fields, found {}",
                fields.len()
            )));
        }
        values.push(parse_number(fields[index], line)?);
    }
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(values)
}

pub fn read_samples(path: &Path, column: Option<&str>) -> Result<Vec<f64>> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_samples(&text, column)
}

/// Writes one value per line, without a header.
pub fn write_samples(path: &Path, values: &[f64]) -> Result<()> {
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = fs::File::create(path).map_err(io_err)?;
    let mut out = BufWriter::new(file);
    for &x in values {
        writeln!(out, "{}", format_value(x)).map_err(io_err)?;
    }
    out.flush().map_err(io_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(count: usize) -> SamplerConfig {
        SamplerConfig::new(42, count, FrechetParams::new(1.5, 2.0, 5.0).unwrap()).unwrap()
    }

    #[test]
    fn zero_count_is_rejected() {
        let p = FrechetParams::new(0.0, 1.0, 5.0).unwrap();
        assert!(SamplerConfig::new(1, 0, p).is_err());
    }

    #[test]
    fn deterministic_and_above_location() {
        let a = sample(&config(1000));
        let b = sample(&config(1000));
        assert_eq!(a, b);
        assert!(a.iter().all(|&x| x > 1.5));
        let other = sample(&SamplerConfig { seed: 43, ..config(1000) });
        assert_ne!(a, other);
    }

    #[test]
    fn iterator_matches_fill() {
        let c = config(50);
        let from_iter: Vec<f64> = Sampler::new(c.seed, c.params).take(50).collect();
        assert_eq!(from_iter, sample_sequential(&c));
    }

    #[test]
    fn jump_matches_discarding() {
        let p = config(1).params;
        let mut a = Sampler::new(7, p);
        let mut b = Sampler::new(7, p);
        for _ in 0..1234 {
            a.draw();
        }
        b.jump(1234);
        assert_eq!(a.draw(), b.draw());
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_matches_sequential() {
        let c = config(3 * CHUNK + 17);
        assert_eq!(sample_parallel(&c), sample_sequential(&c));
    }

    #[test]
    fn uniforms_stay_inside_unit_interval() {
        let lo = (0.0 + 0.5) / (1u64 << 52) as f64;
        let hi = (((1u64 << 52) - 1) as f64 + 0.5) / (1u64 << 52) as f64;
        assert!(lo > 0.0 && hi < 1.0);
        let mut s = Sampler::new(0, config(1).params);
        assert!((0..10_000).map(|_| s.next_uniform()).all(|u| u > 0.0 && u < 1.0));
    }

    #[test]
    fn huge_location_keeps_support_open() {
        let p = FrechetParams::new(1e20, 1.0, 5.0).unwrap();
        let xs = sample(&SamplerConfig::new(3, 100, p).unwrap());
        assert!(xs.iter().all(|&x| x > 1e20));
    }

    #[test]
    fn parse_single_column() {
        assert_eq!(parse_samples("1.0\n2.5\n0.3\n", None).unwrap(), vec![1.0, 2.5, 0.3]);
        assert_eq!(parse_samples("\n1\n\n  2 \n", None).unwrap(), vec![1.0, 2.0]);
    }

    #[test]
    fn parse_header_and_columns() {
        assert_eq!(parse_samples("value\n1.0\n2.0\n", Some("value")).unwrap(), vec![1.0, 2.0]);
        assert_eq!(parse_samples("value\n1.0\n2.0\n", None).unwrap(), vec![1.0, 2.0]);
        let csv = "id,value\n1,3.5\n2,4.5\n";
        assert_eq!(parse_samples(csv, Some("value")).unwrap(), vec![3.5, 4.5]);
        let ws = "id value\n1 3.5\n2\t4.5\n";
        assert_eq!(parse_samples(ws, Some("id")).unwrap(), vec![1.0, 2.0]);
        assert!(matches!(parse_samples(csv, None), Err(Error::Format(_))));
        assert!(matches!(parse_samples(csv, Some("x")), Err(Error::Format(_))));
        assert!(matches!(parse_samples("1\n2\n", Some("x")), Err(Error::Format(_))));
        assert!(matches!(parse_samples("a,b\n1,2\n3\n", Some("a")), Err(Error::Format(_))));
    }

    #[test]
    fn parse_errors_name_the_line() {
        match parse_samples("1.0\nabc\n", None) {
            Err(Error::Parse { line, token }) => {
                assert_eq!(line, 2);
                assert_eq!(token, "abc");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_samples("1\nNaN\n", None), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_samples("1\n\ninf\n", None), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn empty_inputs() {
        assert!(matches!(parse_samples("", None), Err(Error::EmptyInput)));
        assert!(matches!(parse_samples(" \n\n", None), Err(Error::EmptyInput)));
        assert!(matches!(parse_samples("value\n", None), Err(Error::EmptyInput)));
    }

    #[test]
    fn format_is_lossless() {
        for x in [0.1, 1.0 / 3.0, 1e-300, 123456789.123456789, f64::MIN_POSITIVE, f64::MAX] {
            assert_eq!(format_value(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(format_value(2.5), "2.5000000000000000e0");
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = read_samples(Path::new("/nonexistent/samples.txt"), None).unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
        assert!(err.is_input_error());
    }
}
