use std::io::Write;

use frechet::sampling::{sample, write_samples};
use frechet::stats::sample_stats;
use frechet::{FrechetParams, SampleStats, SamplerConfig};
use serde::Serialize;

use super::CliError;
use crate::cli::{Format, SampleArgs};
use crate::output::{write_csv, write_json, Marked, TextTable, SCHEMA_VERSION};

#[derive(Debug, Serialize)]
struct Analytic {
    mean: Marked,
    variance: Marked,
    skewness: Marked,
    excess_kurtosis: Marked,
}

#[derive(Debug, Serialize)]
struct Report {
    schema_version: u32,
    command: &'static str,
    output: String,
    location: f64,
    scale: f64,
    alpha: f64,
    seed: u64,
    count: u64,
    /// Absent for a single draw.
    sample: Option<SampleStats>,
    analytic: Analytic,
}

fn analytic(params: &FrechetParams) -> Analytic {
    let shape = params.shape();
    Analytic {
        mean: Marked::from_option(params.mean().ok(), false),
        variance: Marked::from_option(params.variance().ok(), false),
        skewness: Marked::from_f64(shape.skewness()),
        excess_kurtosis: Marked::from_f64(shape.excess_kurtosis()),
    }
}

pub fn run(args: &SampleArgs, format: Format, out: &mut impl Write) -> Result<(), CliError> {
    let params = FrechetParams::new(args.location, args.scale, args.alpha)?;
    let count = usize::try_from(args.count).map_err(|_| {
        frechet::Error::InvalidParameter(format!("count {} does not fit in memory", args.count))
    })?;
    let config = SamplerConfig::new(args.seed, count, params)?;
    let values = sample(&config);
    write_samples(&args.output, &values)?;

    let report = Report {
        schema_version: SCHEMA_VERSION,
        command: "sample",
        output: args.output.display().to_string(),
        location: args.location,
        scale: args.scale,
        alpha: args.alpha,
        seed: args.seed,
        count: args.count,
        sample: if count >= 2 { Some(sample_stats(&values)?) } else { None },
        analytic: analytic(&params),
    };

    let optional = |x: Option<f64>| x.map_or(Marked::Unavailable, Marked::Number);
    let rows: Vec<(&str, Marked, Marked)> = match &report.sample {
        Some(s) => vec![
            ("mean", Marked::Number(s.mean), report.analytic.mean),
            ("variance", Marked::Number(s.variance), report.analytic.variance),
            ("skewness", optional(s.skewness), report.analytic.skewness),
            ("excess_kurtosis", optional(s.excess_kurtosis), report.analytic.excess_kurtosis),
        ],
        None => Vec::new(),
    };

    match format {
        Format::Json => write_json(out, &report)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = rows
                .iter()
                .map(|(name, s, a)| vec![name.to_string(), s.csv(), a.csv()])
                .collect();
            write_csv(out, &["statistic", "sample", "analytic"], &rows)?;
        }
        Format::Table => {
            writeln!(
                out,
                "wrote {} values to {} (seed {}, location {}, scale {}, alpha {})",
                report.count,
                report.output,
                report.seed,
                report.location,
                report.scale,
                report.alpha
            )?;
            if !rows.is_empty() {
                writeln!(out)?;
                let mut table = TextTable::new(["statistic", "sample", "analytic"]);
                for (name, s, a) in &rows {
                    table.push(vec![name.replace('_', " "), s.human(), a.human()]);
                }
                table.write(out)?;
            }
        }
    }
    Ok(())
}
