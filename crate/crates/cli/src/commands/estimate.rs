use std::io::Write;

use frechet::estimation::{alpha_exact, alpha_order1, alpha_order2, fit_location_scale};
use frechet::sampling::read_samples;
use frechet::stats::sample_stats;
use frechet::{EstimateResult, SampleStats};
use serde::Serialize;

use super::CliError;
use crate::cli::{EstimateArgs, Format, MethodArg};
use crate::output::{full, human, write_csv, write_json, TextTable, SCHEMA_VERSION};

#[derive(Debug, Serialize)]
struct Estimate {
    method: &'static str,
    alpha: f64,
    residual: Option<f64>,
    iterations: usize,
}

impl From<EstimateResult> for Estimate {
    fn from(r: EstimateResult) -> Self {
        Estimate {
            method: r.method.label(),
            alpha: r.alpha,
            residual: r.residual,
            iterations: r.iterations,
        }
    }
}

#[derive(Debug, Serialize)]
struct Fit {
    location: f64,
    scale: f64,
    alpha: f64,
}

#[derive(Debug, Serialize)]
struct Report {
    schema_version: u32,
    command: &'static str,
    variance: f64,
    /// Present when the variance came from a sample file.
    sample: Option<SampleStats>,
    estimates: Vec<Estimate>,
    fit: Option<Fit>,
}

fn build(args: &EstimateArgs) -> Result<Report, CliError> {
    let (variance, sample) = match (&args.input, args.variance) {
        (Some(path), _) => {
            let data = read_samples(path, args.column.as_deref())?;
            let stats = sample_stats(&data)?;
            (stats.variance, Some(stats))
        }
        (None, Some(v)) => (v, None),
        (None, None) => unreachable!("clap requires one source"),
    };

    let mut estimates = Vec::new();
    let all = args.method == MethodArg::All;
    if all || args.method == MethodArg::Order1 {
        estimates.push(alpha_order1(variance)?.into());
    }
    if all || args.method == MethodArg::Order2 {
        estimates.push(alpha_order2(variance)?.into());
    }
    if all || args.method == MethodArg::Exact {
        estimates.push(alpha_exact(variance, args.tol, args.max_iter)?.into());
    }

    let fit = match (&sample, args.fit) {
        (Some(stats), true) => {
            let p = fit_location_scale(stats, 1e-10)?;
            Some(Fit {
                location: p.location(),
                scale: p.scale(),
                alpha: p.alpha(),
            })
        }
        _ => None,
    };

    Ok(Report {
        schema_version: SCHEMA_VERSION,
        command: "estimate",
        variance,
        sample,
        estimates,
        fit,
    })
}

fn optional(x: Option<f64>, render: fn(f64) -> String) -> String {
    x.map_or("-".into(), render)
}

pub fn run(args: &EstimateArgs, format: Format, out: &mut impl Write) -> Result<(), CliError> {
    let report = build(args)?;
    match format {
        Format::Json => write_json(out, &report)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .estimates
                .iter()
                .map(|e| {
                    vec![
                        e.method.to_string(),
                        full(e.alpha),
                        optional(e.residual, full),
                        e.iterations.to_string(),
                        full(report.variance),
                        String::new(),
                        String::new(),
                    ]
                })
                .chain(report.fit.iter().map(|f| {
                    vec![
                        "fit".into(),
                        full(f.alpha),
                        String::new(),
                        String::new(),
                        full(report.variance),
                        full(f.location),
                        full(f.scale),
                    ]
                }))
                .collect();
            write_csv(out, &["method", "alpha", "residual", "iterations", "variance", "location", "scale"], &rows)?;
        }
        Format::Table => {
            match &report.sample {
                Some(s) => {
                    writeln!(out, "sample     {} values", s.count)?;
                    writeln!(out, "mean       {}", human(s.mean))?;
                    writeln!(out, "variance   {}", human(s.variance))?;
                    writeln!(out, "skewness   {}", optional(s.skewness, human))?;
                }
                None => writeln!(out, "variance   {}", human(report.variance))?,
            }
            writeln!(out)?;
            let mut table = TextTable::new(["method", "alpha", "residual", "iterations"]);
            for e in &report.estimates {
                table.push(vec![
                    e.method.to_string(),
                    human(e.alpha),
                    optional(e.residual, |r| format!("{r:.3e}")),
                    e.iterations.to_string(),
                ]);
            }
            table.write(out)?;
            if let Some(f) = &report.fit {
                writeln!(out)?;
                writeln!(
                    out,
                    "fit        location {}  scale {}  alpha {}",
                    human(f.location),
                    human(f.scale),
                    human(f.alpha)
                )?;
            }
        }
    }
    Ok(())
}
