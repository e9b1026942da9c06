use std::io::Write;

use frechet::diagnostics::{run_checks, CheckConfig, CheckReport};
use frechet::special::{LaurentCoefficients, LAURENT};
use serde::Serialize;

use super::CliError;
use crate::cli::{CheckArgs, Format};
use crate::output::{full, write_csv, write_json, TextTable, SCHEMA_VERSION};

#[derive(Debug, Serialize)]
struct Report<'a> {
    schema_version: u32,
    command: &'static str,
    passed: bool,
    first_failure: Option<&'static str>,
    #[serde(flatten)]
    report: &'a CheckReport,
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn run(args: &CheckArgs, format: Format, out: &mut impl Write) -> Result<(), CliError> {
    let mut config = CheckConfig {
        max_order: args.max_order,
        ..CheckConfig::default()
    };
    if let Some(grid) = &args.alpha_grid {
        config.alpha_grid = grid.clone();
    }
    if args.mutate_laurent_c2 {
        config.laurent = LaurentCoefficients {
            c2: -LAURENT.c2,
            ..LAURENT
        };
    }
    let report = run_checks(&config)?;
    let first_failure = report.first_failure();

    match format {
        Format::Json => write_json(
            out,
            &Report {
                schema_version: SCHEMA_VERSION,
                command: "check",
                passed: report.passed(),
                first_failure: first_failure.map(|s| s.name()),
                report: &report,
            },
        )?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.suite.name().to_string(),
                        r.label.clone(),
                        r.alpha.map_or(String::new(), |a| a.to_string()),
                        full(r.measured),
                        full(r.threshold),
                        verdict(r.passed).to_string(),
                    ]
                })
                .collect();
            write_csv(out, &["suite", "check", "alpha", "measured", "threshold", "result"], &rows)?;
        }
        Format::Table => {
            let mut table = TextTable::new(["suite", "check", "alpha", "measured", "threshold", "result"]);
            for r in &report.rows {
                table.push(vec![
                    r.suite.name().to_string(),
                    r.label.clone(),
                    r.alpha.map_or("-".into(), |a| a.to_string()),
                    format!("{:.3e}", r.measured),
                    format!("{:.1e}", r.threshold),
                    verdict(r.passed).to_string(),
                ]);
            }
            table.write(out)?;
            let failed = report.rows.iter().filter(|r| !r.passed).count();
            writeln!(out)?;
            writeln!(out, "{} checks, {} failed", report.rows.len(), failed)?;
        }
    }
    match first_failure {
        Some(suite) => Err(CliError::Check(suite)),
        None => Ok(()),
    }
}
