use std::io::Write;

use frechet::FrechetShape;
use serde::Serialize;

use super::CliError;
use crate::cli::{Format, MomentsArgs};
use crate::output::{write_csv, write_json, Marked, TextTable, SCHEMA_VERSION};

#[derive(Debug, Serialize)]
struct Row {
    order: u32,
    defined: bool,
    raw: Marked,
    centered: Marked,
    /// Absent for order 1.
    normalized: Option<Marked>,
}

#[derive(Debug, Serialize)]
struct Report {
    schema_version: u32,
    command: &'static str,
    alpha: f64,
    moments: Vec<Row>,
    skewness: Marked,
    excess_kurtosis: Marked,
}

fn build(args: &MomentsArgs) -> Result<Report, CliError> {
    let shape = FrechetShape::new(args.alpha)?;
    let moments = shape
        .moment_report(args.max_order)
        .into_iter()
        .map(|r| Row {
            order: r.order,
            defined: r.defined,
            raw: Marked::from_option(r.raw, r.defined),
            centered: Marked::from_option(r.centered, r.defined),
            normalized: (r.order >= 2).then(|| Marked::from_option(r.normalized, r.defined)),
        })
        .collect();
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        command: "moments",
        alpha: args.alpha,
        moments,
        skewness: Marked::from_f64(shape.skewness()),
        excess_kurtosis: Marked::from_f64(shape.excess_kurtosis()),
    })
}

pub fn run(args: &MomentsArgs, format: Format, out: &mut impl Write) -> Result<(), CliError> {
    let report = build(args)?;
    match format {
        Format::Json => write_json(out, &report)?,
        Format::Csv => {
            let mut rows = Vec::new();
            for r in &report.moments {
                let order = r.order.to_string();
                rows.push(vec!["raw".into(), order.clone(), r.raw.csv()]);
                rows.push(vec!["centered".into(), order.clone(), r.centered.csv()]);
                if let Some(n) = r.normalized {
                    rows.push(vec!["normalized".into(), order, n.csv()]);
                }
            }
            rows.push(vec!["skewness".into(), String::new(), report.skewness.csv()]);
            rows.push(vec!["excess_kurtosis".into(), String::new(), report.excess_kurtosis.csv()]);
            write_csv(out, &["quantity", "order", "value"], &rows)?;
        }
        Format::Table => {
            writeln!(out, "alpha = {}", report.alpha)?;
            let mut table = TextTable::new(["k", "raw Omega_k", "centered mu_k", "normalized zeta_k"]);
            for r in &report.moments {
                table.push(vec![
                    r.order.to_string(),
                    r.raw.human(),
                    r.centered.human(),
                    r.normalized.map_or("-".into(), Marked::human),
                ]);
            }
            table.write(out)?;
            writeln!(out)?;
            writeln!(out, "skewness         {}", report.skewness.human())?;
            writeln!(out, "excess kurtosis  {}", report.excess_kurtosis.human())?;
        }
    }
    Ok(())
}
