use std::io::Write;

use frechet::tables::{compute_tables, Entry, TableRow};
use serde::Serialize;

use super::CliError;
use crate::cli::Format;
use crate::output::{full, human, write_csv, write_json, TextTable, SCHEMA_VERSION};

#[derive(Debug, Serialize)]
struct Table {
    name: &'static str,
    method: &'static str,
    rows: Vec<Row>,
}

#[derive(Debug, Serialize)]
struct Row {
    alpha: f64,
    variance: Entry,
    estimate: Entry,
    exact: f64,
    exact_iterations: usize,
    exact_from_printed_variance: f64,
}

#[derive(Debug, Serialize)]
struct Report {
    schema_version: u32,
    command: &'static str,
    tables: Vec<Table>,
}

fn table(name: &'static str, method: &'static str, rows: &[TableRow], pick: fn(&TableRow) -> &Entry) -> Table {
    Table {
        name,
        method,
        rows: rows
            .iter()
            .map(|r| Row {
                alpha: r.alpha,
                variance: r.variance.clone(),
                estimate: pick(r).clone(),
                exact: r.exact.alpha,
                exact_iterations: r.exact.iterations,
                exact_from_printed_variance: r.exact_from_printed.alpha,
            })
            .collect(),
    }
}

fn mark(matches: bool) -> String {
    if matches { "yes" } else { "NO" }.to_string()
}

pub fn run(format: Format, out: &mut impl Write) -> Result<(), CliError> {
    let rows = compute_tables()?;
    let report = Report {
        schema_version: SCHEMA_VERSION,
        command: "tables",
        tables: vec![
            table("table1", "order1", &rows, |r| &r.order1),
            table("table2", "order2", &rows, |r| &r.order2),
        ],
    };
    match format {
        Format::Json => write_json(out, &report)?,
        Format::Csv => {
            let mut lines = Vec::new();
            for t in &report.tables {
                for r in &t.rows {
                    lines.push(vec![
                        t.name.to_string(),
                        t.method.to_string(),
                        r.alpha.to_string(),
                        full(r.variance.value),
                        r.variance.display.clone(),
                        r.variance.printed.to_string(),
                        full(r.estimate.value),
                        r.estimate.display.clone(),
                        r.estimate.printed.to_string(),
                        full(r.estimate.deviation),
                        full(r.exact),
                        full(r.exact_from_printed_variance),
                    ]);
                }
            }
            write_csv(
                out,
                &[
                    "table",
                    "method",
                    "alpha",
                    "variance",
                    "variance_display",
                    "variance_printed",
                    "estimate",
                    "estimate_display",
                    "estimate_printed",
                    "estimate_deviation",
                    "exact",
                    "exact_from_printed_variance",
                ],
                &lines,
            )?;
        }
        Format::Table => {
            for (i, t) in report.tables.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                writeln!(out, "Table {}: {} estimate of alpha from the variance", i + 1, t.method)?;
                let mut text = TextTable::new([
                    "alpha",
                    "variance",
                    "printed",
                    "ok",
                    "exact",
                    "exact (printed V)",
                    t.method,
                    "printed",
                    "|deviation|",
                    "ok",
                ]);
                for r in &t.rows {
                    text.push(vec![
                        r.alpha.to_string(),
                        r.variance.display.clone(),
                        r.variance.printed.to_string(),
                        mark(r.variance.matches),
                        human(r.exact),
                        human(r.exact_from_printed_variance),
                        r.estimate.display.clone(),
                        r.estimate.printed.to_string(),
                        format!("{:.2e}", r.estimate.deviation),
                        mark(r.estimate.matches),
                    ]);
                }
                text.write(out)?;
            }
        }
    }
    Ok(())
}
