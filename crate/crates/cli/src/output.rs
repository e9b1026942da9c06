use std::io::{self, Write};

use serde::{Serialize, Serializer};

/// Bumped whenever a JSON field is renamed, removed or changes type.
pub const SCHEMA_VERSION: u32 = 1;

/// Twelve significant digits, fixed point for moderate magnitudes.
pub fn human(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 {
        "0".to_string()
    } else if !x.is_finite() {
        marker_for(x).to_string()
    } else if (1e-3..1e7).contains(&a) {
        let decimals = (11 - a.log10().floor() as i32).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.11e}")
    }
}

/// Lossless text for machine-readable output.
pub fn full(x: f64) -> String {
    if x.is_finite() {
        frechet::sampling::format_value(x)
    } else {
        marker_for(x).to_string()
    }
}

fn marker_for(x: f64) -> &'static str {
    if x.is_nan() {
        "nan"
    } else if x > 0.0 {
        "+inf"
    } else {
        "-inf"
    }
}

/// A moment that may not exist: a number, `"undefined"` where the
/// defining integral diverges, `"+inf"` where the convention assigns
/// positive infinity, or `"unavailable"` where it exists but cannot be
/// evaluated in double precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Marked {
    Number(f64),
    Undefined,
    PosInfinity,
    Unavailable,
}

impl Marked {
    /// `None` reads as undefined when the order is not below alpha.
    pub fn from_option(value: Option<f64>, defined: bool) -> Self {
        match value {
            Some(x) => Marked::from_f64(x),
            None if defined => Marked::Unavailable,
            None => Marked::Undefined,
        }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == f64::INFINITY {
            Marked::PosInfinity
        } else {
            Marked::Number(x)
        }
    }

    pub fn human(self) -> String {
        match self {
            Marked::Number(x) => human(x),
            Marked::Undefined => "undefined (k >= alpha)".to_string(),
            Marked::PosInfinity => "+inf".to_string(),
            Marked::Unavailable => "unavailable".to_string(),
        }
    }

    pub fn csv(self) -> String {
        match self {
            Marked::Number(x) => full(x),
            Marked::Undefined => "undefined".to_string(),
            Marked::PosInfinity => "+inf".to_string(),
            Marked::Unavailable => "unavailable".to_string(),
        }
    }
}

impl Serialize for Marked {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Marked::Number(x) => s.serialize_f64(*x),
            Marked::Undefined => s.serialize_str("undefined"),
            Marked::PosInfinity => s.serialize_str("+inf"),
            Marked::Unavailable => s.serialize_str("unavailable"),
        }
    }
}

/// Left-aligned columns separated by two spaces.
pub struct TextTable {
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl TextTable {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        TextTable {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn write(&self, out: &mut impl Write) -> io::Result<()> {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |out: &mut dyn Write, cells: &[String]| -> io::Result<()> {
            let mut text = String::new();
            for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
                if i > 0 {
                    text.push_str("  ");
                }
                text.push_str(cell);
                if i + 1 < cells.len() {
                    text.extend(std::iter::repeat_n(' ', w - cell.chars().count()));
                }
            }
            writeln!(out, "{text}")
        };
        line(out, &self.headers)?;
        for row in &self.rows {
            line(out, row)?;
        }
        Ok(())
    }
}

fn csv_field(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub fn write_csv(out: &mut impl Write, headers: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    writeln!(out, "{}", headers.join(","))?;
    for row in rows {
        let fields: Vec<String> = row.iter().map(|f| csv_field(f)).collect();
        writeln!(out, "{}", fields.join(","))?;
    }
    Ok(())
}

pub fn write_json<T: Serialize>(out: &mut impl Write, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}
