//! Table rendering for CSV and JSON output.

use clap::ValueEnum;
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
}

/// Rows of named cells. Renders as CSV with a header row, or as JSON.
#[derive(Debug, Clone)]
pub struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// CSV, or a JSON array of objects. With `single`, JSON output is the
    /// lone object rather than a one-element array.
    pub fn render(&self, format: Format, precision: usize, single: bool) -> String {
        match format {
            Format::Csv => self.render_csv(precision),
            Format::Json => {
                let mut objects: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| self.object(row, precision))
                    .collect();
                let value = if single && objects.len() == 1 {
                    objects.remove(0)
                } else {
                    Value::Array(objects)
                };
                let mut text = serde_json::to_string_pretty(&value).expect("plain JSON values");
                text.push('\n');
                text
            }
        }
    }

    fn render_csv(&self, precision: usize) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row
                .iter()
                .map(|cell| match cell {
                    Cell::Num(v) => format_sig(*v, precision),
                    Cell::Int(v) => v.to_string(),
                    Cell::Bool(v) => v.to_string(),
                    Cell::Text(v) => csv_quote(v),
                })
                .collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    fn object(&self, row: &[Cell], precision: usize) -> Value {
        let mut map = Map::new();
        for (name, cell) in self.columns.iter().zip(row) {
            let value = match cell {
                Cell::Num(v) => round_sig(*v, precision)
                    .and_then(Number::from_f64)
                    .map_or(Value::Null, Value::Number),
                Cell::Int(v) => Value::from(*v),
                Cell::Bool(v) => Value::Bool(*v),
                Cell::Text(v) => Value::String(v.clone()),
            };
            map.insert((*name).to_string(), value);
        }
        Value::Object(map)
    }
}

fn csv_quote(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

/// `v` rounded to `digits` significant digits, `None` when not finite.
pub fn round_sig(v: f64, digits: usize) -> Option<f64> {
    if !v.is_finite() {
        return None;
    }
    Some(
        format!("{:.*e}", digits.saturating_sub(1), v)
            .parse()
            .expect("valid float"),
    )
}

/// `%g`-style rendering with `digits` significant digits: fixed notation for
/// decimal exponents in `[-4, digits)`, scientific otherwise, trailing zeros
/// removed. Always uses `.` as the decimal point.
pub fn format_sig(v: f64, digits: usize) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(text: &str) -> &str {
    if text.contains('.') {
        text.trim_end_matches('0').trim_end_matches('.')
    } else {
        text
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(format_sig(1.0, 12), "1");
        assert_eq!(format_sig(187_235.2, 12), "187235.2");
        assert_eq!(
            format_sig(8.992_395_877_621_733e-17, 12),
            "8.99239587762e-17"
        );
        assert_eq!(format_sig(1.5e13, 6), "1.5e+13");
        assert_eq!(format_sig(-0.000_123_456_789, 6), "-0.000123457");
        assert_eq!(format_sig(0.0, 12), "0");
        assert_eq!(format_sig(-0.0, 12), "0");
        assert_eq!(format_sig(999_999.6, 6), "1e+06");
    }

    #[test]
    fn csv_has_header_without_rows() {
        let table = Table::new(vec!["eta", "xi"]);
        assert_eq!(table.render(Format::Csv, 12, false), "eta,xi\n");
    }

    #[test]
    fn json_single_object() {
        let mut table = Table::new(vec!["a", "b"]);
        table.push(vec![Cell::Num(1.0 / 3.0), Cell::Bool(true)]);
        let v: Value = serde_json::from_str(&table.render(Format::Json, 6, true)).unwrap();
        assert_eq!(v["a"], Value::from(0.333333));
        assert_eq!(v["b"], Value::Bool(true));
    }

    #[test]
    fn json_nan_is_null() {
        let mut table = Table::new(vec!["a"]);
        table.push(vec![Cell::Num(f64::NAN)]);
        let v: Value = serde_json::from_str(&table.render(Format::Json, 6, false)).unwrap();
        assert_eq!(v[0]["a"], Value::Null);
    }
}
