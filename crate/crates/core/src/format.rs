//! Output rendering: aligned text tables, CSV and JSON lines.
//!
//! CSV and JSON lines are byte-stable. Integers print in full decimal and
//! reals with 15 significant digits in the style of C's `%.15g`.

use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Table,
    Csv,
    #[value(name = "json-lines")]
    JsonLines,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    UInt(u128),
    Int(i128),
    Real(f64),
    Text(String),
    Missing,
}

impl From<u128> for Value {
    fn from(v: u128) -> Self {
        Value::UInt(v)
    }
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value::UInt(v as u128)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::UInt(v as u128)
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Real(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}

impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(v: Option<T>) -> Self {
        v.map_or(Value::Missing, Into::into)
    }
}

impl Value {
    /// The value as it appears in a CSV cell.
    pub fn plain(&self) -> String {
        match self {
            Value::UInt(v) => v.to_string(),
            Value::Int(v) => v.to_string(),
            Value::Real(v) => format_g15(*v),
            Value::Text(s) => s.clone(),
            Value::Missing => String::new(),
        }
    }

    fn json(&self) -> String {
        match self {
            Value::Real(v) if !v.is_finite() => "null".into(),
            Value::Text(s) => json_string(s),
            Value::Missing => "null".into(),
            other => other.plain(),
        }
    }

    fn is_text(&self) -> bool {
        matches!(self, Value::Text(_))
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// `%.15g`: 15 significant digits, trailing zeros removed, exponent form
/// when the decimal exponent is below -4 or at least 15.
pub fn format_g15(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{x:.14e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..15).contains(&exp) {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (14 - exp) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// A block of rows sharing one header.
#[derive(Debug, Clone, PartialEq)]
pub struct Records {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Records {
    pub fn new(columns: &[&'static str]) -> Self {
        Records { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::JsonLines => self.render_json_lines(),
            OutputFormat::Table => self.render_table(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Value::plain).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn render_json_lines(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            out.push('{');
            for (k, (name, v)) in self.columns.iter().zip(row).enumerate() {
                if k > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{}:{}", json_string(name), v.json());
            }
            out.push_str("}\n");
        }
        out
    }

    fn render_table(&self) -> String {
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Value::plain).collect()).collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(k, c)| cells.iter().map(|r| r[k].chars().count()).max().unwrap_or(0).max(c.len()))
            .collect();
        let mut out = String::new();
        let header: Vec<String> = self.columns.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        out.push_str(header.join("  ").trim_end());
        out.push('\n');
        for (row, values) in cells.iter().zip(&self.rows) {
            let line: Vec<String> = row
                .iter()
                .zip(values)
                .zip(&widths)
                .map(|((s, v), w)| if v.is_text() { format!("{s:<w$}") } else { format!("{s:>w$}") })
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

/// Render several blocks. CSV and table blocks are separated by a blank
/// line; JSON lines are simply concatenated.
pub fn render_all(blocks: &[Records], format: OutputFormat) -> String {
    let sep = if format == OutputFormat::JsonLines { "" } else { "\n" };
    blocks.iter().map(|b| b.render(format)).collect::<Vec<_>>().join(sep)
}
