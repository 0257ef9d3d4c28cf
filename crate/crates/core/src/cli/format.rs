//! Rendering of result tables as text, CSV or JSON.

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// `x` with 12 significant digits, in the style of `%.12g`.
pub fn sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    let sci = format!("{:.11e}", x);
    // Rounding may carry into the next decade; read the exponent back.
    let exp = sci
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse::<i32>().ok())
        .unwrap_or(exp);
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        let (mantissa, e) = sci.split_once('e').expect("scientific form");
        format!("{}e{}", trim_zeros(mantissa.to_string()), e)
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Num(x) => sig(*x),
            Cell::Text(s) => s.clone(),
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => shortest(*x),
            Cell::Text(s) => s.clone(),
        }
    }
}

/// Shortest round-trip representation, exponent form for very small or
/// large magnitudes.
pub fn shortest(x: f64) -> String {
    let s = format!("{x:?}");
    s.strip_suffix(".0").map(str::to_string).unwrap_or(s)
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<u64> for Cell {
    fn from(n: u64) -> Self {
        Cell::Text(n.to_string())
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Text(n.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

/// One line of a report: `quantity,value,lower,upper,source`.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub quantity: String,
    pub value: Cell,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub source: String,
}

impl Row {
    pub fn new(quantity: impl Into<String>, value: impl Into<Cell>, source: impl Into<String>) -> Self {
        Row {
            quantity: quantity.into(),
            value: value.into(),
            lower: None,
            upper: None,
            source: source.into(),
        }
    }

    pub fn bounds(mut self, lower: Option<f64>, upper: Option<f64>) -> Self {
        self.lower = lower;
        self.upper = upper;
        self
    }
}

/// A titled group of rows, with its structured JSON form.
#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    pub key: String,
    pub title: String,
    pub rows: Vec<Row>,
    pub json: Value,
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub const CSV_HEADER: &str = "quantity,value,lower,upper,source";

pub fn render_csv(sections: &[Section]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in sections.iter().flat_map(|s| &s.rows) {
        let opt = |v: Option<f64>| v.map(shortest).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            csv_field(&row.quantity),
            csv_field(&row.value.csv()),
            opt(row.lower),
            opt(row.upper),
            csv_field(&row.source)
        ));
    }
    out
}

pub fn render_text(sections: &[Section]) -> String {
    let mut out = String::new();
    for (i, s) in sections.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&format!("== {} ==\n", s.title));
        let width = s.rows.iter().map(|r| r.quantity.len()).max().unwrap_or(0);
        for r in &s.rows {
            let mut line = format!("{:<width$}  {}", r.quantity, r.value.text());
            if r.lower.is_some() || r.upper.is_some() {
                let b = |v: Option<f64>| v.map(sig).unwrap_or_else(|| "-".into());
                line.push_str(&format!("  [{}, {}]", b(r.lower), b(r.upper)));
            }
            if !r.source.is_empty() {
                line.push_str(&format!("  ({})", r.source));
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
    }
    out
}

pub fn render_json(sections: &[Section]) -> String {
    let mut map = Map::new();
    for s in sections {
        map.insert(s.key.clone(), s.json.clone());
    }
    let mut text = serde_json::to_string_pretty(&Value::Object(map)).expect("json");
    text.push('\n');
    text
}

pub fn render(sections: &[Section], format: Format) -> String {
    match format {
        Format::Text => render_text(sections),
        Format::Json => render_json(sections),
        Format::Csv => render_csv(sections),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sig(1.3614356236071319), "1.36143562361");
        assert_eq!(sig(4.0 / 3.0), "1.33333333333");
        assert_eq!(sig(0.4375), "0.4375");
        assert_eq!(sig(1e-20), "1e-20");
        assert_eq!(sig(0.0), "0");
        assert_eq!(sig(-2.5), "-2.5");
        assert_eq!(sig(9.9999999999999), "10");
        assert_eq!(sig(123456789012345.0), "1.23456789012e14");
    }

    #[test]
    fn csv_layout() {
        let s = Section {
            key: "k".into(),
            title: "t".into(),
            rows: vec![Row::new("a,b", 1.5, "src").bounds(Some(1.0), None)],
            json: Value::Null,
        };
        assert_eq!(render_csv(&[s]), "quantity,value,lower,upper,source\n\"a,b\",1.5,1,,src\n");
    }
}
