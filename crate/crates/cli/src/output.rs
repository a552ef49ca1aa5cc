use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::args::Format;
use crate::error::CliError;

/// The JSON shape of every command's output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub command: String,
    pub params: Value,
    pub result: Value,
}

/// A command's output in all three formats.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub document: OutputDocument,
    pub text: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.document)
                    .map_err(|e| CliError::Render(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Format::Text => Ok(self.text.clone()),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header)
                    .map_err(|e| CliError::Render(e.to_string()))?;
                for row in &self.rows {
                    w.write_record(row)
                        .map_err(|e| CliError::Render(e.to_string()))?;
                }
                let bytes = w
                    .into_inner()
                    .map_err(|e| CliError::Render(e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| CliError::Render(e.to_string()))
            }
        }
    }
}

/// Rounds to 12 significant digits; negative zero becomes zero.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Shortest decimal form of `x` rounded to 12 significant digits.
pub fn fmt_num(x: f64) -> String {
    let r = round_sig(x);
    if r != 0.0 && (r.abs() < 1e-4 || r.abs() >= 1e15) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

/// `a`, `bi` or `a+bi` / `a-bi`, both parts rounded to 12 significant digits.
pub fn fmt_complex(z: Complex64) -> String {
    let (re, im) = (round_sig(z.re), round_sig(z.im));
    match (re == 0.0, im == 0.0) {
        (_, true) => fmt_num(re),
        (true, false) => format!("{}i", fmt_num(im)),
        (false, false) if im < 0.0 => format!("{}-{}i", fmt_num(re), fmt_num(-im)),
        (false, false) => format!("{}+{}i", fmt_num(re), fmt_num(im)),
    }
}

/// JSON number rounded like [`fmt_num`].
pub fn json_num(x: f64) -> Value {
    serde_json::Number::from_f64(round_sig(x))
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

pub fn fmt_sign(s: i8) -> String {
    format!("{s:+}")
}
