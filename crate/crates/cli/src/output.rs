//! CSV and JSON writers.

use std::fmt::Write as _;
use std::path::Path;

use crate::CliError;

/// Shortest scientific form with 17 significant digits; always '.' as the
/// decimal separator.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

pub struct Csv {
    text: String,
}

impl Csv {
    pub fn new(timestamp: bool, title: &str, header: &[&str]) -> Self {
        let mut text = String::new();
        if timestamp {
            let _ = writeln!(text, "# {title} generated {}", chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
        }
        text.push_str(&header.join(","));
        text.push('\n');
        Self { text }
    }

    pub fn row(&mut self, fields: &[String]) {
        self.text.push_str(&fields.join(","));
        self.text.push('\n');
    }

    pub fn into_string(self) -> String {
        self.text
    }
}

pub fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn json_text<S: serde::Serialize>(value: &S) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}
