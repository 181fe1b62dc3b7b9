use std::fs;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};

use crate::Format;

/// An ordered list of named values, printed as `key: value` lines or as
/// two-column CSV.
#[derive(Default)]
pub struct Report(Vec<(String, String)>);

impl Report {
    pub fn add(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.0.push((key.to_owned(), value.to_string()));
        self
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Text => Ok(self.0.iter().map(|(k, v)| format!("{k}: {v}\n")).collect()),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(["key", "value"])?;
                for (k, v) in &self.0 {
                    w.write_record([k, v])?;
                }
                Ok(String::from_utf8(w.into_inner()?)?)
            }
            Format::Svg => bail!("this command has no SVG output"),
        }
    }

    pub fn emit(&self, format: Format, out: Option<&Path>) -> Result<()> {
        write_out(&self.render(format)?, out)
    }
}

pub fn write_out(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

/// Fixed-precision float text, so reruns are byte-identical.
pub fn num(x: f64) -> String {
    // no "-0.000000"
    let x = if x.abs() < 5e-7 { 0.0 } else { x };
    format!("{x:.6}")
}

pub fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}
