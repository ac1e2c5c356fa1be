use serde::Serialize;

use crate::precision::Real;

use super::{Format, EXIT_PASS};

/// A decimal value together with the number of significant digits it is
/// certified to.
#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct Num {
    pub value: String,
    pub digits_claimed: u32,
}

impl Num {
    /// Emits `v` with exactly `digits` significant digits (at least one is
    /// always printed).
    pub fn new(v: &Real, digits: u32) -> Self {
        Num { value: v.to_sci(digits.max(1) as usize), digits_claimed: digits }
    }
}

/// A rendered command result: one JSON document, one CSV table, one text
/// report, and the exit code.
pub struct Outcome {
    pub json: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub text: String,
    pub code: i32,
}

impl Outcome {
    pub fn new<T: Serialize>(doc: &T, header: &[&str], rows: Vec<Vec<String>>, text: String) -> serde_json::Result<Self> {
        Ok(Outcome {
            json: serde_json::to_string_pretty(doc)? + "\n",
            header: header.iter().map(|s| s.to_string()).collect(),
            rows,
            text,
            code: EXIT_PASS,
        })
    }

    pub fn with_code(mut self, code: i32) -> Self {
        self.code = code;
        self
    }

    pub fn render(&self, f: Format) -> Result<String, String> {
        match f {
            Format::Json => Ok(self.json.clone()),
            Format::Text => Ok(self.text.clone()),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header).map_err(|e| e.to_string())?;
                for r in &self.rows {
                    w.write_record(r).map_err(|e| e.to_string())?;
                }
                let bytes = w.into_inner().map_err(|e| e.to_string())?;
                String::from_utf8(bytes).map_err(|e| e.to_string())
            }
        }
    }
}

/// Left-aligned columns separated by two spaces.
pub fn text_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, (c, w)) in cells.iter().zip(&width).enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            s.push_str(c);
            if i + 1 < cells.len() {
                s.push_str(&" ".repeat(w - c.chars().count()));
            }
        }
        s.push('\n');
        s
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}
