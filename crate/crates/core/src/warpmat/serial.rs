//! Text grid, CSV and JSON encodings of labelled integer matrices.
//!
//! JSON is `{"c": 2, "labels": [0, 1, ...], "rows": [[...], ...]}` with `c` and
//! `labels` optional. The text grid is one row per line, optionally prefixed by
//! `label:`, with an optional `# c=<n>` header. CSV has a header line whose first
//! field is `label` when rows are labelled.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MatrixFormat {
    #[default]
    Text,
    Csv,
    Json,
}

impl FromStr for MatrixFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(MatrixFormat::Text),
            "csv" => Ok(MatrixFormat::Csv),
            "json" => Ok(MatrixFormat::Json),
            other => Err(Error::Format(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct MatrixDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<u64>>,
    pub rows: Vec<Vec<i64>>,
}

impl MatrixDoc {
    pub fn width(&self) -> Option<usize> {
        self.rows.first().map(|r| r.len())
    }

    pub fn render(&self, format: MatrixFormat) -> String {
        match format {
            MatrixFormat::Json => serde_json::to_string(self).expect("plain data serializes"),
            MatrixFormat::Text => self.render_text(),
            MatrixFormat::Csv => self.render_csv(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        if let Some(c) = self.c {
            writeln!(out, "# c={c}").unwrap();
        }
        let pad = self
            .labels
            .as_ref()
            .and_then(|l| l.iter().max())
            .map_or(0, |m| m.to_string().len());
        let cell = self
            .rows
            .iter()
            .flatten()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        for (i, row) in self.rows.iter().enumerate() {
            if let Some(labels) = &self.labels {
                write!(out, "{:>pad$}:", labels[i]).unwrap();
            }
            for (j, v) in row.iter().enumerate() {
                if j > 0 || self.labels.is_some() {
                    out.push(' ');
                }
                write!(out, "{v:>cell$}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    fn render_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let width = self.width().unwrap_or(0);
        let mut header: Vec<String> = Vec::new();
        if self.labels.is_some() {
            header.push("label".into());
        }
        header.extend((1..=width).map(|j| format!("b{j}")));
        w.write_record(&header).unwrap();
        for (i, row) in self.rows.iter().enumerate() {
            let mut rec: Vec<String> = Vec::new();
            if let Some(labels) = &self.labels {
                rec.push(labels[i].to_string());
            }
            rec.extend(row.iter().map(|v| v.to_string()));
            w.write_record(&rec).unwrap();
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }

    /// Parses any of the three formats, detected from the first non-blank character
    /// (`{` for JSON) or the presence of commas (CSV).
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim_start();
        let format = if trimmed.starts_with('{') {
            MatrixFormat::Json
        } else if trimmed.lines().next().is_some_and(|l| l.contains(',')) {
            MatrixFormat::Csv
        } else {
            MatrixFormat::Text
        };
        Self::parse_as(text, format)
    }

    pub fn parse_as(text: &str, format: MatrixFormat) -> Result<Self> {
        let doc = match format {
            MatrixFormat::Json => {
                serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?
            }
            MatrixFormat::Text => parse_text(text)?,
            MatrixFormat::Csv => parse_csv(text)?,
        };
        if let Some(labels) = &doc.labels {
            if labels.len() != doc.rows.len() {
                return Err(Error::Format(format!(
                    "{} labels for {} rows",
                    labels.len(),
                    doc.rows.len()
                )));
            }
        }
        Ok(doc)
    }
}

fn number<T: FromStr>(s: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::Format(format!("not an integer: {s:?}")))
}

fn parse_text(text: &str) -> Result<MatrixDoc> {
    let mut doc = MatrixDoc::default();
    let mut labels = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(c) = comment.trim().strip_prefix("c=") {
                doc.c = Some(number(c)?);
            }
            continue;
        }
        let values = match line.split_once(':') {
            Some((label, rest)) => {
                labels.push(number(label)?);
                rest
            }
            None => line,
        };
        let row = values.split_whitespace().map(number).collect::<Result<Vec<i64>>>()?;
        doc.rows.push(row);
    }
    if !labels.is_empty() {
        if labels.len() != doc.rows.len() {
            return Err(Error::Format("some rows are labelled and some are not".into()));
        }
        doc.labels = Some(labels);
    }
    Ok(doc)
}

fn parse_csv(text: &str) -> Result<MatrixDoc> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let labelled = reader
        .headers()
        .map_err(|e| Error::Format(e.to_string()))?
        .get(0)
        .is_some_and(|h| h.eq_ignore_ascii_case("label"));
    let mut doc = MatrixDoc::default();
    let mut labels = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Format(e.to_string()))?;
        let mut fields = record.iter();
        if labelled {
            labels.push(number(fields.next().unwrap_or(""))?);
        }
        doc.rows.push(fields.map(number).collect::<Result<_>>()?);
    }
    if labelled {
        doc.labels = Some(labels);
    }
    Ok(doc)
}
