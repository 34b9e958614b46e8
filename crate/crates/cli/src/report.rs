use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Tsv,
    JsonLines,
}

/// What a verb produced: human-readable lines, machine-readable records
/// with stable field names, and the exit status.
#[derive(Debug, Default)]
pub struct Report {
    pub exit: u8,
    pub text: Vec<String>,
    pub records: Vec<Vec<(&'static str, Value)>>,
}

impl Report {
    pub fn new(exit: u8) -> Self {
        Report {
            exit,
            ..Report::default()
        }
    }

    pub fn line(&mut self, line: impl Into<String>) -> &mut Self {
        self.text.push(line.into());
        self
    }

    pub fn record(&mut self, fields: Vec<(&'static str, Value)>) -> &mut Self {
        self.records.push(fields);
        self
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Text => {
                for line in &self.text {
                    writeln!(out, "{line}").unwrap();
                }
            }
            Format::Tsv => {
                if let Some(first) = self.records.first() {
                    let header = first.iter().map(|(k, _)| *k).collect::<Vec<_>>();
                    writeln!(out, "{}", header.join("\t")).unwrap();
                }
                for rec in &self.records {
                    let cells = rec.iter().map(|(_, v)| tsv_cell(v)).collect::<Vec<_>>();
                    writeln!(out, "{}", cells.join("\t")).unwrap();
                }
            }
            Format::JsonLines => {
                for rec in &self.records {
                    let obj = rec
                        .iter()
                        .map(|(k, v)| (k.to_string(), v.clone()))
                        .collect::<Map<_, _>>();
                    writeln!(out, "{}", Value::Object(obj)).unwrap();
                }
            }
        }
        out
    }
}

fn tsv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.replace(['\t', '\n'], " "),
        Value::Array(items) => items.iter().map(tsv_cell).collect::<Vec<_>>().join(","),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn tsv_has_a_header_and_flattens_arrays() {
        let mut r = Report::new(0);
        r.record(vec![("verdict", json!("YES")), ("map", json!([2, 0, 1]))]);
        assert_eq!(r.render(Format::Tsv), "verdict\tmap\nYES\t2,0,1\n");
    }

    #[test]
    fn json_lines_are_objects() {
        let mut r = Report::new(1);
        r.record(vec![("a", json!(1))]).record(vec![("a", json!(2))]);
        assert_eq!(r.render(Format::JsonLines), "{\"a\":1}\n{\"a\":2}\n");
    }
}
