//! Command reports: ordered key-value fields plus a short human summary.
//!
//! The default `kv` format prints one `key = value` line per field, with
//! nested fields using dotted keys (`block_tori.0.orbit_count`). The
//! `compact` format prints the same fields on one line as `key=value`
//! pairs separated by spaces, quoting values that contain spaces.

use std::fmt::Display;

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Kv,
    Compact,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub command: &'static str,
    pub fields: Vec<(String, String)>,
    pub text: Vec<String>,
    pub exit: u8,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report { command, fields: Vec::new(), text: Vec::new(), exit: 0 }
    }

    pub fn field(&mut self, key: impl Into<String>, value: impl Display) {
        self.fields.push((key.into(), value.to_string()));
    }

    pub fn list<T: Display>(&mut self, key: &str, items: impl IntoIterator<Item = T>) {
        let items: Vec<String> = items.into_iter().map(|i| i.to_string()).collect();
        self.field(format!("{key}.count"), items.len());
        for (i, item) in items.into_iter().enumerate() {
            self.field(format!("{key}.{i}"), item);
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    pub fn render(&self, format: Format, color: bool) -> String {
        match format {
            Format::Kv => {
                let mut out = format!("command = {}\n", self.command);
                for (k, v) in &self.fields {
                    out.push_str(&format!("{k} = {v}\n"));
                }
                out
            }
            Format::Compact => {
                let mut parts = vec![format!("command={}", self.command)];
                for (k, v) in &self.fields {
                    if v.is_empty() || v.contains(char::is_whitespace) {
                        parts.push(format!("{k}={v:?}"));
                    } else {
                        parts.push(format!("{k}={v}"));
                    }
                }
                parts.join(" ") + "\n"
            }
            Format::Text => {
                let mut out = String::new();
                for l in &self.text {
                    if color && self.exit == 1 && l == &self.text[0] {
                        out.push_str(&format!("\x1b[31m{l}\x1b[0m\n"));
                    } else if color && l == &self.text[0] {
                        out.push_str(&format!("\x1b[32m{l}\x1b[0m\n"));
                    } else {
                        out.push_str(l);
                        out.push('\n');
                    }
                }
                out
            }
        }
    }
}
