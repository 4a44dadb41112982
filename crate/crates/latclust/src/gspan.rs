//! The gSpan transactional graph format.
//!
//! ```text
//! t # 0
//! v 0 6
//! v 1 8
//! e 0 1 2
//! ```
//!
//! `#` lines outside records are comments, except `# vlabel <label> <name>`
//! and `# elabel <label> <name>` which name labels for display. A
//! `t # -1` line ends the file.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use latclust_core::{Edge, GraphDatabase, Label, LabeledGraph};

use crate::FormatError;

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

struct Pending {
    line: usize,
    labels: Vec<Label>,
    edges: Vec<Edge>,
}

impl Pending {
    fn finish(self) -> Result<LabeledGraph, FormatError> {
        if self.labels.is_empty() {
            return Err(syntax(self.line, "transaction has no vertices"));
        }
        LabeledGraph::new(self.labels, self.edges).map_err(|e| syntax(self.line, e.to_string()))
    }
}

fn number<T: std::str::FromStr>(line: usize, field: Option<&str>, what: &str) -> Result<T, FormatError> {
    let field = field.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    field.parse().map_err(|_| syntax(line, format!("invalid {what} {field:?}")))
}

pub fn parse(text: &str) -> Result<GraphDatabase, FormatError> {
    let mut db = GraphDatabase::default();
    let mut current: Option<Pending> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut fields = raw.split_whitespace();
        let Some(tag) = fields.next() else { continue };
        match tag {
            "t" => {
                if fields.next() != Some("#") {
                    return Err(syntax(line, "expected `t # <n>`"));
                }
                let n: i64 = number(line, fields.next(), "transaction number")?;
                if let Some(done) = current.take() {
                    db.transactions.push(done.finish()?);
                }
                if n == -1 {
                    break;
                }
                if n != db.transactions.len() as i64 {
                    return Err(syntax(line, format!("transaction {n} out of sequence, expected {}", db.transactions.len())));
                }
                current = Some(Pending { line, labels: Vec::new(), edges: Vec::new() });
            }
            "v" => {
                let g = current.as_mut().ok_or_else(|| syntax(line, "vertex outside a transaction"))?;
                let id: usize = number(line, fields.next(), "vertex id")?;
                if id != g.labels.len() {
                    return Err(syntax(line, format!("vertex id {id} out of sequence, expected {}", g.labels.len())));
                }
                g.labels.push(number(line, fields.next(), "vertex label")?);
            }
            "e" => {
                let g = current.as_mut().ok_or_else(|| syntax(line, "edge outside a transaction"))?;
                let u = number(line, fields.next(), "edge endpoint")?;
                let v = number(line, fields.next(), "edge endpoint")?;
                g.edges.push(Edge::new(u, v, number(line, fields.next(), "edge label")?));
            }
            t if t.starts_with('#') => {
                let mut words = raw.trim_start().trim_start_matches('#').split_whitespace();
                let table = match words.next() {
                    Some("vlabel") => &mut db.vertex_labels,
                    Some("elabel") => &mut db.edge_labels,
                    _ => continue,
                };
                let label: Label = number(line, words.next(), "label")?;
                let name = words.collect::<Vec<_>>().join(" ");
                if name.is_empty() {
                    return Err(syntax(line, "label name missing"));
                }
                table.insert(label, name);
            }
            other => return Err(syntax(line, format!("unknown record type {other:?}"))),
        }
        if fields.next().is_some() && !tag.starts_with('#') {
            return Err(syntax(line, "trailing fields"));
        }
    }
    if let Some(done) = current.take() {
        db.transactions.push(done.finish()?);
    }
    Ok(db)
}

fn write_names(out: &mut String, kind: &str, names: &BTreeMap<Label, String>) {
    for (label, name) in names {
        let _ = writeln!(out, "# {kind} {label} {name}");
    }
}

pub fn write(db: &GraphDatabase) -> String {
    let mut out = String::new();
    write_names(&mut out, "vlabel", &db.vertex_labels);
    write_names(&mut out, "elabel", &db.edge_labels);
    for (t, g) in db.transactions.iter().enumerate() {
        let _ = writeln!(out, "t # {t}");
        for (v, label) in g.labels().iter().enumerate() {
            let _ = writeln!(out, "v {v} {label}");
        }
        for e in g.edges() {
            let _ = writeln!(out, "e {} {} {}", e.u, e.v, e.label);
        }
    }
    out
}
