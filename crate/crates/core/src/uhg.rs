//! `.uhg` text format.
//!
//! ```text
//! # optional comments
//! k n m
//! v1 v2 ... vk      (m lines, 1-based vertex ids)
//! ```
//!
//! Lines starting with `#` and blank lines are ignored. [`write`] emits the
//! canonical form: header, then edges sorted, no comments.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} '{tok}'")))
}

pub fn parse(text: &str) -> Result<Hypergraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() != 3 {
        return Err(parse_err(hline, "header must be 'k n m'"));
    }
    let k = parse_usize(head[0], hline, "k")?;
    let n = parse_usize(head[1], hline, "n")?;
    let m = parse_usize(head[2], hline, "m")?;
    if k < 2 {
        return Err(parse_err(hline, "k must be at least 2"));
    }
    if n == 0 {
        return Err(parse_err(hline, "n must be at least 1"));
    }

    let mut edges = Vec::with_capacity(m);
    let mut seen = BTreeSet::new();
    for (line, body) in lines {
        if edges.len() == m {
            return Err(parse_err(line, format!("more than {m} edge lines")));
        }
        let mut edge = body
            .split_whitespace()
            .map(|t| parse_usize(t, line, "vertex id"))
            .collect::<Result<Vec<_>>>()?;
        if edge.len() != k {
            return Err(parse_err(
                line,
                format!("edge has {} vertices, expected {k}", edge.len()),
            ));
        }
        if let Some(&v) = edge.iter().find(|&&v| v == 0 || v > n) {
            return Err(parse_err(line, format!("vertex {v} out of range 1..={n}")));
        }
        edge.sort_unstable();
        if edge.windows(2).any(|w| w[0] == w[1]) {
            return Err(parse_err(line, "repeated vertex inside edge"));
        }
        if !seen.insert(edge.clone()) {
            return Err(parse_err(line, "duplicate edge"));
        }
        edges.push(edge);
    }
    if edges.len() != m {
        return Err(parse_err(
            text.lines().count().max(1),
            format!("expected {m} edge lines, found {}", edges.len()),
        ));
    }
    Hypergraph::build(n, k, edges)
}

pub fn write(g: &Hypergraph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {} {}", g.k(), g.n(), g.m()).unwrap();
    for e in g.edges() {
        let mut first = true;
        for v in e {
            if !first {
                out.push(' ');
            }
            first = false;
            write!(out, "{}", v + 1).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn read_file(path: impl AsRef<Path>) -> Result<Hypergraph> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| parse_err(0, format!("cannot read {}: {e}", path.display())))?;
    parse(&text)
}
