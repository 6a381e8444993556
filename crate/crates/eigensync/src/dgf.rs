//! The DGF text format and DOT export.
//!
//! A DGF document is a header line `n k` followed by exactly `n` rows of `k`
//! whitespace-separated destinations in `[0, n)`. Lines starting with `#`
//! are comments; the same format serves digraphs (row = slot multiset) and
//! automata (column = letter), with the interpretation chosen by the caller.

use num_bigint::BigUint;
use thiserror::Error;

use crate::automaton::Automaton;
use crate::digraph::Digraph;

/// A parse failure, with the 1-based line number of the offending input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// Non-comment, non-blank lines with their original line numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_rows(text: &str) -> Result<(usize, usize, Vec<Vec<usize>>), ParseError> {
    let mut lines = data_lines(text);
    let (header_line, header) = lines.next().ok_or_else(|| err(0, "empty document"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(err(
            header_line,
            format!("header must be `n k`, found {} fields", fields.len()),
        ));
    }
    let n: usize = fields[0]
        .parse()
        .map_err(|_| err(header_line, format!("invalid state count `{}`", fields[0])))?;
    let k: usize = fields[1]
        .parse()
        .map_err(|_| err(header_line, format!("invalid out-degree `{}`", fields[1])))?;
    if n == 0 || k == 0 {
        return Err(err(header_line, "n and k must be positive"));
    }
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| err(0, format!("expected {n} data rows, found {}", rows.len())))?;
        let mut row = Vec::with_capacity(k);
        for token in line.split_whitespace() {
            let dest: usize = token
                .parse()
                .map_err(|_| err(line_no, format!("non-integer token `{token}`")))?;
            if dest >= n {
                return Err(err(
                    line_no,
                    format!("destination {dest} out of range [0, {n})"),
                ));
            }
            row.push(dest);
        }
        if row.len() != k {
            return Err(err(
                line_no,
                format!("row has {} entries, expected {k}", row.len()),
            ));
        }
        rows.push(row);
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(err(line_no, "trailing data after the last row"));
    }
    Ok((n, k, rows))
}

/// Parses DGF text as a digraph (slot multisets; order irrelevant).
pub fn parse_digraph(text: &str) -> Result<Digraph, ParseError> {
    let (_, _, rows) = parse_rows(text)?;
    Digraph::from_rows(rows).map_err(|e| err(0, e.to_string()))
}

/// Parses DGF text as an automaton (column j = letter j).
pub fn parse_automaton(text: &str) -> Result<Automaton, ParseError> {
    let (_, _, rows) = parse_rows(text)?;
    Automaton::from_rows(rows).map_err(|e| err(0, e.to_string()))
}

/// Serializes a digraph; `parse_digraph(serialize_digraph(g)) == g`.
pub fn serialize_digraph(g: &Digraph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.k());
    for v in 0..g.n() {
        let row: Vec<String> = g.slots(v).iter().map(|d| d.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Serializes an automaton with an advisory type comment;
/// `parse_automaton(serialize_automaton(a)) == a`.
pub fn serialize_automaton(a: &Automaton) -> String {
    let mut out = String::from("# type: automaton\n");
    out.push_str(&format!("{} {}\n", a.n(), a.k()));
    for q in 0..a.n() {
        let row: Vec<String> = a.row(q).iter().map(|d| d.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a whitespace-separated positive integer vector (single data line,
/// comments allowed).
pub fn parse_weight_entries(text: &str) -> Result<Vec<BigUint>, ParseError> {
    let mut lines = data_lines(text);
    let (line_no, line) = lines.next().ok_or_else(|| err(0, "empty document"))?;
    if let Some((extra_line, _)) = lines.next() {
        return Err(err(
            extra_line,
            "a weight vector document has a single data line",
        ));
    }
    let mut entries = Vec::new();
    for token in line.split_whitespace() {
        let value: BigUint = token
            .parse()
            .map_err(|_| err(line_no, format!("non-integer token `{token}`")))?;
        entries.push(value);
    }
    if entries.is_empty() {
        return Err(err(line_no, "weight vector has no entries"));
    }
    Ok(entries)
}

fn letter_label(x: usize, k: usize) -> String {
    if k <= 26 {
        char::from(b'a' + x as u8).to_string()
    } else {
        x.to_string()
    }
}

/// DOT rendering of a digraph: one unlabeled edge per slot, deterministic
/// ordering.
pub fn digraph_to_dot(g: &Digraph) -> String {
    let mut out = String::from("digraph G {\n  rankdir=LR;\n");
    for v in 0..g.n() {
        out.push_str(&format!("  {v};\n"));
    }
    for v in 0..g.n() {
        for &d in g.slots(v) {
            out.push_str(&format!("  {v} -> {d};\n"));
        }
    }
    out.push_str("}\n");
    out
}

/// DOT rendering of an automaton: one edge per slot, labeled by letter.
pub fn automaton_to_dot(a: &Automaton) -> String {
    let mut out = String::from("digraph A {\n  rankdir=LR;\n");
    for q in 0..a.n() {
        out.push_str(&format!("  {q};\n"));
    }
    for q in 0..a.n() {
        for x in 0..a.k() {
            out.push_str(&format!(
                "  {q} -> {} [label=\"{}\"];\n",
                a.step(q, x),
                letter_label(x, a.k())
            ));
        }
    }
    out.push_str("}\n");
    out
}
