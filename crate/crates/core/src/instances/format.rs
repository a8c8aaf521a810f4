//! Text formats.
//!
//! Graph: a header line `n m`, then one line `v: w1 w2 ... wd` per vertex
//! listing its neighbours in clockwise order. `#` starts a comment;
//! blank lines are ignored.
//!
//! Cycle: whitespace-separated vertex ids in cyclic order.

use std::fmt::Write as _;

use thiserror::Error;

use crate::cycle::{CycleError, CycleSeq};
use crate::planar::{EmbeddingError, PlanarEmbedding, RotationTable, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    SyntaxError { line: usize, column: usize, message: String },
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Cycle(#[from] CycleError),
}

impl From<EmbeddingError> for FormatError {
    fn from(e: EmbeddingError) -> Self {
        FormatError::InvariantViolation(e.to_string())
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> FormatError {
    FormatError::SyntaxError { line, column, message: message.into() }
}

/// `(1-based column, token)` for each whitespace-separated token.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn number(line: usize, column: usize, tok: &str) -> Result<usize, FormatError> {
    tok.parse().map_err(|_| syntax(line, column, format!("expected a vertex id, found `{tok}`")))
}

pub fn parse_graph(text: &str) -> Result<RotationTable, FormatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut rotations: Vec<Option<Vec<VertexId>>> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        if toks.is_empty() {
            continue;
        }
        let Some((n, _)) = header else {
            if toks.len() != 2 {
                let col = toks.get(2).map_or(content.len() + 1, |t| t.0);
                return Err(syntax(line_no, col, "header must be `n m`"));
            }
            let n = number(line_no, toks[0].0, toks[0].1)?;
            let m = number(line_no, toks[1].0, toks[1].1)?;
            header = Some((n, m));
            rotations = vec![None; n];
            continue;
        };
        let (col, first) = toks[0];
        let Some(id) = first.strip_suffix(':') else {
            return Err(syntax(line_no, col, "expected `v:`"));
        };
        let v = number(line_no, col, id)?;
        if v >= n {
            return Err(FormatError::InvariantViolation(format!(
                "line {line_no}: vertex {v} out of range (n = {n})"
            )));
        }
        if rotations[v].is_some() {
            return Err(FormatError::InvariantViolation(format!("line {line_no}: vertex {v} listed twice")));
        }
        let rot = toks[1..].iter().map(|&(c, t)| number(line_no, c, t)).collect::<Result<Vec<_>, _>>()?;
        rotations[v] = Some(rot);
    }
    let Some((_, m)) = header else {
        return Err(syntax(last_line.max(1), 1, "missing header"));
    };
    let rotations = rotations
        .into_iter()
        .enumerate()
        .map(|(v, r)| {
            r.ok_or_else(|| FormatError::InvariantViolation(format!("vertex {v} has no rotation line")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let table = RotationTable::new(rotations)?;
    if table.edge_count() != m {
        return Err(FormatError::InvariantViolation(format!(
            "header declares {m} edges, rotations give {}",
            table.edge_count()
        )));
    }
    Ok(table)
}

/// Parses and embeds in one step.
pub fn parse_embedding(text: &str) -> Result<PlanarEmbedding, FormatError> {
    Ok(PlanarEmbedding::new(parse_graph(text)?)?)
}

/// Canonical form: vertices ascending, each rotation starting at its least
/// neighbour, single spaces, `\n` line ends.
pub fn serialize_graph(table: &RotationTable) -> String {
    let mut out = format!("{} {}\n", table.vertex_count(), table.edge_count());
    for (v, rot) in table.rotations().iter().enumerate() {
        write!(out, "{v}:").expect("string write");
        for w in rot {
            write!(out, " {w}").expect("string write");
        }
        out.push('\n');
    }
    out
}

pub fn parse_cycle(text: &str, emb: &PlanarEmbedding) -> Result<CycleSeq, FormatError> {
    let mut vertices = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        for (col, tok) in tokens(content) {
            vertices.push(number(idx + 1, col, tok)?);
        }
    }
    Ok(CycleSeq::in_graph(emb, vertices)?)
}

pub fn serialize_cycle(cycle: &CycleSeq) -> String {
    format!("{cycle}\n")
}
