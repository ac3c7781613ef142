//! Plain-text edge-list format.
//!
//! ```text
//! # comment
//! n m
//! u v      (m lines, one arc u->v each, 0-indexed)
//! ```
//!
//! Everything after a `#` on a line is ignored, as are blank lines.
//! Repeated arcs are rejected.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::digraph::{Arc, Digraph, DigraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EdgeListError {
    #[error("missing header line `n m`")]
    MissingHeader,
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: arc {arc} listed twice")]
    Duplicate { line: usize, arc: Arc },
    #[error("header declares {declared} arcs but {found} were listed")]
    CountMismatch { declared: usize, found: usize },
    #[error(transparent)]
    Digraph(#[from] DigraphError),
}

fn numbers(line: usize, text: &str) -> Result<Vec<usize>, EdgeListError> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|_| EdgeListError::Syntax {
                line,
                msg: format!("expected a non-negative integer, found `{tok}`"),
            })
        })
        .collect()
}

fn pair(line: usize, text: &str) -> Result<(usize, usize), EdgeListError> {
    match numbers(line, text)?.as_slice() {
        &[a, b] => Ok((a, b)),
        other => Err(EdgeListError::Syntax {
            line,
            msg: format!("expected two integers, found {}", other.len()),
        }),
    }
}

pub fn parse(text: &str) -> Result<Digraph, EdgeListError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or(EdgeListError::MissingHeader)?;
    let (n, m) = pair(hline, header)?;

    let mut seen = BTreeSet::new();
    for (line, body) in lines {
        let arc = Arc::from(pair(line, body)?);
        if !seen.insert(arc) {
            return Err(EdgeListError::Duplicate { line, arc });
        }
    }
    if seen.len() != m {
        return Err(EdgeListError::CountMismatch {
            declared: m,
            found: seen.len(),
        });
    }
    Ok(Digraph::new(n, seen)?)
}

/// Writes `d` with arcs in lexicographic order.
pub fn write(d: &Digraph) -> String {
    let mut out = format!("{} {}\n", d.order(), d.arc_count());
    for a in d.arcs() {
        out.push_str(&format!("{} {}\n", a.tail, a.head));
    }
    out
}
