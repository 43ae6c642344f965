//! Plain-text graph files.
//!
//! ```text
//! # comment
//! digraph 3
//! 0 1
//! 1 2
//! 2 0
//! ```
//!
//! The header is `digraph n` or `multigraph n`; each further line is one arc or edge
//! `u v` with 0-indexed vertices. Blank lines and text after `#` are ignored. Repeated
//! multigraph lines add parallel edges.

use std::fmt::Write as _;

use crate::digraph::{Digraph, Multigraph};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphFile {
    Digraph(Digraph),
    Multigraph(Multigraph),
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Digraph,
    Multigraph,
}

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

/// Non-empty lines with comments stripped, split into tokens with 1-based positions.
fn tokenize(text: &str) -> Vec<Vec<Token<'_>>> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    tokens.push(Token {
                        text: &body[s..pos],
                        line: i + 1,
                        column: body[..s].chars().count() + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if !tokens.is_empty() {
            lines.push(tokens);
        }
    }
    lines
}

fn syntax(t: &Token<'_>, message: impl Into<String>) -> Error {
    Error::SyntaxError {
        line: t.line,
        column: t.column,
        message: message.into(),
    }
}

fn semantic(t: &Token<'_>, message: impl Into<String>) -> Error {
    Error::SemanticError {
        line: t.line,
        column: t.column,
        message: message.into(),
    }
}

fn number(t: &Token<'_>) -> Result<usize> {
    t.text
        .parse::<usize>()
        .map_err(|_| syntax(t, format!("expected a non-negative integer, found {:?}", t.text)))
}

fn parse(text: &str, expect: Option<Kind>) -> Result<GraphFile> {
    let lines = tokenize(text);
    let Some(header) = lines.first() else {
        return Err(Error::SyntaxError {
            line: 1,
            column: 1,
            message: "missing header".into(),
        });
    };
    let kind = match header[0].text {
        "digraph" => Kind::Digraph,
        "multigraph" => Kind::Multigraph,
        other => {
            return Err(syntax(
                &header[0],
                format!("expected \"digraph\" or \"multigraph\", found {other:?}"),
            ))
        }
    };
    if let Some(want) = expect {
        if want != kind {
            let name = if want == Kind::Digraph { "digraph" } else { "multigraph" };
            return Err(syntax(&header[0], format!("expected a {name} file")));
        }
    }
    if header.len() != 2 {
        let at = header.get(2).unwrap_or(&header[0]);
        return Err(syntax(at, "header is `digraph n` or `multigraph n`"));
    }
    let n = number(&header[1])?;
    let mut pairs = Vec::with_capacity(lines.len() - 1);
    let mut seen = std::collections::HashSet::new();
    for line in &lines[1..] {
        if line.len() != 2 {
            let at = line.get(2).unwrap_or(&line[0]);
            return Err(syntax(at, "expected exactly two vertices"));
        }
        let u = number(&line[0])?;
        let v = number(&line[1])?;
        for (t, w) in [(&line[0], u), (&line[1], v)] {
            if w >= n {
                return Err(semantic(t, format!("vertex {w} out of range for n = {n}")));
            }
        }
        if u == v {
            return Err(semantic(&line[0], format!("loop at vertex {u}")));
        }
        if kind == Kind::Digraph && !seen.insert((u, v)) {
            return Err(semantic(&line[0], format!("duplicate arc ({u}, {v})")));
        }
        pairs.push((u, v));
    }
    Ok(match kind {
        Kind::Digraph => GraphFile::Digraph(Digraph::new(n, &pairs)?),
        Kind::Multigraph => GraphFile::Multigraph(Multigraph::new(n, &pairs)?),
    })
}

/// Either kind of file, chosen by its header.
pub fn parse_graph_file(text: &str) -> Result<GraphFile> {
    parse(text, None)
}

pub fn parse_digraph_file(text: &str) -> Result<Digraph> {
    match parse(text, Some(Kind::Digraph))? {
        GraphFile::Digraph(d) => Ok(d),
        GraphFile::Multigraph(_) => unreachable!(),
    }
}

pub fn parse_multigraph_file(text: &str) -> Result<Multigraph> {
    match parse(text, Some(Kind::Multigraph))? {
        GraphFile::Multigraph(g) => Ok(g),
        GraphFile::Digraph(_) => unreachable!(),
    }
}

/// Arcs in lexicographic order.
pub fn write_digraph(d: &Digraph) -> String {
    let mut out = format!("digraph {}\n", d.n());
    for (u, v) in d.arcs() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Edges in stored order, so edge colourings keep their meaning.
pub fn write_multigraph(g: &Multigraph) -> String {
    let mut out = format!("multigraph {}\n", g.n());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
