//! The text graph format.
//!
//! First line `graph n m` or `digraph n m`, then `m` lines `u v` with
//! 0-based endpoints. In `graph` files each line denotes a symmetric pair
//! (stored as both arcs; `u u` is a loop). Lines starting with `#` are
//! comments. Canonical serialisation sorts arcs lexicographically and
//! writes a symmetric graph in `graph` form.

use std::fmt;

use homkit_core::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut data = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|&(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = data.next().ok_or_else(|| err(0, "empty input"))?;
    let mut parts = header.split_whitespace();
    let kind = parts.next().unwrap_or_default();
    let symmetric = match kind {
        "graph" => true,
        "digraph" => false,
        other => {
            return Err(err(
                header_line,
                format!("expected `graph` or `digraph`, got `{other}`"),
            ))
        }
    };
    let n: u32 = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| err(header_line, "malformed vertex count"))?;
    let m: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| err(header_line, "malformed arc count"))?;
    if parts.next().is_some() {
        return Err(err(header_line, "trailing tokens after header"));
    }

    let mut arcs: Vec<(u32, u32)> = Vec::with_capacity(if symmetric { 2 * m } else { m });
    let mut seen = std::collections::BTreeSet::new();
    for _ in 0..m {
        let (line_no, line) = data.next().ok_or_else(|| {
            err(
                header_line,
                format!("expected {m} arc lines, input ended early"),
            )
        })?;
        let mut fields = line.split_whitespace();
        let u: u32 = fields
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| err(line_no, "malformed endpoint"))?;
        let v: u32 = fields
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| err(line_no, "malformed endpoint"))?;
        if fields.next().is_some() {
            return Err(err(line_no, "trailing tokens after arc"));
        }
        for x in [u, v] {
            if x >= n {
                return Err(err(
                    line_no,
                    format!("endpoint {x} out of range for {n} vertices"),
                ));
            }
        }
        if symmetric {
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(err(line_no, format!("duplicate edge {u} {v}")));
            }
            arcs.push((u, v));
            if u != v {
                arcs.push((v, u));
            }
        } else {
            if !seen.insert((u, v)) {
                return Err(err(line_no, format!("duplicate arc {u} {v}")));
            }
            arcs.push((u, v));
        }
    }
    if let Some((line_no, _)) = data.next() {
        return Err(err(line_no, "more data lines than the header announced"));
    }
    Graph::new(n, arcs).map_err(|e| err(header_line, e.to_string()))
}

/// Canonical form: symmetric graphs in `graph` notation with sorted edge
/// pairs, anything else in `digraph` notation with sorted arcs.
pub fn serialize_graph(g: &Graph) -> String {
    serialize_with_comments(g, &[])
}

pub fn serialize_with_comments(g: &Graph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    if g.is_symmetric() {
        let edges: Vec<(u32, u32)> = g.arcs().iter().copied().filter(|&(u, v)| u <= v).collect();
        out.push_str(&format!("graph {} {}\n", g.n(), edges.len()));
        for (u, v) in edges {
            out.push_str(&format!("{u} {v}\n"));
        }
    } else {
        out.push_str(&format!("digraph {} {}\n", g.n(), g.arc_count()));
        for &(u, v) in g.arcs() {
            out.push_str(&format!("{u} {v}\n"));
        }
    }
    out
}
