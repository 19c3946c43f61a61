//! DIMACS-style edge lists: `p edge <n> <m>` followed by `e <u> <v>` lines,
//! 1-based. Blank lines and `c` comment lines are ignored.

use std::fmt::Write;

use super::Graph;
use crate::error::{Error, ParseErrorKind, Result};

fn parse_err(line: usize, kind: ParseErrorKind) -> Error {
    Error::Parse { line, kind }
}

fn parse_index(token: &str, n: usize, line: usize) -> Result<usize> {
    let index: usize = token.parse().map_err(|_| {
        parse_err(
            line,
            ParseErrorKind::Malformed(format!("bad index {token:?}")),
        )
    })?;
    if index == 0 || index > n {
        return Err(parse_err(line, ParseErrorKind::OutOfRange { index, n }));
    }
    Ok(index - 1)
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut graph: Option<Graph> = None;
    let mut found = 0usize;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["p", kind, n, m] if header.is_none() && (*kind == "edge" || *kind == "col") => {
                let n: usize = n
                    .parse()
                    .map_err(|_| parse_err(line_no, ParseErrorKind::Malformed(line.to_string())))?;
                let m: usize = m
                    .parse()
                    .map_err(|_| parse_err(line_no, ParseErrorKind::Malformed(line.to_string())))?;
                header = Some((n, m));
                graph = Some(Graph::empty(n));
            }
            ["e", u, v] => {
                let Some((n, _)) = header else {
                    return Err(parse_err(line_no, ParseErrorKind::MissingHeader));
                };
                let u = parse_index(u, n, line_no)?;
                let v = parse_index(v, n, line_no)?;
                if u == v {
                    return Err(parse_err(line_no, ParseErrorKind::SelfLoop(u + 1)));
                }
                let g = graph.as_mut().expect("header seen");
                if g.adjacency[u].contains(v) {
                    return Err(parse_err(
                        line_no,
                        ParseErrorKind::DuplicateEdge(u.min(v) + 1, u.max(v) + 1),
                    ));
                }
                g.adjacency[u].insert(v);
                g.adjacency[v].insert(u);
                g.edge_count += 1;
                found += 1;
            }
            _ => {
                return Err(parse_err(
                    line_no,
                    ParseErrorKind::Malformed(line.to_string()),
                ));
            }
        }
    }

    let Some((_, declared)) = header else {
        return Err(parse_err(0, ParseErrorKind::MissingHeader));
    };
    if declared != found {
        return Err(parse_err(
            0,
            ParseErrorKind::EdgeCountMismatch { declared, found },
        ));
    }
    Ok(graph.expect("header seen"))
}

pub fn serialize_graph(g: &Graph) -> String {
    serialize_graph_with_comments(g, &[])
}

/// Canonical form: optional comment lines, header, then edges sorted
/// lexicographically with the smaller endpoint first.
pub fn serialize_graph_with_comments(g: &Graph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "c {c}");
    }
    let _ = writeln!(out, "p edge {} {}", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}
