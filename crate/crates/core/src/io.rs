//! Edge-list text format: `n m` on the first line, then `m` lines `u v` with
//! 0-based ids. Lines starting with `#` are ignored.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error("header declares {declared} edges but {found} were given")]
    EdgeCount { declared: usize, found: usize },
    #[error("missing header line")]
    MissingHeader,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn parse_pair(text: &str, line: usize) -> Result<(usize, usize), ParseError> {
    let mut parts = text.split(' ');
    let mut next = |what: &str| -> Result<usize, ParseError> {
        let tok = parts.next().ok_or_else(|| ParseError::Syntax {
            line,
            msg: format!("missing {what}"),
        })?;
        tok.parse().map_err(|_| ParseError::Syntax {
            line,
            msg: format!("invalid {what} {tok:?}"),
        })
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if parts.next().is_some() {
        return Err(ParseError::Syntax {
            line,
            msg: "expected exactly two fields".into(),
        });
    }
    Ok((a, b))
}

pub fn parse_graph_str(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let (n, m) = parse_pair(header, hline)?;

    let mut edges = Vec::with_capacity(m);
    let mut seen = BTreeSet::new();
    for (line, l) in lines {
        if l.is_empty() {
            continue;
        }
        let (u, v) = parse_pair(l, line)?;
        if u >= n || v >= n {
            return Err(ParseError::Graph {
                line,
                source: GraphError::VertexOutOfRange { u, v, n },
            });
        }
        if u == v {
            return Err(ParseError::Graph {
                line,
                source: GraphError::Loop(u),
            });
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(ParseError::Graph {
                line,
                source: GraphError::DuplicateEdge(u.min(v), u.max(v)),
            });
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(ParseError::EdgeCount {
            declared: m,
            found: edges.len(),
        });
    }
    Ok(Graph::new(n, &edges).expect("edges validated line by line"))
}

pub fn parse_graph(path: impl AsRef<Path>) -> Result<Graph, ParseError> {
    parse_graph_str(&fs::read_to_string(path)?)
}

/// Canonical text: sorted normalized edges, trailing newline.
pub fn write_graph_string(g: &Graph) -> String {
    g.to_string()
}

pub fn write_graph(g: &Graph, path: impl AsRef<Path>) -> std::io::Result<()> {
    fs::write(path, write_graph_string(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_triangle() {
        let g = parse_graph_str("3 3\n0 1\n1 2\n2 0").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn comments_and_trailing_newline() {
        let g = parse_graph_str("# a path\n4 3\n0 1\n# middle\n1 2\n2 3\n").unwrap();
        assert_eq!(g.m(), 3);
    }

    #[test]
    fn loop_reported_with_line() {
        let err = parse_graph_str("3 1\n0 0").unwrap_err();
        match err {
            ParseError::Graph { line, source } => {
                assert_eq!(line, 2);
                assert_eq!(source, GraphError::Loop(0));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_lines() {
        assert!(matches!(
            parse_graph_str("3 1\n0  1"),
            Err(ParseError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph_str("3 2\n0 1\n1 x"),
            Err(ParseError::Syntax { line: 3, .. })
        ));
        assert!(matches!(
            parse_graph_str("3 2\n0 1\n1 0"),
            Err(ParseError::Graph { line: 3, .. })
        ));
        assert!(matches!(
            parse_graph_str("3 2\n0 1"),
            Err(ParseError::EdgeCount { declared: 2, found: 1 })
        ));
        assert!(matches!(parse_graph_str(""), Err(ParseError::MissingHeader)));
    }

    #[test]
    fn write_is_canonical() {
        let g = parse_graph_str("3 3\n2 0\n1 2\n0 1").unwrap();
        assert_eq!(write_graph_string(&g), "3 3\n0 1\n0 2\n1 2\n");
        let again = parse_graph_str(&write_graph_string(&g)).unwrap();
        assert_eq!(again, g);
    }
}
