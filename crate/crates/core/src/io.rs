//! Text and JSON serialization for graphs and hypergraphs.
//!
//! Text format (UTF-8, LF): the first line is `n=<integer>`; every
//! following non-empty line that does not start with `#` is one hyperedge
//! given as space-separated distinct decimal vertex ids below n.
//! Duplicate lines are multi-edges. The graph format is identical except
//! each line must name exactly two vertices.
//!
//! JSON mirrors the same structure with keys `n` and `edges`.

use crate::graph::{Graph, GraphError};
use crate::hypergraph::{Hypergraph, HypergraphError};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("missing `n=<integer>` header line")]
    MissingHeader,
    #[error("bad header line {0:?}")]
    BadHeader(String),
    #[error("line {line}: bad vertex token {token:?}")]
    BadVertex { line: usize, token: String },
    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange {
        line: usize,
        vertex: usize,
        n: usize,
    },
    #[error("line {line}: duplicate vertex {vertex} in hyperedge")]
    DuplicateVertexInEdge { line: usize, vertex: usize },
    #[error("line {line}: graph edge needs exactly 2 vertices, got {got}")]
    WrongArity { line: usize, got: usize },
    #[error("empty hyperedge")]
    EmptyEdge,
    #[error("bad json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

/// edge rows paired with their 1-based source line number
type EdgeRows = Vec<(usize, Vec<usize>)>;

fn parse_header(text: &str) -> Result<(usize, EdgeRows), ParseError> {
    let mut lines = text.lines().enumerate();
    let n = loop {
        let (_, line) = lines.next().ok_or(ParseError::MissingHeader)?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let rest = trimmed
            .strip_prefix("n=")
            .ok_or_else(|| ParseError::BadHeader(trimmed.to_string()))?;
        break rest
            .trim()
            .parse::<usize>()
            .map_err(|_| ParseError::BadHeader(trimmed.to_string()))?;
    };
    let mut rows = Vec::new();
    for (idx, line) in lines {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut vertices = Vec::new();
        for token in trimmed.split_whitespace() {
            let v: usize = token.parse().map_err(|_| ParseError::BadVertex {
                line: idx + 1,
                token: token.to_string(),
            })?;
            if v >= n {
                return Err(ParseError::VertexOutOfRange {
                    line: idx + 1,
                    vertex: v,
                    n,
                });
            }
            if vertices.contains(&v) {
                return Err(ParseError::DuplicateVertexInEdge {
                    line: idx + 1,
                    vertex: v,
                });
            }
            vertices.push(v);
        }
        rows.push((idx + 1, vertices));
    }
    Ok((n, rows))
}

/// Parses a hypergraph from text.
pub fn hypergraph_from_str(text: &str) -> Result<Hypergraph, ParseError> {
    let (n, rows) = parse_header(text)?;
    let mut h = Hypergraph::new(n);
    for (_, vertices) in rows {
        h.push_edge(&vertices)?;
    }
    Ok(h)
}

/// Parses a graph from text; every edge line must have exactly 2 vertices.
pub fn graph_from_str(text: &str) -> Result<Graph, ParseError> {
    let (n, rows) = parse_header(text)?;
    let mut edges = Vec::new();
    for (line, vertices) in rows {
        if vertices.len() != 2 {
            return Err(ParseError::WrongArity {
                line,
                got: vertices.len(),
            });
        }
        edges.push((vertices[0], vertices[1]));
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// Canonical text rendering: header plus one line per hyperedge, vertices
/// ascending, hyperedges in index order.
pub fn hypergraph_to_string(h: &Hypergraph) -> String {
    let mut out = format!("n={}\n", h.n());
    for edge in h.edges() {
        let mut first = true;
        for v in edge.iter() {
            if !first {
                out.push(' ');
            }
            let _ = write!(out, "{}", v);
            first = false;
        }
        out.push('\n');
    }
    out
}

pub fn graph_to_string(g: &Graph) -> String {
    let mut out = format!("n={}\n", g.n());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", u, v);
    }
    out
}

pub fn load_hypergraph(path: impl AsRef<Path>) -> Result<Hypergraph, ParseError> {
    hypergraph_from_str(&std::fs::read_to_string(path)?)
}

pub fn store_hypergraph(h: &Hypergraph, path: impl AsRef<Path>) -> Result<(), ParseError> {
    Ok(std::fs::write(path, hypergraph_to_string(h))?)
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<Graph, ParseError> {
    graph_from_str(&std::fs::read_to_string(path)?)
}

pub fn store_graph(g: &Graph, path: impl AsRef<Path>) -> Result<(), ParseError> {
    Ok(std::fs::write(path, graph_to_string(g))?)
}

#[derive(Serialize, Deserialize)]
struct JsonShape {
    n: usize,
    edges: Vec<Vec<usize>>,
}

pub fn hypergraph_to_json(h: &Hypergraph) -> String {
    let shape = JsonShape {
        n: h.n(),
        edges: h.edges().iter().map(|e| e.to_vec()).collect(),
    };
    serde_json::to_string(&shape).expect("plain struct serializes")
}

pub fn hypergraph_from_json(text: &str) -> Result<Hypergraph, ParseError> {
    let shape: JsonShape = serde_json::from_str(text)?;
    Ok(Hypergraph::from_vertex_lists(shape.n, &shape.edges)?)
}

pub fn graph_to_json(g: &Graph) -> String {
    let shape = JsonShape {
        n: g.n(),
        edges: g.edges().iter().map(|&(u, v)| vec![u, v]).collect(),
    };
    serde_json::to_string(&shape).expect("plain struct serializes")
}

pub fn graph_from_json(text: &str) -> Result<Graph, ParseError> {
    let shape: JsonShape = serde_json::from_str(text)?;
    let mut edges = Vec::new();
    for (i, e) in shape.edges.iter().enumerate() {
        if e.len() != 2 {
            return Err(ParseError::WrongArity {
                line: i + 1,
                got: e.len(),
            });
        }
        edges.push((e[0], e[1]));
    }
    Ok(Graph::from_edges(shape.n, &edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_example() {
        let h = hypergraph_from_str("n=4\n0 1 2\n1 3\n").unwrap();
        assert_eq!(h.edge_count(), 2);
        assert_eq!(h.edge(0).to_vec(), vec![0, 1, 2]);
        assert_eq!(h.edge(1).to_vec(), vec![1, 3]);
    }

    #[test]
    fn comments_and_blank_lines_skipped() {
        let h = hypergraph_from_str("# header comment\nn=3\n\n# an edge\n0 1\n").unwrap();
        assert_eq!(h.edge_count(), 1);
    }

    #[test]
    fn duplicate_vertex_rejected() {
        let err = hypergraph_from_str("n=3\n0 0 1\n").unwrap_err();
        assert!(matches!(
            err,
            ParseError::DuplicateVertexInEdge { line: 2, vertex: 0 }
        ));
    }

    #[test]
    fn out_of_range_rejected() {
        let err = hypergraph_from_str("n=3\n0 5\n").unwrap_err();
        assert!(matches!(
            err,
            ParseError::VertexOutOfRange { vertex: 5, .. }
        ));
    }

    #[test]
    fn graph_arity_enforced() {
        assert!(graph_from_str("n=4\n0 1 2\n").is_err());
        let g = graph_from_str("n=4\n0 1\n2 3\n").unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn text_round_trip() {
        let text = "n=5\n0 1 2\n1 3\n1 3\n4\n";
        let h = hypergraph_from_str(text).unwrap();
        assert_eq!(hypergraph_to_string(&h), text);
    }

    #[test]
    fn json_round_trip() {
        let h = hypergraph_from_str("n=4\n0 1 2\n1 3\n").unwrap();
        let json = hypergraph_to_json(&h);
        assert_eq!(json, r#"{"n":4,"edges":[[0,1,2],[1,3]]}"#);
        let back = hypergraph_from_json(&json).unwrap();
        assert_eq!(back, h);

        let g = graph_from_str("n=3\n0 1\n").unwrap();
        let back = graph_from_json(&graph_to_json(&g)).unwrap();
        assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn empty_json_edge_rejected() {
        assert!(matches!(
            hypergraph_from_json(r#"{"n":3,"edges":[[]]}"#),
            Err(ParseError::Hypergraph(HypergraphError::EmptyEdge))
        ));
    }
}
