//! Multi-hypergraphs on vertices `0..n`.
//!
//! The edge collection is an ordered multiset: duplicate hyperedges are
//! allowed and the position of a hyperedge in the list is its stable
//! identifier. Several background results need genuine multisets (a
//! hyperedge may appear many times), so nothing here deduplicates.

use crate::bitset::VertexSet;
use crate::graph::Graph;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("vertex {0} out of range for n = {1}")]
    VertexOutOfRange(usize, usize),
    #[error("duplicate vertex {0} in hyperedge")]
    DuplicateVertexInEdge(usize),
    #[error("empty hyperedge")]
    EmptyEdge,
    #[error("hyperedge index {0} out of range ({1} hyperedges)")]
    EdgeIndexOutOfRange(usize, usize),
    #[error("vertex counts differ: {0} vs {1}")]
    MismatchedVertexCount(usize, usize),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<VertexSet>,
}

impl Hypergraph {
    /// Hypergraph with no hyperedges on `n` vertices.
    pub fn new(n: usize) -> Self {
        Hypergraph {
            n,
            edges: Vec::new(),
        }
    }

    /// Builds from explicit vertex lists, validating each hyperedge:
    /// non-empty, distinct vertices, all below `n`.
    pub fn from_vertex_lists(n: usize, lists: &[Vec<usize>]) -> Result<Self, HypergraphError> {
        let mut h = Hypergraph::new(n);
        for list in lists {
            h.push_edge(list)?;
        }
        Ok(h)
    }

    /// Appends one hyperedge; its index is `edge_count() - 1` afterwards.
    pub fn push_edge(&mut self, vertices: &[usize]) -> Result<usize, HypergraphError> {
        if vertices.is_empty() {
            return Err(HypergraphError::EmptyEdge);
        }
        let mut set = VertexSet::empty(self.n);
        for &v in vertices {
            if v >= self.n {
                return Err(HypergraphError::VertexOutOfRange(v, self.n));
            }
            if set.contains(v) {
                return Err(HypergraphError::DuplicateVertexInEdge(v));
            }
            set.insert(v);
        }
        self.edges.push(set);
        Ok(self.edges.len() - 1)
    }

    /// Appends a pre-built vertex set (must be non-empty and over the same
    /// universe).
    pub fn push_edge_set(&mut self, edge: VertexSet) -> Result<usize, HypergraphError> {
        if edge.universe() != self.n {
            return Err(HypergraphError::MismatchedVertexCount(
                edge.universe(),
                self.n,
            ));
        }
        if edge.is_empty() {
            return Err(HypergraphError::EmptyEdge);
        }
        self.edges.push(edge);
        Ok(self.edges.len() - 1)
    }

    /// Drops the most recently appended hyperedge.
    pub fn pop_edge(&mut self) -> Option<VertexSet> {
        self.edges.pop()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edge(&self, idx: usize) -> &VertexSet {
        &self.edges[idx]
    }

    pub fn try_edge(&self, idx: usize) -> Result<&VertexSet, HypergraphError> {
        self.edges
            .get(idx)
            .ok_or(HypergraphError::EdgeIndexOutOfRange(idx, self.edges.len()))
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn edge_size(&self, idx: usize) -> usize {
        self.edges[idx].len()
    }

    pub fn edge_sizes(&self) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().map(|e| e.len())
    }

    pub fn max_edge_size(&self) -> usize {
        self.edge_sizes().max().unwrap_or(0)
    }

    /// The 2-shadow: the graph with an edge `{u, v}` exactly when some
    /// hyperedge contains both endpoints. Vertex count is preserved.
    pub fn shadow(&self) -> Graph {
        let mut pairs = Vec::new();
        let mut seen = vec![VertexSet::empty(self.n); self.n];
        for edge in &self.edges {
            let vs = edge.to_vec();
            for (i, &u) in vs.iter().enumerate() {
                for &v in &vs[i + 1..] {
                    if !seen[u].contains(v) {
                        seen[u].insert(v);
                        pairs.push((u, v));
                    }
                }
            }
        }
        pairs.sort_unstable();
        Graph::from_edges(self.n, &pairs).expect("shadow pairs are valid")
    }

    /// Number of hyperedges containing both `u` and `v`, counted with
    /// multiplicity. `u` and `v` must be distinct and in range.
    pub fn multiplicity(&self, u: usize, v: usize) -> Result<usize, HypergraphError> {
        if u >= self.n {
            return Err(HypergraphError::VertexOutOfRange(u, self.n));
        }
        if v >= self.n {
            return Err(HypergraphError::VertexOutOfRange(v, self.n));
        }
        if u == v {
            return Err(HypergraphError::DuplicateVertexInEdge(u));
        }
        Ok(self
            .edges
            .iter()
            .filter(|e| e.contains(u) && e.contains(v))
            .count())
    }

    /// Like [`multiplicity`](Self::multiplicity) but counting distinct
    /// hyperedge vertex sets once each (set semantics).
    pub fn multiplicity_distinct(&self, u: usize, v: usize) -> Result<usize, HypergraphError> {
        if u >= self.n || v >= self.n {
            return Err(HypergraphError::VertexOutOfRange(u.max(v), self.n));
        }
        if u == v {
            return Err(HypergraphError::DuplicateVertexInEdge(u));
        }
        let mut seen: Vec<&VertexSet> = Vec::new();
        for e in &self.edges {
            if e.contains(u) && e.contains(v) && !seen.contains(&e) {
                seen.push(e);
            }
        }
        Ok(seen.len())
    }

    /// Indices of the hyperedges containing both `u` and `v`.
    pub fn covering_edges(&self, u: usize, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.contains(u) && e.contains(v))
            .map(|(i, _)| i)
            .collect()
    }

    /// Number of hyperedges incident to `v`, counted with multiplicity.
    pub fn vertex_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    /// Concatenation of two edge multisets over the same vertex count.
    pub fn concat(&self, other: &Hypergraph) -> Result<Hypergraph, HypergraphError> {
        if self.n != other.n {
            return Err(HypergraphError::MismatchedVertexCount(self.n, other.n));
        }
        let mut h = self.clone();
        h.edges.extend(other.edges.iter().cloned());
        Ok(h)
    }
}

impl std::fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Hypergraph(n={}, edges={:?})", self.n, self.edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shadow_of_one_triple_is_triangle() {
        let h = Hypergraph::from_vertex_lists(3, &[vec![0, 1, 2]]).unwrap();
        let s = h.shadow();
        assert_eq!(s.edges(), &[(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn shadow_of_empty_hypergraph() {
        let h = Hypergraph::new(4);
        let s = h.shadow();
        assert_eq!(s.n(), 4);
        assert_eq!(s.edge_count(), 0);
    }

    #[test]
    fn shadow_unions_pair_sets() {
        // hand expansion: {0,1} -> 01; {1,2} -> 12; {0,1,2,3} -> 01 02 03 12 13 23
        let h =
            Hypergraph::from_vertex_lists(4, &[vec![0, 1], vec![1, 2], vec![0, 1, 2, 3]]).unwrap();
        let s = h.shadow();
        assert_eq!(s.edges(), &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn multiplicity_counts_duplicates() {
        let h = Hypergraph::from_vertex_lists(4, &[vec![0, 1, 2], vec![0, 1, 3]]).unwrap();
        assert_eq!(h.multiplicity(0, 1).unwrap(), 2);

        let dup = Hypergraph::from_vertex_lists(3, &[vec![0, 1, 2], vec![0, 1, 2]]).unwrap();
        assert_eq!(dup.multiplicity(1, 2).unwrap(), 2);
        assert_eq!(dup.multiplicity_distinct(1, 2).unwrap(), 1);

        let single = Hypergraph::from_vertex_lists(4, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(single.multiplicity(0, 3).unwrap(), 0);
        assert_eq!(
            single.multiplicity(0, 4),
            Err(HypergraphError::VertexOutOfRange(4, 4))
        );
    }

    #[test]
    fn validation_rejects_bad_edges() {
        assert_eq!(
            Hypergraph::from_vertex_lists(3, &[vec![0, 0, 1]]),
            Err(HypergraphError::DuplicateVertexInEdge(0))
        );
        assert_eq!(
            Hypergraph::from_vertex_lists(3, &[vec![]]),
            Err(HypergraphError::EmptyEdge)
        );
        assert_eq!(
            Hypergraph::from_vertex_lists(3, &[vec![0, 3]]),
            Err(HypergraphError::VertexOutOfRange(3, 3))
        );
    }

    #[test]
    fn degree_sums_to_total_size() {
        let h = Hypergraph::from_vertex_lists(5, &[vec![0, 1, 2], vec![1, 2], vec![1, 2]]).unwrap();
        let total: usize = h.edge_sizes().sum();
        let by_degree: usize = (0..5).map(|v| h.vertex_degree(v)).sum();
        assert_eq!(total, by_degree);
        assert_eq!(h.vertex_degree(1), 3);
    }
}
