//! Simple labeled graphs on vertices `0..n`.
//!
//! Used for forbidden patterns, 2-shadows of hypergraphs, and the color
//! classes of edge colorings. Graphs are immutable once built; all
//! operations are pure.

use crate::bitset::VertexSet;
use thiserror::Error;

/// Default vertex cap for the exact clique / chromatic number routines.
pub const DEFAULT_EXACT_CAP: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range for n = {1}")]
    VertexOutOfRange(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("edge ({0}, {1}) not present")]
    MissingEdge(usize, usize),
    #[error("graph on {0} vertices exceeds the exact-computation cap {1}")]
    ExceedsCap(usize, usize),
    #[error("cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("pattern needs at least 1 vertex")]
    EmptyPattern,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: (0..n).map(|_| VertexSet::empty(n)).collect(),
            edges: Vec::new(),
        }
    }

    /// Builds a graph from an edge list, rejecting self-loops, duplicates
    /// and out-of-range endpoints. Edges are stored sorted with `u < v`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(a, b) in edges {
            g.add_edge_checked(a, b)?;
        }
        g.edges.sort_unstable();
        Ok(g)
    }

    fn add_edge_checked(&mut self, a: usize, b: usize) -> Result<(), GraphError> {
        if a >= self.n {
            return Err(GraphError::VertexOutOfRange(a, self.n));
        }
        if b >= self.n {
            return Err(GraphError::VertexOutOfRange(b, self.n));
        }
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        let (u, v) = (a.min(b), a.max(b));
        if self.adj[u].contains(v) {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self.edges.push((u, v));
        Ok(())
    }

    /// Complete graph K_n.
    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
        for u in 0..n {
            for v in (u + 1)..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).expect("complete graph is valid")
    }

    /// Cycle C_k on k >= 3 vertices.
    pub fn cycle(k: usize) -> Result<Self, GraphError> {
        if k < 3 {
            return Err(GraphError::CycleTooShort(k));
        }
        let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
        Graph::from_edges(k, &edges)
    }

    /// Path P_k on k >= 1 vertices (k - 1 edges).
    pub fn path(k: usize) -> Result<Self, GraphError> {
        if k == 0 {
            return Err(GraphError::EmptyPattern);
        }
        let edges: Vec<_> = (0..k.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Graph::from_edges(k, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted edge list, each pair with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub(crate) fn adjacency(&self) -> &[VertexSet] {
        &self.adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// The graph with edge `(u, v)` removed and the vertex set unchanged.
    pub fn minus_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::MissingEdge(u, v));
        }
        let (u, v) = (u.min(v), u.max(v));
        let edges: Vec<_> = self
            .edges
            .iter()
            .copied()
            .filter(|&e| e != (u, v))
            .collect();
        Graph::from_edges(self.n, &edges)
    }

    /// Edge-set union of two graphs on the same vertex count.
    pub fn union(&self, other: &Graph) -> Result<Graph, GraphError> {
        if self.n != other.n {
            return Err(GraphError::VertexOutOfRange(other.n, self.n));
        }
        let mut g = Graph::empty(self.n);
        for &(u, v) in self.edges.iter().chain(other.edges.iter()) {
            if !g.has_edge(u, v) {
                g.add_edge_checked(u, v)?;
            }
        }
        g.edges.sort_unstable();
        Ok(g)
    }

    /// True when the vertex set admits a proper 2-coloring (checked by BFS).
    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![-1i8; self.n];
        for start in 0..self.n {
            if color[start] != -1 {
                continue;
            }
            color[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for v in self.adj[u].iter() {
                    if color[v] == -1 {
                        color[v] = 1 - color[u];
                        queue.push_back(v);
                    } else if color[v] == color[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Exact clique number, capped at [`DEFAULT_EXACT_CAP`] vertices.
    pub fn clique_number(&self) -> Result<usize, GraphError> {
        self.clique_number_capped(DEFAULT_EXACT_CAP)
    }

    pub fn clique_number_capped(&self, cap: usize) -> Result<usize, GraphError> {
        if self.n > cap {
            return Err(GraphError::ExceedsCap(self.n, cap));
        }
        if self.n == 0 {
            return Ok(0);
        }
        let mut best = 1;
        let mut candidates = VertexSet::full(self.n);
        self.clique_search(&mut candidates, 0, &mut best);
        Ok(best)
    }

    fn clique_search(&self, candidates: &mut VertexSet, size: usize, best: &mut usize) {
        if size + candidates.len() <= *best {
            return;
        }
        if candidates.is_empty() {
            *best = (*best).max(size);
            return;
        }
        let vs: Vec<usize> = candidates.to_vec();
        for (i, v) in vs.iter().copied().enumerate() {
            if size + (vs.len() - i) <= *best {
                break;
            }
            let mut next = candidates.intersection(&self.adj[v]);
            // only extend with vertices above v to avoid revisiting cliques
            for &u in &vs[..=i] {
                next.remove(u);
            }
            self.clique_search(&mut next, size + 1, best);
            *best = (*best).max(size + 1);
        }
    }

    /// Exact chromatic number, capped at [`DEFAULT_EXACT_CAP`] vertices.
    pub fn chromatic_number(&self) -> Result<usize, GraphError> {
        self.chromatic_number_capped(DEFAULT_EXACT_CAP)
    }

    pub fn chromatic_number_capped(&self, cap: usize) -> Result<usize, GraphError> {
        if self.n > cap {
            return Err(GraphError::ExceedsCap(self.n, cap));
        }
        if self.n == 0 {
            return Ok(0);
        }
        if self.edges.is_empty() {
            return Ok(1);
        }
        let lower = self.clique_number_capped(cap)?;
        // vertices in degree-descending order; ties by id
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(self.degree(v)), v));
        for k in lower..=self.n {
            let mut colors = vec![usize::MAX; self.n];
            if self.try_color(&order, 0, k, 0, &mut colors) {
                return Ok(k);
            }
        }
        unreachable!("n colors always suffice")
    }

    fn try_color(
        &self,
        order: &[usize],
        idx: usize,
        k: usize,
        used: usize,
        colors: &mut [usize],
    ) -> bool {
        if idx == order.len() {
            return true;
        }
        let v = order[idx];
        // trying at most one fresh color breaks color-permutation symmetry
        let limit = k.min(used + 1);
        'color: for c in 0..limit {
            for u in self.adj[v].iter() {
                if colors[u] == c {
                    continue 'color;
                }
            }
            colors[v] = c;
            if self.try_color(order, idx + 1, k, used.max(c + 1), colors) {
                return true;
            }
            colors[v] = usize::MAX;
        }
        false
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}
