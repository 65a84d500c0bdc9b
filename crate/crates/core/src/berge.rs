//! Berge containment: does a hypergraph contain a copy of a pattern graph
//! with every pattern edge embedded into a distinct hyperedge?
//!
//! Detection walks injective embeddings of the pattern into the 2-shadow
//! and, while the embedding grows, maintains a system of distinct
//! representatives between the pattern edges placed so far and their
//! covering hyperedges (augmenting-path matching). A branch dies as soon
//! as its partial edge set admits no SDR, which is what makes the search
//! viable on dense shadows.
//!
//! Copies of the pattern are identified by their image edge set, so two
//! embeddings related by a pattern automorphism count once.

use crate::bitset::VertexSet;
use crate::graph::Graph;
use crate::hypergraph::Hypergraph;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};
use std::ops::ControlFlow;
use thiserror::Error;

pub mod oracle;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WitnessError {
    #[error("vertex map is not injective")]
    VertexMapNotInjective,
    #[error("vertex map does not cover pattern vertex {0}")]
    MissingPatternVertex(usize),
    #[error("host vertex {0} out of range")]
    HostOutOfRange(usize),
    #[error("pattern edge ({0}, {1}) not assigned exactly once")]
    BadEdgeCoverage(usize, usize),
    #[error("assigned hyperedge indices are not distinct")]
    RepeatedHyperedge,
    #[error("hyperedge index {0} out of range")]
    HyperedgeOutOfRange(usize),
    #[error("pattern edge ({0}, {1}) not contained in its assigned hyperedge")]
    EdgeNotCovered(usize, usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CountError {
    #[error("copy count overflowed u64")]
    Overflow,
}

/// Certificate that a hypergraph contains a Berge copy of a pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BergeWitness {
    /// injective map, entries `(pattern vertex, host vertex)`
    pub vertex_map: Vec<(usize, usize)>,
    /// bijection onto distinct hyperedges, entries `((a, b), hyperedge index)`
    pub edge_assignment: Vec<((usize, usize), usize)>,
}

impl BergeWitness {
    /// Re-checks every invariant of the certificate against the inputs.
    pub fn validate(&self, h: &Hypergraph, f: &Graph) -> Result<(), WitnessError> {
        let mut host_of = vec![None; f.n()];
        let mut seen_hosts = HashSet::new();
        for &(fv, hv) in &self.vertex_map {
            if fv >= f.n() {
                return Err(WitnessError::MissingPatternVertex(fv));
            }
            if hv >= h.n() {
                return Err(WitnessError::HostOutOfRange(hv));
            }
            if !seen_hosts.insert(hv) || host_of[fv].is_some() {
                return Err(WitnessError::VertexMapNotInjective);
            }
            host_of[fv] = Some(hv);
        }
        if let Some(v) = host_of.iter().position(|h| h.is_none()) {
            return Err(WitnessError::MissingPatternVertex(v));
        }

        let mut remaining: HashSet<(usize, usize)> = f.edges().iter().copied().collect();
        let mut used_edges = HashSet::new();
        for &((a, b), idx) in &self.edge_assignment {
            let key = (a.min(b), a.max(b));
            if !remaining.remove(&key) {
                return Err(WitnessError::BadEdgeCoverage(a, b));
            }
            if idx >= h.edge_count() {
                return Err(WitnessError::HyperedgeOutOfRange(idx));
            }
            if !used_edges.insert(idx) {
                return Err(WitnessError::RepeatedHyperedge);
            }
            let hyperedge = h.edge(idx);
            let (hu, hv) = (host_of[a].unwrap(), host_of[b].unwrap());
            if !hyperedge.contains(hu) || !hyperedge.contains(hv) {
                return Err(WitnessError::EdgeNotCovered(a, b));
            }
        }
        if let Some(&(a, b)) = remaining.iter().next() {
            return Err(WitnessError::BadEdgeCoverage(a, b));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("witness serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Pattern vertex visit order: first the highest-degree vertex, then
/// repeatedly the vertex with the most already-ordered neighbors
/// (connectivity first), ties by higher degree, then by lower id.
/// Isolated vertices therefore come last.
fn embedding_order(f: &Graph) -> Vec<usize> {
    let n = f.n();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for _ in 0..n {
        let mut winner = None;
        let mut best_key = (0, 0, 0);
        for v in 0..n {
            if placed[v] {
                continue;
            }
            let connectivity = f.neighbors(v).iter().filter(|&u| placed[u]).count();
            let key = (connectivity, f.degree(v), n - v);
            if winner.is_none() || key > best_key {
                winner = Some(v);
                best_key = key;
            }
        }
        let v = winner.expect("one unplaced vertex remains");
        order.push(v);
        placed[v] = true;
    }
    order
}

struct CopyEnumerator<'a> {
    g: &'a Graph,
    f: &'a Graph,
    order: Vec<usize>,
    /// index of the first isolated pattern vertex in `order`
    isolated_from: usize,
    map: Vec<usize>,
    used: VertexSet,
    seen: HashSet<Vec<(usize, usize)>>,
}

const UNPLACED: usize = usize::MAX;

impl<'a> CopyEnumerator<'a> {
    fn new(g: &'a Graph, f: &'a Graph) -> Self {
        let order = embedding_order(f);
        let isolated_from = order
            .iter()
            .position(|&v| f.degree(v) == 0)
            .unwrap_or(order.len());
        CopyEnumerator {
            g,
            f,
            order,
            isolated_from,
            map: vec![UNPLACED; f.n()],
            used: VertexSet::empty(g.n()),
            seen: HashSet::new(),
        }
    }

    fn image_edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> = self
            .f
            .edges()
            .iter()
            .map(|&(a, b)| {
                let (u, v) = (self.map[a], self.map[b]);
                (u.min(v), u.max(v))
            })
            .collect();
        edges.sort_unstable();
        edges
    }

    /// Host candidates for the pattern vertex at `order[depth]`.
    fn candidates(&self, pv: usize) -> Vec<usize> {
        let mut placed_neighbors = self
            .f
            .neighbors(pv)
            .iter()
            .filter(|&q| self.map[q] != UNPLACED);
        match placed_neighbors.next() {
            None => (0..self.g.n())
                .filter(|&x| !self.used.contains(x))
                .collect(),
            Some(first) => {
                let mut cand = self.g.neighbors(self.map[first]).clone();
                for q in placed_neighbors {
                    cand = cand.intersection(self.g.neighbors(self.map[q]));
                }
                cand.iter().filter(|&x| !self.used.contains(x)).collect()
            }
        }
    }

    fn run(
        &mut self,
        depth: usize,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if depth == self.isolated_from {
            return self.place_isolated_and_emit(visit);
        }
        let pv = self.order[depth];
        for host in self.candidates(pv) {
            self.map[pv] = host;
            self.used.insert(host);
            let flow = self.run(depth + 1, visit);
            self.used.remove(host);
            self.map[pv] = UNPLACED;
            flow?;
        }
        ControlFlow::Continue(())
    }

    /// Isolated pattern vertices do not affect the image edge set, so one
    /// canonical placement (smallest free hosts, ascending) represents
    /// them all.
    fn place_isolated_and_emit(
        &mut self,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let isolated: Vec<usize> = self.order[self.isolated_from..].to_vec();
        let free: Vec<usize> = (0..self.g.n())
            .filter(|&x| !self.used.contains(x))
            .collect();
        if free.len() < isolated.len() {
            return ControlFlow::Continue(());
        }
        for (&pv, &host) in isolated.iter().zip(free.iter()) {
            self.map[pv] = host;
        }
        let key = self.image_edges();
        let flow = if self.seen.insert(key) {
            visit(&self.map)
        } else {
            ControlFlow::Continue(())
        };
        for &pv in &isolated {
            self.map[pv] = UNPLACED;
        }
        flow
    }
}

/// Calls `visit` once per copy of `f` in `g` (deduplicated by image edge
/// set) with the embedding map, in a deterministic order. `visit` may stop
/// the stream early by returning `ControlFlow::Break`.
pub fn for_each_copy(
    g: &Graph,
    f: &Graph,
    mut visit: impl FnMut(&[usize]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if f.n() > g.n() {
        return ControlFlow::Continue(());
    }
    let mut e = CopyEnumerator::new(g, f);
    e.run(0, &mut visit)
}

/// Every injective embedding of `f` into `g`, one per copy.
pub fn find_embeddings(g: &Graph, f: &Graph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let _ = for_each_copy(g, f, |map| {
        out.push(map.to_vec());
        ControlFlow::Continue(())
    });
    out
}

/// First copy of `f` in `g` in enumeration order, as an embedding map.
pub fn first_copy(g: &Graph, f: &Graph) -> Option<Vec<usize>> {
    let mut found = None;
    let _ = for_each_copy(g, f, |map| {
        found = Some(map.to_vec());
        ControlFlow::Break(())
    });
    found
}

/// True when `g` has a copy of `f` whose image contains the edge
/// `{u, v}`. Cheap incremental primitive: after adding one edge to a
/// previously `f`-free graph, only copies through that edge can exist.
pub fn has_copy_through_edge(g: &Graph, f: &Graph, u: usize, v: usize) -> bool {
    if !g.has_edge(u, v) {
        return false;
    }
    has_copy_through_edge_adj(g.adjacency(), f, u, v)
}

/// Anchored existence check against a raw adjacency table; `adj[u]` must
/// already contain `v`. Lets searches that mutate adjacency in place test
/// candidate edges without building a [`Graph`] per probe.
pub(crate) fn has_copy_through_edge_adj(adj: &[VertexSet], f: &Graph, u: usize, v: usize) -> bool {
    if f.n() > adj.len() {
        return false;
    }
    let order = embedding_order(f);
    let mut map = vec![UNPLACED; f.n()];
    let mut used = VertexSet::empty(adj.len());
    for &(a, b) in f.edges() {
        for (ha, hb) in [(u, v), (v, u)] {
            map[a] = ha;
            map[b] = hb;
            used.insert(ha);
            used.insert(hb);
            let rest: Vec<usize> = order
                .iter()
                .copied()
                .filter(|&p| p != a && p != b)
                .collect();
            if extend_exists(adj, f, &rest, 0, &mut map, &mut used) {
                return true;
            }
            used.remove(ha);
            used.remove(hb);
            map[a] = UNPLACED;
            map[b] = UNPLACED;
        }
    }
    false
}

fn extend_exists(
    adj: &[VertexSet],
    f: &Graph,
    order: &[usize],
    depth: usize,
    map: &mut Vec<usize>,
    used: &mut VertexSet,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let n = adj.len();
    let pv = order[depth];
    if f.degree(pv) == 0 {
        // isolated tail just needs enough spare hosts
        let spare = n - used.len();
        return spare >= order.len() - depth;
    }
    let candidates: Vec<usize> = {
        let mut placed = f.neighbors(pv).iter().filter(|&q| map[q] != UNPLACED);
        match placed.next() {
            None => (0..n).filter(|&x| !used.contains(x)).collect(),
            Some(first) => {
                let mut cand = adj[map[first]].clone();
                for q in placed {
                    cand = cand.intersection(&adj[map[q]]);
                }
                cand.iter().filter(|&x| !used.contains(x)).collect()
            }
        }
    };
    for host in candidates {
        map[pv] = host;
        used.insert(host);
        if extend_exists(adj, f, order, depth + 1, map, used) {
            used.remove(host);
            map[pv] = UNPLACED;
            return true;
        }
        used.remove(host);
        map[pv] = UNPLACED;
    }
    false
}

/// Number of copies of `f` in `g`, each counted once.
pub fn count_copies(g: &Graph, f: &Graph) -> Result<u64, CountError> {
    let mut count: u64 = 0;
    let mut overflow = false;
    let _ = for_each_copy(g, f, |_| match count.checked_add(1) {
        Some(next) => {
            count = next;
            ControlFlow::Continue(())
        }
        None => {
            overflow = true;
            ControlFlow::Break(())
        }
    });
    if overflow {
        Err(CountError::Overflow)
    } else {
        Ok(count)
    }
}

/// Shared state for SDR-guided detection.
struct Detector<'a> {
    h: &'a Hypergraph,
    f: &'a Graph,
    shadow: Graph,
    /// pattern edges incident to each pattern vertex: (edge index, other end)
    incident: Vec<Vec<(usize, usize)>>,
    covering_cache: HashMap<(usize, usize), Vec<usize>>,
    map: Vec<usize>,
    used: VertexSet,
    /// matching: pattern edge -> hyperedge index
    matched_to: Vec<Option<usize>>,
    /// inverse matching: hyperedge index -> pattern edge
    owner: Vec<Option<usize>>,
}

impl<'a> Detector<'a> {
    fn new(h: &'a Hypergraph, f: &'a Graph) -> Self {
        let mut incident = vec![Vec::new(); f.n()];
        for (ei, &(a, b)) in f.edges().iter().enumerate() {
            incident[a].push((ei, b));
            incident[b].push((ei, a));
        }
        Detector {
            h,
            f,
            shadow: h.shadow(),
            incident,
            covering_cache: HashMap::new(),
            map: vec![UNPLACED; f.n()],
            used: VertexSet::empty(h.n()),
            matched_to: vec![None; f.edge_count()],
            owner: vec![None; h.edge_count()],
        }
    }

    fn covering(&mut self, u: usize, v: usize) -> Vec<usize> {
        let key = (u.min(v), u.max(v));
        if let Some(c) = self.covering_cache.get(&key) {
            return c.clone();
        }
        let c = self.h.covering_edges(key.0, key.1);
        self.covering_cache.insert(key, c.clone());
        c
    }

    /// Kuhn augmentation: try to give pattern edge `ei` a hyperedge,
    /// displacing current owners along alternating paths.
    fn augment(&mut self, ei: usize, visited: &mut Vec<bool>) -> bool {
        let (a, b) = self.f.edges()[ei];
        let (u, v) = (self.map[a], self.map[b]);
        let covering = self.covering(u, v);
        for hyper in covering {
            if visited[hyper] {
                continue;
            }
            visited[hyper] = true;
            match self.owner[hyper] {
                None => {
                    self.owner[hyper] = Some(ei);
                    self.matched_to[ei] = Some(hyper);
                    return true;
                }
                Some(displaced) => {
                    if self.augment(displaced, visited) {
                        self.owner[hyper] = Some(ei);
                        self.matched_to[ei] = Some(hyper);
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Matches every pattern edge in `new_edges`; on failure restores the
    /// matching and reports false.
    fn extend_matching(&mut self, new_edges: &[usize]) -> Option<MatchingSnapshot> {
        let snapshot = MatchingSnapshot {
            matched_to: self.matched_to.clone(),
            owner: self.owner.clone(),
        };
        for &ei in new_edges {
            let mut visited = vec![false; self.h.edge_count()];
            if !self.augment(ei, &mut visited) {
                self.restore(&snapshot);
                return None;
            }
        }
        Some(snapshot)
    }

    fn restore(&mut self, snapshot: &MatchingSnapshot) {
        self.matched_to.clone_from(&snapshot.matched_to);
        self.owner.clone_from(&snapshot.owner);
    }

    fn candidates(&self, pv: usize) -> Vec<usize> {
        let mut placed_neighbors = self
            .f
            .neighbors(pv)
            .iter()
            .filter(|&q| self.map[q] != UNPLACED);
        match placed_neighbors.next() {
            None => (0..self.h.n())
                .filter(|&x| !self.used.contains(x))
                .collect(),
            Some(first) => {
                let mut cand = self.shadow.neighbors(self.map[first]).clone();
                for q in placed_neighbors {
                    cand = cand.intersection(self.shadow.neighbors(self.map[q]));
                }
                cand.iter().filter(|&x| !self.used.contains(x)).collect()
            }
        }
    }

    fn search(&mut self, order: &[usize], depth: usize) -> bool {
        if depth == order.len() {
            return true;
        }
        let pv = order[depth];
        if self.f.degree(pv) == 0 {
            // isolated pattern vertices only need distinct free hosts
            let free: Vec<usize> = (0..self.h.n())
                .filter(|&x| !self.used.contains(x))
                .take(order.len() - depth)
                .collect();
            if free.len() < order.len() - depth {
                return false;
            }
            for (&ov, &host) in order[depth..].iter().zip(free.iter()) {
                self.map[ov] = host;
            }
            return true;
        }
        for host in self.candidates(pv) {
            self.map[pv] = host;
            self.used.insert(host);
            let new_edges: Vec<usize> = self.incident[pv]
                .iter()
                .filter(|&&(_, other)| self.map[other] != UNPLACED)
                .map(|&(ei, _)| ei)
                .collect();
            if let Some(snapshot) = self.extend_matching(&new_edges) {
                if self.search(order, depth + 1) {
                    return true;
                }
                self.restore(&snapshot);
            }
            self.used.remove(host);
            self.map[pv] = UNPLACED;
        }
        false
    }

    fn witness(&self) -> BergeWitness {
        let vertex_map = (0..self.f.n()).map(|v| (v, self.map[v])).collect();
        let edge_assignment = self
            .f
            .edges()
            .iter()
            .enumerate()
            .map(|(ei, &(a, b))| ((a, b), self.matched_to[ei].expect("edge matched")))
            .collect();
        BergeWitness {
            vertex_map,
            edge_assignment,
        }
    }
}

struct MatchingSnapshot {
    matched_to: Vec<Option<usize>>,
    owner: Vec<Option<usize>>,
}

fn degenerate_witness(h: &Hypergraph, f: &Graph) -> Option<BergeWitness> {
    if f.n() <= h.n() {
        Some(BergeWitness {
            vertex_map: (0..f.n()).map(|v| (v, v)).collect(),
            edge_assignment: Vec::new(),
        })
    } else {
        None
    }
}

/// Finds a Berge copy of `f` in `h`, returning the first witness in a
/// deterministic search order, or `None` when `h` is Berge-`f`-free.
///
/// A pattern with no edges is contained whenever it has at most `n`
/// vertices (the empty bijection).
pub fn contains_berge(h: &Hypergraph, f: &Graph) -> Option<BergeWitness> {
    if f.edge_count() == 0 {
        return degenerate_witness(h, f);
    }
    if f.n() > h.n() {
        return None;
    }
    let mut det = Detector::new(h, f);
    let order = embedding_order(f);
    if det.search(&order, 0) {
        Some(det.witness())
    } else {
        None
    }
}

pub fn is_berge_f_free(h: &Hypergraph, f: &Graph) -> bool {
    contains_berge(h, f).is_none()
}

/// One witness per copy of `f` in the shadow that admits an SDR.
/// Exhaustive counterpart of [`contains_berge`] for test oracles.
pub fn all_berge_witnesses(h: &Hypergraph, f: &Graph) -> Vec<BergeWitness> {
    if f.edge_count() == 0 {
        return degenerate_witness(h, f).into_iter().collect();
    }
    if f.n() > h.n() {
        return Vec::new();
    }
    let shadow = h.shadow();
    let mut out = Vec::new();
    let _ = for_each_copy(&shadow, f, |map| {
        if let Some(witness) = sdr_for_copy(h, f, map) {
            out.push(witness);
        }
        ControlFlow::Continue(())
    });
    out
}

/// Standalone SDR attempt for a fixed embedding map.
fn sdr_for_copy(h: &Hypergraph, f: &Graph, map: &[usize]) -> Option<BergeWitness> {
    let mut det = Detector::new(h, f);
    det.map = map.to_vec();
    let all_edges: Vec<usize> = (0..f.edge_count()).collect();
    det.extend_matching(&all_edges)?;
    Some(det.witness())
}

/// Detection specialized to a freshly added hyperedge: assuming `h`
/// without its hyperedge `new_idx` is Berge-`f`-free, any Berge copy in
/// `h` must assign some pattern edge to that hyperedge, so only copies
/// with an image pair inside it need to be examined.
pub fn contains_berge_touching(h: &Hypergraph, f: &Graph, new_idx: usize) -> Option<BergeWitness> {
    if f.edge_count() == 0 {
        return degenerate_witness(h, f);
    }
    if f.n() > h.n() {
        return None;
    }
    let new_edge = h.edge(new_idx).clone();
    if new_edge.len() < 2 && f.edge_count() > 0 {
        // a singleton hyperedge covers no pair, but pattern edges may still
        // be coverable elsewhere; with h otherwise free there is nothing new
        return None;
    }
    let mut det = Detector::new(h, f);
    let vs = new_edge.to_vec();
    let order_template = embedding_order(f);
    for ei in 0..f.edge_count() {
        let (a, b) = f.edges()[ei];
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                for (ha, hb) in [(u, v), (v, u)] {
                    det.map[a] = ha;
                    det.map[b] = hb;
                    det.used.insert(ha);
                    det.used.insert(hb);
                    if let Some(snapshot) = det.extend_matching(&[ei]) {
                        // finish the embedding with the anchored pair fixed
                        let rest: Vec<usize> = order_template
                            .iter()
                            .copied()
                            .filter(|&pv| pv != a && pv != b)
                            .collect();
                        if det.search_anchored(&rest, 0, ei) {
                            return Some(det.witness());
                        }
                        det.restore(&snapshot);
                    }
                    det.used.remove(ha);
                    det.used.remove(hb);
                    det.map[a] = UNPLACED;
                    det.map[b] = UNPLACED;
                }
            }
        }
    }
    None
}

impl Detector<'_> {
    /// Like `search` but skips the pattern edge already matched at anchor
    /// time when collecting newly closable edges.
    fn search_anchored(&mut self, order: &[usize], depth: usize, anchored_edge: usize) -> bool {
        if depth == order.len() {
            return true;
        }
        let pv = order[depth];
        if self.f.degree(pv) == 0 {
            let free: Vec<usize> = (0..self.h.n())
                .filter(|&x| !self.used.contains(x))
                .take(order.len() - depth)
                .collect();
            if free.len() < order.len() - depth {
                return false;
            }
            for (&ov, &host) in order[depth..].iter().zip(free.iter()) {
                self.map[ov] = host;
            }
            return true;
        }
        for host in self.candidates(pv) {
            self.map[pv] = host;
            self.used.insert(host);
            let new_edges: Vec<usize> = self.incident[pv]
                .iter()
                .filter(|&&(ei, other)| ei != anchored_edge && self.map[other] != UNPLACED)
                .map(|&(ei, _)| ei)
                .collect();
            if let Some(snapshot) = self.extend_matching(&new_edges) {
                if self.search_anchored(order, depth + 1, anchored_edge) {
                    return true;
                }
                self.restore(&snapshot);
            }
            self.used.remove(host);
            self.map[pv] = UNPLACED;
        }
        false
    }
}
