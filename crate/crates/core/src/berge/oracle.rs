//! Brute-force reference implementations, kept deliberately independent of
//! the SDR-guided detector so the two can check each other.
//!
//! The containment oracle enumerates injective placements of the pattern
//! vertices in plain id order (no shadow, no matching) and then injective
//! assignments of pattern edges to hyperedges. Only use at desk scale.

use crate::graph::Graph;
use crate::hypergraph::Hypergraph;
use std::collections::HashSet;

/// True when `h` contains a Berge copy of `f`, by exhaustive enumeration.
pub fn contains_berge_naive(h: &Hypergraph, f: &Graph) -> bool {
    if f.edge_count() == 0 {
        return f.n() <= h.n();
    }
    if f.n() > h.n() || f.edge_count() > h.edge_count() {
        return false;
    }
    let mut map = vec![usize::MAX; f.n()];
    let mut used = vec![false; h.n()];
    place_vertex(h, f, 0, &mut map, &mut used)
}

fn place_vertex(
    h: &Hypergraph,
    f: &Graph,
    v: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if v == f.n() {
        let mut taken = vec![false; h.edge_count()];
        return assign_edge(h, f, 0, map, &mut taken);
    }
    for host in 0..h.n() {
        if used[host] {
            continue;
        }
        map[v] = host;
        used[host] = true;
        if place_vertex(h, f, v + 1, map, used) {
            return true;
        }
        used[host] = false;
        map[v] = usize::MAX;
    }
    false
}

fn assign_edge(h: &Hypergraph, f: &Graph, ei: usize, map: &[usize], taken: &mut Vec<bool>) -> bool {
    if ei == f.edge_count() {
        return true;
    }
    let (a, b) = f.edges()[ei];
    let (u, v) = (map[a], map[b]);
    for idx in 0..h.edge_count() {
        if taken[idx] {
            continue;
        }
        let edge = h.edge(idx);
        if edge.contains(u) && edge.contains(v) {
            taken[idx] = true;
            if assign_edge(h, f, ei + 1, map, taken) {
                return true;
            }
            taken[idx] = false;
        }
    }
    false
}

/// Copy count by raw enumeration of injective maps, deduplicated by image
/// edge set.
pub fn count_copies_naive(g: &Graph, f: &Graph) -> u64 {
    if f.n() > g.n() {
        return 0;
    }
    let mut map = vec![usize::MAX; f.n()];
    let mut used = vec![false; g.n()];
    let mut seen: HashSet<Vec<(usize, usize)>> = HashSet::new();
    enumerate_maps(g, f, 0, &mut map, &mut used, &mut seen);
    seen.len() as u64
}

fn enumerate_maps(
    g: &Graph,
    f: &Graph,
    v: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    seen: &mut HashSet<Vec<(usize, usize)>>,
) {
    if v == f.n() {
        let mut key: Vec<(usize, usize)> = f
            .edges()
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (map[a], map[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        key.sort_unstable();
        seen.insert(key);
        return;
    }
    for host in 0..g.n() {
        if used[host] {
            continue;
        }
        // prune on already-broken adjacency; every full map is still reached
        let ok = f
            .neighbors(v)
            .iter()
            .filter(|&u| u < v)
            .all(|u| g.has_edge(map[u], host));
        if !ok {
            continue;
        }
        map[v] = host;
        used[host] = true;
        enumerate_maps(g, f, v + 1, map, used, seen);
        used[host] = false;
        map[v] = usize::MAX;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn naive_counts_match_closed_forms() {
        let k3 = Graph::complete(3);
        assert_eq!(count_copies_naive(&Graph::complete(4), &k3), 4);
        assert_eq!(count_copies_naive(&Graph::complete(5), &k3), 10);
        assert_eq!(count_copies_naive(&Graph::cycle(4).unwrap(), &k3), 0);
        let p3 = Graph::path(3).unwrap();
        assert_eq!(count_copies_naive(&Graph::complete(4), &p3), 12);
    }

    #[test]
    fn naive_containment_basics() {
        let free = Hypergraph::from_vertex_lists(3, &[vec![0, 1, 2]]).unwrap();
        assert!(!contains_berge_naive(&free, &Graph::complete(3)));

        let full = Hypergraph::from_vertex_lists(4, &[vec![0, 1, 2], vec![1, 2, 3], vec![0, 2, 3]])
            .unwrap();
        assert!(contains_berge_naive(&full, &Graph::complete(3)));
    }
}
