//! Blue-edge classification of shadow edges and the verifiers built on it.
//!
//! A shadow edge is blue when it lies in at most |E(F)| - 1 hyperedges.
//! On a Berge-F-free hypergraph, every copy of F in the shadow must pick
//! up a blue edge (otherwise distinct hyperedges could be chosen greedily
//! for its edges), and inside each hyperedge the non-blue pairs form an
//! F-free graph. Both facts are checkable exactly, and the double
//! counting bound `sum_h #{blue in h} <= (|E(F)|-1) * #{blue in shadow}`
//! comes with them.

use crate::berge::for_each_copy;
use crate::graph::Graph;
use crate::hypergraph::{Hypergraph, HypergraphError};
use std::collections::HashSet;
use std::fmt::Write as _;
use std::ops::ControlFlow;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("pattern has no edges; blue threshold undefined")]
    EmptyPattern,
    #[error("hyperedge {idx} has {size} vertices, needs at least {need}")]
    HyperedgeTooSmall {
        idx: usize,
        size: usize,
        need: usize,
    },
    #[error("hyperedge {idx} too small for a density ratio (size {size} < 2)")]
    RatioUndefined { idx: usize, size: usize },
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

/// How pair multiplicities are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CountMode {
    /// duplicate hyperedges each count (the multiset reading)
    #[default]
    Multiset,
    /// duplicate hyperedges count once (for sensitivity experiments)
    DistinctSets,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeClass {
    pub u: usize,
    pub v: usize,
    pub multiplicity: usize,
    pub blue: bool,
}

/// Every shadow edge with its multiplicity and blue flag, sorted by pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeClassification {
    /// multiplicity at or below this makes an edge blue (|E(F)| - 1)
    pub blue_threshold: usize,
    pub rows: Vec<EdgeClass>,
}

impl EdgeClassification {
    pub fn blue_count(&self) -> usize {
        self.rows.iter().filter(|r| r.blue).count()
    }

    pub fn non_blue_count(&self) -> usize {
        self.rows.len() - self.blue_count()
    }

    pub fn is_blue(&self, u: usize, v: usize) -> Option<bool> {
        let key = (u.min(v), u.max(v));
        self.rows.iter().find(|r| (r.u, r.v) == key).map(|r| r.blue)
    }

    /// CSV rendering with the header `u,v,multiplicity,blue`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("u,v,multiplicity,blue\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{},{}", r.u, r.v, r.multiplicity, r.blue);
        }
        out
    }
}

/// Classifies every shadow edge of `h` against the pattern `f`.
pub fn classify_edges(h: &Hypergraph, f: &Graph) -> Result<EdgeClassification, ClassifyError> {
    classify_edges_with(h, f, CountMode::Multiset)
}

pub fn classify_edges_with(
    h: &Hypergraph,
    f: &Graph,
    mode: CountMode,
) -> Result<EdgeClassification, ClassifyError> {
    if f.edge_count() == 0 {
        return Err(ClassifyError::EmptyPattern);
    }
    let blue_threshold = f.edge_count() - 1;
    let shadow = h.shadow();
    let mut rows = Vec::with_capacity(shadow.edge_count());
    for &(u, v) in shadow.edges() {
        let multiplicity = match mode {
            CountMode::Multiset => h.multiplicity(u, v)?,
            CountMode::DistinctSets => h.multiplicity_distinct(u, v)?,
        };
        rows.push(EdgeClass {
            u,
            v,
            multiplicity,
            blue: multiplicity <= blue_threshold,
        });
    }
    Ok(EdgeClassification {
        blue_threshold,
        rows,
    })
}

/// Outcome of a claim verifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClaimCheck {
    /// every enumerated object satisfied the claim
    Verified { copies_checked: u64 },
    /// a copy of the pattern violating the claim, as its image edge list
    Counterexample { copy: Vec<(usize, usize)> },
    /// the enumeration cap was hit before finishing; never silent
    Truncated { copies_checked: u64 },
}

impl ClaimCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, ClaimCheck::Verified { .. })
    }
}

pub const DEFAULT_COPY_CAP: u64 = 10_000_000;

/// Checks that every copy of `f` in the shadow of `h` contains a blue
/// edge. On a Berge-`f`-free input this must verify; on other inputs a
/// counterexample documents the contrapositive.
pub fn verify_blue_in_every_copy(
    h: &Hypergraph,
    f: &Graph,
    copy_cap: u64,
) -> Result<ClaimCheck, ClassifyError> {
    let classification = classify_edges(h, f)?;
    let blue: HashSet<(usize, usize)> = classification
        .rows
        .iter()
        .filter(|r| r.blue)
        .map(|r| (r.u, r.v))
        .collect();
    let shadow = h.shadow();
    let mut copies: u64 = 0;
    let mut result = ClaimCheck::Verified { copies_checked: 0 };
    let _ = for_each_copy(&shadow, f, |map| {
        if copies >= copy_cap {
            result = ClaimCheck::Truncated {
                copies_checked: copies,
            };
            return ControlFlow::Break(());
        }
        copies += 1;
        let image: Vec<(usize, usize)> = f
            .edges()
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (map[a], map[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        if image.iter().any(|pair| blue.contains(pair)) {
            ControlFlow::Continue(())
        } else {
            let mut copy = image;
            copy.sort_unstable();
            result = ClaimCheck::Counterexample { copy };
            ControlFlow::Break(())
        }
    });
    if let ClaimCheck::Verified { copies_checked } = &mut result {
        *copies_checked = copies;
    }
    Ok(result)
}

/// Checks that the non-blue pairs inside hyperedge `idx` contain no copy
/// of `f`. Requires `|h| >= |V(F)|`.
pub fn verify_nonblue_within_edge_f_free(
    h: &Hypergraph,
    f: &Graph,
    idx: usize,
) -> Result<ClaimCheck, ClassifyError> {
    let edge = h.try_edge(idx)?;
    if edge.len() < f.n() {
        return Err(ClassifyError::HyperedgeTooSmall {
            idx,
            size: edge.len(),
            need: f.n(),
        });
    }
    let classification = classify_edges(h, f)?;
    let vs = edge.to_vec();
    let mut non_blue_pairs = Vec::new();
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            if classification.is_blue(u, v) == Some(false) {
                non_blue_pairs.push((u, v));
            }
        }
    }
    let non_blue_graph =
        Graph::from_edges(h.n(), &non_blue_pairs).expect("pairs come from a valid hyperedge");
    let mut copies: u64 = 0;
    let mut result = ClaimCheck::Verified { copies_checked: 0 };
    let _ = for_each_copy(&non_blue_graph, f, |map| {
        copies += 1;
        let mut copy: Vec<(usize, usize)> = f
            .edges()
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (map[a], map[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        copy.sort_unstable();
        result = ClaimCheck::Counterexample { copy };
        ControlFlow::Break(())
    });
    if let ClaimCheck::Verified { copies_checked } = &mut result {
        *copies_checked = copies;
    }
    Ok(result)
}

/// Per-hyperedge blue density. The asymptotic constant behind the density
/// lower bound is non-constructive, so empirical ratios are reported
/// instead.
#[derive(Debug, Clone, PartialEq)]
pub struct BlueDensityRow {
    pub idx: usize,
    pub size: usize,
    pub blue_inside: usize,
    /// blue_inside / C(size, 2)
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlueDensityReport {
    pub rows: Vec<BlueDensityRow>,
    pub min_ratio: Option<f64>,
}

pub fn blue_density_report(h: &Hypergraph, f: &Graph) -> Result<BlueDensityReport, ClassifyError> {
    let classification = classify_edges(h, f)?;
    let mut rows = Vec::with_capacity(h.edge_count());
    for (idx, edge) in h.edges().iter().enumerate() {
        let size = edge.len();
        if size < 2 {
            return Err(ClassifyError::RatioUndefined { idx, size });
        }
        let vs = edge.to_vec();
        let mut blue_inside = 0;
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                if classification.is_blue(u, v) == Some(true) {
                    blue_inside += 1;
                }
            }
        }
        let pairs = (size * (size - 1) / 2) as f64;
        rows.push(BlueDensityRow {
            idx,
            size,
            blue_inside,
            ratio: blue_inside as f64 / pairs,
        });
    }
    let min_ratio = rows
        .iter()
        .map(|r| r.ratio)
        .min_by(|a, b| a.partial_cmp(b).expect("ratios are finite"));
    Ok(BlueDensityReport { rows, min_ratio })
}

/// Both sides of the double-counting bound: summing blue pairs inside each
/// hyperedge counts every blue shadow edge at most |E(F)| - 1 times.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountingBound {
    pub lhs_sum_blue_inside: u64,
    pub rhs_bound: u64,
    pub blue_in_shadow: u64,
}

impl CountingBound {
    pub fn holds(&self) -> bool {
        self.lhs_sum_blue_inside <= self.rhs_bound
    }
}

pub fn counting_bound(h: &Hypergraph, f: &Graph) -> Result<CountingBound, ClassifyError> {
    let classification = classify_edges(h, f)?;
    let mut lhs: u64 = 0;
    for edge in h.edges() {
        let vs = edge.to_vec();
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                if classification.is_blue(u, v) == Some(true) {
                    lhs += 1;
                }
            }
        }
    }
    let blue = classification.blue_count() as u64;
    Ok(CountingBound {
        lhs_sum_blue_inside: lhs,
        rhs_bound: blue * classification.blue_threshold as u64,
        blue_in_shadow: blue,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(n: usize, lists: &[&[usize]]) -> Hypergraph {
        let lists: Vec<Vec<usize>> = lists.iter().map(|l| l.to_vec()).collect();
        Hypergraph::from_vertex_lists(n, &lists).unwrap()
    }

    #[test]
    fn one_triple_all_blue() {
        let hg = h(3, &[&[0, 1, 2]]);
        let c = classify_edges(&hg, &Graph::complete(3)).unwrap();
        assert_eq!(c.blue_threshold, 2);
        assert_eq!(c.rows.len(), 3);
        assert!(c.rows.iter().all(|r| r.blue && r.multiplicity == 1));
    }

    #[test]
    fn triple_taken_three_times_has_no_blue() {
        let hg = h(3, &[&[0, 1, 2], &[0, 1, 2], &[0, 1, 2]]);
        let c = classify_edges(&hg, &Graph::complete(3)).unwrap();
        assert_eq!(c.blue_count(), 0);
        assert_eq!(c.non_blue_count(), 3);
        // set semantics collapses the duplicates
        let cs = classify_edges_with(&hg, &Graph::complete(3), CountMode::DistinctSets).unwrap();
        assert_eq!(cs.blue_count(), 3);
    }

    #[test]
    fn mixed_multiplicities() {
        let hg = h(5, &[&[0, 1, 2], &[0, 1, 3], &[0, 1, 4]]);
        let c = classify_edges(&hg, &Graph::complete(3)).unwrap();
        let heavy = c.rows.iter().find(|r| (r.u, r.v) == (0, 1)).unwrap();
        assert_eq!(heavy.multiplicity, 3);
        assert!(!heavy.blue);
        assert!(c
            .rows
            .iter()
            .filter(|r| (r.u, r.v) != (0, 1))
            .all(|r| r.blue));
    }

    #[test]
    fn partition_covers_shadow() {
        let hg = h(5, &[&[0, 1, 2], &[0, 1, 3], &[0, 1, 4], &[2, 3]]);
        let c = classify_edges(&hg, &Graph::complete(3)).unwrap();
        assert_eq!(c.rows.len(), hg.shadow().edge_count());
        assert_eq!(c.blue_count() + c.non_blue_count(), c.rows.len());
    }

    #[test]
    fn empty_pattern_rejected() {
        let hg = h(3, &[&[0, 1]]);
        assert_eq!(
            classify_edges(&hg, &Graph::empty(2)),
            Err(ClassifyError::EmptyPattern)
        );
    }

    #[test]
    fn blue_in_every_copy_on_free_instance() {
        // Berge-triangle-free: one triple
        let hg = h(3, &[&[0, 1, 2]]);
        let check = verify_blue_in_every_copy(&hg, &Graph::complete(3), 1000).unwrap();
        assert_eq!(check, ClaimCheck::Verified { copies_checked: 1 });
    }

    #[test]
    fn blue_in_every_copy_vacuous_on_empty() {
        let check =
            verify_blue_in_every_copy(&Hypergraph::new(4), &Graph::complete(3), 1000).unwrap();
        assert_eq!(check, ClaimCheck::Verified { copies_checked: 0 });
    }

    #[test]
    fn contrapositive_counterexample() {
        // triple taken three times contains a Berge triangle, so the claim
        // precondition fails and the all-non-blue triangle shows up
        let hg = h(3, &[&[0, 1, 2], &[0, 1, 2], &[0, 1, 2]]);
        let check = verify_blue_in_every_copy(&hg, &Graph::complete(3), 1000).unwrap();
        assert_eq!(
            check,
            ClaimCheck::Counterexample {
                copy: vec![(0, 1), (0, 2), (1, 2)]
            }
        );
        assert!(crate::berge::contains_berge(&hg, &Graph::complete(3)).is_some());
    }

    #[test]
    fn truncation_is_marked() {
        let hg = h(6, &[&[0, 1, 2], &[1, 2, 3], &[2, 3, 4], &[3, 4, 5]]);
        let check = verify_blue_in_every_copy(&hg, &Graph::complete(3), 1).unwrap();
        assert!(matches!(check, ClaimCheck::Truncated { copies_checked: 1 }));
    }

    #[test]
    fn nonblue_inside_single_hyperedge_is_empty() {
        let hg = h(4, &[&[0, 1, 2, 3]]);
        let check = verify_nonblue_within_edge_f_free(&hg, &Graph::complete(3), 0).unwrap();
        assert!(check.is_ok());
    }

    #[test]
    fn nonblue_guard_cases() {
        let hg = h(3, &[&[0, 1]]);
        assert_eq!(
            verify_nonblue_within_edge_f_free(&hg, &Graph::complete(3), 0),
            Err(ClassifyError::HyperedgeTooSmall {
                idx: 0,
                size: 2,
                need: 3
            })
        );
        assert!(matches!(
            verify_nonblue_within_edge_f_free(&hg, &Graph::complete(3), 7),
            Err(ClassifyError::Hypergraph(_))
        ));
    }

    #[test]
    fn density_report_single_triple() {
        let hg = h(3, &[&[0, 1, 2]]);
        let report = blue_density_report(&hg, &Graph::complete(3)).unwrap();
        assert_eq!(report.rows.len(), 1);
        assert_eq!(report.rows[0].ratio, 1.0);
        assert_eq!(report.min_ratio, Some(1.0));
    }

    #[test]
    fn density_report_zero_for_saturated_pairs() {
        let hg = h(3, &[&[0, 1, 2], &[0, 1, 2], &[0, 1, 2]]);
        let report = blue_density_report(&hg, &Graph::complete(3)).unwrap();
        assert!(report.rows.iter().all(|r| r.ratio == 0.0));
    }

    #[test]
    fn counting_bound_holds_here() {
        let hg = h(5, &[&[0, 1, 2], &[0, 1, 3], &[0, 1, 4], &[2, 3]]);
        let b = counting_bound(&hg, &Graph::complete(3)).unwrap();
        assert!(b.holds());
    }

    #[test]
    fn csv_shape() {
        let hg = h(3, &[&[0, 1, 2]]);
        let c = classify_edges(&hg, &Graph::complete(3)).unwrap();
        let csv = c.to_csv();
        assert!(csv.starts_with("u,v,multiplicity,blue\n"));
        assert!(csv.contains("0,1,1,true"));
    }

    #[test]
    fn singleton_block_construction_passes_both_claims() {
        let hg = crate::constructions::kr_construction(12, 3).unwrap();
        let f = Graph::complete(3);
        assert!(verify_blue_in_every_copy(&hg, &f, 1_000_000)
            .unwrap()
            .is_ok());
        for idx in 0..hg.edge_count() {
            assert!(verify_nonblue_within_edge_f_free(&hg, &f, idx)
                .unwrap()
                .is_ok());
        }
        let report = blue_density_report(&hg, &f).unwrap();
        assert!(report.rows.iter().all(|r| r.ratio > 0.0 && r.ratio <= 1.0));
    }
}
