//! Cross-module properties on randomized instances.

use berge_core::berge::{
    self, all_berge_witnesses, contains_berge, count_copies, is_berge_f_free, oracle,
};
use berge_core::classify::{classify_edges, counting_bound};
use berge_core::graph::Graph;
use berge_core::hypergraph::Hypergraph;
use berge_core::weight::{weigh, WeightFunction};
use proptest::prelude::*;

fn mask_to_list(n: usize, mask: u32) -> Vec<usize> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

fn arb_hypergraph(max_n: usize, max_edges: usize) -> impl Strategy<Value = Hypergraph> {
    (2..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(1u32..(1u32 << n), 0..=max_edges).prop_map(move |masks| {
            let lists: Vec<Vec<usize>> = masks.iter().map(|&m| mask_to_list(n, m)).collect();
            Hypergraph::from_vertex_lists(n, &lists).expect("masks give valid edges")
        })
    })
}

fn arb_pattern() -> impl Strategy<Value = Graph> {
    prop_oneof![
        Just(Graph::complete(2)),
        Just(Graph::complete(3)),
        Just(Graph::complete(4)),
        Just(Graph::path(3).unwrap()),
        Just(Graph::path(4).unwrap()),
        Just(Graph::cycle(4).unwrap()),
    ]
}

proptest! {
    #[test]
    fn shadow_of_concat_is_union_of_shadows(
        a in arb_hypergraph(7, 6),
        masks in prop::collection::vec(1u32..(1u32 << 7), 0..6),
    ) {
        let n = a.n();
        let lists: Vec<Vec<usize>> = masks
            .iter()
            .map(|&m| mask_to_list(n, m & ((1 << n) - 1)))
            .filter(|l| !l.is_empty())
            .collect();
        let b = Hypergraph::from_vertex_lists(n, &lists).unwrap();
        let combined = a.concat(&b).unwrap().shadow();
        let union = a.shadow().union(&b.shadow()).unwrap();
        prop_assert_eq!(combined.edges(), union.edges());
    }

    #[test]
    fn multiplicity_positive_iff_shadow_edge(h in arb_hypergraph(7, 6)) {
        let shadow = h.shadow();
        for u in 0..h.n() {
            for v in (u + 1)..h.n() {
                let m = h.multiplicity(u, v).unwrap();
                prop_assert_eq!(m >= 1, shadow.has_edge(u, v));
            }
        }
    }

    #[test]
    fn weight_split_sums_to_total(
        h in arb_hypergraph(7, 6),
        threshold in 0usize..10,
    ) {
        for w in [
            WeightFunction::Size,
            WeightFunction::SizeSquared,
            WeightFunction::SizeMinusC(2),
        ] {
            let report = weigh(&h, &w, threshold).unwrap();
            prop_assert_eq!(report.total, report.below_threshold + report.above_threshold);
            let baseline = weigh(&h, &w, 0).unwrap();
            prop_assert_eq!(report.total, baseline.total);
        }
    }

    #[test]
    fn size_weight_equals_degree_sum(h in arb_hypergraph(7, 6)) {
        let report = weigh(&h, &WeightFunction::SizeMinusC(0), 0).unwrap();
        let degree_sum: usize = (0..h.n()).map(|v| h.vertex_degree(v)).sum();
        prop_assert_eq!(report.total, degree_sum as u64);
    }

    #[test]
    fn detector_agrees_with_naive_oracle(
        h in arb_hypergraph(6, 5),
        f in arb_pattern(),
    ) {
        let fast = contains_berge(&h, &f);
        let slow = oracle::contains_berge_naive(&h, &f);
        prop_assert_eq!(fast.is_some(), slow);
        if let Some(w) = fast {
            prop_assert!(w.validate(&h, &f).is_ok());
        }
    }

    #[test]
    fn adding_a_hyperedge_never_removes_containment(
        h in arb_hypergraph(7, 5),
        extra in 1u32..(1u32 << 7),
        f in arb_pattern(),
    ) {
        let before = contains_berge(&h, &f).is_some();
        let list = mask_to_list(h.n(), extra & ((1 << h.n()) - 1));
        prop_assume!(!list.is_empty());
        let mut grown = h.clone();
        grown.push_edge(&list).unwrap();
        if before {
            prop_assert!(contains_berge(&grown, &f).is_some());
        }
    }

    #[test]
    fn replacing_by_superset_never_removes_containment(
        h in arb_hypergraph(7, 5),
        which in any::<prop::sample::Index>(),
        extra in 0u32..(1u32 << 7),
        f in arb_pattern(),
    ) {
        prop_assume!(h.edge_count() > 0);
        let before = contains_berge(&h, &f).is_some();
        prop_assume!(before);
        let idx = which.index(h.edge_count());
        let mut lists: Vec<Vec<usize>> = h.edges().iter().map(|e| e.to_vec()).collect();
        let mut grown_mask: u32 = lists[idx].iter().map(|&v| 1 << v).sum::<u32>();
        grown_mask |= extra & ((1 << h.n()) - 1);
        lists[idx] = mask_to_list(h.n(), grown_mask);
        let replaced = Hypergraph::from_vertex_lists(h.n(), &lists).unwrap();
        prop_assert!(contains_berge(&replaced, &f).is_some());
    }

    #[test]
    fn containment_implies_a_shadow_copy(
        h in arb_hypergraph(7, 5),
        f in arb_pattern(),
    ) {
        if contains_berge(&h, &f).is_some() {
            prop_assert!(count_copies(&h.shadow(), &f).unwrap() >= 1);
        }
    }

    #[test]
    fn every_reported_witness_validates(
        h in arb_hypergraph(6, 5),
        f in arb_pattern(),
    ) {
        for w in all_berge_witnesses(&h, &f) {
            prop_assert!(w.validate(&h, &f).is_ok());
        }
    }

    #[test]
    fn copy_counts_match_naive_enumeration(
        masks in prop::collection::vec(1u32..(1u32 << 6), 0..10),
        f in arb_pattern(),
    ) {
        let n = 6;
        let mut edges = Vec::new();
        for m in masks {
            let list = mask_to_list(n, m);
            if list.len() == 2 && !edges.contains(&(list[0], list[1])) {
                edges.push((list[0], list[1]));
            }
        }
        let g = Graph::from_edges(n, &edges).unwrap();
        prop_assert_eq!(
            count_copies(&g, &f).unwrap(),
            oracle::count_copies_naive(&g, &f)
        );
    }

    #[test]
    fn classification_partition_and_counting_bound(
        h in arb_hypergraph(7, 6),
        f in arb_pattern(),
    ) {
        let c = classify_edges(&h, &f).unwrap();
        prop_assert_eq!(c.rows.len(), h.shadow().edge_count());
        prop_assert_eq!(c.blue_count() + c.non_blue_count(), c.rows.len());
        let bound = counting_bound(&h, &f).unwrap();
        prop_assert!(bound.holds());
    }

    #[test]
    fn text_round_trip_is_identity(h in arb_hypergraph(7, 6)) {
        let text = berge_core::io::hypergraph_to_string(&h);
        let back = berge_core::io::hypergraph_from_str(&text).unwrap();
        prop_assert_eq!(back, h);
    }

    #[test]
    fn json_round_trip_is_identity(h in arb_hypergraph(7, 6)) {
        let json = berge_core::io::hypergraph_to_json(&h);
        let back = berge_core::io::hypergraph_from_json(&json).unwrap();
        prop_assert_eq!(back, h);
    }
}

#[test]
fn freeness_is_complement_of_containment() {
    let h =
        Hypergraph::from_vertex_lists(4, &[vec![0, 1, 2], vec![1, 2, 3], vec![0, 2, 3]]).unwrap();
    let f = Graph::complete(3);
    assert_eq!(is_berge_f_free(&h, &f), contains_berge(&h, &f).is_none());
    assert_eq!(
        berge::is_berge_f_free(&h, &Graph::complete(4)),
        contains_berge(&h, &Graph::complete(4)).is_none()
    );
}
