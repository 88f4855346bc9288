use std::collections::{BTreeMap, BTreeSet};

use condorcet_core::bruhat::{
    canonical_word, class_neighbors, cover_diff_report, enumerate_bruhat, felsner_weil_check, inversion_triples,
    yang_baxter_neighbors, InversionTripleSet,
};
use condorcet_core::heap::{build_heap, commutation_classes};
use condorcet_core::majority::majority_of_domain;
use condorcet_core::{Execution, Permutation, ReducedWord};

fn parse_triples(label: &str) -> InversionTripleSet {
    if label == "-" {
        return InversionTripleSet::empty();
    }
    label
        .split(',')
        .map(|t| {
            let d: Vec<usize> = t.chars().map(|c| c.to_digit(10).unwrap() as usize).collect();
            (d[0], d[1], d[2])
        })
        .collect()
}

fn canonical(word: &ReducedWord) -> ReducedWord {
    canonical_word(&build_heap(word))
}

#[test]
fn node_counts() {
    for (n, expected) in [(3, 2), (4, 8), (5, 62)] {
        let poset = enumerate_bruhat(n, 10_000, Execution::Parallel).unwrap();
        assert_eq!(poset.nodes.len(), expected, "n={n}");
        assert!(felsner_weil_check(&poset), "n={n}");
        let classes = commutation_classes(&Permutation::longest(n), 1_000_000).unwrap();
        assert_eq!(classes.len(), expected);
    }
}

#[test]
fn b52_matches_fixture() {
    let text = include_str!("data/b52_lattice.txt");
    let poset = enumerate_bruhat(5, 1000, Execution::Sequential).unwrap();
    let mut expected_nodes = BTreeMap::new();
    let mut expected_edges = BTreeSet::new();
    for line in text.lines() {
        let parts: Vec<&str> = line.split_whitespace().collect();
        match parts[0] {
            "node" => {
                expected_nodes.insert(parse_triples(parts[1]).bits(), parts[2].to_string());
            }
            "edge" => {
                let (a, b) = (parse_triples(parts[1]).bits(), parse_triples(parts[2]).bits());
                expected_edges.insert((a.min(b), a.max(b)));
            }
            other => panic!("unexpected fixture line {other}"),
        }
    }
    let nodes: BTreeMap<u128, String> = poset
        .nodes
        .iter()
        .map(|n| (n.triples.bits(), n.majority.compact()))
        .collect();
    assert_eq!(nodes, expected_nodes);
    let bits = |id: usize| poset.nodes[id].triples.bits();
    let edges: BTreeSet<(u128, u128)> = poset
        .edges
        .iter()
        .map(|e| (bits(e.lower).min(bits(e.upper)), bits(e.lower).max(bits(e.upper))))
        .collect();
    assert_eq!(edges.len(), 100);
    assert_eq!(edges, expected_edges);

    let dot = poset.to_dot();
    assert!(dot.contains("[label=\"3{24}{15}\\nnone\"]"));
    assert!(dot.contains("[label=\"{15}{24}3\\nall\"]"));
    let low = poset.node_by_triples(parse_triples("123,124")).unwrap();
    let high = poset.node_by_triples(parse_triples("123,124,134")).unwrap();
    assert_eq!(
        (low.majority.compact(), high.majority.compact()),
        ("34215".into(), "43125".into())
    );
    assert!(poset
        .edges
        .iter()
        .any(|e| e.lower == low.id && e.upper == high.id && e.triple == (1, 3, 4)));
}

#[test]
fn node_majorities_recompute() {
    for n in 3..=5 {
        let poset = enumerate_bruhat(n, 1000, Execution::Parallel).unwrap();
        for node in &poset.nodes {
            let direct = majority_of_domain(&node.representative, None, Execution::Sequential).unwrap();
            assert_eq!(direct.order, node.majority);
            assert_eq!(inversion_triples(&node.representative).unwrap(), node.triples);
        }
        for e in &poset.edges {
            let (lower, upper) = (poset.nodes[e.lower].triples, poset.nodes[e.upper].triples);
            assert!(lower.is_subset(upper));
            assert_eq!(upper.difference(lower).triples(), vec![e.triple]);
        }
        assert_eq!(cover_diff_report(&poset).len(), poset.edges.len());
    }
}

#[test]
fn triple_sets_identify_classes() {
    for n in 3..=5 {
        let mut seen = BTreeSet::new();
        for class in commutation_classes(&Permutation::longest(n), 1_000_000).unwrap() {
            let members = class.members.unwrap();
            let inv3 = inversion_triples(&members[0]).unwrap();
            assert!(members.iter().all(|w| inversion_triples(w).unwrap() == inv3));
            assert!(seen.insert(inv3.bits()), "two classes share {inv3}");
        }
    }
}

/// Neighbors by literal braid moves on every member of the class.
#[test]
fn class_neighbors_match_literal_moves() {
    for n in 3..=5 {
        for class in commutation_classes(&Permutation::longest(n), 1_000_000).unwrap() {
            let members = class.members.unwrap();
            let literal: BTreeSet<ReducedWord> = members
                .iter()
                .flat_map(yang_baxter_neighbors)
                .map(|(_, w)| canonical(&w))
                .collect();
            let heap_side: BTreeSet<ReducedWord> = class_neighbors(&members[0]).into_iter().collect();
            assert_eq!(heap_side, literal, "{}", class.representative);
            assert_eq!(canonical(&members[0]), class.representative);
        }
    }
}

#[test]
fn six_strand_count() {
    let poset = enumerate_bruhat(6, 10_000, Execution::Parallel).unwrap();
    assert_eq!(poset.nodes.len(), 908);
    assert!(felsner_weil_check(&poset));
}
