//! Property tests for the structural invariants that hold on the whole
//! lattice (not just on roots), plus trace-rewriting invariance.

use proptest::prelude::*;

use quiverfan::decorated::{sigma, tau, Sign};
use quiverfan::graph::{
    alternating_orientation, dynkin_graph, euler_form, weyl_reflect, DynkinType, Quiver,
    RootVector, TreeGraph,
};
use quiverfan::groupoid::{apply_word, normal_form, Word};

fn small_graph(choice: u8) -> TreeGraph {
    match choice % 3 {
        0 => TreeGraph::path(3),
        1 => TreeGraph::path(4),
        _ => dynkin_graph(DynkinType::D, 4).unwrap().graph().clone(),
    }
}

fn vector(graph: &TreeGraph, vals: &[i64]) -> RootVector {
    let values: Vec<i64> = vals.iter().take(graph.vertices().len()).copied().collect();
    RootVector::from_values(graph.vertices(), &values).unwrap()
}

proptest! {
    #[test]
    fn sigma_and_weyl_are_involutions(
        choice in 0u8..3,
        vals in proptest::collection::vec(-10i64..=10, 4),
        vertex_pick in 0usize..4,
    ) {
        let graph = small_graph(choice);
        let gamma = vector(&graph, &vals);
        let i = graph.vertices()[vertex_pick % graph.vertices().len()];
        let s2 = sigma(&graph, i, &sigma(&graph, i, &gamma).unwrap()).unwrap();
        prop_assert_eq!(&s2, &gamma);
        let w2 = weyl_reflect(&graph, i, &weyl_reflect(&graph, i, &gamma).unwrap()).unwrap();
        prop_assert_eq!(&w2, &gamma);
    }

    #[test]
    fn tau_is_an_involution(
        choice in 0u8..3,
        vals in proptest::collection::vec(-10i64..=10, 4),
        plus in proptest::bool::ANY,
    ) {
        let graph = small_graph(choice);
        let gamma = vector(&graph, &vals);
        let sign = if plus { Sign::Plus } else { Sign::Minus };
        let t2 = tau(&graph, sign, &tau(&graph, sign, &gamma).unwrap()).unwrap();
        prop_assert_eq!(t2, gamma);
    }

    #[test]
    fn euler_form_is_bilinear(
        choice in 0u8..3,
        a in proptest::collection::vec(-6i64..=6, 4),
        b in proptest::collection::vec(-6i64..=6, 4),
        c in proptest::collection::vec(-6i64..=6, 4),
        mask in 0u64..8,
    ) {
        let graph = small_graph(choice);
        let q = Quiver::from_orientation_mask(&graph, mask);
        let (a, b, c) = (vector(&graph, &a), vector(&graph, &b), vector(&graph, &c));
        let lhs = euler_form(&q, &a.add(&b), &c).unwrap();
        prop_assert_eq!(lhs, euler_form(&q, &a, &c).unwrap() + euler_form(&q, &b, &c).unwrap());
        let rhs = euler_form(&q, &c, &a.add(&b)).unwrap();
        prop_assert_eq!(rhs, euler_form(&q, &c, &a).unwrap() + euler_form(&q, &c, &b).unwrap());
    }

    /// Swapping two adjacent commuting letters never changes the normal
    /// form or the end orientation.
    #[test]
    fn normal_form_is_invariant_under_commutation_swaps(
        choice in 0u8..3,
        picks in proptest::collection::vec(0usize..4, 0..10),
        swap_at in 0usize..10,
    ) {
        let graph = small_graph(choice);
        let start = alternating_orientation(&graph).0;

        // Greedily realize the picks as an applicable word.
        let mut letters = Vec::new();
        let mut quiver = start.clone();
        for pick in picks {
            let admissible: Vec<usize> = graph
                .vertices()
                .iter()
                .copied()
                .filter(|&v| quiver.is_admissible(v))
                .collect();
            if admissible.is_empty() { break; }
            let v = admissible[pick % admissible.len()];
            letters.push(v);
            quiver = quiver.reflect(v).unwrap();
        }
        let word = Word::sigmas(start.clone(), &letters);
        let nf = normal_form(&word).unwrap();
        let end = apply_word(&word).unwrap();

        if letters.len() >= 2 {
            let at = swap_at % (letters.len() - 1);
            let (x, y) = (letters[at], letters[at + 1]);
            if x != y && !graph.are_adjacent(x, y) {
                let mut swapped = letters.clone();
                swapped.swap(at, at + 1);
                let word2 = Word::sigmas(start, &swapped);
                // Commuting letters at admissible positions stay applicable.
                prop_assert_eq!(apply_word(&word2).unwrap(), end);
                prop_assert_eq!(normal_form(&word2).unwrap(), nf);
            }
        }
    }

    /// Appending the same letter twice is invisible to the normal form.
    #[test]
    fn squares_cancel_in_normal_form(
        choice in 0u8..3,
        picks in proptest::collection::vec(0usize..4, 0..8),
        final_pick in 0usize..4,
    ) {
        let graph = small_graph(choice);
        let start = alternating_orientation(&graph).0;
        let mut letters = Vec::new();
        let mut quiver = start.clone();
        for pick in picks {
            let admissible: Vec<usize> = graph
                .vertices()
                .iter()
                .copied()
                .filter(|&v| quiver.is_admissible(v))
                .collect();
            if admissible.is_empty() { break; }
            let v = admissible[pick % admissible.len()];
            letters.push(v);
            quiver = quiver.reflect(v).unwrap();
        }
        let admissible: Vec<usize> = graph
            .vertices()
            .iter()
            .copied()
            .filter(|&v| quiver.is_admissible(v))
            .collect();
        prop_assume!(!admissible.is_empty());
        let v = admissible[final_pick % admissible.len()];

        let base = Word::sigmas(start.clone(), &letters);
        let mut doubled = letters.clone();
        doubled.push(v);
        doubled.push(v);
        let extended = Word::sigmas(start, &doubled);
        prop_assert_eq!(normal_form(&extended).unwrap(), normal_form(&base).unwrap());
        prop_assert_eq!(apply_word(&extended).unwrap(), apply_word(&base).unwrap());
    }
}
