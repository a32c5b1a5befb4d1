//! Words in the reflection groupoid: applying them, normal forms, reduced
//! expressions and the classification of loops at the alternating
//! orientation.
//!
//! ```bash
//! cargo run --example groupoid_words
//! ```

use quiverfan::graph::{alternating_orientation, dynkin_graph, DynkinType, TreeGraph};
use quiverfan::groupoid::{
    apply_word, classify_loops, is_reduced, normal_form, word_action_on_roots, Letter, Word,
};

fn main() -> quiverfan::Result<()> {
    let graph = TreeGraph::path(3);
    let (gamma0, _, _) = alternating_orientation(&graph);
    println!("alternating quiver: {gamma0}\n");

    // Words apply left to right; duals commute with everything.
    let word = Word::new(
        gamma0.clone(),
        vec![
            Letter::Dual,
            Letter::Sigma(1),
            Letter::Dual,
            Letter::Sigma(1),
        ],
    );
    let nf = normal_form(&word)?;
    println!(
        "word [D, 1, D, 1] ends at {} and normalizes to parity {} with blocks {:?}",
        apply_word(&word)?,
        nf.dual_parity,
        nf.blocks
    );

    for letters in [vec![2, 1, 3, 2], vec![1, 3, 1], vec![1, 1]] {
        let word = Word::sigmas(gamma0.clone(), &letters);
        println!(
            "word {:?} reduced? {}  (normal form length {})",
            letters,
            is_reduced(&word)?,
            normal_form(&word)?.sigma_len()
        );
    }

    // The induced action on almost positive roots is a permutation.
    let word = Word::sigmas(gamma0.clone(), &[1, 3]);
    let action = word_action_on_roots(&word)?;
    println!("\naction of [1, 3] on the almost positive roots:");
    for (k, &image) in action.perm.iter().enumerate() {
        if k != image {
            println!(
                "  {} -> {}",
                action.roots[k].label(),
                action.roots[image].label()
            );
        }
    }

    // Every loop at the alternating quiver is an alternating power.
    for graph in [
        TreeGraph::path(3),
        dynkin_graph(DynkinType::D, 4)?.graph().clone(),
    ] {
        let report = classify_loops(&graph, 12)?;
        println!(
            "\n{} vertices, {} words up to length 12, loops by alternating exponent: {:?} ({} violations)",
            report.graph_vertices,
            report.total_words,
            report.loops_by_k,
            report.violations.len()
        );
    }
    Ok(())
}
