//! Expand lattice vectors as nonnegative combinations of compatible
//! roots: the expansion is unique, its negative part is the truncation of
//! the vector, and every vector has one (the fan is complete).
//!
//! ```bash
//! cargo run --example cluster_expansion
//! ```

use quiverfan::clusters::ClusterContext;
use quiverfan::graph::{alternating_orientation, RootVector, TreeGraph};

fn main() -> quiverfan::Result<()> {
    let graph = TreeGraph::path(3);
    let quiver = alternating_orientation(&graph).0;
    let ctx = ClusterContext::new(&quiver)?;
    println!("quiver: {quiver}\n");

    let vertices = graph.vertices().to_vec();
    for vals in [[0, 0, 0], [1, 2, 1], [-1, -1, -1], [2, -3, 1], [5, 1, -2]] {
        let gamma = RootVector::from_values(&vertices, &vals)?;
        let expansion = ctx.expand(&gamma)?;
        let terms: Vec<String> = expansion
            .terms
            .iter()
            .map(|(root, mult)| {
                if *mult == 1 {
                    root.label()
                } else {
                    format!("{}·({})", mult, root.label())
                }
            })
            .collect();
        println!(
            "{:<12} = {}   ({} cone(s) contain it)",
            gamma.label(),
            if terms.is_empty() {
                "0".into()
            } else {
                terms.join(" + ")
            },
            expansion.accepting_clusters
        );
    }
    Ok(())
}
