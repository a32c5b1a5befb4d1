//! Extended reflection functors on decorated representations: they swap
//! the simple at the reflecting vertex with its decoration, square to the
//! identity on isomorphism classes, and their trace on signed dimension
//! vectors is the piecewise-linear reflection.
//!
//! ```bash
//! cargo run --example reflection_functors
//! ```

use quiverfan::decorated::{decorated_of_root, e_dim, extended_reflect, sigma};
use quiverfan::graph::{almost_positive_roots, alternating_orientation, TreeGraph};

fn main() -> quiverfan::Result<()> {
    let graph = TreeGraph::path(3);
    let (quiver, sources, sinks) = alternating_orientation(&graph);
    println!("quiver: {quiver} (sources {sources:?}, sinks {sinks:?})\n");

    let roots = almost_positive_roots(&graph)?;
    let i = 1; // a source

    println!("Sigma_{i} on decorated indecomposables (tracked by sdim):");
    for alpha in &roots {
        let m = decorated_of_root(&quiver, alpha)?;
        let reflected = extended_reflect(&m, i)?;
        let predicted = sigma(&graph, i, alpha)?;
        assert_eq!(reflected.sdim(), predicted);
        println!(
            "  U_{:<10} -> U_{:<10}",
            alpha.label(),
            reflected.sdim().label()
        );
    }

    // Unlike the classical functor, nothing dies: double reflection is the
    // identity on isomorphism classes.
    let long = decorated_of_root(&quiver, roots.last().unwrap())?;
    let back = extended_reflect(&extended_reflect(&long, i)?, i)?;
    assert_eq!(back.iso_class()?, long.iso_class()?);
    println!("\nSigma_{i} squared fixes U_{}", long.sdim().label());

    // And the pairing dimension is invariant along the reflection.
    let a = decorated_of_root(&quiver, &roots[1])?;
    let b = decorated_of_root(&quiver, &roots[5])?;
    let before = e_dim(&a, &b)?;
    let after = e_dim(&extended_reflect(&a, i)?, &extended_reflect(&b, i)?)?;
    println!(
        "pairing of (U_{}, U_{}): {} before, {} after reflecting",
        roots[1].label(),
        roots[5].label(),
        before,
        after
    );
    assert_eq!(before, after);
    Ok(())
}
