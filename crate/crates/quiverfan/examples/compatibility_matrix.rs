//! The compatibility degree on almost positive roots, and how it changes
//! (it does not, up to relabeling) between orientations.
//!
//! ```bash
//! cargo run --example compatibility_matrix
//! ```

use quiverfan::clusters::ClusterContext;
use quiverfan::graph::{alternating_orientation, Quiver, RootVector, TreeGraph};

fn print_matrix(ctx: &ClusterContext) {
    print!("{:>10}", "");
    for root in ctx.roots() {
        print!("{:>9}", root.label());
    }
    println!();
    for (a, root) in ctx.roots().iter().enumerate() {
        print!("{:>10}", root.label());
        for b in 0..ctx.roots().len() {
            print!("{:>9}", ctx.degree_by_index(a, b));
        }
        println!();
    }
}

fn main() -> quiverfan::Result<()> {
    let graph = TreeGraph::path(3);
    let alternating = alternating_orientation(&graph).0;
    let equioriented = Quiver::from_orientation_mask(&graph, 0);

    let ctx0 = ClusterContext::new(&alternating)?;
    println!("compatibility degrees over {alternating}:");
    print_matrix(&ctx0);

    let ctx1 = ClusterContext::new(&equioriented)?;
    println!("\ncompatibility degrees over {equioriented}:");
    print_matrix(&ctx1);

    // The two matrices differ exactly where the positive complexes of the
    // two orientations differ.
    let rv = |vals: &[i64]| RootVector::from_values(&[1, 2, 3], vals).unwrap();
    println!(
        "\n(a1+a2 || a2+a3): {} vs {}",
        ctx0.degree(&rv(&[1, 1, 0]), &rv(&[0, 1, 1]))?,
        ctx1.degree(&rv(&[1, 1, 0]), &rv(&[0, 1, 1]))?,
    );
    println!(
        "(a2 || a1+a2+a3): {} vs {}",
        ctx0.degree(&rv(&[0, 1, 0]), &rv(&[1, 1, 1]))?,
        ctx1.degree(&rv(&[0, 1, 0]), &rv(&[1, 1, 1]))?,
    );
    Ok(())
}
