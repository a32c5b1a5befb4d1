//! Construct every indecomposable representation of a quiver, inspect the
//! Hom/Ext tables and decompose a direct sum back into its summands.
//!
//! ```bash
//! cargo run --example indecomposables
//! ```

use quiverfan::graph::{alternating_orientation, TreeGraph};
use quiverfan::rep::{ext_dim, hom_dim, IndecTable};

fn main() -> quiverfan::Result<()> {
    let graph = TreeGraph::path(3);
    let (quiver, _, _) = alternating_orientation(&graph);
    println!("quiver: {quiver}\n");

    let table = IndecTable::new(&quiver)?;
    println!("indecomposables (one per positive root):");
    for (root, rep) in table.roots().iter().zip(table.reps()) {
        println!(
            "  {:<10} dims {:?}, End = {}, self-Ext = {}",
            root.label(),
            rep.dims().values(),
            hom_dim(rep, rep)?,
            ext_dim(rep, rep)?,
        );
    }

    println!("\nhom dimensions (rows map into columns):");
    print!("{:>10}", "");
    for root in table.roots() {
        print!("{:>9}", root.label());
    }
    println!();
    for (s, root) in table.roots().iter().enumerate() {
        print!("{:>10}", root.label());
        for t in 0..table.roots().len() {
            print!("{:>9}", table.hom(s, t));
        }
        println!();
    }

    // Krull–Schmidt: a blockwise direct sum decomposes uniquely.
    let m = table.reps()[0]
        .direct_sum(&table.reps()[3])?
        .direct_sum(&table.reps()[3])?;
    println!(
        "\ndecomposing a rank-{} module of dims {:?}:",
        m.total_dim(),
        m.dims().values()
    );
    for (root, mult) in table.decompose(&m)? {
        println!("  {} with multiplicity {}", root.label(), mult);
    }
    Ok(())
}
