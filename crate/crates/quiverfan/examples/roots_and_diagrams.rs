//! Build Dynkin diagrams, enumerate their root systems and evaluate the
//! Euler form of an orientation.
//!
//! ```bash
//! cargo run --example roots_and_diagrams
//! ```

use quiverfan::graph::{
    almost_positive_roots, dynkin_graph, enumerate_orientations, euler_form, positive_roots,
    DynkinType, Quiver,
};

fn main() -> quiverfan::Result<()> {
    for (ty, rank) in [(DynkinType::A, 3), (DynkinType::D, 4), (DynkinType::E, 6)] {
        let diagram = dynkin_graph(ty, rank)?;
        let comp = &diagram.components[0];
        println!(
            "{}: edges {:?}, exponents {:?}, coxeter number {}",
            diagram.label(),
            diagram.graph().edges(),
            comp.exponents,
            comp.coxeter_number
        );
        let roots = positive_roots(diagram.graph())?;
        println!(
            "  {} positive roots; highest root {}",
            roots.len(),
            roots.last().unwrap().label()
        );
    }

    // The Euler form depends on the orientation through the arrow term.
    let a3 = dynkin_graph(DynkinType::A, 3)?;
    let almost = almost_positive_roots(a3.graph())?;
    println!("\nA3 has {} almost positive roots:", almost.len());
    for root in &almost {
        print!(" {}", root.label());
    }
    println!();

    for q in enumerate_orientations(a3.graph()).iter().take(2) {
        let theta = &almost[5]; // the highest root a1+a2+a3
        let alpha2 = &almost[1];
        println!(
            "over {q}: <{}, {}> = {}, <{}, {}> = {}",
            theta.label(),
            alpha2.label(),
            euler_form(q, theta, alpha2)?,
            alpha2.label(),
            theta.label(),
            euler_form(q, alpha2, theta)?,
        );
    }

    // Orientations round-trip through the JSON quiver format.
    let q = Quiver::from_orientation_mask(a3.graph(), 1);
    println!("\nquiver {q} as JSON:\n{}", q.to_json_string());
    Ok(())
}
