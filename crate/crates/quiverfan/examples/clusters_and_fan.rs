//! Enumerate clusters, check purity/smoothness/completeness and export
//! the fan as JSON.
//!
//! ```bash
//! cargo run --example clusters_and_fan
//! ```

use quiverfan::clusters::{ClusterContext, DEFAULT_SEED};
use quiverfan::graph::{alternating_orientation, dynkin_graph, DynkinType};

fn main() -> quiverfan::Result<()> {
    let d4 = dynkin_graph(DynkinType::D, 4)?;
    let quiver = alternating_orientation(d4.graph()).0;
    let ctx = ClusterContext::new(&quiver)?;

    println!("quiver: {quiver}");
    println!(
        "{} almost positive roots, {} clusters, {} positive clusters",
        ctx.roots().len(),
        ctx.clusters().len(),
        ctx.positive_clusters()?.len()
    );

    println!("\nfirst clusters (as root labels):");
    for cluster in ctx.clusters().iter().take(5) {
        let labels: Vec<String> = ctx
            .cluster_roots(cluster)
            .iter()
            .map(|r| r.label())
            .collect();
        println!(
            "  {{{}}}  det {}",
            labels.join(", "),
            ctx.cluster_det(cluster)?
        );
    }

    let report = ctx.verify_fan(500, DEFAULT_SEED);
    println!(
        "\nfan check: purity {}, smoothness {}, completeness over {} samples {}",
        report.purity_ok, report.smooth_ok, report.samples, report.completeness_ok
    );

    let json = ctx.fan_json();
    println!(
        "\nfan export: rank {}, {} rays, {} maximal cones",
        json["rank"],
        json["roots"].as_array().unwrap().len(),
        json["clusters"].as_array().unwrap().len()
    );
    Ok(())
}
