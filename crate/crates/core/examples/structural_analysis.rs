//! Graph invariants used by the PoC formulas: connectivity, the component
//! counts d and δ, block structure, bipolar orderings and 2-linkedness.

use poc_core::graph::{
    bipolar_ordering, block_decomposition, delta_pair, is_two_linked, max_components_one_removal,
    max_components_two_removals, vertex_connectivity, Graph,
};
use poc_core::harness::{graph_report, GraphSpec};

fn describe(name: &str, g: &Graph) {
    let blocks = block_decomposition(g);
    println!(
        "{name}: {} vertices, {} edges",
        g.vertex_count(),
        g.edge_count()
    );
    println!("  connectivity {}", vertex_connectivity(g));
    println!(
        "  d = {}, d2 = {}",
        max_components_one_removal(g),
        max_components_two_removals(g).unwrap()
    );
    println!(
        "  {} blocks, cut vertices {:?}",
        blocks.blocks.len(),
        blocks.cut_vertex_list()
    );
    match bipolar_ordering(g) {
        Some(order) => println!("  bipolar ordering {order:?}"),
        None => println!("  no bipolar ordering"),
    }
    if g.vertex_count() <= 10 {
        println!("  2-linked: {}", is_two_linked(g));
    }
    if g.is_tree() {
        if let Ok(p) = delta_pair(g) {
            println!(
                "  tree: degrees {} and {} at {} and {} ({:?}), delta {}",
                p.max_degree,
                p.second_degree,
                p.first,
                p.second,
                p.case,
                p.delta()
            );
        }
    }
}

fn main() {
    for spec in [
        "path:6",
        "cycle:6",
        "star:6",
        "spider:3,2",
        "net",
        "l5",
        "bipartite:2,3",
        "cmm:6,2",
    ] {
        let g: GraphSpec = spec.parse().unwrap();
        describe(spec, &g.build().unwrap());
    }

    // the same information as one serializable record
    let r = graph_report(&Graph::spider(3, 2).unwrap(), 3);
    println!("{}", serde_json::to_string_pretty(&r).unwrap());
}
