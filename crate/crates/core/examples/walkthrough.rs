//! Two agents on a triangle with a pendant vertex: the smallest instance
//! where insisting on connected bundles costs welfare.

use poc_core::harness::parse_instance;
use poc_core::instance::{egal_welfare, is_connected_allocation, util_welfare};
use poc_core::oracle::{welfare_report, SearchOptions};
use poc_core::rational::format_rational as f;

fn main() {
    let inst =
        parse_instance(include_str!("data/pendant_triangle.json")).expect("bundled file parses");
    println!("edges: {:?}", inst.graph().edges());
    for (i, row) in inst.utilities().iter().enumerate() {
        let row: Vec<String> = row.iter().map(f).collect();
        println!("agent {i}: {}", row.join(" "));
    }

    let r = welfare_report(&inst, SearchOptions::default()).expect("tiny instance");
    for (label, opt) in [
        ("egal, any bundles", &r.opt_egal),
        ("egal, connected", &r.best_connected_egal),
        ("util, any bundles", &r.opt_util),
        ("util, connected", &r.best_connected_util),
    ] {
        let bundles: Vec<Vec<usize>> = opt.witness.bundles.iter().map(|b| b.to_vec()).collect();
        let connected = is_connected_allocation(&inst, &opt.witness).unwrap();
        println!(
            "{label:<18} {:>5}  {bundles:?}  connected={connected}  (egal {}, util {})",
            f(&opt.value),
            f(&egal_welfare(&inst, &opt.witness)),
            f(&util_welfare(&inst, &opt.witness)),
        );
    }
    println!("egalitarian PoC {}", f(&r.egal_ratio));
    println!("utilitarian PoC {}", f(&r.util_ratio));
}
