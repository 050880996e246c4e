//! Seeded random search for high PoC instances within a graph class.

use poc_core::adversarial::GraphClass;
use poc_core::harness::{search, SearchConfig};
use poc_core::oracle::SearchOptions;
use poc_core::rational::format_rational as f;

fn main() {
    for class in [GraphClass::Star, GraphClass::Tree, GraphClass::Cycle] {
        let cfg = SearchConfig {
            class,
            min_m: 6,
            max_m: 6,
            agents: vec![2, 3],
            samples: 300,
            seed: 11,
        };
        let out = search(&cfg, SearchOptions::default()).unwrap();
        println!("{class}: {} samples", out.samples);
        for (kind, k) in [("egal", &out.egal), ("util", &out.util)] {
            if let Some(w) = &k.worst {
                println!(
                    "  {kind} worst {} at sample {} (n={}, table {} {}), violations {}",
                    f(&w.ratio),
                    w.index,
                    w.instance.agent_count(),
                    f(&w.formula.value),
                    w.formula.tag,
                    k.violations.len()
                );
            }
        }
    }
}
