//! Reading and writing instance files, and what parse errors look like.

use poc_core::adversarial::gen_egal_cycle;
use poc_core::harness::{instance_to_json, parse_instance};

fn main() {
    let inst = gen_egal_cycle(6, 2).unwrap().instance;
    let text = instance_to_json(&inst);
    print!("{text}");
    assert_eq!(parse_instance(&text).unwrap(), inst);

    let bad = [
        "{ \"m\": 3, \"n\": 1,\n  \"edges\": [[0, 1], [1, 2]]\n  \"utilities\": [] }",
        r#"{"m": 2, "n": 1, "edges": [[0, 1]], "utilities": [["1/2", "x"]], "normalized": false}"#,
        r#"{"m": 3, "n": 1, "edges": [[0, 1]], "utilities": [["1", "0", "0"]], "normalized": true}"#,
        r#"{"m": 2, "n": 1, "edges": [[0, 1]], "utilities": [["1/3", "1/3"]], "normalized": true}"#,
    ];
    for b in bad {
        println!("error: {}", parse_instance(b).unwrap_err());
    }
}
