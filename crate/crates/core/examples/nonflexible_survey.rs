//! Counts middle Bol loops and non-flexible ones for orders 1..=10 and writes
//! `data/nonflexible_middle_bol.json`. Orders 9 and 10 take minutes.
//!
//!     cargo run --release --example nonflexible_survey [max_order]

use std::collections::BTreeMap;
use std::time::Instant;

use loopkit::{io, properties, search};
use serde_json::json;

fn main() {
    let max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10);
    let mut orders = BTreeMap::new();
    for n in 1..=max {
        let t = Instant::now();
        let (loops, complete, method) = search::corpus_class("MIDDLE_BOL", n).expect("search");
        let nonflex: Vec<_> = loops.iter().filter(|l| !properties::check(l, "FLEXIBLE").unwrap().holds).collect();
        eprintln!("n={n}: {} middle Bol, {} non-flexible, complete {complete} ({:.1?})", loops.len(), nonflex.len(), t.elapsed());
        orders.insert(
            n.to_string(),
            json!({
                "middle_bol": loops.len(),
                "non_flexible": nonflex.len(),
                "complete": complete,
                "method": method,
                "examples": nonflex.iter().map(|l| serde_json::from_str::<serde_json::Value>(&io::to_json(l)).unwrap()).collect::<Vec<_>>(),
            }),
        );
    }
    let doc = json!({
        "question": "non-flexible middle Bol loops of order <= 10",
        "orders": orders,
    });
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data/nonflexible_middle_bol.json");
    std::fs::write(&path, serde_json::to_string_pretty(&doc).unwrap() + "\n").unwrap();
    eprintln!("wrote {}", path.display());
}
