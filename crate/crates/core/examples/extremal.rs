//! The permutations attaining the diameter, grouped by shape, compared
//! with the BFS farthest set.
//!
//!     cargo run --release --example extremal -- 9 4

use std::collections::BTreeMap;

use permband::cayley::BfsOptions;
use permband::extremal::{audit_classification, enumerate_extremal, is_extremal};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().map_or(Ok(7), |s| s.parse())?;
    let m: usize = args.get(1).map_or(Ok(4), |s| s.parse())?;

    let mut by_shape = BTreeMap::new();
    for p in enumerate_extremal(n, m)? {
        by_shape.entry(is_extremal(&p, m)?.shape).or_insert_with(Vec::new).push(p);
    }
    for (shape, list) in &by_shape {
        println!("{shape}: {}", list.len());
        for p in list.iter().take(5) {
            println!("    {p}   {}", p.to_cycle_string());
        }
    }

    let audit = audit_classification(n, m, &BfsOptions::default())?;
    println!(
        "BFS: delta {} with {} farthest; enumerated {}; consistent: {}",
        audit.delta,
        audit.farthest_count,
        audit.enumerated_count,
        audit.is_consistent()
    );
    Ok(())
}
