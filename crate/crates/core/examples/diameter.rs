//! Exact diameter of the width-m Cayley graph by BFS.
//!
//!     cargo run --release --example diameter -- 9 3
//!     cargo run --release --example diameter -- 10 2 --list

use permband::cayley::{bfs_diameter, BfsOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().map_or(Ok(8), |s| s.parse())?;
    let m: usize = args.get(1).map_or(Ok(2), |s| s.parse())?;
    let list = args.iter().any(|a| a == "--list");

    let report = bfs_diameter(n, m, &BfsOptions::default())?;
    println!("delta({n},{m}) = {}  [{} ms]", report.delta, report.wall_time_ms);
    for (level, count) in report.level_counts.iter().enumerate() {
        println!("  level {level:>3}: {count}");
    }
    println!("farthest: {}", report.farthest_count);
    if list {
        for p in report.farthest.iter().flatten() {
            println!("{p}");
        }
    }
    Ok(())
}
