//! Every constructive factorization that applies to a permutation, checked
//! against the BFS distance.
//!
//!     cargo run --release --example factor -- "8 7 6 5 4 3 2 1" 3

use permband::cayley::{distance, DistanceOptions};
use permband::factorize::{
    adjacent_sort, auto_factor, bfs_factor, factor_by_cycle_classes, recursive_factor_with, unrestricted_factor,
    verify, Factorization, RecursionRule,
};
use permband::perm::Permutation;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let p = Permutation::parse(args.first().map_or("8 7 6 5 4 3 2 1", String::as_str), None)?;
    let m: usize = args.get(1).map_or(Ok(3), |s| s.parse())?;
    let n = p.n();

    let mut runs: Vec<Factorization> = vec![auto_factor(&p, m)?];
    if m == 1 {
        runs.push(adjacent_sort(&p));
    }
    if m + 1 == n {
        runs.push(unrestricted_factor(&p));
    }
    if let Ok(f) = factor_by_cycle_classes(&p, m) {
        runs.push(f);
    }
    for rule in [RecursionRule::MoveLargest, RecursionRule::MoveEnds] {
        if let Ok(f) = recursive_factor_with(&p, m, rule) {
            runs.push(f);
        }
    }
    runs.push(bfs_factor(&p, m, &DistanceOptions::default())?);

    let d = distance(&p, m)?;
    println!("target {p}, m = {m}, distance {d}");
    for f in &runs {
        let status = match verify(f) {
            Ok(()) => "ok".to_string(),
            Err(v) => v.to_string(),
        };
        println!("{:<16} {:>3} (+{}) {status}", f.method.tag(), f.len(), f.len() - d);
    }
    Ok(())
}
