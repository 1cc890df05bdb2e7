//! Exact distance of one permutation from the identity, with a shortest
//! word of bounded-width transpositions.
//!
//!     cargo run --release --example distance -- "6 7 4 5 2 3 1" 2
//!     cargo run --release --example distance -- "(1 8)(2 7)(3 6)(4 5)" 3

use permband::cayley::{distance, shortest_word, DistanceOptions};
use permband::perm::Permutation;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let text = args.first().map_or("6 7 4 5 2 3 1", String::as_str);
    let m: usize = args.get(1).map_or(Ok(2), |s| s.parse())?;

    let p = Permutation::parse(text, None)?;
    let cycles = p.cycles();
    println!("{p}  =  {}", p.to_cycle_string());
    println!("cycles {}, so at least {} swaps", cycles.r(), p.n() - cycles.r());

    let d = distance(&p, m)?;
    let word = shortest_word(&p, m, &DistanceOptions::default())?;
    let shown: String = word.iter().map(ToString::to_string).collect();
    println!("d(p, {m}) = {d}");
    println!("{shown}");
    Ok(())
}
