//! Draws a ladder for an assignment and traces it back.
//!
//!     cargo run --example amidakuji -- "3 2 4 5 1"

use permband::amidakuji::{synthesize, Ladder};
use permband::perm::Permutation;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "3 2 4 5 1".into());
    let p = Permutation::parse(&text, None)?;

    let ladder = synthesize(&p);
    println!("{} rungs on {} levels, {} inversions", ladder.rung_count(), ladder.levels.len(), p.inversion_count());
    print!("{}", ladder.render(3));

    let file = ladder.to_string();
    let reread: Ladder = file.parse()?;
    assert_eq!(reread.apply()?, p);
    print!("\n{file}");
    Ok(())
}
