//! Diameter bounds for degrees beyond exhaustive search.
//!
//!     cargo run --release --example bounds -- 16

use permband::extremal::delta_bounds;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n_max: usize = std::env::args().nth(1).map_or(Ok(12), |s| s.parse())?;
    for n in 11..=n_max.max(11) {
        for m in 1..n {
            let b = delta_bounds(n, m)?;
            if b.exact {
                println!("({n:>2},{m:>2})  {:>4}          {}", b.upper, b.upper_source);
            } else {
                println!("({n:>2},{m:>2})  {:>4} ..{:>4}  {} / {}", b.lower, b.upper, b.lower_source, b.upper_source);
            }
        }
    }
    Ok(())
}
