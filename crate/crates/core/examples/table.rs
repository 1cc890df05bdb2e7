//! Diameter grid through the command-line front end.
//!
//!     cargo run --release --example table -- 9

use permband::cli::execute;

fn main() {
    let n_max = std::env::args().nth(1).unwrap_or_else(|| "8".into());
    let out = execute(["permband", "table", "--n-max", &n_max]);
    print!("{}{}", out.stdout, out.stderr);
    std::process::exit(out.code);
}
