//! Classify every order in a range and print the solvability table.
//!
//! ```text
//! cargo run --release --example sweep -- 2 36
//! ```

use abelcover::solver::{sweep, ClassifyOptions};

fn main() {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("orders are positive integers"))
        .collect();
    let (lo, hi) = match args.as_slice() {
        [] => (2, 36),
        [d] => (*d, *d),
        [lo, hi, ..] => (*lo, *hi),
    };
    match sweep(lo, hi, &ClassifyOptions::default()) {
        Ok(table) => println!("{table}"),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}
