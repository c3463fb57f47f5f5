//! Re-derive every headline claim; pass claim ids to run a subset.
//!
//! ```text
//! cargo run --release --example verify -- order16 campedelli
//! ```

use abelcover::verify::{verify, VerifyOptions};

fn main() {
    let only: Vec<String> = std::env::args().skip(1).collect();
    let opts = VerifyOptions {
        only: (!only.is_empty()).then_some(only),
        ..Default::default()
    };
    let report = verify(&opts).unwrap_or_else(|e| {
        eprintln!("error: {e}");
        std::process::exit(2);
    });
    println!("{report}");
    std::process::exit(if report.all_passed { 0 } else { 1 });
}
