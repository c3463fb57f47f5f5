//! List the abelian groups of an order with their exponent and, for
//! elementary abelian groups, the size of the automorphism group.
//!
//! ```text
//! cargo run --example groups -- 16
//! ```

use abelcover::groups::{automorphisms, enumerate_groups};

fn main() {
    let order: u64 = std::env::args()
        .nth(1)
        .map(|a| a.parse().expect("order is a positive integer"))
        .unwrap_or(16);
    for g in enumerate_groups(order) {
        let aut = match automorphisms(&g) {
            Ok(a) => format!("|Aut| = {}", a.len()),
            Err(_) => "not elementary".to_string(),
        };
        println!(
            "{g:<12} rank {} exponent {:<4} {aut}",
            g.rank(),
            g.exponent()
        );
    }
}
