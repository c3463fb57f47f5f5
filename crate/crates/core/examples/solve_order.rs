//! Solve the canonical-cover system for every group of one order and print
//! each solution with its automorphism orbit.
//!
//! ```text
//! cargo run --release --example solve_order -- 9
//! ```

use abelcover::solver::{classify_order, ClassifyOptions};

fn main() {
    let order: u64 = std::env::args()
        .nth(1)
        .map(|a| a.parse().expect("order is a positive integer"))
        .unwrap_or(9);
    let c = classify_order(order, &ClassifyOptions::default()).expect("search completes");
    if !c.solvable() {
        println!("order {order}: INFEASIBLE");
    }
    for gc in &c.groups {
        let orbits = gc
            .orbits
            .as_ref()
            .map_or("n/a".to_string(), |o| o.len().to_string());
        println!("{}: {} solutions, orbits {orbits}", gc.group, gc.raw_count);
        for r in &gc.solutions {
            let x: Vec<String> = r.x.iter().map(|(a, d)| format!("x{a}={d}")).collect();
            println!("  g'={}  {}", r.gprime, x.join(" "));
        }
    }
}
