//! Fold raw solutions into automorphism orbits, both with the fast
//! elementary-abelian action and with brute-force automorphisms of any group.

use abelcover::groups::GroupType;
use abelcover::solver::{classify_order, dedup_exhaustive, ClassifyOptions};

fn main() {
    let c = classify_order(16, &ClassifyOptions::default()).expect("search completes");
    let z2_4 = GroupType::new(vec![2, 2, 2, 2]).unwrap();
    let gc = c.get(&z2_4).unwrap();
    let orbits = gc.orbits.as_ref().unwrap();
    println!(
        "order 16: {} raw solutions, {} orbit(s)",
        gc.raw_count,
        orbits.len()
    );
    let x: Vec<String> = orbits[0]
        .x
        .iter()
        .map(|(a, d)| format!("x{a}={d}"))
        .collect();
    println!("  representative g'={} {}", orbits[0].gprime, x.join(" "));

    // Z_2 x Z_4 is not elementary; the exhaustive variant still handles it.
    let opts = ClassifyOptions {
        dedup: false,
        ..Default::default()
    };
    let c8 = classify_order(8, &opts).expect("search completes");
    for gc in &c8.groups {
        let mut sols = gc.solutions.clone();
        let orbits = dedup_exhaustive(&gc.group, &mut sols).expect("order is small");
        println!(
            "{}: {} raw, {} orbit(s)",
            gc.group,
            gc.raw_count,
            orbits.len()
        );
    }
}
