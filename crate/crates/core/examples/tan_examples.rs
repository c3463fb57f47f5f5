//! The quintic Z_5^2 example and the nine-line Z_3^2 triple covers with
//! n extra triple points, whose geometric genus drops by one per point.
//!
//! ```text
//! cargo run --release --example tan_examples
//! ```

use abelcover::catalog::{tan_quintic, tan_triple};
use abelcover::cover::invariants;
use abelcover::geometry::multiple_points;

fn main() {
    let (spec, _) = tan_quintic().to_spec().unwrap();
    let inv = invariants(&spec).unwrap();
    println!("Z_5^2 on five lines: chi={} K^2={}", inv.chi, inv.k_selfint);

    for n in 0..=3 {
        let file = tan_triple(n);
        let arr = file
            .arrangement
            .as_ref()
            .unwrap()
            .lines
            .to_arrangement()
            .unwrap();
        let points = multiple_points(&arr);
        let triples = points.iter().filter(|p| p.multiplicity == 3).count();
        let doubles = points.iter().filter(|p| p.multiplicity == 2).count();
        let (spec, _) = file.to_spec().unwrap();
        let inv = invariants(&spec).unwrap();
        println!(
            "n={n}: {triples} triple and {doubles} double points, p_g={} (8-n={})",
            inv.p_g,
            8 - n
        );
    }
}
