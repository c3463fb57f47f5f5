//! Invariants of the sixteen-sheeted cover and of the Campedelli quotient.

use abelcover::catalog::{campedelli, sixteen_sheeted, Octet};
use abelcover::cover::{canonical_test, invariants};

fn main() {
    for (name, file) in [
        ("degree 16", sixteen_sheeted(Octet::Generic)),
        ("Campedelli", campedelli()),
    ] {
        let (spec, _) = file.to_spec().expect("catalog specs are valid");
        let inv = invariants(&spec).expect("plane base");
        let verdict = canonical_test(&spec);
        println!(
            "{name}: p_g={} q={} chi={} K^2={} plurigenera={:?} canonical={}",
            inv.p_g, inv.q, inv.chi, inv.k_selfint, inv.plurigenera, verdict.is_canonical_pattern
        );
    }
}
