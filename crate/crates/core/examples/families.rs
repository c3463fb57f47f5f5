//! The explicit low-degree families, each checked against the solver output.

use abelcover::catalog::families;
use abelcover::solver::{classify_order, ClassifyOptions};

fn main() {
    let opts = ClassifyOptions::default();
    for f in families() {
        let c = classify_order(f.degree, &opts).expect("search completes");
        let found = c
            .get(&f.group)
            .is_some_and(|gc| gc.solutions.iter().any(|r| r.x == f.data));
        println!(
            "{:>3} on {:<8} {}  [{}]",
            f.label,
            f.group.to_string(),
            f.equations,
            if found { "found" } else { "MISSING" }
        );
    }
}
