//! Multiple points of the eight branch lines in each catalogued position,
//! with the characters of the exceptional curves and the canonical class.

use abelcover::catalog::{Octet, OCTET_CHARACTERS};
use abelcover::cover::{canonical_class, BlowUp, CoverSpec};
use abelcover::geometry::{intersect, max_multiplicity, multiple_points, Q};
use abelcover::groups::{GroupElement, GroupType};

fn main() {
    let group = GroupType::new(vec![2, 2, 2, 2]).unwrap();
    let alphas: Vec<GroupElement> = OCTET_CHARACTERS
        .iter()
        .map(|a| GroupElement(a.to_vec()))
        .collect();
    for octet in Octet::ALL {
        let arr = octet.arrangement();
        let high: Vec<_> = multiple_points(&arr)
            .into_iter()
            .filter(|p| p.multiplicity >= 3)
            .collect();
        let (spec, curves) =
            CoverSpec::from_arrangement(group.clone(), &arr, &alphas, &BlowUp::Auto).unwrap();
        let k = canonical_class(&spec).unwrap();
        let k2 = intersect(&k, &k).unwrap() * Q::from_integer(16.into());
        println!("{octet:?}: max multiplicity {}", max_multiplicity(&arr));
        for (p, c) in high.iter().zip(&curves) {
            println!(
                "  point {} on {} lines, character {}",
                p.point, p.multiplicity, c.character
            );
        }
        println!("  K = pullback of {k}, K^2 = {k2}");
    }
}
