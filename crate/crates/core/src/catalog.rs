//! Known constructions, as ready-to-use cover spec files.
//!
//! Line arrangements use integer coefficients. "Generic" lines are tangent
//! lines `s²x − 2sy + z = 0` to the conic `y² = xz`, so no three of them are
//! concurrent.

use serde::Serialize;

use crate::cover::{BranchData, CoverSpecFile, SpecArrangement};
use crate::geometry::{ArrangementFile, LineArrangement, RationalValue};
use crate::groups::{GroupElement, GroupType};

fn el(r: &[u64]) -> GroupElement {
    GroupElement(r.to_vec())
}

fn group(f: &[u64]) -> GroupType {
    GroupType::new(f.to_vec()).expect("catalog groups are valid")
}

/// The tangent line to `y² = xz` at `(1 : s : s²)`.
pub fn tangent_line(s: i64) -> [i64; 3] {
    [s * s, -2 * s, 1]
}

fn arrangement_file(lines: &[[i64; 3]]) -> ArrangementFile {
    ArrangementFile {
        lines: lines.iter().map(|l| l.map(RationalValue::Int)).collect(),
    }
}

fn spec_file(f: &[u64], lines: &[[i64; 3]], alphas: &[[u64; 4]], width: usize) -> CoverSpecFile {
    CoverSpecFile {
        group: group(f),
        components: vec![],
        arrangement: Some(SpecArrangement {
            lines: arrangement_file(lines),
            alphas: alphas.iter().map(|a| a[..width].to_vec()).collect(),
        }),
        blow_up: None,
        points: None,
        canonical_degree_claim: None,
    }
}

/// Characters of the eight lines of the sixteen-sheeted cover: `ℓ_j` appears
/// in the equation for `z_i` exactly when coordinate `i` of its character is 1.
pub const OCTET_CHARACTERS: [[u64; 4]; 8] = [
    [1, 1, 1, 0],
    [0, 1, 1, 1],
    [1, 0, 1, 0],
    [1, 1, 0, 0],
    [0, 1, 0, 1],
    [0, 0, 1, 1],
    [1, 0, 0, 0],
    [0, 0, 0, 1],
];

/// Configurations of the eight branch lines of the sixteen-sheeted cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Octet {
    /// Only double points.
    Generic,
    /// `ℓ1, ℓ3, ℓ4` concurrent; the exceptional curve is branched.
    TriplePoint,
    /// `ℓ1, ℓ2, ℓ3, ℓ4` concurrent; the characters sum to a nonzero element.
    FourFoldBranched,
    /// `ℓ1, ℓ3, ℓ4, ℓ7` concurrent; the characters sum to zero.
    FourFoldUnbranched,
}

impl Octet {
    pub const ALL: [Octet; 4] = [
        Octet::Generic,
        Octet::TriplePoint,
        Octet::FourFoldBranched,
        Octet::FourFoldUnbranched,
    ];

    pub fn lines(self) -> [[i64; 3]; 8] {
        let mut lines: [[i64; 3]; 8] = std::array::from_fn(|i| tangent_line(i as i64 + 1));
        match self {
            Octet::Generic => {}
            // ℓ1 ∩ ℓ3 = (1:2:3)
            Octet::TriplePoint => lines[3] = [17, 8, -11],
            // ℓ1 ∩ ℓ2 = (2:3:4)
            Octet::FourFoldBranched => {
                lines[2] = [25, 6, -17];
                lines[3] = [-12, 4, 3];
            }
            Octet::FourFoldUnbranched => {
                lines[3] = [17, 8, -11];
                lines[6] = [-7, 2, 1];
            }
        }
        lines
    }

    /// Snake-case name used for bundled data files.
    pub fn file_stem(self) -> &'static str {
        match self {
            Octet::Generic => "generic",
            Octet::TriplePoint => "triple_point",
            Octet::FourFoldBranched => "fourfold_branched",
            Octet::FourFoldUnbranched => "fourfold_unbranched",
        }
    }

    pub fn arrangement(self) -> LineArrangement {
        LineArrangement::from_ints(&self.lines()).expect("catalog lines are distinct")
    }
}

/// The sixteen-sheeted `Z_2^4` cover branched on eight lines, with every
/// point of multiplicity at least three blown up.
pub fn sixteen_sheeted(octet: Octet) -> CoverSpecFile {
    let mut f = spec_file(&[2, 2, 2, 2], &octet.lines(), &OCTET_CHARACTERS, 4);
    f.canonical_degree_claim = Some(16);
    f
}

/// The `Z_2^3` cover given by the first three of the four equations, on seven
/// generic lines: a Campedelli surface.
pub fn campedelli() -> CoverSpecFile {
    let lines: Vec<[i64; 3]> = (1..=7).map(tangent_line).collect();
    spec_file(&[2, 2, 2], &lines, &OCTET_CHARACTERS[..7], 3)
}

/// The 25-sheeted `Z_5^2` cover branched on five generic lines with
/// characters `(1,1), (1,2), (1,3), (1,4), (1,0)`.
pub fn tan_quintic() -> CoverSpecFile {
    let lines: Vec<[i64; 3]> = (1..=5).map(tangent_line).collect();
    let alphas: Vec<[u64; 4]> = [1, 2, 3, 4, 0].map(|b| [1, b, 0, 0]).to_vec();
    spec_file(&[5, 5], &lines, &alphas, 2)
}

/// Nine lines in three pencils through `(1:0:0)`, `(0:1:0)`, `(0:0:1)`,
/// with `n ∈ 0..=3` further triple points, for the `Z_3^2` cover whose pencils
/// carry the characters `(1,1)`, `(1,2)`, `(1,0)`.
///
/// The pencils are `y = sz` (`s = 1, 2, 3`), `x = tz` (`t = 5, 7, 11`) and
/// `y = ux`. A slope `u = s/t` adds the triple point `(t : s : 1)`; the first
/// `n` slopes are `1/5, 2/7, 3/11` and the rest `13, 17, 19`. All triple
/// points are blown up; every exceptional curve is unbranched, so the
/// arrangement has `n + 3` triple points and `27 − 3n` double points.
pub fn tan_triple(n: usize) -> CoverSpecFile {
    assert!(n <= 3, "at most three extra triple points");
    let special = [[-1, 5, 0], [-2, 7, 0], [-3, 11, 0]];
    let plain = [[-13, 1, 0], [-17, 1, 0], [-19, 1, 0]];
    let mut lines: Vec<[i64; 3]> = vec![
        [0, 1, -1],
        [0, 1, -2],
        [0, 1, -3],
        [1, 0, -5],
        [1, 0, -7],
        [1, 0, -11],
    ];
    lines.extend(&special[..n]);
    lines.extend(&plain[..3 - n]);
    let alphas: Vec<[u64; 4]> = [[1, 1], [1, 2], [1, 0]]
        .iter()
        .flat_map(|&[a, b]| [[a, b, 0, 0]; 3])
        .collect();
    spec_file(&[3, 3], &lines, &alphas, 2)
}

/// One explicit family of canonical covers of the plane in low degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Family {
    pub degree: u64,
    pub label: &'static str,
    /// The defining equations; `a_i` are conics, `b_i` quartics, `c_i`
    /// sextics, `h` an octic and `ℓ_i` lines.
    pub equations: &'static str,
    pub group: GroupType,
    pub data: BranchData,
}

fn family(
    degree: u64,
    label: &'static str,
    equations: &'static str,
    f: &[u64],
    data: &[(&[u64], u64)],
) -> Family {
    let g = group(f);
    let data = BranchData::new(&g, data.iter().map(|(a, d)| (el(a), *d))).expect("valid data");
    Family {
        degree,
        label,
        equations,
        group: g,
        data,
    }
}

/// The defining-equation families for canonical degrees 2, 3, 4, 6, 8, 9 and
/// 16, converted to branch data.
///
/// Two degree-8 families (`8a`, on pairs of lines, and `8b`, on conics) give
/// the same branch degrees and so the same point of the classification.
/// The degree-6 family is written over `Z_2 ⊕ Z_3 ≅ Z_6` via `(a, b) ↦ 3a + 2b`.
pub fn families() -> Vec<Family> {
    let sixteen: Vec<(&[u64], u64)> = OCTET_CHARACTERS.iter().map(|a| (&a[..], 1)).collect();
    vec![
        family(2, "2", "z^2 = h", &[2], &[(&[1], 8)]),
        family(3, "3a", "z^3 = c1^2", &[3], &[(&[2], 6)]),
        family(3, "3b", "z^3 = c2", &[3], &[(&[1], 6)]),
        family(4, "4a", "z^4 = a1^2 b2^3", &[4], &[(&[2], 2), (&[3], 4)]),
        family(
            4,
            "4b",
            "z1^2 = b1, z2^2 = b2",
            &[2, 2],
            &[(&[1, 0], 4), (&[0, 1], 4)],
        ),
        family(
            6,
            "6",
            "z1^2 = a1 a2, z2^3 = a2 a3^2",
            &[6],
            &[(&[3], 2), (&[5], 2), (&[4], 2)],
        ),
        family(
            8,
            "8a",
            "z1^2 = l1 l2 l7 l8, z2^2 = l3 l4 l7 l8, z3^2 = l5 l6 l7 l8",
            &[2, 2, 2],
            &[
                (&[1, 0, 0], 2),
                (&[0, 1, 0], 2),
                (&[0, 0, 1], 2),
                (&[1, 1, 1], 2),
            ],
        ),
        family(
            8,
            "8b",
            "z1^2 = a1 a4, z2^2 = a2 a4, z3^2 = a3 a4",
            &[2, 2, 2],
            &[
                (&[1, 0, 0], 2),
                (&[0, 1, 0], 2),
                (&[0, 0, 1], 2),
                (&[1, 1, 1], 2),
            ],
        ),
        family(
            8,
            "8c",
            "z1^2 = a1 a2, z2^4 = a2^3 a3",
            &[2, 4],
            &[(&[1, 0], 2), (&[1, 3], 2), (&[0, 1], 2)],
        ),
        family(
            9,
            "9",
            "z1^3 = a1 a2^2, z2^3 = a1 a2 a3",
            &[3, 3],
            &[(&[1, 1], 2), (&[2, 1], 2), (&[0, 1], 2)],
        ),
        family(
            16,
            "16",
            "z1^2 = l1 l3 l4 l7, z2^2 = l1 l2 l4 l5, z3^2 = l1 l2 l3 l6, z4^2 = l2 l5 l6 l8",
            &[2, 2, 2, 2],
            &sixteen,
        ),
    ]
}

/// The four order-16 solutions written out explicitly: for each distinguished
/// element `g′`, the characters `α` with `x_α = 1` (all other degrees vanish).
pub fn order16_solution_sets() -> Vec<(GroupElement, Vec<GroupElement>)> {
    let sets: [([u64; 4], [[u64; 4]; 8]); 4] = [
        (
            [1, 0, 0, 0],
            [
                [1, 1, 0, 1],
                [1, 1, 1, 0],
                [1, 0, 1, 1],
                [1, 0, 1, 0],
                [1, 0, 0, 1],
                [1, 0, 0, 0],
                [1, 1, 1, 1],
                [1, 1, 0, 0],
            ],
        ),
        (
            [1, 1, 0, 0],
            [
                [1, 0, 0, 0],
                [0, 1, 0, 0],
                [1, 0, 1, 0],
                [0, 1, 1, 0],
                [1, 0, 0, 1],
                [0, 1, 0, 1],
                [1, 0, 1, 1],
                [0, 1, 1, 1],
            ],
        ),
        (
            [1, 1, 1, 0],
            [
                [1, 0, 0, 0],
                [0, 1, 0, 0],
                [0, 0, 1, 0],
                [1, 1, 1, 0],
                [1, 0, 0, 1],
                [0, 1, 0, 1],
                [0, 0, 1, 1],
                [1, 1, 1, 1],
            ],
        ),
        (
            [1, 1, 1, 1],
            [
                [0, 1, 1, 1],
                [1, 1, 0, 1],
                [1, 1, 1, 0],
                [1, 0, 1, 1],
                [0, 1, 0, 0],
                [1, 0, 0, 0],
                [0, 0, 1, 0],
                [0, 0, 0, 1],
            ],
        ),
    ];
    sets.iter()
        .map(|(g, alphas)| (el(g), alphas.iter().map(|a| el(a)).collect()))
        .collect()
}

/// Every catalog example as `(file name, JSON)`, in the form bundled under
/// `data/`: cover spec files for `invariants` and arrangement files for
/// `arrangement`.
pub fn data_files() -> Vec<(String, serde_json::Value)> {
    let mut out = Vec::new();
    for o in Octet::ALL {
        let stem = o.file_stem();
        out.push((format!("degree16_{stem}.json"), json(&sixteen_sheeted(o))));
        let arr = serde_json::json!({
            "lines": ArrangementFile::from_arrangement(&o.arrangement()).lines,
            "group": group(&[2, 2, 2, 2]),
            "alphas": OCTET_CHARACTERS,
        });
        out.push((format!("octet_{stem}.arrangement.json"), arr));
    }
    out.push(("campedelli.json".into(), json(&campedelli())));
    out.push(("tan_quintic.json".into(), json(&tan_quintic())));
    for n in 0..=3 {
        out.push((format!("tan_triple_n{n}.json"), json(&tan_triple(n))));
    }
    out
}

fn json<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("catalog entries serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{canonical_test, invariants, CoverSpec};
    use crate::geometry::{max_multiplicity, multiple_points, q, DivisorClass};

    #[test]
    fn octet_configurations() {
        let triples = |o: Octet| -> Vec<(usize, Vec<usize>)> {
            multiple_points(&o.arrangement())
                .into_iter()
                .filter(|p| p.multiplicity >= 3)
                .map(|p| (p.multiplicity, p.incident))
                .collect()
        };
        assert_eq!(max_multiplicity(&Octet::Generic.arrangement()), 2);
        assert_eq!(triples(Octet::TriplePoint), vec![(3, vec![0, 2, 3])]);
        assert_eq!(
            triples(Octet::FourFoldBranched),
            vec![(4, vec![0, 1, 2, 3])]
        );
        assert_eq!(
            triples(Octet::FourFoldUnbranched),
            vec![(4, vec![0, 2, 3, 6])]
        );
    }

    #[test]
    fn sixteen_sheeted_cover_is_canonical() {
        let (spec, curves) = sixteen_sheeted(Octet::Generic).to_spec().unwrap();
        assert!(spec.is_plane() && curves.is_empty());
        assert!(canonical_test(&spec).is_canonical_pattern);
        let inv = invariants(&spec).unwrap();
        assert_eq!((inv.p_g, inv.q, inv.chi), (3, 0, 4));
        assert_eq!(inv.k_selfint, q(16));
    }

    #[test]
    fn perturbed_octets() {
        let k = |o: Octet| {
            let (spec, curves) = sixteen_sheeted(o).to_spec().unwrap();
            (invariants(&spec).unwrap(), curves)
        };
        let (inv, curves) = k(Octet::TriplePoint);
        assert_eq!(curves[0].character, el(&[1, 0, 0, 0]));
        assert_eq!(inv.k_class, DivisorClass::from_ints(1, &[0]));
        assert_eq!(inv.k_selfint, q(16));
        let (inv, curves) = k(Octet::FourFoldBranched);
        assert_eq!(curves[0].character, el(&[1, 1, 1, 1]));
        assert_eq!(inv.k_selfint, q(12));
        let (inv, curves) = k(Octet::FourFoldUnbranched);
        assert!(curves[0].character.is_identity());
        assert_eq!(inv.k_class, DivisorClass::from_ints(1, &[1]));
        assert_eq!(inv.k_selfint, q(0));
    }

    #[test]
    fn campedelli_and_quintic() {
        let (spec, _) = campedelli().to_spec().unwrap();
        let inv = invariants(&spec).unwrap();
        assert_eq!((inv.p_g, inv.q, inv.chi, inv.k_selfint), (0, 0, 1, q(2)));
        let (spec, _) = tan_quintic().to_spec().unwrap();
        let inv = invariants(&spec).unwrap();
        assert_eq!((inv.chi, inv.k_selfint), (5, q(25)));
    }

    #[test]
    fn tan_triple_geometry() {
        for n in 0..=3 {
            let f = tan_triple(n);
            let arr = f
                .arrangement
                .as_ref()
                .unwrap()
                .lines
                .to_arrangement()
                .unwrap();
            let pts = multiple_points(&arr);
            assert_eq!(pts.iter().filter(|p| p.multiplicity == 3).count(), n + 3);
            assert_eq!(
                pts.iter().filter(|p| p.multiplicity == 2).count(),
                27 - 3 * n
            );
            let (_, curves) = f.to_spec().unwrap();
            assert!(curves.iter().all(|c| c.ramification.is_none()));
        }
    }

    #[test]
    fn tan_triple_geometric_genus() {
        for n in 0..=3 {
            let (spec, _) = tan_triple(n).to_spec().unwrap();
            let inv = invariants(&spec).unwrap();
            assert_eq!(inv.p_g, 8 - n as u64, "n = {n}");
        }
    }

    #[test]
    fn families_are_canonical_covers() {
        for fam in families() {
            assert_eq!(fam.group.order(), fam.degree);
            let spec = CoverSpec::on_plane(fam.group.clone(), &fam.data).unwrap();
            assert!(canonical_test(&spec).is_canonical_pattern, "{}", fam.label);
        }
    }

    #[test]
    fn listed_solution_sets_are_hyperplane_complements() {
        for (gp, alphas) in order16_solution_sets() {
            assert_eq!(alphas.len(), 8);
            for a in &alphas {
                let dot: u64 = a.0.iter().zip(&gp.0).map(|(x, y)| x * y).sum();
                assert_eq!(dot % 2, 1, "{gp} {a}");
            }
        }
    }
}
