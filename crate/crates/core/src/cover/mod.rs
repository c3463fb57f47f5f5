//! The abelian-cover calculus over the plane or a blown-up plane.
//!
//! A cover with group `G = Z_{n_1} ⊕ … ⊕ Z_{n_k}` is given by branch
//! components, each a reduced curve class carrying a character `α ∈ G`
//! (its exponent in each defining equation `z_i^{n_i} = f_i`). The
//! pushforward of the structure sheaf splits as `⊕_g O(−L_g)` with
//!
//! ```text
//! n_i L_{e_i} = Σ α_i · cls(α)
//! L_g         = Σ g_i L_{e_i} − Σ ⌊Σ_i g_i α_i / n_i⌋ · cls(α)
//! ```
//!
//! and everything else (cohomology, χ, p_g, plurigenera, the canonical
//! class) is read off these summands.

mod cohomology;
mod spec_file;

pub use cohomology::{
    canonical_class, canonical_test, hi_cover, invariants, CanonicalVerdict, Invariants,
    NOT_CHECKED,
};
pub use spec_file::{ClassValue, ComponentEntry, CoverSpecFile, SpecArrangement};

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::geometry::{
    multiple_points, DivisorClass, GeometryError, LineArrangement, MultiplePoint, ProjPoint, Q,
};
use crate::groups::{GroupElement, GroupError, GroupType};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("identity is not a branch character")]
    IdentityCharacter,
    #[error("branch class {0} must be integral with nonnegative H-coefficient")]
    BadComponentClass(String),
    #[error("component class {class} lives on a blow-up at {found} points, expected {expected}")]
    BaseMismatch {
        class: String,
        found: usize,
        expected: usize,
    },
    #[error("divisibility fails for D_{index}: coordinate {coordinate} of Σ α_{index}·cls(α) is {value}, not divisible by {modulus}")]
    Divisibility {
        /// 1-based index of the defining equation.
        index: usize,
        /// 0 is the H-coefficient, `s ≥ 1` the coefficient of `E_s`.
        coordinate: usize,
        value: String,
        modulus: u64,
    },
    #[error("operation needs a plane base; use l_table directly on blow-ups")]
    NotPlane,
    #[error("geometric realization required: blow-up base without explicit points")]
    RealizationRequired,
    #[error("{0} characters given for {1} lines")]
    CharacterCount(usize, usize),
    #[error("blow-up point index {0} out of range")]
    BadBlowUpIndex(usize),
    #[error("invalid cover spec: {0}")]
    Invalid(String),
}

/// Degrees `x_α` of the branch curves carrying each nonzero character.
/// Characters with degree zero are not stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BranchData {
    x: BTreeMap<GroupElement, u64>,
}

impl BranchData {
    pub fn new(
        group: &GroupType,
        entries: impl IntoIterator<Item = (GroupElement, u64)>,
    ) -> Result<Self, CoverError> {
        let mut x = BTreeMap::new();
        for (alpha, deg) in entries {
            if !group.contains(&alpha) {
                return Err(GroupError::Mismatch {
                    group: group.to_string(),
                    element: alpha.0,
                }
                .into());
            }
            if alpha.is_identity() {
                return Err(CoverError::IdentityCharacter);
            }
            if deg > 0 {
                *x.entry(alpha).or_insert(0) += deg;
            }
        }
        Ok(Self { x })
    }

    pub fn get(&self, alpha: &GroupElement) -> u64 {
        self.x.get(alpha).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GroupElement, u64)> {
        self.x.iter().map(|(a, &d)| (a, d))
    }

    /// Characters with positive degree.
    pub fn support(&self) -> Vec<GroupElement> {
        self.x.keys().cloned().collect()
    }

    /// Dense vector over the nonzero elements of `group` in lexicographic order.
    pub fn to_dense(&self, group: &GroupType) -> Vec<u64> {
        group.elements()[1..].iter().map(|a| self.get(a)).collect()
    }

    pub fn total_degree(&self) -> u64 {
        self.x.values().sum()
    }
}

impl Serialize for BranchData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let map: BTreeMap<String, u64> = self.x.iter().map(|(a, &d)| (a.to_string(), d)).collect();
        map.serialize(s)
    }
}

/// A reduced branch curve with its character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchComponent {
    pub cls: DivisorClass,
    pub alpha: GroupElement,
}

/// An abelian cover of the plane (`base = 0`) or of the plane blown up at `base` points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSpec {
    group: GroupType,
    base: usize,
    components: Vec<BranchComponent>,
    pub canonical_degree_claim: Option<u64>,
    points: Option<Vec<ProjPoint>>,
}

/// Which multiple points of an arrangement to blow up.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum BlowUp {
    None,
    /// Every point where three or more lines meet.
    #[default]
    Auto,
    /// Explicit indices into [`multiple_points`].
    Points(Vec<usize>),
}

/// A blown-up point with the character of its exceptional curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalCurve {
    pub point: MultiplePoint,
    pub character: GroupElement,
    /// Ramification index along the exceptional curve; `None` when unbranched.
    pub ramification: Option<u64>,
}

impl CoverSpec {
    pub fn new(
        group: GroupType,
        base: usize,
        components: Vec<BranchComponent>,
    ) -> Result<Self, CoverError> {
        for c in &components {
            if !group.contains(&c.alpha) {
                return Err(GroupError::Mismatch {
                    group: group.to_string(),
                    element: c.alpha.0.clone(),
                }
                .into());
            }
            if c.alpha.is_identity() {
                return Err(CoverError::IdentityCharacter);
            }
            if c.cls.base() != base {
                return Err(CoverError::BaseMismatch {
                    class: c.cls.to_string(),
                    found: c.cls.base(),
                    expected: base,
                });
            }
            if !c.cls.is_integral() || c.cls.h < Q::zero() {
                return Err(CoverError::BadComponentClass(c.cls.to_string()));
            }
        }
        let spec = Self {
            group,
            base,
            components,
            canonical_degree_claim: None,
            points: None,
        };
        spec.divisor_classes_over_n()?;
        Ok(spec)
    }

    /// Plane cover with one component of degree `x_α` per character.
    pub fn on_plane(group: GroupType, data: &BranchData) -> Result<Self, CoverError> {
        let components = data
            .iter()
            .map(|(a, d)| BranchComponent {
                cls: DivisorClass::plane(d as i64),
                alpha: a.clone(),
            })
            .collect();
        Self::new(group, 0, components)
    }

    /// Attaches the explicit blown-up points needed for `h^0` on a blow-up.
    pub fn with_points(mut self, points: Vec<ProjPoint>) -> Result<Self, CoverError> {
        if points.len() != self.base {
            return Err(CoverError::Invalid(format!(
                "{} points given for a blow-up at {}",
                points.len(),
                self.base
            )));
        }
        self.points = Some(points);
        Ok(self)
    }

    /// The cover branched over the lines of `arr` (line `j` carrying `alphas[j]`),
    /// pulled back to the blow-up at the selected multiple points.
    ///
    /// Strict transforms of the lines keep their characters; the exceptional
    /// curve over a point gets the sum of the characters of the incident lines
    /// and is a branch component unless that sum is the identity.
    pub fn from_arrangement(
        group: GroupType,
        arr: &LineArrangement,
        alphas: &[GroupElement],
        blow_up: &BlowUp,
    ) -> Result<(Self, Vec<ExceptionalCurve>), CoverError> {
        if alphas.len() != arr.len() {
            return Err(CoverError::CharacterCount(alphas.len(), arr.len()));
        }
        let all = multiple_points(arr);
        let chosen: Vec<MultiplePoint> = match blow_up {
            BlowUp::None => vec![],
            BlowUp::Auto => all.into_iter().filter(|p| p.multiplicity >= 3).collect(),
            BlowUp::Points(idx) => idx
                .iter()
                .map(|&i| all.get(i).cloned().ok_or(CoverError::BadBlowUpIndex(i)))
                .collect::<Result<_, _>>()?,
        };
        let t = chosen.len();
        let mut components = Vec::new();
        for (j, alpha) in alphas.iter().enumerate() {
            let e: Vec<i64> = chosen
                .iter()
                .map(|p| i64::from(p.incident.contains(&j)))
                .collect();
            components.push(BranchComponent {
                cls: DivisorClass::from_ints(1, &e),
                alpha: alpha.clone(),
            });
        }
        let mut curves = Vec::new();
        for (s, p) in chosen.iter().enumerate() {
            let character = exceptional_characters(&group, alphas, p)?;
            let ramification = if character.is_identity() {
                None
            } else {
                components.push(BranchComponent {
                    cls: DivisorClass::exceptional(t, s),
                    alpha: character.clone(),
                });
                Some(ramification(&group, &character)?)
            };
            curves.push(ExceptionalCurve {
                point: p.clone(),
                character,
                ramification,
            });
        }
        let points = chosen.iter().map(|p| p.point.clone()).collect();
        let spec = Self::new(group, t, components)?.with_points(points)?;
        Ok((spec, curves))
    }

    pub fn group(&self) -> &GroupType {
        &self.group
    }

    /// Number of blown-up points (0 for the plane).
    pub fn base(&self) -> usize {
        self.base
    }

    pub fn components(&self) -> &[BranchComponent] {
        &self.components
    }

    pub fn points(&self) -> Option<&[ProjPoint]> {
        self.points.as_deref()
    }

    pub fn is_plane(&self) -> bool {
        self.base == 0
    }

    /// Plane branch data `x_α` (sum of component degrees per character).
    pub fn branch_data(&self) -> Result<BranchData, CoverError> {
        if !self.is_plane() {
            return Err(CoverError::NotPlane);
        }
        BranchData::new(
            &self.group,
            self.components.iter().map(|c| {
                let d: i64 = c.cls.h.to_integer().try_into().unwrap_or(i64::MAX);
                (c.alpha.clone(), d as u64)
            }),
        )
    }

    /// `true` when the characters of the branch components do not generate `G`;
    /// the cover is then disconnected.
    pub fn possibly_disconnected(&self) -> bool {
        let support: Vec<GroupElement> = self
            .components
            .iter()
            .filter(|c| !c.cls.is_zero())
            .map(|c| c.alpha.clone())
            .collect();
        !self.group.generates(&support)
    }

    /// `L_{e_i} = (Σ α_i cls(α)) / n_i`, checking divisibility coordinatewise.
    fn divisor_classes_over_n(&self) -> Result<Vec<DivisorClass>, CoverError> {
        let mut out = Vec::with_capacity(self.group.rank());
        for (i, &n) in self.group.factors().iter().enumerate() {
            let mut sum = DivisorClass::zero(self.base);
            for c in &self.components {
                if c.alpha.0[i] > 0 {
                    sum = &sum + &c.cls.scale(&Q::from_integer(c.alpha.0[i].into()));
                }
            }
            for (coordinate, v) in sum.coords().enumerate() {
                let modulus = num_bigint::BigInt::from(n);
                if !v.is_integer() || !v.to_integer().is_multiple_of(&modulus) {
                    return Err(CoverError::Divisibility {
                        index: i + 1,
                        coordinate,
                        value: v.to_string(),
                        modulus: n,
                    });
                }
            }
            out.push(sum.scale(&Q::new(1.into(), n.into())));
        }
        Ok(out)
    }
}

/// `⌊Σ_i g_i α_i / n_i⌋`, the floor taken over the whole sum.
pub fn c_coeff(group: &GroupType, g: &GroupElement, alpha: &GroupElement) -> u64 {
    group.pairing_numerator(g, alpha) / group.exponent()
}

/// The classes `L_g`, indexed like [`GroupType::elements`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LTable {
    entries: Vec<(GroupElement, DivisorClass)>,
}

impl LTable {
    pub fn get(&self, g: &GroupElement) -> Option<&DivisorClass> {
        self.entries.iter().find(|(h, _)| h == g).map(|(_, c)| c)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GroupElement, &DivisorClass)> {
        self.entries.iter().map(|(g, c)| (g, c))
    }

    pub fn classes(&self) -> impl Iterator<Item = &DivisorClass> {
        self.entries.iter().map(|(_, c)| c)
    }

    /// Degrees `l_g` on a plane base, in element order.
    pub fn plane_degrees(&self) -> Option<Vec<i64>> {
        self.entries
            .iter()
            .map(|(_, c)| {
                if c.base() != 0 || !c.h.is_integer() {
                    return None;
                }
                c.h.to_integer().try_into().ok()
            })
            .collect()
    }
}

pub fn l_table(spec: &CoverSpec) -> Result<LTable, CoverError> {
    let group = &spec.group;
    let le = spec.divisor_classes_over_n()?;
    let mut entries = Vec::with_capacity(group.order() as usize);
    for g in group.elements() {
        let mut cls = DivisorClass::zero(spec.base);
        for (gi, l) in g.0.iter().zip(&le) {
            if *gi > 0 {
                cls = &cls + &l.scale(&Q::from_integer((*gi).into()));
            }
        }
        for c in &spec.components {
            let k = c_coeff(group, &g, &c.alpha);
            if k > 0 {
                cls = &cls - &c.cls.scale(&Q::from_integer(k.into()));
            }
        }
        entries.push((g, cls));
    }
    Ok(LTable { entries })
}

/// The sorted multiset `{−l_g}` of summand degrees of the pushforward.
pub fn pushforward_degrees(spec: &CoverSpec) -> Result<Vec<i64>, CoverError> {
    if !spec.is_plane() {
        return Err(CoverError::NotPlane);
    }
    let mut degs: Vec<i64> = l_table(spec)?
        .plane_degrees()
        .expect("plane classes are integral")
        .into_iter()
        .map(|l| -l)
        .collect();
    degs.sort_unstable();
    Ok(degs)
}

/// Ramification index `|G| / d_P` with `d_P = gcd(|G|, |G|·α_1/n_1, …, |G|·α_k/n_k)`.
pub fn ramification(group: &GroupType, alpha: &GroupElement) -> Result<u64, CoverError> {
    if !group.contains(alpha) {
        return Err(GroupError::Mismatch {
            group: group.to_string(),
            element: alpha.0.clone(),
        }
        .into());
    }
    if alpha.is_identity() {
        return Err(CoverError::IdentityCharacter);
    }
    let order = group.order();
    let d = alpha
        .0
        .iter()
        .zip(group.factors())
        .fold(order, |acc, (&a, &n)| acc.gcd(&(order / n * a)));
    Ok(order / d)
}

/// Character of the exceptional curve over `point`: the sum of the characters
/// of the incident lines. The identity means the curve is not branched.
pub fn exceptional_characters(
    group: &GroupType,
    alphas: &[GroupElement],
    point: &MultiplePoint,
) -> Result<GroupElement, CoverError> {
    let mut acc = group.identity();
    for &j in &point.incident {
        let a = alphas
            .get(j)
            .ok_or(CoverError::CharacterCount(alphas.len(), j + 1))?;
        acc = group.add(&acc, a)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::q;

    fn grp(f: &[u64]) -> GroupType {
        GroupType::new(f.to_vec()).unwrap()
    }

    fn el(r: &[u64]) -> GroupElement {
        GroupElement(r.to_vec())
    }

    fn plane_spec(f: &[u64], data: &[(&[u64], u64)]) -> CoverSpec {
        let g = grp(f);
        let bd = BranchData::new(&g, data.iter().map(|(a, d)| (el(a), *d))).unwrap();
        CoverSpec::on_plane(g, &bd).unwrap()
    }

    #[test]
    fn c_coeff_examples() {
        assert_eq!(c_coeff(&grp(&[36]), &el(&[5]), &el(&[20])), 2);
        assert_eq!(c_coeff(&grp(&[3, 3]), &el(&[1, 2]), &el(&[2, 1])), 1);
        let v4 = grp(&[2, 2, 2, 2]);
        for a in v4.elements() {
            assert_eq!(c_coeff(&v4, &v4.basis(0), &a), 0);
        }
        // floor of the whole sum, not termwise: 1/2 + 1/2 = 1
        assert_eq!(c_coeff(&grp(&[2, 2]), &el(&[1, 1]), &el(&[1, 1])), 1);
    }

    #[test]
    fn l_table_cyclic_triple() {
        let spec = plane_spec(&[3], &[(&[1], 6)]);
        let degs = l_table(&spec).unwrap().plane_degrees().unwrap();
        assert_eq!(degs, vec![0, 2, 4]);
    }

    #[test]
    fn l_table_quartic() {
        let spec = plane_spec(&[4], &[(&[2], 2), (&[3], 4)]);
        let degs = l_table(&spec).unwrap().plane_degrees().unwrap();
        assert_eq!(degs, vec![0, 4, 2, 2]);
    }

    #[test]
    fn l_table_nine() {
        let spec = plane_spec(&[3, 3], &[(&[1, 1], 2), (&[2, 1], 2), (&[0, 1], 2)]);
        let table = l_table(&spec).unwrap();
        for (g, c) in table.iter() {
            let want = if g.is_identity() {
                0
            } else if g == &el(&[0, 2]) {
                4
            } else {
                2
            };
            assert_eq!(c, &DivisorClass::plane(want), "g = {g}");
        }
    }

    #[test]
    fn l_table_is_order_independent() {
        let a = plane_spec(&[2, 4], &[(&[1, 0], 2), (&[1, 3], 2), (&[0, 1], 2)]);
        let mut comps = a.components().to_vec();
        comps.reverse();
        let b = CoverSpec::new(a.group().clone(), 0, comps).unwrap();
        assert_eq!(l_table(&a).unwrap(), l_table(&b).unwrap());
    }

    #[test]
    fn divisibility_failure_names_index() {
        let err = CoverSpec::on_plane(
            grp(&[2, 2]),
            &BranchData::new(&grp(&[2, 2]), [(el(&[1, 0]), 4), (el(&[0, 1]), 3)]).unwrap(),
        )
        .unwrap_err();
        assert!(matches!(
            err,
            CoverError::Divisibility {
                index: 2,
                coordinate: 0,
                ..
            }
        ));
    }

    #[test]
    fn identity_components_rejected() {
        let comps = vec![BranchComponent {
            cls: DivisorClass::plane(2),
            alpha: el(&[0]),
        }];
        assert_eq!(
            CoverSpec::new(grp(&[2]), 0, comps),
            Err(CoverError::IdentityCharacter)
        );
        assert!(BranchData::new(&grp(&[2]), [(el(&[0]), 2)]).is_err());
    }

    #[test]
    fn pushforward_examples() {
        let octic = plane_spec(&[2], &[(&[1], 8)]);
        assert_eq!(pushforward_degrees(&octic).unwrap(), vec![-4, 0]);
        let sextic_sq = plane_spec(&[3], &[(&[2], 6)]);
        assert_eq!(pushforward_degrees(&sextic_sq).unwrap(), vec![-4, -2, 0]);
    }

    #[test]
    fn ramification_examples() {
        assert_eq!(
            ramification(&grp(&[2, 2, 2, 2]), &el(&[1, 1, 1, 0])).unwrap(),
            2
        );
        assert_eq!(ramification(&grp(&[5, 5]), &el(&[1, 2])).unwrap(), 5);
        assert_eq!(ramification(&grp(&[4]), &el(&[2])).unwrap(), 2);
        assert_eq!(
            ramification(&grp(&[4]), &el(&[0])),
            Err(CoverError::IdentityCharacter)
        );
    }

    #[test]
    fn ramification_is_element_order() {
        for n in 2..=24 {
            for g in crate::groups::enumerate_groups(n) {
                for a in g.elements().into_iter().skip(1) {
                    let e = ramification(&g, &a).unwrap();
                    assert_eq!(e, g.element_order(&a));
                    assert_eq!(n % e, 0);
                    assert!(e >= 2);
                }
            }
        }
    }

    #[test]
    fn exceptional_character_sums() {
        let v4 = grp(&[2, 2, 2, 2]);
        let alphas = vec![el(&[1, 1, 1, 0]), el(&[1, 0, 1, 0]), el(&[1, 1, 0, 0])];
        let mp = MultiplePoint {
            point: ProjPoint::new([q(0), q(0), q(1)]).unwrap(),
            incident: vec![0, 1, 2],
            multiplicity: 3,
        };
        let c = exceptional_characters(&v4, &alphas, &mp).unwrap();
        assert_eq!(c, el(&[1, 0, 0, 0]));
        assert_eq!(ramification(&v4, &c).unwrap(), 2);

        let z3 = grp(&[3]);
        let c = exceptional_characters(&z3, &[el(&[1]), el(&[1]), el(&[1])], &mp).unwrap();
        assert!(c.is_identity());

        let double = MultiplePoint {
            incident: vec![0, 1],
            multiplicity: 2,
            ..mp
        };
        let c = exceptional_characters(&grp(&[5]), &[el(&[2]), el(&[3])], &double).unwrap();
        assert!(c.is_identity());
    }
}
