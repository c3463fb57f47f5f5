use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{l_table, ramification, CoverError, CoverSpec, LTable};
use crate::geometry::{
    chi_class, chi_plane, h0_plane, h2_plane, intersect, linear_system_dim, DivisorClass, Q,
};

/// Properties the numerical checks here do not establish.
pub const NOT_CHECKED: [&str; 3] = ["base-point-freeness of |K|", "minimality", "nefness of K"];

fn to_i64(v: &BigInt) -> i64 {
    v.try_into().expect("class coefficient fits in i64")
}

/// `h^i` of an integral class on the base surface of `spec`.
fn base_h(spec: &CoverSpec, cls: &DivisorClass, i: u8) -> Result<u64, CoverError> {
    if !cls.is_integral() {
        return Err(crate::geometry::GeometryError::NotIntegral(cls.to_string()).into());
    }
    if spec.is_plane() {
        let t = to_i64(&cls.h.to_integer());
        return Ok(match i {
            0 => h0_plane(t),
            1 => 0,
            _ => h2_plane(t),
        });
    }
    let points = spec.points().ok_or(CoverError::RealizationRequired)?;
    let h0 = |c: &DivisorClass| -> u64 {
        let t = to_i64(&c.h.to_integer());
        let conds: Vec<_> = points
            .iter()
            .zip(&c.e)
            .filter(|(_, m)| m.is_positive())
            .map(|(p, m)| (p.clone(), to_i64(&m.to_integer()) as u32))
            .collect();
        linear_system_dim(t, &conds)
    };
    let k = DivisorClass::canonical(spec.base());
    Ok(match i {
        0 => h0(cls),
        2 => h0(&(&k - cls)),
        _ => {
            let chi = to_i64(&chi_class(cls)?);
            let h1 = h0(cls) as i64 + h0(&(&k - cls)) as i64 - chi;
            debug_assert!(h1 >= 0, "negative h^1 for {cls}");
            h1 as u64
        }
    })
}

fn base_chi(spec: &CoverSpec, cls: &DivisorClass) -> Result<i64, CoverError> {
    if spec.is_plane() {
        return Ok(chi_plane(to_i64(&cls.h.to_integer())));
    }
    Ok(to_i64(&chi_class(cls)?))
}

fn hi_with_table(
    spec: &CoverSpec,
    table: &LTable,
    d: &DivisorClass,
    i: u8,
) -> Result<u64, CoverError> {
    table.classes().map(|l| base_h(spec, &(d - l), i)).sum()
}

/// `h^i(X, π*O(D)) = Σ_g h^i(base, D − L_g)`.
pub fn hi_cover(spec: &CoverSpec, d: &DivisorClass, i: u8) -> Result<u64, CoverError> {
    if d.base() != spec.base() {
        return Err(crate::geometry::GeometryError::BaseMismatch(d.base(), spec.base()).into());
    }
    let table = l_table(spec)?;
    hi_with_table(spec, &table, d, i)
}

/// Numerical invariants of the cover surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub p_g: u64,
    pub q: u64,
    pub chi: i64,
    /// Number of connected components, `Σ_g h^0(−L_g)`.
    pub h0: u64,
    #[serde(serialize_with = "ser_class")]
    pub k_class: DivisorClass,
    #[serde(serialize_with = "ser_q")]
    pub k_selfint: Q,
    /// `false` when `K²` came out non-integral (reported as is, never rounded).
    pub k_selfint_integral: bool,
    /// `(m, p_m)` for `m = 2..=5`, present only when `K` is the pullback of an integral class.
    pub plurigenera: Option<Vec<(u32, u64)>>,
    pub possibly_disconnected: bool,
    pub not_checked: Vec<String>,
}

pub(crate) fn ser_q<S: serde::Serializer>(v: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub(crate) fn ser_class<S: serde::Serializer>(c: &DivisorClass, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&c.to_string())
}

/// `K_base + Σ (1 − 1/e_α)·cls(α)`, the class whose pullback is `K_X`.
pub fn canonical_class(spec: &CoverSpec) -> Result<DivisorClass, CoverError> {
    let mut k = DivisorClass::canonical(spec.base());
    for c in spec.components() {
        let e = ramification(spec.group(), &c.alpha)?;
        let w = Q::one() - Q::new(BigInt::one(), e.into());
        k = &k + &c.cls.scale(&w);
    }
    Ok(k)
}

pub fn invariants(spec: &CoverSpec) -> Result<Invariants, CoverError> {
    let table = l_table(spec)?;
    let zero = DivisorClass::zero(spec.base());
    let mut chi = 0i64;
    let mut q = 0u64;
    let mut h0 = 0u64;
    let mut p_g = 0u64;
    for l in table.classes() {
        let minus = &zero - l;
        chi += base_chi(spec, &minus)?;
        h0 += base_h(spec, &minus, 0)?;
        q += base_h(spec, &minus, 1)?;
        p_g += base_h(spec, &minus, 2)?;
    }
    let k_class = canonical_class(spec)?;
    let k_selfint = Q::from_integer(spec.group().order().into()) * intersect(&k_class, &k_class)?;
    let pullback_ok = k_class.is_integral() && (!spec.is_plane() || !k_class.h.is_negative());
    let plurigenera = if pullback_ok {
        let mut out = Vec::new();
        for m in 2..=5u32 {
            let mk = k_class.scale(&Q::from_integer(m.into()));
            out.push((m, hi_with_table(spec, &table, &mk, 0)?));
        }
        Some(out)
    } else {
        None
    };
    Ok(Invariants {
        p_g,
        q,
        chi,
        h0,
        k_selfint_integral: k_selfint.is_integer(),
        k_selfint,
        k_class,
        plurigenera,
        possibly_disconnected: spec.possibly_disconnected(),
        not_checked: NOT_CHECKED.iter().map(|s| s.to_string()).collect(),
    })
}

/// Outcome of the canonical-map test on a plane cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalVerdict {
    pub is_canonical_pattern: bool,
    /// Pushforward is `O ⊕ O(−2)^{d−2} ⊕ O(−4)`.
    pub pushforward_matches: bool,
    /// `−3 + Σ (1 − 1/e_α)·x_α`.
    #[serde(serialize_with = "ser_q")]
    pub pullback_degree: Q,
    pub diagnostics: Vec<String>,
    pub not_checked: Vec<String>,
}

/// Whether the cover has the pushforward shape `O ⊕ O(−2)^{d−2} ⊕ O(−4)` and
/// `K_X` is the pullback of a line.
pub fn canonical_test(spec: &CoverSpec) -> CanonicalVerdict {
    let not_checked: Vec<String> = NOT_CHECKED[..2].iter().map(|s| s.to_string()).collect();
    let fail = |msg: String| CanonicalVerdict {
        is_canonical_pattern: false,
        pushforward_matches: false,
        pullback_degree: Q::zero(),
        diagnostics: vec![msg],
        not_checked: not_checked.clone(),
    };
    if !spec.is_plane() {
        return fail("canonical test needs a plane base".into());
    }
    let degs = match super::pushforward_degrees(spec) {
        Ok(d) => d,
        Err(e) => return fail(e.to_string()),
    };
    let k = match canonical_class(spec) {
        Ok(k) => k,
        Err(e) => return fail(e.to_string()),
    };
    let d = spec.group().order() as usize;
    let mut target = vec![-4i64];
    target.extend(std::iter::repeat_n(-2, d.saturating_sub(2)));
    target.push(0);
    let pushforward_matches = d >= 2 && degs == target;
    let pullback_degree = k.h.clone();
    let degree_ok = pullback_degree == Q::one();
    let mut diagnostics = Vec::new();
    if !pushforward_matches {
        diagnostics.push(format!(
            "pushforward degrees {degs:?} differ from {{0, -2 x {}, -4}}",
            d.saturating_sub(2)
        ));
    }
    if !degree_ok {
        diagnostics.push(format!(
            "canonical pullback degree is {pullback_degree}, not 1"
        ));
    }
    CanonicalVerdict {
        is_canonical_pattern: pushforward_matches && degree_ok,
        pushforward_matches,
        pullback_degree,
        diagnostics,
        not_checked,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{BranchData, CoverSpec};
    use crate::geometry::{h0_plane, q};
    use crate::groups::{GroupElement, GroupType};

    fn plane_spec(f: &[u64], data: &[(&[u64], u64)]) -> CoverSpec {
        let g = GroupType::new(f.to_vec()).unwrap();
        let bd =
            BranchData::new(&g, data.iter().map(|(a, d)| (GroupElement(a.to_vec()), *d))).unwrap();
        CoverSpec::on_plane(g, &bd).unwrap()
    }

    fn hyperplane_complement(gprime: [u64; 4]) -> CoverSpec {
        let g = GroupType::new(vec![2; 4]).unwrap();
        let data = g.elements().into_iter().filter_map(|a| {
            let dot: u64 = a.0.iter().zip(gprime).map(|(x, y)| x * y).sum();
            (dot % 2 == 1).then_some((a, 1))
        });
        let bd = BranchData::new(&g, data).unwrap();
        CoverSpec::on_plane(g, &bd).unwrap()
    }

    #[test]
    fn sixteen_sheeted_cover() {
        let spec = hyperplane_complement([1, 0, 0, 0]);
        let mut want = vec![-4];
        want.extend([-2; 14]);
        want.push(0);
        assert_eq!(super::super::pushforward_degrees(&spec).unwrap(), want);
        let inv = invariants(&spec).unwrap();
        assert_eq!(inv.k_class, DivisorClass::plane(1));
        assert_eq!(inv.k_selfint, q(16));
        assert_eq!((inv.chi, inv.p_g, inv.q), (4, 3, 0));
        assert_eq!(inv.plurigenera.as_ref().unwrap()[0], (2, 20));
        assert_eq!(hi_cover(&spec, &DivisorClass::plane(0), 2).unwrap(), 3);
        assert!(canonical_test(&spec).is_canonical_pattern);
    }

    #[test]
    fn double_covers() {
        let octic = plane_spec(&[2], &[(&[1], 8)]);
        assert!(canonical_test(&octic).is_canonical_pattern);
        let sextic = plane_spec(&[2], &[(&[1], 6)]);
        let v = canonical_test(&sextic);
        assert!(!v.is_canonical_pattern);
        assert!(!v.pushforward_matches);
        assert_eq!(v.pullback_degree, q(0));
        assert_eq!(v.diagnostics.len(), 2);
        assert_eq!(
            super::super::pushforward_degrees(&sextic).unwrap(),
            vec![-3, 0]
        );
    }

    #[test]
    fn h1_vanishes_on_plane_covers() {
        let spec = plane_spec(&[3, 3], &[(&[1, 1], 2), (&[2, 1], 2), (&[0, 1], 2)]);
        for t in -6..6 {
            assert_eq!(hi_cover(&spec, &DivisorClass::plane(t), 1).unwrap(), 0);
        }
    }

    #[test]
    fn campedelli_plane_cover() {
        let g = GroupType::new(vec![2, 2, 2]).unwrap();
        let data = g.elements().into_iter().skip(1).map(|a| (a, 1));
        let spec = CoverSpec::on_plane(g.clone(), &BranchData::new(&g, data).unwrap()).unwrap();
        let inv = invariants(&spec).unwrap();
        assert_eq!((inv.p_g, inv.q, inv.chi), (0, 0, 1));
        assert_eq!(inv.k_selfint, q(2));
        assert_eq!(inv.k_class.h, Q::new(1.into(), 2.into()));
        assert!(inv.plurigenera.is_none());
    }

    #[test]
    fn tan_degree_five() {
        let spec = plane_spec(
            &[5, 5],
            &[
                (&[1, 1], 1),
                (&[1, 2], 1),
                (&[1, 3], 1),
                (&[1, 4], 1),
                (&[1, 0], 1),
            ],
        );
        let inv = invariants(&spec).unwrap();
        assert_eq!(inv.chi, 5);
        assert_eq!(inv.k_selfint, q(25));
    }

    /// The two admissible pushforward shapes with every `l_i ∈ {2, 3, 4}` and
    /// `Σ h^0(l_i − 3) = 3`; only the first has `p_2 = d + 4`.
    #[test]
    fn alternative_pattern_fails_second_plurigenus() {
        for d in 4..=36i64 {
            let canonical: Vec<i64> = std::iter::repeat_n(2, d as usize - 2).chain([4]).collect();
            let alternative: Vec<i64> = std::iter::repeat_n(2, d as usize - 4)
                .chain([3, 3, 3])
                .collect();
            let p2 = |ls: &[i64]| h0_plane(2) + ls.iter().map(|&l| h0_plane(2 - l)).sum::<u64>();
            let pg = |ls: &[i64]| ls.iter().map(|&l| h0_plane(l - 3)).sum::<u64>();
            assert_eq!(pg(&canonical), 3);
            assert_eq!(pg(&alternative), 3);
            assert_eq!(p2(&canonical), (d + 4) as u64);
            assert_eq!(p2(&alternative), (d + 2) as u64);
        }
    }

    #[test]
    fn blow_up_without_points_needs_realization() {
        let g = GroupType::new(vec![2]).unwrap();
        let comps = vec![crate::cover::BranchComponent {
            cls: DivisorClass::from_ints(8, &[2]),
            alpha: GroupElement(vec![1]),
        }];
        let spec = CoverSpec::new(g, 1, comps).unwrap();
        assert_eq!(
            hi_cover(&spec, &DivisorClass::zero(1), 0),
            Err(CoverError::RealizationRequired)
        );
    }
}
