use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use super::{q, GeometryError, Q};

/// A divisor class `hH − Σ m_s E_s` on the plane blown up at `t = m.len()` points.
///
/// `H` is the pullback of a line and `E_s` the exceptional curves, so
/// `H² = 1`, `E_s² = −1` and all mixed products vanish. A line through the
/// blown-up point `s` has strict transform `(1; …, 1, …)`; the exceptional
/// curve itself is `(0; …, −1, …)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    pub h: Q,
    pub e: Vec<Q>,
}

impl DivisorClass {
    pub fn new(h: Q, e: Vec<Q>) -> Self {
        Self { h, e }
    }

    pub fn from_ints(h: i64, e: &[i64]) -> Self {
        Self {
            h: q(h),
            e: e.iter().map(|&m| q(m)).collect(),
        }
    }

    /// Degree-`h` class on the plane itself.
    pub fn plane(h: i64) -> Self {
        Self::from_ints(h, &[])
    }

    pub fn zero(t: usize) -> Self {
        Self {
            h: Q::zero(),
            e: vec![Q::zero(); t],
        }
    }

    /// The pullback of a degree-`h` class to a blow-up at `t` points.
    pub fn pullback(h: i64, t: usize) -> Self {
        Self {
            h: q(h),
            e: vec![Q::zero(); t],
        }
    }

    /// `K = −3H + Σ E_s`.
    pub fn canonical(t: usize) -> Self {
        Self {
            h: q(-3),
            e: vec![q(-1); t],
        }
    }

    /// The exceptional curve `E_s`.
    pub fn exceptional(t: usize, s: usize) -> Self {
        let mut e = vec![Q::zero(); t];
        e[s] = q(-1);
        Self { h: Q::zero(), e }
    }

    /// Number of blown-up points.
    pub fn base(&self) -> usize {
        self.e.len()
    }

    pub fn is_integral(&self) -> bool {
        self.h.is_integer() && self.e.iter().all(Q::is_integer)
    }

    pub fn is_zero(&self) -> bool {
        self.h.is_zero() && self.e.iter().all(Zero::is_zero)
    }

    /// Every coordinate, `h` first.
    pub fn coords(&self) -> impl Iterator<Item = &Q> {
        std::iter::once(&self.h).chain(self.e.iter())
    }

    /// Integer coordinates `(h, m_1, …)`, if integral and small enough.
    pub fn to_ints(&self) -> Option<(i64, Vec<i64>)> {
        if !self.is_integral() {
            return None;
        }
        let conv = |v: &Q| -> Option<i64> { v.to_integer().try_into().ok() };
        Some((
            conv(&self.h)?,
            self.e.iter().map(conv).collect::<Option<_>>()?,
        ))
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self {
            h: &self.h * c,
            e: self.e.iter().map(|m| m * c).collect(),
        }
    }

    /// Whether the class is the pullback of a class from the plane (all `m_s = 0`).
    pub fn is_pullback(&self) -> bool {
        self.e.iter().all(Zero::is_zero)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Q, &Q) -> Q) -> Self {
        assert_eq!(
            self.base(),
            other.base(),
            "divisor classes live on different blow-ups"
        );
        Self {
            h: f(&self.h, &other.h),
            e: self.e.iter().zip(&other.e).map(|(a, b)| f(a, b)).collect(),
        }
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        self.scale(&q(-1))
    }
}

impl Mul<&DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.scale(&q(self))
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.h)?;
        for (i, m) in self.e.iter().enumerate() {
            write!(f, "{}{}", if i == 0 { "; " } else { "," }, m)?;
        }
        write!(f, ")")
    }
}

/// Intersection number `a.h·b.h − Σ a.m_s·b.m_s`.
pub fn intersect(a: &DivisorClass, b: &DivisorClass) -> Result<Q, GeometryError> {
    if a.base() != b.base() {
        return Err(GeometryError::BaseMismatch(a.base(), b.base()));
    }
    let mut total = &a.h * &b.h;
    for (x, y) in a.e.iter().zip(&b.e) {
        total -= x * y;
    }
    Ok(total)
}

/// Riemann–Roch on the blown-up plane: `χ(O(D)) = 1 + (D² − D·K)/2`.
pub fn chi_class(d: &DivisorClass) -> Result<BigInt, GeometryError> {
    if !d.is_integral() {
        return Err(GeometryError::NotIntegral(d.to_string()));
    }
    let k = DivisorClass::canonical(d.base());
    let value = q(1) + (intersect(d, d)? - intersect(d, &k)?) / q(2);
    debug_assert!(value.is_integer());
    Ok(value.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::chi_plane;
    use proptest::prelude::*;

    #[test]
    fn intersection_examples() {
        let h = DivisorClass::plane(1);
        assert_eq!(intersect(&h, &h).unwrap(), q(1));
        let a = DivisorClass::from_ints(1, &[1, 1, 1]);
        assert_eq!(intersect(&a, &a).unwrap(), q(-2));
        let b = DivisorClass::from_ints(8, &[3, 3, 3]);
        assert_eq!(intersect(&b, &b).unwrap(), q(37));
        assert_eq!(intersect(&h, &a), Err(GeometryError::BaseMismatch(0, 3)));
    }

    #[test]
    fn chi_examples() {
        assert_eq!(chi_class(&DivisorClass::zero(4)).unwrap(), BigInt::from(1));
        assert_eq!(
            chi_class(&DivisorClass::plane(-2)).unwrap(),
            BigInt::from(0)
        );
        assert_eq!(
            chi_class(&DivisorClass::from_ints(-4, &[0, 0, 0])).unwrap(),
            BigInt::from(3)
        );
        assert_eq!(chi_plane(-4), 3);
        let half = DivisorClass::new(Q::new(1.into(), 2.into()), vec![]);
        assert!(chi_class(&half).is_err());
    }

    #[test]
    fn chi_agrees_with_plane_formula() {
        for t in -8..=8 {
            assert_eq!(
                chi_class(&DivisorClass::plane(t)).unwrap(),
                BigInt::from(chi_plane(t))
            );
        }
    }

    #[test]
    fn exceptional_curves_are_minus_one_curves() {
        let e = DivisorClass::exceptional(3, 1);
        let k = DivisorClass::canonical(3);
        assert_eq!(intersect(&e, &e).unwrap(), q(-1));
        assert_eq!(intersect(&e, &k).unwrap(), q(-1));
        assert_eq!(intersect(&k, &k).unwrap(), q(6));
    }

    fn class(t: usize) -> impl Strategy<Value = DivisorClass> {
        (-20i64..20, proptest::collection::vec(-20i64..20, t))
            .prop_map(|(h, e)| DivisorClass::from_ints(h, &e))
    }

    proptest! {
        #[test]
        fn pairing_is_bilinear_and_symmetric(
            (a, b, c) in (0usize..5).prop_flat_map(|t| (class(t), class(t), class(t))),
            s in -5i64..5,
        ) {
            let lhs = intersect(&(&a + &(s * &b)), &c).unwrap();
            let rhs = intersect(&a, &c).unwrap() + q(s) * intersect(&b, &c).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(intersect(&a, &b).unwrap(), intersect(&b, &a).unwrap());
        }

        #[test]
        fn riemann_roch_respects_duality(d in (0usize..5).prop_flat_map(class)) {
            // Serre duality: χ(D) = χ(K − D)
            let k = DivisorClass::canonical(d.base());
            prop_assert_eq!(chi_class(&d).unwrap(), chi_class(&(&k - &d)).unwrap());
        }
    }
}
