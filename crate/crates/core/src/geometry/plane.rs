//! Cohomology of line bundles `O(t)` on the projective plane.

/// `h^0(O(t))`: the number of degree-`t` monomials in three variables.
pub fn h0_plane(t: i64) -> u64 {
    if t < 0 {
        0
    } else {
        ((t + 1) * (t + 2) / 2) as u64
    }
}

/// `χ(O(t)) = (t+1)(t+2)/2` as a polynomial in `t`.
pub fn chi_plane(t: i64) -> i64 {
    (t + 1) * (t + 2) / 2
}

/// `h^2(O(t)) = h^0(O(-t-3))` by Serre duality.
pub fn h2_plane(t: i64) -> u64 {
    h0_plane(-t - 3)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(h0_plane(2), 6);
        assert_eq!(h2_plane(-4), 3);
        assert_eq!(chi_plane(-2), 0);
        assert_eq!(h0_plane(-1), 0);
    }

    #[test]
    fn euler_characteristic_splits() {
        // h^1 vanishes for every line bundle on the plane
        for t in -8..=8 {
            assert_eq!(
                h0_plane(t) as i64 + h2_plane(t) as i64,
                chi_plane(t),
                "t = {t}"
            );
        }
    }
}
