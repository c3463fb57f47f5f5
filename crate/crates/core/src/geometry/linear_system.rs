//! Dimensions of linear systems of plane curves with assigned base points.

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_traits::{One, Zero};

use super::{ProjPoint, Q};

/// Rank of a rational matrix by fraction-preserving Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = Q::one() / &rows[r][col];
        let pivot_row: Vec<Q> = rows[r].iter().map(|v| v * &inv).collect();
        for i in (r + 1)..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone();
            for (c, pv) in pivot_row.iter().enumerate().skip(col) {
                let delta = &f * pv;
                rows[i][c] -= delta;
            }
        }
        rows[r] = pivot_row;
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
///
/// Every intermediate entry is a minor of the input, so the divisions are exact.
pub fn rank_integer(mut rows: Vec<Vec<BigInt>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let (head, tail) = rows.split_at_mut(r + 1);
        let prow = &head[r];
        let p = &prow[col];
        for row in tail.iter_mut() {
            let f = row[col].clone();
            for c in (col + 1)..ncols {
                let v = (p * &row[c] - &f * &prow[c]) / &prev;
                row[c] = v;
            }
            row[col] = BigInt::zero();
        }
        prev = p.clone();
        r += 1;
    }
    r
}

/// Primitive integer coordinates of a projective point.
fn integer_coords(p: &ProjPoint) -> [BigInt; 3] {
    let c = p.coords();
    let l = c.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    c.clone()
        .map(|v| (v * Q::from_integer(l.clone())).to_integer())
}

fn ipow(base: &BigInt, e: u32) -> BigInt {
    num_traits::pow(base.clone(), e as usize)
}

fn monomials(t: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in (0..=t).rev() {
        for b in (0..=t - a).rev() {
            out.push([a, b, t - a - b]);
        }
    }
    out
}

/// Falling factorial `n (n−1) … (n−k+1)`.
fn falling(n: u32, k: u32) -> u64 {
    (0..k).map(|i| u64::from(n - i)).product()
}

/// Dimension of the space of degree-`t` forms vanishing to order at least
/// `m_s` at each given point.
///
/// Vanishing to order `m` is imposed as the vanishing of every partial
/// derivative of order `< m`, and the dimension is the number of monomials
/// minus the exact rank of the resulting constraint matrix. Points are not
/// assumed to impose independent conditions. This is `h^0` of
/// `tH − Σ m_s E_s` on the blow-up at the points.
pub fn linear_system_dim(t: i64, points: &[(ProjPoint, u32)]) -> u64 {
    if t < 0 {
        return 0;
    }
    let t = t as u32;
    let monos = monomials(t);
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (point, mult) in points {
        // conditions are homogeneous, so rescaling the point changes nothing
        let [x, y, z] = integer_coords(point);
        for order in 0..*mult {
            if order > t {
                break;
            }
            for [i, j, k] in monomials(order) {
                let row = monos
                    .iter()
                    .map(|&[a, b, c]| {
                        if a < i || b < j || c < k {
                            return BigInt::zero();
                        }
                        let coeff = falling(a, i) * falling(b, j) * falling(c, k);
                        BigInt::from(coeff) * ipow(&x, a - i) * ipow(&y, b - j) * ipow(&z, c - k)
                    })
                    .collect();
                rows.push(row);
            }
        }
        // order > t derivatives vanish identically; a point of multiplicity > t
        // already kills every form through the order-t conditions
    }
    let n = monos.len() as u64;
    debug_assert_eq!(n, binomial(u64::from(t) + 2, 2));
    n - rank_integer(rows) as u64
}
