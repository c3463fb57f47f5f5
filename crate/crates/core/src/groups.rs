//! Finite abelian groups in invariant-factor form.
//!
//! A group `Z_{n_1} ⊕ … ⊕ Z_{n_k}` is stored as its invariant-factor chain
//! `n_1 | n_2 | … | n_k`; elements are residue vectors. The character pairing
//! `⟨g, α⟩ = Σ g_i α_i / n_i (mod 1)` is evaluated over the common denominator
//! `n_k` (the exponent of the group) so everything stays in integers.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid invariant factors {0:?}: need n_i >= 2 and n_i | n_(i+1)")]
    InvalidFactors(Vec<u64>),
    #[error("element {element:?} does not belong to group {group}")]
    Mismatch { group: String, element: Vec<u64> },
    #[error("unsupported group for automorphism enumeration: {0} is not elementary abelian")]
    UnsupportedAutomorphisms(String),
}

/// A finite abelian group as an invariant-factor chain.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GroupType {
    factors: Vec<u64>,
}

impl<'de> Deserialize<'de> for GroupType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            factors: Vec<u64>,
        }
        let raw = Raw::deserialize(d)?;
        GroupType::new(raw.factors).map_err(serde::de::Error::custom)
    }
}

/// Residue vector of a group element; only meaningful together with its [`GroupType`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub Vec<u64>);

impl GroupElement {
    pub fn residues(&self) -> &[u64] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&r| r == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

impl GroupType {
    /// Builds a group from an invariant-factor chain, rejecting anything else.
    pub fn new(factors: Vec<u64>) -> Result<Self, GroupError> {
        let chain_ok =
            factors.iter().all(|&n| n >= 2) && factors.windows(2).all(|w| w[1] % w[0] == 0);
        if !chain_ok {
            return Err(GroupError::InvalidFactors(factors));
        }
        Ok(Self { factors })
    }

    /// Converts an arbitrary direct sum of cyclic groups (for instance a
    /// primary decomposition like `Z_2 ⊕ Z_3`) into invariant-factor form.
    pub fn from_cyclic_factors(orders: &[u64]) -> Result<Self, GroupError> {
        if orders.contains(&0) {
            return Err(GroupError::InvalidFactors(orders.to_vec()));
        }
        // prime -> exponents of the cyclic prime-power pieces
        let mut powers: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
        for &n in orders {
            for (p, a) in factorize(n) {
                powers.entry(p).or_default().push(a);
            }
        }
        let k = powers.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; k];
        for (p, mut exps) in powers {
            exps.sort_unstable();
            // largest exponents go to the largest invariant factors
            let offset = k - exps.len();
            for (j, a) in exps.into_iter().enumerate() {
                factors[offset + j] *= p.pow(a as u32);
            }
        }
        Self::new(factors)
    }

    pub fn trivial() -> Self {
        Self { factors: vec![] }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    /// Number of cyclic factors `k`.
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    /// The largest invariant factor (1 for the trivial group).
    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    /// `Some(p)` when every invariant factor equals the same prime `p`.
    pub fn elementary_prime(&self) -> Option<u64> {
        let p = *self.factors.first()?;
        (is_prime(p) && self.factors.iter().all(|&n| n == p)).then_some(p)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    /// The `i`-th standard generator `e_i`.
    pub fn basis(&self, i: usize) -> GroupElement {
        let mut r = vec![0; self.rank()];
        r[i] = 1;
        GroupElement(r)
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.0.len() == self.rank() && g.0.iter().zip(&self.factors).all(|(&r, &n)| r < n)
    }

    fn check(&self, g: &GroupElement) -> Result<(), GroupError> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(GroupError::Mismatch {
                group: self.to_string(),
                element: g.0.clone(),
            })
        }
    }

    /// Reduces an arbitrary integer vector into the group.
    pub fn reduce(&self, residues: &[i64]) -> Result<GroupElement, GroupError> {
        if residues.len() != self.rank() {
            return Err(GroupError::Mismatch {
                group: self.to_string(),
                element: residues.iter().map(|&r| r as u64).collect(),
            });
        }
        Ok(GroupElement(
            residues
                .iter()
                .zip(&self.factors)
                .map(|(&r, &n)| r.rem_euclid(n as i64) as u64)
                .collect(),
        ))
    }

    /// All elements in lexicographic order of their residue vectors, identity first.
    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.order()).map(|i| self.element_at(i)).collect()
    }

    /// The element at position `index` of [`GroupType::elements`].
    pub fn element_at(&self, mut index: u64) -> GroupElement {
        let mut r = vec![0; self.rank()];
        for (slot, &n) in r.iter_mut().zip(&self.factors).rev() {
            *slot = index % n;
            index /= n;
        }
        GroupElement(r)
    }

    /// Position of `g` in [`GroupType::elements`].
    pub fn index_of(&self, g: &GroupElement) -> usize {
        g.0.iter()
            .zip(&self.factors)
            .fold(0u64, |acc, (&r, &n)| acc * n + r) as usize
    }

    pub fn add(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(g)?;
        self.check(h)?;
        Ok(GroupElement(
            g.0.iter()
                .zip(&h.0)
                .zip(&self.factors)
                .map(|((&a, &b), &n)| (a + b) % n)
                .collect(),
        ))
    }

    pub fn neg(&self, g: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(g)?;
        Ok(GroupElement(
            g.0.iter()
                .zip(&self.factors)
                .map(|(&a, &n)| (n - a) % n)
                .collect(),
        ))
    }

    /// Multiplicative order of `g` in the group.
    pub fn element_order(&self, g: &GroupElement) -> u64 {
        g.0.iter()
            .zip(&self.factors)
            .fold(1u64, |acc, (&r, &n)| acc.lcm(&(n / n.gcd(&r))))
    }

    /// Numerator of `Σ g_i α_i / n_i` over the common denominator [`GroupType::exponent`].
    /// Not reduced modulo the denominator.
    pub fn pairing_numerator(&self, g: &GroupElement, alpha: &GroupElement) -> u64 {
        let e = self.exponent();
        g.0.iter()
            .zip(&alpha.0)
            .zip(&self.factors)
            .map(|((&a, &b), &n)| a * b * (e / n))
            .sum()
    }

    /// Whether the given elements generate the whole group.
    pub fn generates(&self, gens: &[GroupElement]) -> bool {
        let n = self.order() as usize;
        let mut seen = vec![false; n];
        let mut stack = vec![self.identity()];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for s in gens {
                let y = GroupElement(
                    x.0.iter()
                        .zip(&s.0)
                        .zip(&self.factors)
                        .map(|((&a, &b), &m)| (a + b) % m)
                        .collect(),
                );
                let i = self.index_of(&y);
                if !seen[i] {
                    seen[i] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == n
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, n) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, "]")
    }
}

/// Every abelian group of the given order, once each, in invariant-factor form.
///
/// Sorted by number of factors, then lexicographically by the factor list.
pub fn enumerate_groups(order: u64) -> Vec<GroupType> {
    if order <= 1 {
        return vec![GroupType::trivial()];
    }
    let primes = factorize(order);
    // cartesian product of partitions of each prime exponent
    let mut combos: Vec<Vec<(u64, Vec<u64>)>> = vec![vec![]];
    for (p, a) in primes {
        let parts = partitions(a);
        combos = combos
            .into_iter()
            .flat_map(|prefix| {
                parts.iter().map(move |part| {
                    let mut next = prefix.clone();
                    next.push((p, part.clone()));
                    next
                })
            })
            .collect();
    }
    let mut groups: Vec<GroupType> = combos
        .into_iter()
        .map(|combo| {
            let orders: Vec<u64> = combo
                .iter()
                .flat_map(|(p, part)| part.iter().map(move |&e| p.pow(e as u32)))
                .collect();
            GroupType::from_cyclic_factors(&orders).expect("prime powers form a valid group")
        })
        .collect();
    groups.sort_by(|a, b| (a.rank(), &a.factors).cmp(&(b.rank(), &b.factors)));
    groups.dedup();
    groups
}

/// Partitions of `n` as non-increasing lists.
fn partitions(n: u64) -> Vec<Vec<u64>> {
    fn rec(n: u64, max: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if n == 0 {
            out.push(acc.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            acc.push(part);
            rec(n - part, part, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut a = 0;
            while n.is_multiple_of(p) {
                n /= p;
                a += 1;
            }
            out.push((p, a));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

/// An automorphism of an elementary abelian group `(Z_p)^k`, as an invertible
/// `k × k` matrix over `F_p` acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupAutomorphism {
    p: u64,
    matrix: Vec<Vec<u64>>,
}

impl GroupAutomorphism {
    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.matrix
    }

    pub fn identity(p: u64, k: usize) -> Self {
        let matrix = (0..k)
            .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
            .collect();
        Self { p, matrix }
    }

    /// `α ↦ Aα (mod p)`.
    pub fn apply(&self, g: &GroupElement) -> GroupElement {
        GroupElement(
            self.matrix
                .iter()
                .map(|row| row.iter().zip(&g.0).map(|(a, b)| a * b).sum::<u64>() % self.p)
                .collect(),
        )
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let k = self.matrix.len();
        let matrix = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        (0..k)
                            .map(|l| self.matrix[i][l] * other.matrix[l][j])
                            .sum::<u64>()
                            % self.p
                    })
                    .collect()
            })
            .collect();
        Self { p: self.p, matrix }
    }

    pub fn transpose(&self) -> Self {
        let k = self.matrix.len();
        let matrix = (0..k)
            .map(|i| (0..k).map(|j| self.matrix[j][i]).collect())
            .collect();
        Self { p: self.p, matrix }
    }

    /// Inverse by Gauss–Jordan elimination over `F_p`.
    pub fn inverse(&self) -> Self {
        let k = self.matrix.len();
        let p = self.p;
        let mut aug: Vec<Vec<u64>> = self
            .matrix
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r.extend((0..k).map(|j| u64::from(i == j)));
                r
            })
            .collect();
        for col in 0..k {
            let pivot = (col..k)
                .find(|&r| aug[r][col] != 0)
                .expect("automorphism matrices are invertible");
            aug.swap(col, pivot);
            let inv = mod_inverse(aug[col][col], p);
            for v in aug[col].iter_mut() {
                *v = *v * inv % p;
            }
            for r in 0..k {
                if r != col && aug[r][col] != 0 {
                    let f = aug[r][col];
                    for c in 0..2 * k {
                        aug[r][c] = (aug[r][c] + p * p - f * aug[col][c] % p) % p;
                    }
                }
            }
        }
        let matrix = aug.into_iter().map(|r| r[k..].to_vec()).collect();
        Self { p, matrix }
    }

    /// The dual action `(Aᵀ)⁻¹`, which preserves the pairing `⟨A*g, Aα⟩ = ⟨g, α⟩`.
    pub fn dual(&self) -> Self {
        self.transpose().inverse()
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let e = (a as i64).extended_gcd(&(p as i64));
    e.x.rem_euclid(p as i64) as u64
}

/// The full automorphism group `GL(k, F_p)` of an elementary abelian group.
///
/// Matrices are generated row by row, each new row chosen outside the span of
/// the previous ones, so exactly `∏ (p^k − p^i)` matrices come out.
pub fn automorphisms(group: &GroupType) -> Result<Vec<GroupAutomorphism>, GroupError> {
    let p = group
        .elementary_prime()
        .ok_or_else(|| GroupError::UnsupportedAutomorphisms(group.to_string()))?;
    let k = group.rank();
    let vectors: Vec<Vec<u64>> = group.elements().into_iter().map(|g| g.0).collect();
    let mut out = Vec::new();
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(k);
    extend_rows(p, k, &vectors, &mut rows, &mut out);
    Ok(out)
}

fn extend_rows(
    p: u64,
    k: usize,
    vectors: &[Vec<u64>],
    rows: &mut Vec<Vec<u64>>,
    out: &mut Vec<GroupAutomorphism>,
) {
    if rows.len() == k {
        out.push(GroupAutomorphism {
            p,
            matrix: rows.clone(),
        });
        return;
    }
    let span = span_indicator(p, k, rows);
    for (idx, v) in vectors.iter().enumerate() {
        if span[idx] {
            continue;
        }
        rows.push(v.clone());
        extend_rows(p, k, vectors, rows, out);
        rows.pop();
    }
}

/// Marks which vectors (indexed as in lexicographic element order) lie in the span of `rows`.
fn span_indicator(p: u64, k: usize, rows: &[Vec<u64>]) -> Vec<bool> {
    let total = p.pow(k as u32) as usize;
    let mut in_span = vec![false; total];
    let m = rows.len();
    for coeffs in 0..p.pow(m as u32) {
        let mut c = coeffs;
        let mut v = vec![0u64; k];
        for row in rows {
            let a = c % p;
            c /= p;
            for (slot, &r) in v.iter_mut().zip(row) {
                *slot = (*slot + a * r) % p;
            }
        }
        let idx = v.iter().fold(0u64, |acc, &r| acc * p + r) as usize;
        in_span[idx] = true;
    }
    in_span
}
