use crate::cover::c_coeff;
use crate::groups::{GroupElement, GroupType};

use super::SolverError;

/// The target pushforward: `l_{g′} = 4`, `l_g = 2` for the other nonzero `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetPattern {
    gprime: GroupElement,
}

impl TargetPattern {
    pub fn new(group: &GroupType, gprime: GroupElement) -> Result<Self, SolverError> {
        if !group.contains(&gprime) || gprime.is_identity() {
            return Err(SolverError::BadPattern);
        }
        Ok(Self { gprime })
    }

    pub fn gprime(&self) -> &GroupElement {
        &self.gprime
    }

    pub fn target(&self, g: &GroupElement) -> i64 {
        if g.is_identity() {
            0
        } else if g == &self.gprime {
            4
        } else {
            2
        }
    }
}

/// Which equation a row encodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowLabel {
    /// `l_g` row for a nonzero element.
    Element(GroupElement),
    /// `n_i l_{e_i} = Σ α_i x_α`, 0-based `i`.
    Divisibility(usize),
}

/// `A x = b` over the nonzero characters, with `A ≥ 0` entrywise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilitySystem {
    pub group: GroupType,
    pub pattern: TargetPattern,
    /// Variables: the nonzero elements in lexicographic order.
    pub vars: Vec<GroupElement>,
    pub rows: Vec<Vec<u64>>,
    pub rhs: Vec<i64>,
    pub labels: Vec<RowLabel>,
}

impl FeasibilitySystem {
    /// Whether `x` (dense over `vars`) satisfies every row exactly.
    pub fn satisfies(&self, x: &[u64]) -> bool {
        self.rows
            .iter()
            .zip(&self.rhs)
            .all(|(row, &b)| row.iter().zip(x).map(|(a, v)| (a * v) as i64).sum::<i64>() == b)
    }
}

/// Builds the system for `pattern`, or `None` when some right-hand side is
/// negative (no nonnegative combination can reach it).
pub fn build_system(group: &GroupType, pattern: &TargetPattern) -> Option<FeasibilitySystem> {
    assemble(group, pattern, |g| pattern.target(g))
}

fn assemble(
    group: &GroupType,
    pattern: &TargetPattern,
    target: impl Fn(&GroupElement) -> i64,
) -> Option<FeasibilitySystem> {
    let vars: Vec<GroupElement> = group.elements().into_iter().skip(1).collect();
    let le: Vec<i64> = (0..group.rank()).map(|i| target(&group.basis(i))).collect();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let mut labels = Vec::new();
    for g in &vars {
        rows.push(vars.iter().map(|a| c_coeff(group, g, a)).collect());
        let lin: i64 = g.0.iter().zip(&le).map(|(&gi, &l)| gi as i64 * l).sum();
        rhs.push(lin - target(g));
        labels.push(RowLabel::Element(g.clone()));
    }
    for (i, &n) in group.factors().iter().enumerate() {
        rows.push(vars.iter().map(|a| a.0[i]).collect());
        rhs.push(n as i64 * le[i]);
        labels.push(RowLabel::Divisibility(i));
    }
    if rhs.iter().any(|&b| b < 0) {
        return None;
    }
    Some(FeasibilitySystem {
        group: group.clone(),
        pattern: pattern.clone(),
        vars,
        rows,
        rhs,
        labels,
    })
}
