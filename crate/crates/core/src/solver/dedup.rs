use std::collections::BTreeMap;

use serde::Serialize;

use super::{SolutionRecord, SolverError};
use crate::cover::BranchData;
use crate::groups::{automorphisms, GroupElement, GroupType};

/// One automorphism orbit of solutions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub id: usize,
    /// Lexicographically smallest `(g′, dense x)` in the orbit.
    pub gprime: GroupElement,
    pub x: BranchData,
    /// Number of input records in this orbit.
    pub size: usize,
}

/// An automorphism as index maps over [`GroupType::elements`]: `alpha[i]` is
/// the image of character `i`, `g[i]` the image of element `i` under the dual action.
struct Action {
    alpha: Vec<usize>,
    g: Vec<usize>,
}

fn elementary_actions(group: &GroupType) -> Result<Vec<Action>, SolverError> {
    let elems = group.elements();
    Ok(automorphisms(group)?
        .iter()
        .map(|a| {
            let dual = a.dual();
            Action {
                alpha: elems.iter().map(|e| group.index_of(&a.apply(e))).collect(),
                g: elems
                    .iter()
                    .map(|e| group.index_of(&dual.apply(e)))
                    .collect(),
            }
        })
        .collect())
}

/// Every automorphism of an arbitrary finite abelian group, found by trying
/// all images of the basis, with its dual read off from the pairing.
fn brute_force_actions(group: &GroupType) -> Vec<Action> {
    let elems = group.elements();
    let n = elems.len();
    let k = group.rank();
    let exp = group.exponent();
    let basis: Vec<GroupElement> = (0..k).map(|i| group.basis(i)).collect();
    let candidates: Vec<Vec<usize>> = group
        .factors()
        .iter()
        .map(|&ni| {
            (0..n)
                .filter(|&j| ni % group.element_order(&elems[j]) == 0)
                .collect()
        })
        .collect();
    let pair = |g: &GroupElement, a: &GroupElement| group.pairing_numerator(g, a) % exp;
    let mut out = Vec::new();
    let mut choice = vec![0usize; k];
    loop {
        let images: Vec<&GroupElement> = (0..k).map(|i| &elems[candidates[i][choice[i]]]).collect();
        let alpha: Vec<usize> = elems
            .iter()
            .map(|e| {
                let mut acc = group.identity();
                for (c, img) in e.0.iter().zip(&images) {
                    for _ in 0..*c {
                        acc = group.add(&acc, img).expect("same group");
                    }
                }
                group.index_of(&acc)
            })
            .collect();
        let mut seen = vec![false; n];
        if alpha
            .iter()
            .all(|&j| !std::mem::replace(&mut seen[j], true))
        {
            // pairings are homomorphisms in α, so matching on the basis suffices
            let g = elems
                .iter()
                .map(|g| {
                    (0..n)
                        .find(|&h| {
                            basis
                                .iter()
                                .enumerate()
                                .all(|(i, e)| pair(&elems[h], images[i]) == pair(g, e))
                        })
                        .expect("the pairing is perfect")
                })
                .collect();
            out.push(Action { alpha, g });
        }
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn partition(
    group: &GroupType,
    records: &mut [SolutionRecord],
    actions: &[Action],
) -> Result<Vec<Orbit>, SolverError> {
    let elems = group.elements();
    let mut canon = Vec::with_capacity(records.len());
    for r in records.iter() {
        if &r.group != group {
            return Err(SolverError::GroupOrder {
                group: r.group.to_string(),
                order: group.order(),
            });
        }
        let gp = group.index_of(&r.gprime);
        let best = actions
            .iter()
            .map(|act| {
                let mut dense = vec![0u64; elems.len() - 1];
                for (alpha, d) in r.x.iter() {
                    dense[act.alpha[group.index_of(alpha)] - 1] = d;
                }
                (elems[act.g[gp]].0.clone(), dense)
            })
            .min()
            .expect("the identity is always an automorphism");
        canon.push(best);
    }
    let mut reps: BTreeMap<&(Vec<u64>, Vec<u64>), usize> = BTreeMap::new();
    for c in &canon {
        *reps.entry(c).or_insert(0) += 1;
    }
    let ids: BTreeMap<&(Vec<u64>, Vec<u64>), usize> =
        reps.keys().enumerate().map(|(i, &k)| (k, i)).collect();
    for (r, c) in records.iter_mut().zip(&canon) {
        r.orbit_id = Some(ids[c]);
    }
    let vars = &elems[1..];
    Ok(reps
        .into_iter()
        .enumerate()
        .map(|(id, ((gp, dense), size))| Orbit {
            id,
            gprime: GroupElement(gp.clone()),
            x: BranchData::new(group, vars.iter().cloned().zip(dense.iter().copied()))
                .expect("dense vector over nonzero elements"),
            size,
        })
        .collect())
}

/// Partitions `records` into orbits under `Aut(G)` and writes each record's `orbit_id`.
///
/// An automorphism `A` sends the character `α` to `Aα` and the distinguished
/// element `g′` to `(Aᵀ)⁻¹g′`, which keeps every pairing `Σ g_i α_i / n_i`
/// and hence the whole system invariant. Only elementary abelian groups are
/// supported; other groups leave the records untouched and return an error.
pub fn dedup(group: &GroupType, records: &mut [SolutionRecord]) -> Result<Vec<Orbit>, SolverError> {
    let actions = elementary_actions(group)?;
    partition(group, records, &actions)
}

/// Largest order accepted by [`dedup_exhaustive`].
pub const EXHAUSTIVE_DEDUP_MAX_ORDER: u64 = 64;

/// Like [`dedup`], but for any abelian group of order at most
/// [`EXHAUSTIVE_DEDUP_MAX_ORDER`], enumerating automorphisms by brute force.
///
/// The system only sees characters through the pairing modulo 1, so every
/// automorphism paired with its pairing-adjoint maps solutions to solutions.
pub fn dedup_exhaustive(
    group: &GroupType,
    records: &mut [SolutionRecord],
) -> Result<Vec<Orbit>, SolverError> {
    if group.order() > EXHAUSTIVE_DEDUP_MAX_ORDER {
        return Err(SolverError::BadOrder(group.order()));
    }
    let actions = brute_force_actions(group);
    partition(group, records, &actions)
}
