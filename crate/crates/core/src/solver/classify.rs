use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use super::{
    build_system, dedup, enumerate_solutions, Orbit, SearchOptions, SolverError, TargetPattern,
};
use crate::cover::{canonical_test, l_table, BranchData, CoverSpec};
use crate::groups::{enumerate_groups, GroupElement, GroupError, GroupType};

/// A verified solution of the system for `(group, gprime)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionRecord {
    pub group: GroupType,
    pub gprime: GroupElement,
    pub x: BranchData,
    #[serde(rename = "orbit")]
    pub orbit_id: Option<usize>,
    /// Whether the characters with `x_α > 0` generate the group.
    pub generating: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub search: SearchOptions,
    /// Drop solutions whose branch characters do not generate the group.
    pub require_generating: bool,
    /// Worker threads; `0` lets rayon decide.
    pub jobs: usize,
    /// Restrict to a single group of the order.
    pub group: Option<GroupType>,
    pub dedup: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            search: SearchOptions::default(),
            require_generating: false,
            jobs: 0,
            group: None,
            dedup: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupClassification {
    pub group: GroupType,
    /// Solutions kept after the optional generating filter.
    pub solutions: Vec<SolutionRecord>,
    pub raw_count: usize,
    pub generating_count: usize,
    /// `None` when deduplication was not requested or is unsupported for the group.
    pub orbits: Option<Vec<Orbit>>,
    /// Set when deduplication was requested but the group is not elementary abelian.
    pub dedup_unsupported: bool,
    pub nodes: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl GroupClassification {
    pub fn summary(&self) -> GroupSummary {
        GroupSummary {
            group: self.group.clone(),
            raw_count: self.raw_count,
            generating_count: self.generating_count,
            orbit_count: self.orbits.as_ref().map(Vec::len),
            nodes: self.nodes,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub order: u64,
    pub groups: Vec<GroupClassification>,
}

impl Classification {
    pub fn solvable(&self) -> bool {
        self.groups.iter().any(|g| !g.solutions.is_empty())
    }

    pub fn raw_count(&self) -> usize {
        self.groups.iter().map(|g| g.raw_count).sum()
    }

    pub fn get(&self, group: &GroupType) -> Option<&GroupClassification> {
        self.groups.iter().find(|g| &g.group == group)
    }
}

struct Cell {
    order_idx: usize,
    group_idx: usize,
    group: GroupType,
    gprime: GroupElement,
}

struct CellResult {
    records: Vec<SolutionRecord>,
    nodes: u64,
    elapsed: Duration,
}

fn verify(group: &GroupType, gprime: &GroupElement, x: &BranchData) -> Result<(), String> {
    let spec = CoverSpec::on_plane(group.clone(), x).map_err(|e| e.to_string())?;
    let table = l_table(&spec).map_err(|e| e.to_string())?;
    let pattern = TargetPattern::new(group, gprime.clone()).map_err(|e| e.to_string())?;
    let degrees = table
        .plane_degrees()
        .ok_or("non-integral l_g on the plane")?;
    for (g, l) in group.elements().iter().zip(degrees) {
        if l != pattern.target(g) {
            return Err(format!("l_{g} = {l}, expected {}", pattern.target(g)));
        }
    }
    let verdict = canonical_test(&spec);
    if !verdict.is_canonical_pattern {
        return Err(verdict.diagnostics.join("; "));
    }
    Ok(())
}

fn run_cell(cell: &Cell, opts: &SearchOptions) -> Result<CellResult, SolverError> {
    let start = Instant::now();
    let pattern = TargetPattern::new(&cell.group, cell.gprime.clone())?;
    let Some(sys) = build_system(&cell.group, &pattern) else {
        return Ok(CellResult {
            records: vec![],
            nodes: 0,
            elapsed: start.elapsed(),
        });
    };
    let out = enumerate_solutions(&sys, opts)?;
    let mut records = Vec::with_capacity(out.solutions.len());
    for x in out.solutions {
        let dense = x.to_dense(&cell.group);
        let check = if sys.satisfies(&dense) {
            verify(&cell.group, &cell.gprime, &x)
        } else {
            Err("system rows not satisfied".into())
        };
        if let Err(reason) = check {
            return Err(SolverError::Unsound {
                group: cell.group.to_string(),
                gprime: cell.gprime.to_string(),
                x: format!("{dense:?}"),
                reason,
            });
        }
        let generating = cell.group.generates(&x.support());
        records.push(SolutionRecord {
            group: cell.group.clone(),
            gprime: cell.gprime.clone(),
            x,
            orbit_id: None,
            generating,
        });
    }
    Ok(CellResult {
        records,
        nodes: out.nodes,
        elapsed: start.elapsed(),
    })
}

fn groups_for(order: u64, only: Option<&GroupType>) -> Result<Vec<GroupType>, SolverError> {
    if order < 2 {
        return Err(SolverError::BadOrder(order));
    }
    match only {
        Some(g) if g.order() != order => Err(SolverError::GroupOrder {
            group: g.to_string(),
            order,
        }),
        Some(g) => Ok(vec![g.clone()]),
        None => Ok(enumerate_groups(order)),
    }
}

fn classify_many(
    orders: &[u64],
    opts: &ClassifyOptions,
) -> Result<Vec<Classification>, SolverError> {
    let mut out = Vec::new();
    let mut cells = Vec::new();
    for (oi, &d) in orders.iter().enumerate() {
        let groups = groups_for(d, opts.group.as_ref())?;
        for (gi, g) in groups.iter().enumerate() {
            for gp in g.elements().into_iter().skip(1) {
                cells.push(Cell {
                    order_idx: oi,
                    group_idx: gi,
                    group: g.clone(),
                    gprime: gp,
                });
            }
        }
        out.push(Classification {
            order: d,
            groups: groups
                .into_iter()
                .map(|group| GroupClassification {
                    group,
                    solutions: vec![],
                    raw_count: 0,
                    generating_count: 0,
                    orbits: None,
                    dedup_unsupported: false,
                    nodes: 0,
                    elapsed: Duration::ZERO,
                })
                .collect(),
        });
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| SolverError::Cover(crate::cover::CoverError::Invalid(e.to_string())))?;
    // rayon's collect keeps input order, so the merge below never depends on scheduling
    let results: Vec<Result<CellResult, SolverError>> = pool.install(|| {
        cells
            .par_iter()
            .map(|c| run_cell(c, &opts.search))
            .collect()
    });

    for (cell, res) in cells.iter().zip(results) {
        let res = res?;
        let gc = &mut out[cell.order_idx].groups[cell.group_idx];
        gc.nodes += res.nodes;
        gc.elapsed += res.elapsed;
        gc.solutions.extend(res.records);
    }
    for class in &mut out {
        for gc in &mut class.groups {
            gc.solutions.sort_by(|a, b| {
                (&a.gprime, a.x.to_dense(&a.group)).cmp(&(&b.gprime, b.x.to_dense(&b.group)))
            });
            gc.raw_count = gc.solutions.len();
            gc.generating_count = gc.solutions.iter().filter(|r| r.generating).count();
            if opts.require_generating {
                gc.solutions.retain(|r| r.generating);
            }
            if opts.dedup && !gc.solutions.is_empty() {
                match dedup(&gc.group, &mut gc.solutions) {
                    Ok(orbits) => gc.orbits = Some(orbits),
                    Err(SolverError::Group(GroupError::UnsupportedAutomorphisms(_))) => {
                        gc.dedup_unsupported = true
                    }
                    Err(e) => return Err(e),
                }
            } else if opts.dedup {
                gc.orbits = Some(vec![]);
            }
        }
    }
    Ok(out)
}

/// Every solution for every abelian group of order `d` and every nonzero `g′`,
/// each re-verified through [`l_table`] and [`canonical_test`].
pub fn classify_order(d: u64, opts: &ClassifyOptions) -> Result<Classification, SolverError> {
    Ok(classify_many(&[d], opts)?.remove(0))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupSummary {
    pub group: GroupType,
    pub raw_count: usize,
    pub generating_count: usize,
    pub orbit_count: Option<usize>,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub order: u64,
    pub solvable: bool,
    pub raw_count: usize,
    pub generating_count: usize,
    pub groups: Vec<GroupSummary>,
    /// Summed search time over the order's cells; excluded from JSON.
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepTable {
    pub d_min: u64,
    pub d_max: u64,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    /// Orders with at least one solution.
    pub fn solvable(&self) -> Vec<u64> {
        self.rows
            .iter()
            .filter(|r| r.solvable)
            .map(|r| r.order)
            .collect()
    }
}

impl fmt::Display for SweepTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:>5}  {:>8}  {:>5}  {:>5}  {:>12}  {:>9}  groups",
            "order", "solvable", "raw", "gen", "nodes", "time"
        )?;
        for r in &self.rows {
            let nodes: u64 = r.groups.iter().map(|g| g.nodes).sum();
            let groups: Vec<String> = r
                .groups
                .iter()
                .map(|g| match g.orbit_count {
                    Some(o) if g.raw_count > 0 => format!("{}:{}/{}o", g.group, g.raw_count, o),
                    _ => format!("{}:{}", g.group, g.raw_count),
                })
                .collect();
            writeln!(
                f,
                "{:>5}  {:>8}  {:>5}  {:>5}  {:>12}  {:>8.3}s  {}",
                r.order,
                if r.solvable { "yes" } else { "no" },
                r.raw_count,
                r.generating_count,
                nodes,
                r.elapsed.as_secs_f64(),
                groups.join(" ")
            )?;
        }
        write!(f, "solvable orders: {:?}", self.solvable())
    }
}

/// Classifies every order in `d_min..=d_max`.
pub fn sweep(d_min: u64, d_max: u64, opts: &ClassifyOptions) -> Result<SweepTable, SolverError> {
    if d_min < 2 {
        return Err(SolverError::BadOrder(d_min));
    }
    if d_max < d_min {
        return Err(SolverError::BadOrder(d_max));
    }
    let orders: Vec<u64> = (d_min..=d_max).collect();
    let opts = ClassifyOptions {
        group: None,
        ..opts.clone()
    };
    let rows = classify_many(&orders, &opts)?
        .into_iter()
        .map(|c| SweepRow {
            order: c.order,
            solvable: c.solvable(),
            raw_count: c.raw_count(),
            generating_count: c.groups.iter().map(|g| g.generating_count).sum(),
            elapsed: c.groups.iter().map(|g| g.elapsed).sum(),
            groups: c.groups.iter().map(GroupClassification::summary).collect(),
        })
        .collect();
    Ok(SweepTable { d_min, d_max, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(f: &[u64]) -> GroupType {
        GroupType::new(f.to_vec()).unwrap()
    }

    #[test]
    fn order_two_is_the_octic() {
        let c = classify_order(2, &ClassifyOptions::default()).unwrap();
        let recs = &c.get(&g(&[2])).unwrap().solutions;
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].x.get(&GroupElement(vec![1])), 8);
        assert_eq!(recs[0].orbit_id, Some(0));
    }

    #[test]
    fn order_sixteen_only_elementary() {
        let c = classify_order(16, &ClassifyOptions::default()).unwrap();
        for gc in &c.groups {
            if gc.group == g(&[2, 2, 2, 2]) {
                assert_eq!(gc.raw_count, 15);
                assert_eq!(gc.orbits.as_ref().unwrap().len(), 1);
            } else {
                assert!(gc.solutions.is_empty(), "{}", gc.group);
            }
        }
    }

    #[test]
    fn group_filter_checks_order() {
        let opts = ClassifyOptions {
            group: Some(g(&[3, 3])),
            ..Default::default()
        };
        assert!(matches!(
            classify_order(8, &opts),
            Err(SolverError::GroupOrder { .. })
        ));
        let c = classify_order(9, &opts).unwrap();
        assert_eq!(c.groups.len(), 1);
        assert!(classify_order(1, &ClassifyOptions::default()).is_err());
    }

    #[test]
    fn non_elementary_dedup_is_flagged() {
        let c = classify_order(4, &ClassifyOptions::default()).unwrap();
        let z4 = c.get(&g(&[4])).unwrap();
        assert!(z4.dedup_unsupported);
        assert!(z4.orbits.is_none());
        assert!(z4.solutions.iter().all(|r| r.orbit_id.is_none()));
    }

    #[test]
    fn small_sweep() {
        let t = sweep(2, 9, &ClassifyOptions::default()).unwrap();
        assert_eq!(t.solvable(), vec![2, 3, 4, 6, 8, 9]);
        assert!(sweep(5, 4, &ClassifyOptions::default()).is_err());
    }
}
