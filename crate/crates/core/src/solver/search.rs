//! Depth-first enumeration of all nonnegative integer solutions of a
//! [`FeasibilitySystem`].
//!
//! Variables are assigned most-constrained-first. Each row keeps a residual;
//! the upper bound for a variable is the smallest `residual / coefficient`
//! over the rows where it appears, and once the last variable of a row has
//! been assigned that row's residual must be zero.

use crate::cover::BranchData;

use super::{FeasibilitySystem, SolverError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Hard limit on node expansions per system; exceeding it is an error.
    pub node_cap: u64,
    /// Residual bounds and early row checks. Disabling them walks the full
    /// box given by the divisibility rows, which is only practical for small groups.
    pub pruning: bool,
    /// Deliberately drops the top value of every variable's range.
    #[doc(hidden)]
    pub fault_injection: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            node_cap: 1_000_000_000,
            pruning: true,
            fault_injection: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    /// All solutions, lexicographic in the dense `x` vector.
    pub solutions: Vec<BranchData>,
    pub nodes: u64,
}

struct Search<'a> {
    sys: &'a FeasibilitySystem,
    order: Vec<usize>,
    /// `(row, coefficient)` pairs with positive coefficient, per position in `order`.
    columns: Vec<Vec<(usize, i64)>>,
    /// Rows whose last positive coefficient sits at each position.
    closing: Vec<Vec<usize>>,
    static_bound: Vec<i64>,
    residual: Vec<i64>,
    x: Vec<u64>,
    nodes: u64,
    opts: &'a SearchOptions,
    found: Vec<Vec<u64>>,
}

impl Search<'_> {
    fn run(&mut self, pos: usize) -> Result<(), SolverError> {
        self.nodes += 1;
        if self.nodes > self.opts.node_cap {
            return Err(SolverError::NodeCap {
                group: self.sys.group.to_string(),
                gprime: self.sys.pattern.gprime().to_string(),
                cap: self.opts.node_cap,
            });
        }
        if pos == self.order.len() {
            if self.residual.iter().all(|&r| r == 0) {
                self.found.push(self.x.clone());
            }
            return Ok(());
        }
        let var = self.order[pos];
        let mut ub = if self.opts.pruning {
            self.columns[pos]
                .iter()
                .map(|&(r, a)| self.residual[r] / a)
                .min()
                .unwrap_or(0)
        } else {
            self.static_bound[var]
        };
        if self.opts.fault_injection && ub > 0 {
            ub -= 1;
        }
        for v in 0..=ub.max(0) {
            if v > 0 {
                for &(r, a) in &self.columns[pos] {
                    self.residual[r] -= a;
                }
            }
            self.x[var] = v as u64;
            let closed_ok =
                !self.opts.pruning || self.closing[pos].iter().all(|&r| self.residual[r] == 0);
            if closed_ok {
                self.run(pos + 1)?;
            }
        }
        for &(r, a) in &self.columns[pos] {
            self.residual[r] += a * ub.max(0);
        }
        self.x[var] = 0;
        Ok(())
    }
}

/// Every nonnegative integer solution of `sys`. An empty list means infeasible.
pub fn enumerate_solutions(
    sys: &FeasibilitySystem,
    opts: &SearchOptions,
) -> Result<SearchOutcome, SolverError> {
    let nvars = sys.vars.len();
    let nrows = sys.rows.len();
    let support = |v: usize| (0..nrows).filter(|&r| sys.rows[r][v] > 0).count();
    let mut order: Vec<usize> = (0..nvars).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(support(v)), v));

    let columns: Vec<Vec<(usize, i64)>> = order
        .iter()
        .map(|&v| {
            (0..nrows)
                .filter(|&r| sys.rows[r][v] > 0)
                .map(|r| (r, sys.rows[r][v] as i64))
                .collect()
        })
        .collect();
    let mut closing = vec![Vec::new(); nvars];
    for r in 0..nrows {
        let last = order.iter().rposition(|&v| sys.rows[r][v] > 0);
        match last {
            Some(p) => closing[p].push(r),
            // no variable can ever fill this row
            None if sys.rhs[r] != 0 => {
                return Ok(SearchOutcome {
                    solutions: vec![],
                    nodes: 0,
                })
            }
            None => {}
        }
    }
    let static_bound: Vec<i64> = (0..nvars)
        .map(|v| {
            sys.labels
                .iter()
                .enumerate()
                .filter(|(r, l)| {
                    matches!(l, super::RowLabel::Divisibility(_)) && sys.rows[*r][v] > 0
                })
                .map(|(r, _)| sys.rhs[r] / sys.rows[r][v] as i64)
                .min()
                .unwrap_or(0)
        })
        .collect();

    let mut search = Search {
        sys,
        order,
        columns,
        closing,
        static_bound,
        residual: sys.rhs.clone(),
        x: vec![0; nvars],
        nodes: 0,
        opts,
        found: Vec::new(),
    };
    search.run(0)?;
    let nodes = search.nodes;
    let mut found = search.found;
    found.sort();
    let solutions = found
        .into_iter()
        .map(|x| {
            BranchData::new(&sys.group, sys.vars.iter().cloned().zip(x))
                .expect("variables are nonzero group elements")
        })
        .collect();
    Ok(SearchOutcome { solutions, nodes })
}
