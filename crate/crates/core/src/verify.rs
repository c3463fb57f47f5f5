//! Reproducible checks of the crate's headline numeric claims.
//!
//! Each claim has a short id usable with `verify-paper --only`. Claims run the
//! library end to end (solver, cover, geometry) and never consult stored answers
//! beyond the expected values written here.

use std::collections::BTreeMap;

use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::catalog::{self, Octet};
use crate::cover::{
    canonical_class, canonical_test, invariants, l_table, pushforward_degrees, CoverError,
    CoverSpec,
};
use crate::geometry::{DivisorClass, Q};
use crate::groups::{GroupElement, GroupType};
use crate::solver::{
    classify_order, dedup_exhaustive, sweep, Classification, ClassifyOptions, SearchOptions,
    SolverError,
};

/// `(id, statement)` for every claim, in run order.
pub const CLAIMS: [(&str, &str); 9] = [
    ("order36", "no group of order 36 admits a nonnegative integral solution"),
    ("order16", "order 16 is solvable only on Z_2^4, by a single automorphism orbit containing the four listed solution sets"),
    ("sweep", "over orders 2..=36 the solvable orders are exactly 2, 3, 4, 6, 8, 9, 16"),
    ("families", "every listed low-degree family is a solver solution and the families cover every orbit"),
    ("campedelli", "the Z_2^3 cover on seven generic lines has p_g = q = 0, chi = 1, K^2 = 2"),
    ("degree16", "the sixteen-sheeted cover has p_g = 3, q = 0, chi = 4, K^2 = 16, p_2 = 20 and pushforward O + O(-2)^14 + O(-4)"),
    ("blowup", "a triple point gives K = pullback of H with K^2 = 16; a fourfold point gives K^2 < 16"),
    ("tan", "the Z_5^2 quintic cover has chi = 5, K^2 = 25; the nine-line Z_3^2 covers have p_g = 8 - n"),
    ("properties", "every solution of order <= 16 re-verifies, has pullback degree 1 and chi = p_g - q + 1; output is independent of the thread count"),
];

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown claim id {0:?}")]
    UnknownClaim(String),
}

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    /// Run only these claim ids.
    pub only: Option<Vec<String>>,
    /// Worker threads for solver runs; `0` lets rayon decide.
    pub jobs: usize,
    /// Cripples the search (see [`SearchOptions::fault_injection`]) to show
    /// that the checks can fail.
    #[doc(hidden)]
    pub inject_fault: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimResult {
    pub id: String,
    pub claim: String,
    pub passed: bool,
    /// What was computed, one finding per entry.
    pub details: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub results: Vec<ClaimResult>,
    pub all_passed: bool,
}

type Outcome = Result<(bool, Vec<String>), String>;

struct Ctx {
    opts: ClassifyOptions,
    cache: BTreeMap<u64, Classification>,
}

impl Ctx {
    fn classify(&mut self, d: u64) -> Result<&Classification, SolverError> {
        if !self.cache.contains_key(&d) {
            let c = classify_order(d, &self.opts)?;
            self.cache.insert(d, c);
        }
        Ok(&self.cache[&d])
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn g(f: &[u64]) -> GroupType {
    GroupType::new(f.to_vec()).expect("valid group")
}

fn order36(ctx: &mut Ctx) -> Outcome {
    let c = ctx.classify(36).map_err(err)?;
    let mut details = Vec::new();
    for gc in &c.groups {
        details.push(format!(
            "{}: {} solutions, {} nodes, search complete",
            gc.group, gc.raw_count, gc.nodes
        ));
    }
    Ok((c.groups.len() == 4 && c.raw_count() == 0, details))
}

fn order16(ctx: &mut Ctx) -> Outcome {
    let c = ctx.classify(16).map_err(err)?;
    let target = g(&[2, 2, 2, 2]);
    let mut ok = true;
    let mut details = Vec::new();
    for gc in &c.groups {
        if gc.group != target && gc.raw_count > 0 {
            ok = false;
        }
        details.push(format!("{}: {} solutions", gc.group, gc.raw_count));
    }
    let Some(gc) = c.get(&target) else {
        return Ok((false, details));
    };
    let orbits = gc.orbits.as_ref().map_or(0, Vec::len);
    details.push(format!("Z_2^4 orbits: {orbits}"));
    ok &= orbits == 1 && gc.raw_count > 0;
    let sets = catalog::order16_solution_sets();
    for (i, (gp, alphas)) in sets.iter().enumerate() {
        let found = gc.solutions.iter().find(|r| {
            &r.gprime == gp
                && r.x.total_degree() == alphas.len() as u64
                && alphas.iter().all(|a| r.x.get(a) == 1)
        });
        match found {
            Some(r) => details.push(format!(
                "listed set ({}) with g' = {gp} found in orbit {}",
                i + 1,
                r.orbit_id.map_or("?".into(), |o| o.to_string())
            )),
            None => {
                ok = false;
                details.push(format!("listed set ({}) with g' = {gp} missing", i + 1));
            }
        }
    }
    Ok((ok, details))
}

fn sweep_claim(ctx: &mut Ctx) -> Outcome {
    let table = sweep(2, 36, &ctx.opts).map_err(err)?;
    let solvable = table.solvable();
    let details = vec![
        format!("solvable orders: {solvable:?}"),
        format!(
            "raw solution counts: {:?}",
            table
                .rows
                .iter()
                .filter(|r| r.solvable)
                .map(|r| (r.order, r.raw_count))
                .collect::<Vec<_>>()
        ),
    ];
    Ok((solvable == vec![2, 3, 4, 6, 8, 9, 16], details))
}

fn families(ctx: &mut Ctx) -> Outcome {
    let fams = catalog::families();
    let mut ok = true;
    let mut details = Vec::new();
    let mut degrees: Vec<u64> = fams.iter().map(|f| f.degree).collect();
    degrees.dedup();
    for d in degrees {
        let c = ctx.classify(d).map_err(err)?;
        // (group, orbit) covered by some family
        let mut covered: BTreeMap<(GroupType, usize), Vec<&str>> = BTreeMap::new();
        let mut total_orbits = 0;
        let listed: Vec<_> = fams.iter().filter(|f| f.degree == d).collect();
        let mut orbit_of = BTreeMap::new();
        for gc in &c.groups {
            let mut recs = gc.solutions.clone();
            let orbits = dedup_exhaustive(&gc.group, &mut recs).map_err(err)?;
            total_orbits += orbits.len();
            for o in 0..orbits.len() {
                covered.insert((gc.group.clone(), o), vec![]);
            }
            for r in recs {
                orbit_of
                    .entry((gc.group.clone(), r.x.clone()))
                    .or_insert(r.orbit_id);
            }
        }
        for f in &listed {
            match orbit_of.get(&(f.group.clone(), f.data.clone())) {
                Some(Some(o)) => covered
                    .get_mut(&(f.group.clone(), *o))
                    .expect("orbit exists")
                    .push(f.label),
                _ => {
                    ok = false;
                    details.push(format!(
                        "family {} ({}) not found among solutions",
                        f.label, f.equations
                    ));
                }
            }
        }
        let uncovered: Vec<_> = covered
            .iter()
            .filter(|(_, labels)| labels.is_empty())
            .map(|((grp, o), _)| format!("{grp}#{o}"))
            .collect();
        ok &= uncovered.is_empty();
        let groups: Vec<String> = covered
            .iter()
            .map(|((grp, o), labels)| {
                format!(
                    "{grp}#{o}<-{}",
                    if labels.is_empty() {
                        "none".into()
                    } else {
                        labels.join("+")
                    }
                )
            })
            .collect();
        for ((grp, _), labels) in &covered {
            if labels.len() > 1 {
                details.push(format!(
                    "degree {d}: families {} give the same {grp} solution up to automorphism",
                    labels.join(", ")
                ));
            }
        }
        details.push(format!(
            "degree {d}: {} listed families, {} raw solutions, {} orbits under all automorphisms [{}]",
            listed.len(),
            c.raw_count(),
            total_orbits,
            groups.join(", ")
        ));
    }
    Ok((ok, details))
}

fn spec_of(f: crate::cover::CoverSpecFile) -> Result<CoverSpec, String> {
    f.to_spec().map(|(s, _)| s).map_err(err)
}

fn campedelli(_: &mut Ctx) -> Outcome {
    let inv = invariants(&spec_of(catalog::campedelli())?).map_err(err)?;
    let ok = (inv.p_g, inv.q, inv.chi) == (0, 0, 1) && inv.k_selfint == Q::from_integer(2.into());
    Ok((
        ok,
        vec![format!(
            "p_g = {}, q = {}, chi = {}, K^2 = {}, K = {}",
            inv.p_g, inv.q, inv.chi, inv.k_selfint, inv.k_class
        )],
    ))
}

fn degree16(_: &mut Ctx) -> Outcome {
    let spec = spec_of(catalog::sixteen_sheeted(Octet::Generic))?;
    let inv = invariants(&spec).map_err(err)?;
    let push = pushforward_degrees(&spec).map_err(err)?;
    let mut want = vec![-4];
    want.extend([-2; 14]);
    want.push(0);
    let p2 = inv
        .plurigenera
        .as_ref()
        .and_then(|p| p.first())
        .map(|&(_, v)| v);
    let verdict = canonical_test(&spec);
    let ok = (inv.p_g, inv.q, inv.chi) == (3, 0, 4)
        && inv.k_selfint == Q::from_integer(16.into())
        && p2 == Some(20)
        && push == want
        && verdict.is_canonical_pattern;
    Ok((
        ok,
        vec![
            format!(
                "p_g = {}, q = {}, chi = {}, K^2 = {}, p_2 = {:?}",
                inv.p_g, inv.q, inv.chi, inv.k_selfint, p2
            ),
            format!("pushforward degrees {push:?}"),
            format!("canonical pattern: {}", verdict.is_canonical_pattern),
        ],
    ))
}

fn blowup(_: &mut Ctx) -> Outcome {
    let mut ok = true;
    let mut details = Vec::new();
    for o in [
        Octet::TriplePoint,
        Octet::FourFoldBranched,
        Octet::FourFoldUnbranched,
    ] {
        let (spec, curves) = catalog::sixteen_sheeted(o).to_spec().map_err(err)?;
        let k = canonical_class(&spec).map_err(err)?;
        let inv = invariants(&spec).map_err(err)?;
        let chars: Vec<String> = curves.iter().map(|c| c.character.to_string()).collect();
        let sixteen = Q::from_integer(16.into());
        ok &= match o {
            Octet::TriplePoint => k == DivisorClass::from_ints(1, &[0]) && inv.k_selfint == sixteen,
            _ => inv.k_selfint < sixteen,
        };
        details.push(format!(
            "{o:?}: exceptional characters {chars:?}, K = {k}, K^2 = {}",
            inv.k_selfint
        ));
    }
    Ok((ok, details))
}

fn tan(_: &mut Ctx) -> Outcome {
    let inv = invariants(&spec_of(catalog::tan_quintic())?).map_err(err)?;
    let mut ok = inv.chi == 5 && inv.k_selfint == Q::from_integer(25.into());
    let mut details = vec![format!(
        "quintic Z_5^2 cover: chi = {}, K^2 = {}, p_g = {}",
        inv.chi, inv.k_selfint, inv.p_g
    )];
    for n in 0..=3usize {
        let (spec, curves) = catalog::tan_triple(n).to_spec().map_err(err)?;
        let inv = invariants(&spec).map_err(err)?;
        ok &= inv.p_g == 8 - n as u64;
        details.push(format!(
            "nine lines, n = {n}: {} triple points blown up, p_g = {} (expected {})",
            curves.len(),
            inv.p_g,
            8 - n
        ));
    }
    Ok((ok, details))
}

fn properties(ctx: &mut Ctx) -> Outcome {
    let mut checked = 0usize;
    let mut failures = Vec::new();
    let mut disconnected = 0usize;
    for d in 2..=16 {
        let c = ctx.classify(d).map_err(err)?;
        for gc in &c.groups {
            for r in &gc.solutions {
                checked += 1;
                let spec = CoverSpec::on_plane(r.group.clone(), &r.x).map_err(err)?;
                let label = format!("{} g'={} x={:?}", r.group, r.gprime, r.x.to_dense(&r.group));
                if !pattern_holds(&spec, &r.gprime).map_err(err)?
                    || !canonical_test(&spec).is_canonical_pattern
                {
                    failures.push(format!("{label}: does not re-verify"));
                }
                let mut deg = Q::from_integer((-3).into());
                for (a, x) in r.x.iter() {
                    let e = crate::cover::ramification(&r.group, a).map_err(err)?;
                    deg += (Q::one() - Q::new(1.into(), e.into())) * Q::from_integer(x.into());
                }
                if deg != Q::one() {
                    failures.push(format!("{label}: pullback degree {deg}"));
                }
                if !r.generating {
                    disconnected += 1;
                    continue;
                }
                let inv = invariants(&spec).map_err(err)?;
                if inv.chi != inv.p_g as i64 - inv.q as i64 + 1 {
                    failures.push(format!(
                        "{label}: chi {} vs p_g {} q {}",
                        inv.chi, inv.p_g, inv.q
                    ));
                }
            }
        }
    }
    let single = ClassifyOptions {
        jobs: 1,
        ..ctx.opts.clone()
    };
    let many = ClassifyOptions {
        jobs: 4,
        ..ctx.opts.clone()
    };
    let a = serde_json::to_string(&classify_order(16, &single).map_err(err)?).map_err(err)?;
    let b = serde_json::to_string(&classify_order(16, &many).map_err(err)?).map_err(err)?;
    let deterministic = a == b;
    let mut details = vec![
        format!("{checked} solutions re-verified through l_table and the canonical test"),
        format!(
            "{disconnected} solutions with non-generating support (chi identity not applicable)"
        ),
        format!("order-16 JSON identical for 1 and 4 threads: {deterministic}"),
    ];
    let ok = failures.is_empty() && deterministic && checked > 0;
    details.extend(failures);
    Ok((ok, details))
}

fn pattern_holds(spec: &CoverSpec, gprime: &GroupElement) -> Result<bool, CoverError> {
    let table = l_table(spec)?;
    for (h, cls) in table.iter() {
        let want = if h.is_identity() {
            0
        } else if h == gprime {
            4
        } else {
            2
        };
        if !cls.is_pullback() || cls.h != Q::from_integer(want.into()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Runs the selected claims. Unknown ids are rejected before anything runs.
pub fn verify(opts: &VerifyOptions) -> Result<VerifyReport, VerifyError> {
    if let Some(only) = &opts.only {
        for id in only {
            if !CLAIMS.iter().any(|(c, _)| c == id) {
                return Err(VerifyError::UnknownClaim(id.clone()));
            }
        }
    }
    let mut ctx = Ctx {
        opts: ClassifyOptions {
            search: SearchOptions {
                fault_injection: opts.inject_fault,
                ..Default::default()
            },
            jobs: opts.jobs,
            ..Default::default()
        },
        cache: BTreeMap::new(),
    };
    let mut results = Vec::new();
    for (id, claim) in CLAIMS {
        if opts
            .only
            .as_ref()
            .is_some_and(|o| !o.iter().any(|x| x == id))
        {
            continue;
        }
        let run: fn(&mut Ctx) -> Outcome = match id {
            "order36" => order36,
            "order16" => order16,
            "sweep" => sweep_claim,
            "families" => families,
            "campedelli" => campedelli,
            "degree16" => degree16,
            "blowup" => blowup,
            "tan" => tan,
            _ => properties,
        };
        let (passed, details) = match run(&mut ctx) {
            Ok(v) => v,
            Err(e) => (false, vec![format!("error: {e}")]),
        };
        results.push(ClaimResult {
            id: id.to_string(),
            claim: claim.to_string(),
            passed,
            details,
        });
    }
    let all_passed = results.iter().all(|r| r.passed);
    Ok(VerifyReport {
        results,
        all_passed,
    })
}

impl std::fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for r in &self.results {
            writeln!(
                f,
                "{} {:<11} {}",
                if r.passed { "PASS" } else { "FAIL" },
                r.id,
                r.claim
            )?;
            for d in &r.details {
                writeln!(f, "     {:<11} {d}", "")?;
            }
        }
        write!(
            f,
            "{}/{} claims passed",
            self.results.iter().filter(|r| r.passed).count(),
            self.results.len()
        )
    }
}
