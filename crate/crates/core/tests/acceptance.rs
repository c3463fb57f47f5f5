//! Acceptance criteria, each checked at exact equality and reported on one
//! PASS/FAIL line. Reference values are computed here from first principles
//! (pairings, element orders, line-bundle Euler characteristics) rather than
//! read back from the library.

use std::collections::BTreeSet;

use abelcover::catalog::{campedelli, families, sixteen_sheeted, tan_quintic, tan_triple, Octet};
use abelcover::cover::{canonical_test, invariants, l_table, pushforward_degrees, CoverSpec};
use abelcover::geometry::multiple_points;
use abelcover::groups::{enumerate_groups, GroupElement, GroupType};
use abelcover::solver::{
    classify_order, dedup_exhaustive, sweep, Classification, ClassifyOptions, SolutionRecord,
};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// A group as its invariant factors, with everything the oracle needs.
struct Oracle {
    factors: Vec<u64>,
    exp: u64,
    elems: Vec<Vec<u64>>,
}

impl Oracle {
    fn new(factors: &[u64]) -> Self {
        let mut elems = vec![vec![]];
        for &n in factors {
            elems = elems
                .into_iter()
                .flat_map(|e| {
                    (0..n).map(move |r| {
                        let mut e = e.clone();
                        e.push(r);
                        e
                    })
                })
                .collect();
        }
        Oracle {
            factors: factors.to_vec(),
            exp: factors.iter().copied().fold(1, lcm),
            elems,
        }
    }

    fn order_of(&self, a: &[u64]) -> u64 {
        self.factors
            .iter()
            .zip(a)
            .map(|(&n, &r)| n / gcd(n, r))
            .fold(1, lcm)
    }

    /// `exp · frac(Σ g_i α_i / n_i)`.
    fn pairing(&self, g: &[u64], a: &[u64]) -> u64 {
        let s: u64 = self
            .factors
            .iter()
            .zip(g.iter().zip(a))
            .map(|(&n, (&x, &y))| x * y * (self.exp / n))
            .sum();
        s % self.exp
    }

    /// `l_g = Σ_α frac(⟨g, α⟩) x_α`, or `None` if not an integer.
    fn l(&self, g: &[u64], x: &[(Vec<u64>, u64)]) -> Option<u64> {
        let num: u64 = x.iter().map(|(a, d)| self.pairing(g, a) * d).sum();
        num.is_multiple_of(self.exp).then_some(num / self.exp)
    }

    fn is_canonical(&self, gp: &[u64], x: &[(Vec<u64>, u64)]) -> bool {
        self.elems.iter().skip(1).all(|g| {
            let want = if g.as_slice() == gp { 4 } else { 2 };
            self.l(g, x) == Some(want)
        })
    }

    /// Every `(g′, x)` with `Σ (1 − 1/e_α) x_α = 4` passing the l_g test.
    fn brute_force(&self) -> BTreeSet<(Vec<u64>, Vec<(Vec<u64>, u64)>)> {
        let chars = &self.elems[1..];
        let weights: Vec<u64> = chars
            .iter()
            .map(|a| self.exp - self.exp / self.order_of(a))
            .collect();
        let mut vectors = Vec::new();
        let mut cur = vec![0u64; chars.len()];
        fn rec(i: usize, left: u64, w: &[u64], cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            if i == w.len() {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let mut d = 0;
            while d * w[i] <= left {
                cur[i] = d;
                rec(i + 1, left - d * w[i], w, cur, out);
                d += 1;
            }
            cur[i] = 0;
        }
        rec(0, 4 * self.exp, &weights, &mut cur, &mut vectors);
        let mut out = BTreeSet::new();
        for v in vectors {
            let x: Vec<(Vec<u64>, u64)> = chars
                .iter()
                .zip(&v)
                .filter(|(_, &d)| d > 0)
                .map(|(a, &d)| (a.clone(), d))
                .collect();
            for gp in &self.elems[1..] {
                if self.is_canonical(gp, &x) {
                    out.insert((gp.clone(), x.clone()));
                }
            }
        }
        out
    }
}

fn record_key(r: &SolutionRecord) -> (Vec<u64>, Vec<(Vec<u64>, u64)>) {
    (
        r.gprime.0.clone(),
        r.x.iter().map(|(a, d)| (a.0.clone(), d)).collect(),
    )
}

fn classify(d: u64) -> Classification {
    classify_order(d, &ClassifyOptions::default()).expect("search runs to completion")
}

fn chi_plane(t: i64) -> i64 {
    (t + 1) * (t + 2) / 2
}

fn criterion_1() -> Check {
    let c = classify(36);
    ensure(
        c.groups.len() == 4,
        format!("{} groups of order 36", c.groups.len()),
    )?;
    for gc in &c.groups {
        ensure(
            gc.raw_count == 0,
            format!("{} has {} solutions", gc.group, gc.raw_count),
        )?;
    }
    let nodes: Vec<String> = c
        .groups
        .iter()
        .map(|g| format!("{}:{}", g.group, g.nodes))
        .collect();
    Ok(format!(
        "no solutions, searches complete ({})",
        nodes.join(" ")
    ))
}

fn criterion_2() -> Check {
    let c = classify(16);
    let z = GroupType::new(vec![2, 2, 2, 2]).unwrap();
    for gc in &c.groups {
        if gc.group != z {
            ensure(gc.raw_count == 0, format!("{} has solutions", gc.group))?;
        }
    }
    let gc = c.get(&z).ok_or("no Z_2^4 entry")?;
    let oracle = Oracle::new(&[2, 2, 2, 2]);
    let odd = |g: &[u64]| -> Vec<(Vec<u64>, u64)> {
        oracle.elems[1..]
            .iter()
            .filter(|a| oracle.pairing(g, a) == 1)
            .map(|a| (a.clone(), 1))
            .collect()
    };
    let keys: Vec<_> = gc.solutions.iter().map(record_key).collect();
    // set (1): ones exactly on the characters with α_1 = 1
    let set1: Vec<(Vec<u64>, u64)> = oracle.elems[1..]
        .iter()
        .filter(|a| a[0] == 1)
        .map(|a| (a.clone(), 1))
        .collect();
    ensure(keys.contains(&(vec![1, 0, 0, 0], set1)), "set (1) missing")?;
    let orbits = gc.orbits.as_ref().ok_or("no orbits")?;
    ensure(orbits.len() == 1, format!("{} orbits", orbits.len()))?;
    ensure(
        orbits[0].size == gc.raw_count,
        "orbit does not hold every solution",
    )?;
    for gp in [[1, 0, 0, 0], [1, 1, 0, 0], [1, 1, 1, 0], [1, 1, 1, 1]] {
        let r = gc
            .solutions
            .iter()
            .find(|r| record_key(r) == (gp.to_vec(), odd(&gp)))
            .ok_or(format!("set with g'={gp:?} missing"))?;
        ensure(r.orbit_id == Some(orbits[0].id), "set outside the orbit")?;
    }
    Ok(format!(
        "{} solutions on [2,2,2,2], one orbit, sets (1)-(4) inside",
        gc.raw_count
    ))
}

fn criterion_3() -> Check {
    let t = sweep(2, 36, &ClassifyOptions::default()).map_err(|e| e.to_string())?;
    let got = t.solvable();
    ensure(
        got == vec![2, 3, 4, 6, 8, 9, 16],
        format!("solvable {got:?}"),
    )?;
    Ok(format!("solvable {got:?}"))
}

fn criterion_4() -> Check {
    let mut lines = Vec::new();
    let fams = families();
    for d in [2u64, 3, 4, 6, 8, 9] {
        let c = classify(d);
        let listed: Vec<_> = fams.iter().filter(|f| f.degree == d).collect();
        let mut orbit_total = 0;
        let mut hit = BTreeSet::new();
        for gc in &c.groups {
            let mut sols = gc.solutions.clone();
            let orbits = dedup_exhaustive(&gc.group, &mut sols).map_err(|e| e.to_string())?;
            orbit_total += orbits.len();
            for f in listed.iter().filter(|f| f.group == gc.group) {
                let oracle = Oracle::new(f.group.factors());
                let x: Vec<(Vec<u64>, u64)> =
                    f.data.iter().map(|(a, d)| (a.0.clone(), d)).collect();
                let gps: Vec<&Vec<u64>> = oracle.elems[1..]
                    .iter()
                    .filter(|g| oracle.is_canonical(g, &x))
                    .collect();
                ensure(
                    !gps.is_empty(),
                    format!("family {} fails substitution", f.label),
                )?;
                let r = sols
                    .iter()
                    .find(|r| r.x == f.data)
                    .ok_or(format!("family {} not in solver output", f.label))?;
                hit.insert((gc.group.clone(), r.orbit_id));
            }
        }
        ensure(
            hit.len() == orbit_total,
            format!(
                "d={d}: families reach {} of {orbit_total} orbits",
                hit.len()
            ),
        )?;
        lines.push(format!(
            "d={d}: {} listed, {orbit_total} orbit(s)",
            listed.len()
        ));
    }
    // 3a/3b and the two Z_2^3 families of degree 8 each share an orbit
    Ok(lines.join("; "))
}

fn criterion_5() -> Check {
    let (spec, _) = campedelli().to_spec().map_err(|e| e.to_string())?;
    let inv = invariants(&spec).map_err(|e| e.to_string())?;
    let got = (inv.p_g, inv.q, inv.chi, inv.k_selfint.to_string());
    ensure(got == (0, 0, 1, "2".into()), format!("{got:?}"))?;
    Ok("p_g=0 q=0 chi=1 K^2=2".into())
}

fn criterion_6() -> Check {
    let (spec, _) = sixteen_sheeted(Octet::Generic)
        .to_spec()
        .map_err(|e| e.to_string())?;
    let inv = invariants(&spec).map_err(|e| e.to_string())?;
    let mut push = pushforward_degrees(&spec).map_err(|e| e.to_string())?;
    push.sort();
    let mut want = vec![-4];
    want.extend([-2; 14]);
    want.push(0);
    ensure(push == want, format!("pushforward {push:?}"))?;
    let chi_oracle: i64 = push.iter().map(|&t| chi_plane(t)).sum();
    ensure(chi_oracle == 4, "oracle chi")?;
    let p2 = inv
        .plurigenera
        .as_ref()
        .and_then(|p| p.iter().find(|(m, _)| *m == 2))
        .map(|p| p.1);
    let got = (inv.p_g, inv.q, inv.chi, inv.k_selfint.to_string(), p2);
    ensure(
        got == (3, 0, chi_oracle, "16".into(), Some(20)),
        format!("{got:?}"),
    )?;
    ensure(
        canonical_test(&spec).is_canonical_pattern,
        "canonical test fails",
    )?;
    Ok("p_g=3 q=0 chi=4 K^2=16 p_2=20, pushforward O+O(-2)^14+O(-4)".into())
}

fn criterion_7() -> Check {
    let k = |o: Octet| -> Result<(String, String), String> {
        let (spec, _) = sixteen_sheeted(o).to_spec().map_err(|e| e.to_string())?;
        let inv = invariants(&spec).map_err(|e| e.to_string())?;
        Ok((inv.k_class.to_string(), inv.k_selfint.to_string()))
    };
    let (k3, k3sq) = k(Octet::TriplePoint)?;
    ensure(
        k3 == "(1; 0)" && k3sq == "16",
        format!("triple point K={k3} K^2={k3sq}"),
    )?;
    let mut four = Vec::new();
    for o in [Octet::FourFoldBranched, Octet::FourFoldUnbranched] {
        let (_, sq) = k(o)?;
        let v: i64 = sq.parse().map_err(|_| format!("K^2 = {sq}"))?;
        ensure(v < 16, format!("{o:?}: K^2 = {v}"))?;
        four.push(v);
    }
    Ok(format!("triple point K=H, K^2=16; fourfold K^2 {four:?}"))
}

fn criterion_8() -> Check {
    let (spec, _) = tan_quintic().to_spec().map_err(|e| e.to_string())?;
    let inv = invariants(&spec).map_err(|e| e.to_string())?;
    ensure(
        inv.chi == 5 && inv.k_selfint.to_string() == "25",
        format!("quintic chi={} K^2={}", inv.chi, inv.k_selfint),
    )?;
    let mut pgs = Vec::new();
    for n in 0..=3usize {
        let file = tan_triple(n);
        let arr = file
            .arrangement
            .as_ref()
            .unwrap()
            .lines
            .to_arrangement()
            .unwrap();
        let pts = multiple_points(&arr);
        let triples = pts.iter().filter(|p| p.multiplicity == 3).count();
        let doubles = pts.iter().filter(|p| p.multiplicity == 2).count();
        ensure(
            triples == n + 3 && doubles == 27 - 3 * n && pts.len() == triples + doubles,
            format!("n={n}: {triples} triple, {doubles} double points"),
        )?;
        let (spec, _) = file.to_spec().map_err(|e| e.to_string())?;
        let pg = invariants(&spec).map_err(|e| e.to_string())?.p_g;
        ensure(pg == 8 - n as u64, format!("n={n}: p_g={pg}"))?;
        pgs.push(pg);
    }
    Ok(format!("quintic chi=5 K^2=25; triple covers p_g {pgs:?}"))
}

fn criterion_9() -> Check {
    let mut checked = 0;
    for d in 2..=16u64 {
        let c = classify(d);
        for gc in &c.groups {
            let oracle = Oracle::new(gc.group.factors());
            for r in &gc.solutions {
                // (a) soundness through the library's own checks
                let spec =
                    CoverSpec::on_plane(gc.group.clone(), &r.x).map_err(|e| e.to_string())?;
                let table = l_table(&spec).map_err(|e| e.to_string())?;
                let degs = table.plane_degrees().ok_or("non-plane table")?;
                // identity first with l = 0, then one 4 and the rest 2
                ensure(
                    degs[0] == 0
                        && degs.iter().filter(|&&l| l == 4).count() == 1
                        && degs.iter().filter(|&&l| l == 2).count() + 2 == degs.len(),
                    format!("{} {}: l_g {degs:?}", gc.group, r.gprime),
                )?;
                ensure(
                    canonical_test(&spec).is_canonical_pattern,
                    "canonical test fails",
                )?;
                // (c) pullback degree one
                let num: u64 =
                    r.x.iter()
                        .map(|(a, x)| x * (oracle.exp - oracle.exp / oracle.order_of(&a.0)))
                        .sum();
                ensure(num == 4 * oracle.exp, "pullback degree is not 1")?;
                // (d) chi = p_g - q + 1
                let inv = invariants(&spec).map_err(|e| e.to_string())?;
                ensure(
                    inv.chi == inv.p_g as i64 - inv.q as i64 + 1,
                    format!("chi identity fails on {}", gc.group),
                )?;
                checked += 1;
            }
            // (b) brute force at orders <= 9
            if d <= 9 {
                let want = oracle.brute_force();
                let got: BTreeSet<_> = gc.solutions.iter().map(record_key).collect();
                ensure(
                    got == want,
                    format!(
                        "{}: solver {} vs oracle {}",
                        gc.group,
                        got.len(),
                        want.len()
                    ),
                )?;
            }
        }
    }
    for file in [campedelli(), tan_quintic(), sixteen_sheeted(Octet::Generic)] {
        let (spec, _) = file.to_spec().map_err(|e| e.to_string())?;
        let inv = invariants(&spec).map_err(|e| e.to_string())?;
        ensure(
            inv.chi == inv.p_g as i64 - inv.q as i64 + 1,
            "chi identity fails on catalog",
        )?;
    }
    // (e) determinism across thread counts
    for d in [8u64, 9, 16] {
        let run = |jobs| {
            let opts = ClassifyOptions {
                jobs,
                ..Default::default()
            };
            serde_json::to_string(&classify_order(d, &opts).unwrap()).unwrap()
        };
        ensure(
            run(1) == run(4),
            format!("order {d} differs across thread counts"),
        )?;
    }
    let t = |jobs| {
        let opts = ClassifyOptions {
            jobs,
            ..Default::default()
        };
        serde_json::to_string(&sweep(2, 12, &opts).unwrap()).unwrap()
    };
    ensure(t(1) == t(3), "sweep differs across thread counts")?;
    Ok(format!("{checked} solutions re-verified; brute force agrees up to order 9; output independent of threads"))
}

/// Runs without the libtest harness so the PASS/FAIL lines are always shown.
fn main() {
    oracle_sanity();
    let criteria: [(&str, fn() -> Check); 9] = [
        ("1 order-36 infeasibility", criterion_1),
        ("2 order-16 classification", criterion_2),
        ("3 sweep 2..36", criterion_3),
        ("4 low-degree families", criterion_4),
        ("5 Campedelli invariants", criterion_5),
        ("6 degree-16 invariants", criterion_6),
        ("7 blow-up canonical class", criterion_7),
        ("8 Tan examples", criterion_8),
        ("9 property suites", criterion_9),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                println!("FAIL {name}: {why}");
                failed.push(name);
            }
        }
    }
    println!("{}/{} criteria passed", 9 - failed.len(), 9);
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}

fn oracle_sanity() {
    // octic double cover: x_1 = 8 is the only solution on Z_2
    let o = Oracle::new(&[2]);
    let sols = o.brute_force();
    assert_eq!(sols.len(), 1);
    assert!(sols.contains(&(vec![1], vec![(vec![1], 8)])));
    assert_eq!(enumerate_groups(9).len(), 2);
    assert!(GroupElement(vec![0, 0]).is_identity());
}
