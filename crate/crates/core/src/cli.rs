//! The command layer behind the `abelcover` binary.
//!
//! Every command builds a [`RunReport`]; `--json` prints it verbatim and the
//! default output is a text rendering of the same value. Exit codes: 0 on
//! success, 1 on a domain failure (a failed check, an invalid cover), 2 on a
//! usage error (bad arguments, unreadable or malformed input).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use crate::cover::{
    canonical_class, canonical_test, invariants, l_table, pushforward_degrees, CanonicalVerdict,
    CoverError, CoverSpec, CoverSpecFile, ExceptionalCurve, Invariants,
};
use crate::geometry::{
    intersect, max_multiplicity, multiple_points, ArrangementFile, GeometryError, Q,
};
use crate::groups::{enumerate_groups, GroupElement, GroupType};
use crate::solver::{classify_order, sweep, Classification, ClassifyOptions, SearchOptions};
use crate::verify::{verify, VerifyError, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "abelcover",
    version,
    about = "Abelian covers of the plane whose covering map is the canonical map"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the abelian groups of an order as invariant-factor chains.
    Groups {
        order: u64,
        #[arg(long)]
        json: bool,
    },
    /// Solve the feasibility system for every group of an order and every g'.
    Solve {
        order: u64,
        /// Restrict to one group, e.g. `2,2,2,2`.
        #[arg(long)]
        group: Option<String>,
        /// Fold solutions into automorphism orbits (elementary abelian groups).
        #[arg(long)]
        dedup: bool,
        /// Keep only solutions whose branch characters generate the group.
        #[arg(long)]
        require_generating: bool,
        #[arg(long)]
        json: bool,
        /// Worker threads (0 = all cores); never changes the output.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Node expansions allowed per (group, g') search.
        #[arg(long, default_value_t = 1_000_000_000)]
        node_cap: u64,
    },
    /// Classify every order in a range.
    Sweep {
        from: u64,
        to: u64,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, default_value_t = 1_000_000_000)]
        node_cap: u64,
    },
    /// Invariants of the cover described by a JSON spec file.
    Invariants {
        spec: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Multiple points of a line arrangement and, given characters, the canonical class.
    Arrangement {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Re-derive every headline claim and print a pass/fail table.
    VerifyPaper {
        /// Comma-separated claim ids.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

/// The machine-readable outcome of one command. Contains no timings, so
/// it is byte-identical across runs and thread counts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    /// The command with its semantic arguments (output and threading flags omitted).
    pub command: String,
    pub version: String,
    pub result: Value,
    pub exit_status: i32,
}

struct Outcome {
    command: String,
    result: Value,
    text: String,
    exit: i32,
}

struct Failure {
    exit: i32,
    message: String,
}

fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure {
        exit: EXIT_USAGE,
        message: msg.to_string(),
    }
}

fn domain(msg: impl std::fmt::Display) -> Failure {
    Failure {
        exit: EXIT_FAILURE,
        message: msg.to_string(),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

/// Parses `2,2,2,2`, `[2,2,2,2]` or `{"factors":[2,2,2,2]}`.
fn parse_group(s: &str) -> Result<GroupType, Failure> {
    let t = s.trim();
    if t.starts_with('{') {
        return serde_json::from_str(t).map_err(|e| usage(format!("bad group {s:?}: {e}")));
    }
    let inner = t.trim_start_matches('[').trim_end_matches(']');
    let factors = inner
        .split(',')
        .map(|p| p.trim().parse::<u64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| usage(format!("bad group {s:?}: expected factors like 2,2,4")))?;
    GroupType::new(factors).map_err(|e| usage(format!("bad group {s:?}: {e}")))
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn cmd_groups(order: u64) -> Result<Outcome, Failure> {
    if order < 1 {
        return Err(usage("order must be at least 1"));
    }
    let groups = enumerate_groups(order);
    let mut text = format!("{} abelian group(s) of order {order}\n", groups.len());
    for g in &groups {
        let _ = writeln!(text, "  {g}");
    }
    Ok(Outcome {
        command: format!("groups {order}"),
        result: serde_json::json!({ "order": order, "groups": groups }),
        text,
        exit: EXIT_OK,
    })
}

fn search_opts(node_cap: u64) -> SearchOptions {
    SearchOptions {
        node_cap,
        ..Default::default()
    }
}

fn render_classification(c: &Classification) -> String {
    let mut text = String::new();
    if !c.solvable() {
        let _ = writeln!(
            text,
            "INFEASIBLE: no solutions for any group of order {}",
            c.order
        );
    }
    for gc in &c.groups {
        if gc.solutions.is_empty() {
            let _ = writeln!(
                text,
                "{}: INFEASIBLE ({} raw, {} nodes)",
                gc.group, gc.raw_count, gc.nodes
            );
            continue;
        }
        let orbits = match (&gc.orbits, gc.dedup_unsupported) {
            (Some(o), _) => format!(", {} orbit(s)", o.len()),
            (None, true) => ", orbits unsupported (group not elementary abelian)".into(),
            (None, false) => String::new(),
        };
        let _ = writeln!(
            text,
            "{}: {} solution(s), {} generating{orbits} ({} nodes)",
            gc.group, gc.raw_count, gc.generating_count, gc.nodes
        );
        for r in &gc.solutions {
            let x: Vec<String> = r.x.iter().map(|(a, d)| format!("{a}:{d}")).collect();
            let orbit = r
                .orbit_id
                .map(|o| format!(" orbit {o}"))
                .unwrap_or_default();
            let gen = if r.generating {
                ""
            } else {
                " [possibly disconnected]"
            };
            let _ = writeln!(text, "  g'={} x={{{}}}{orbit}{gen}", r.gprime, x.join(", "));
        }
    }
    text
}

fn cmd_solve(
    order: u64,
    group: Option<String>,
    dedup: bool,
    require_generating: bool,
    jobs: usize,
    node_cap: u64,
) -> Result<Outcome, Failure> {
    if order < 2 {
        return Err(usage("order must be at least 2"));
    }
    let group = group.as_deref().map(parse_group).transpose()?;
    if let Some(g) = &group {
        if g.order() != order {
            return Err(usage(format!("group {g} does not have order {order}")));
        }
    }
    let mut command = format!("solve {order}");
    if let Some(g) = &group {
        let _ = write!(command, " --group {g}");
    }
    if dedup {
        command.push_str(" --dedup");
    }
    if require_generating {
        command.push_str(" --require-generating");
    }
    if node_cap != SearchOptions::default().node_cap {
        let _ = write!(command, " --node-cap {node_cap}");
    }
    let opts = ClassifyOptions {
        search: search_opts(node_cap),
        require_generating,
        jobs,
        group,
        dedup,
    };
    let c = classify_order(order, &opts).map_err(domain)?;
    let mut result = to_value(&c);
    result["infeasible"] = Value::Bool(!c.solvable());
    Ok(Outcome {
        command,
        text: render_classification(&c),
        result,
        exit: EXIT_OK,
    })
}

fn cmd_sweep(from: u64, to: u64, jobs: usize, node_cap: u64) -> Result<Outcome, Failure> {
    if from < 2 {
        return Err(usage("sweep range must start at 2 or above"));
    }
    if from > to {
        return Err(usage(format!("empty range {from}..{to}")));
    }
    let opts = ClassifyOptions {
        search: search_opts(node_cap),
        jobs,
        ..Default::default()
    };
    let table = sweep(from, to, &opts).map_err(domain)?;
    let mut command = format!("sweep {from} {to}");
    if node_cap != SearchOptions::default().node_cap {
        let _ = write!(command, " --node-cap {node_cap}");
    }
    let mut result = to_value(&table);
    result["solvable"] = to_value(&table.solvable());
    Ok(Outcome {
        command,
        text: format!("{table}\n"),
        result,
        exit: EXIT_OK,
    })
}

fn spec_failure(e: CoverError) -> Failure {
    match e {
        CoverError::Geometry(GeometryError::BadRational(_)) => usage(e),
        _ => domain(e),
    }
}

#[derive(Serialize)]
struct CurveReport {
    point: String,
    lines: Vec<usize>,
    character: GroupElement,
    ramification: Option<u64>,
}

fn curve_reports(curves: &[ExceptionalCurve]) -> Vec<CurveReport> {
    curves
        .iter()
        .map(|c| CurveReport {
            point: c.point.point.to_string(),
            lines: c.point.incident.iter().map(|i| i + 1).collect(),
            character: c.character.clone(),
            ramification: c.ramification,
        })
        .collect()
}

#[derive(Serialize)]
struct InvariantsReport {
    group: GroupType,
    blown_up_points: usize,
    l_table: Vec<(GroupElement, String)>,
    pushforward_degrees: Option<Vec<i64>>,
    invariants: Invariants,
    canonical_test: Option<CanonicalVerdict>,
    canonical_degree_claim: Option<u64>,
    exceptional_curves: Vec<CurveReport>,
}

fn cmd_invariants(path: &Path) -> Result<Outcome, Failure> {
    let text_in = read(path)?;
    let file = CoverSpecFile::parse(&text_in)
        .map_err(|e| usage(format!("malformed spec {}: {e}", path.display())))?;
    let (spec, curves) = file.to_spec().map_err(spec_failure)?;
    let table = l_table(&spec).map_err(spec_failure)?;
    let inv = invariants(&spec).map_err(spec_failure)?;
    let (push, verdict) = if spec.is_plane() {
        (
            Some(pushforward_degrees(&spec).map_err(spec_failure)?),
            Some(canonical_test(&spec)),
        )
    } else {
        (None, None)
    };
    let report = InvariantsReport {
        group: spec.group().clone(),
        blown_up_points: spec.base(),
        l_table: table
            .iter()
            .map(|(g, c)| (g.clone(), c.to_string()))
            .collect(),
        pushforward_degrees: push,
        invariants: inv,
        canonical_test: verdict,
        canonical_degree_claim: spec.canonical_degree_claim,
        exceptional_curves: curve_reports(&curves),
    };

    let mut text = String::new();
    let _ = writeln!(
        text,
        "group {}, base: plane blown up at {} point(s)",
        report.group, report.blown_up_points
    );
    for c in &report.exceptional_curves {
        let ram = c
            .ramification
            .map_or("unbranched".into(), |e| format!("ramification {e}"));
        let _ = writeln!(
            text,
            "  exceptional curve over {} (lines {:?}): character {}, {ram}",
            c.point, c.lines, c.character
        );
    }
    let _ = writeln!(text, "L_g classes:");
    for (g, c) in &report.l_table {
        let _ = writeln!(text, "  L_{g} = {c}");
    }
    if let Some(p) = &report.pushforward_degrees {
        let _ = writeln!(text, "pushforward degrees: {p:?}");
    }
    let inv = &report.invariants;
    let _ = writeln!(
        text,
        "p_g = {}, q = {}, chi = {}, components = {}",
        inv.p_g, inv.q, inv.chi, inv.h0
    );
    let _ = writeln!(
        text,
        "K = pullback of {}, K^2 = {}{}",
        inv.k_class,
        inv.k_selfint,
        if inv.k_selfint_integral {
            ""
        } else {
            " (not integral)"
        }
    );
    match &inv.plurigenera {
        Some(p) => {
            let list: Vec<String> = p.iter().map(|(m, v)| format!("p_{m} = {v}")).collect();
            let _ = writeln!(text, "{}", list.join(", "));
        }
        None => {
            let _ = writeln!(
                text,
                "plurigenera: not computed (K is not the pullback of an effective integral class)"
            );
        }
    }
    if inv.possibly_disconnected {
        let _ = writeln!(
            text,
            "warning: branch characters do not generate the group; the cover may be disconnected"
        );
    }
    if let Some(v) = &report.canonical_test {
        let _ = writeln!(
            text,
            "canonical pattern: {} (pullback degree {})",
            v.is_canonical_pattern, v.pullback_degree
        );
        for d in &v.diagnostics {
            let _ = writeln!(text, "  {d}");
        }
    }
    let _ = writeln!(text, "not checked: {}", inv.not_checked.join(", "));
    Ok(Outcome {
        command: format!("invariants {}", path.display()),
        result: to_value(&report),
        text,
        exit: EXIT_OK,
    })
}

/// Arrangement input: the lines plus, optionally, a group and one character per line.
#[derive(serde::Deserialize)]
struct ArrangementInput {
    #[serde(flatten)]
    lines: ArrangementFile,
    group: Option<GroupType>,
    alphas: Option<Vec<Vec<u64>>>,
}

#[derive(Serialize)]
struct PointReport {
    point: String,
    lines: Vec<usize>,
    multiplicity: usize,
}

#[derive(Serialize)]
struct CanonicalReport {
    exceptional_curves: Vec<CurveReport>,
    k_class: String,
    k_selfint: String,
}

#[derive(Serialize)]
struct ArrangementReport {
    lines: usize,
    multiple_points: Vec<PointReport>,
    max_multiplicity: usize,
    /// At most three lines through any point.
    admissible: bool,
    canonical: Option<CanonicalReport>,
}

fn cmd_arrangement(path: &Path) -> Result<Outcome, Failure> {
    let input: ArrangementInput = serde_json::from_str(&read(path)?)
        .map_err(|e| usage(format!("malformed arrangement {}: {e}", path.display())))?;
    let arr = input.lines.to_arrangement().map_err(|e| match e {
        GeometryError::BadRational(_) => usage(e),
        _ => domain(e),
    })?;
    let points = multiple_points(&arr);
    let maxm = max_multiplicity(&arr);
    let canonical = match (&input.group, &input.alphas) {
        (Some(group), Some(alphas)) => {
            let alphas: Vec<GroupElement> =
                alphas.iter().map(|a| GroupElement(a.clone())).collect();
            let (spec, curves) = CoverSpec::from_arrangement(
                group.clone(),
                &arr,
                &alphas,
                &crate::cover::BlowUp::Auto,
            )
            .map_err(spec_failure)?;
            let k = canonical_class(&spec).map_err(spec_failure)?;
            let k2 = intersect(&k, &k).map_err(domain)? * Q::from_integer(group.order().into());
            Some(CanonicalReport {
                exceptional_curves: curve_reports(&curves),
                k_class: k.to_string(),
                k_selfint: k2.to_string(),
            })
        }
        (None, None) => None,
        _ => return Err(usage("\"group\" and \"alphas\" must be given together")),
    };
    let report = ArrangementReport {
        lines: arr.len(),
        multiple_points: points
            .iter()
            .map(|p| PointReport {
                point: p.point.to_string(),
                lines: p.incident.iter().map(|i| i + 1).collect(),
                multiplicity: p.multiplicity,
            })
            .collect(),
        max_multiplicity: maxm,
        admissible: maxm <= 3,
        canonical,
    };
    let mut text = format!("{} lines, maximum multiplicity {maxm}\n", report.lines);
    for m in (3..=maxm).rev() {
        for p in report
            .multiple_points
            .iter()
            .filter(|p| p.multiplicity == m)
        {
            let _ = writeln!(
                text,
                "  {}-fold point {} on lines {:?}",
                m, p.point, p.lines
            );
        }
    }
    let doubles = report
        .multiple_points
        .iter()
        .filter(|p| p.multiplicity == 2)
        .count();
    let _ = writeln!(text, "  {doubles} double point(s)");
    let _ = writeln!(
        text,
        "{}",
        if report.admissible {
            "admissible: at most three lines through any point"
        } else {
            "inadmissible: four or more lines through a point"
        }
    );
    if let Some(c) = &report.canonical {
        for e in &c.exceptional_curves {
            let _ = writeln!(
                text,
                "  exceptional curve over {}: character {}",
                e.point, e.character
            );
        }
        let _ = writeln!(text, "K = pullback of {}, K^2 = {}", c.k_class, c.k_selfint);
    }
    Ok(Outcome {
        command: format!("arrangement {}", path.display()),
        result: to_value(&report),
        text,
        exit: EXIT_OK,
    })
}

fn cmd_verify(only: Vec<String>, jobs: usize, inject_fault: bool) -> Result<Outcome, Failure> {
    let mut command = "verify-paper".to_string();
    if !only.is_empty() {
        let _ = write!(command, " --only {}", only.join(","));
    }
    if inject_fault {
        command.push_str(" --inject-fault");
    }
    let opts = VerifyOptions {
        only: (!only.is_empty()).then_some(only),
        jobs,
        inject_fault,
    };
    let report = verify(&opts).map_err(|e| match e {
        VerifyError::UnknownClaim(_) => usage(e),
    })?;
    Ok(Outcome {
        command,
        result: to_value(&report),
        text: format!("{report}\n"),
        exit: if report.all_passed {
            EXIT_OK
        } else {
            EXIT_FAILURE
        },
    })
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    let start = Instant::now();
    let (json, outcome) = match cli.command {
        Command::Groups { order, json } => (json, cmd_groups(order)),
        Command::Solve {
            order,
            group,
            dedup,
            require_generating,
            json,
            jobs,
            node_cap,
        } => (
            json,
            cmd_solve(order, group, dedup, require_generating, jobs, node_cap),
        ),
        Command::Sweep {
            from,
            to,
            json,
            jobs,
            node_cap,
        } => (json, cmd_sweep(from, to, jobs, node_cap)),
        Command::Invariants { spec, json } => (json, cmd_invariants(&spec)),
        Command::Arrangement { file, json } => (json, cmd_arrangement(&file)),
        Command::VerifyPaper {
            only,
            json,
            jobs,
            inject_fault,
        } => (json, cmd_verify(only, jobs, inject_fault)),
    };
    match outcome {
        Ok(o) => {
            if json {
                let report = RunReport {
                    command: o.command,
                    version: env!("CARGO_PKG_VERSION").to_string(),
                    result: o.result,
                    exit_status: o.exit,
                };
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&report).expect("reports serialize")
                );
            } else {
                let _ = write!(out, "{}", o.text);
                let _ = writeln!(err, "elapsed {:.3}s", start.elapsed().as_secs_f64());
            }
            o.exit
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.exit
        }
    }
}
