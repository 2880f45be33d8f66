//! Command-line front end: label trees, verify labeling documents, sweep
//! seeded families, and report structural statistics and bounds.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use gracelab_core::amalgam::{alpha_shell_bound_checks, shell_alpha_label};
use gracelab_core::erg::{alpha_bound_lobster, erg_bound_checks, erg_label};
use gracelab_core::labeling::{ceil_ratio, ratio_str, BoundCheck, LabelingDoc};
use gracelab_core::metrics::{check_identities, edge_level_stats, level_metrics, matching_number};
use gracelab_core::oracle::{
    brute_graceful, enumerate_trees, exact_alpha_size, exact_gracesize, generate, Family, GenSpec,
};
use gracelab_core::rrg::{rrg_bound_checks, rrg_bounds, rrg_label_checked};
use gracelab_core::shell::{
    bh_label, bh_relaxed_bound_checks, bh_relaxed_label, gracesize_lower, shell_graceful,
    strongly_graceful, Matching, ShellRoute,
};
use gracelab_core::tree::{parse_edge_list, serialize_edge_list};
use gracelab_core::{
    layout, verify, Error as CoreError, Labeling, Method, Orientation, Tree, VerificationReport,
};

#[derive(Parser)]
#[command(
    name = "gracelab",
    version,
    about = "Relaxed graceful labelings of trees: constructions, verification, and bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Label a tree and emit a labeling document (JSON) with its verification
    Label(LabelArgs),
    /// Re-check a labeling document and exit nonzero if it fails
    Verify(VerifyArgs),
    /// Structural statistics of a tree: levels, surplus, excess, identities
    Stats(StatsArgs),
    /// Generate a seeded random tree as an edge list
    Gen(GenArgs),
    /// Enumerate all trees up to a vertex count (one entry per isomorphism class)
    Enumerate(EnumerateArgs),
    /// Exhaustive reference computations on small trees
    Oracle(OracleArgs),
    /// Evaluate the bound formulas for a tree's size, diameter, matching, and excess
    Bounds(BoundsArgs),
    /// Sweep a seeded family under several methods and emit one CSV row per run
    Batch(BatchArgs),
    /// Render a tree, optionally with a labeling, as DOT text
    ExportDot(ExportDotArgs),
}

#[derive(Args)]
struct LabelArgs {
    /// edge-list file of the tree to label
    #[arg(long = "in")]
    input: PathBuf,
    /// construction to run
    #[arg(long, value_enum)]
    method: MethodArg,
    /// write the document here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// labeling document produced by `label`
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct StatsArgs {
    /// edge-list file of the tree to inspect
    #[arg(long = "in")]
    input: PathBuf,
    /// which end of a diametral path roots the layout
    #[arg(long, value_enum, default_value = "right")]
    orientation: OrientArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    /// family to draw from
    #[arg(value_enum)]
    family: FamilyArg,
    /// vertices on the spine (the diametral path)
    #[arg(long, default_value_t = 8)]
    spine: usize,
    /// branch vertices allowed per eligible spine vertex
    #[arg(long, default_value_t = 1)]
    max_branches: usize,
    /// leaves allowed per branch vertex
    #[arg(long, default_value_t = 2)]
    max_leaves: usize,
    /// chain length hung off the spine (k-distant family only)
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EnumerateArgs {
    /// largest vertex count to enumerate (at most 12)
    #[arg(long)]
    max_n: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[command(subcommand)]
    what: OracleCmd,
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Largest number of distinct weights any labeling with labels 0..=m reaches
    Gracesize { file: PathBuf },
    /// Same, restricted to labelings split by a contiguous bipartite cutoff
    Alpha { file: PathBuf },
    /// Search for a graceful labeling outright
    Graceful { file: PathBuf },
}

#[derive(Args)]
struct BoundsArgs {
    /// edge-list file of the tree to bound
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BatchArgs {
    /// family to sweep; spines cycle through 7..=14 with one branch layer
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// number of trees to generate
    #[arg(long)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// comma-separated constructions to run on every tree
    #[arg(long, value_delimiter = ',', required = true)]
    methods: Vec<MethodArg>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExportDotArgs {
    /// edge-list file of the tree to draw (bare graph)
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// labeling document to draw instead, with labels and edge weights
    #[arg(long)]
    doc: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// range-relaxed: all weights distinct, labels may exceed m
    Rrg,
    /// contiguous bipartite bijection onto 0..=m, weights may repeat
    Erg,
    /// graceful via a perfect matching
    Bh,
    /// fold a lobster to its shell, label that gracefully, relax the rest
    BhRelaxed,
    /// graceful labeling of a shell (any order)
    Shell,
    /// contiguous labeling of a shell meeting the five-sixths quota
    AlphaShell,
}

impl MethodArg {
    fn as_str(self) -> &'static str {
        match self {
            MethodArg::Rrg => "rrg",
            MethodArg::Erg => "erg",
            MethodArg::Bh => "bh",
            MethodArg::BhRelaxed => "bh-relaxed",
            MethodArg::Shell => "shell",
            MethodArg::AlphaShell => "alpha-shell",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Path,
    Caterpillar,
    Lobster,
    KDistant,
}

impl FamilyArg {
    fn family(self) -> Family {
        match self {
            FamilyArg::Path => Family::Path,
            FamilyArg::Caterpillar => Family::Caterpillar,
            FamilyArg::Lobster => Family::Lobster,
            FamilyArg::KDistant => Family::KDistant,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            FamilyArg::Path => "path",
            FamilyArg::Caterpillar => "caterpillar",
            FamilyArg::Lobster => "lobster",
            FamilyArg::KDistant => "k-distant",
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OrientArg {
    Right,
    Left,
}

impl OrientArg {
    fn orientation(self) -> Orientation {
        match self {
            OrientArg::Right => Orientation::Right,
            OrientArg::Left => Orientation::Left,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            OrientArg::Right => "right",
            OrientArg::Left => "left",
        }
    }
}

/// Failure with the exit code it deserves: 1 for domain and verification
/// failures, 2 for usage, parse, and IO problems.
struct Fail {
    code: u8,
    err: anyhow::Error,
}

type R<T> = Result<T, Fail>;

fn usage<E: Into<anyhow::Error>>(e: E) -> Fail {
    Fail {
        code: 2,
        err: e.into(),
    }
}

fn domain<E: Into<anyhow::Error>>(e: E) -> Fail {
    Fail {
        code: 1,
        err: e.into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}

fn run(cmd: Command) -> R<()> {
    match cmd {
        Command::Label(a) => cmd_label(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Stats(a) => cmd_stats(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Bounds(a) => cmd_bounds(a),
        Command::Batch(a) => cmd_batch(a),
        Command::ExportDot(a) => cmd_export_dot(a),
    }
}

fn read_text(path: &Path) -> R<String> {
    fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(usage)
}

fn read_tree(path: &Path) -> R<Tree> {
    parse_edge_list(&read_text(path)?).map_err(usage)
}

fn emit(out: &Option<PathBuf>, text: &str) -> R<()> {
    match out {
        Some(p) => fs::write(p, text)
            .with_context(|| format!("writing {}", p.display()))
            .map_err(usage),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json(out: &Option<PathBuf>, value: &serde_json::Value) -> R<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(domain)?;
    text.push('\n');
    emit(out, &text)
}

/// One construction run: the labeling, its verification with the
/// construction's own bound checks merged in, and extra details worth
/// keeping in the document.
struct Labeled {
    labeling: Labeling,
    report: VerificationReport,
    construction: serde_json::Value,
    ok: bool,
}

fn bijection_checks(report: &VerificationReport, m: usize) -> Vec<BoundCheck> {
    vec![
        BoundCheck::eq(
            "weights-cover-m",
            Ratio::from_integer(report.epsilon as i64),
            Ratio::from_integer(m as i64),
        ),
        BoundCheck::eq(
            "labels-form-bijection",
            Ratio::from_integer(report.max_label as i64),
            Ratio::from_integer(m as i64),
        ),
    ]
}

fn run_method(t: &Tree, method: MethodArg) -> gracelab_core::Result<Labeled> {
    match method {
        MethodArg::Rrg => {
            let (f, _, report) = rrg_label_checked(t)?;
            let ok = report.injective && report.all_checks_hold();
            Ok(Labeled {
                labeling: f,
                report,
                construction: json!({ "orientation": "left" }),
                ok,
            })
        }
        MethodArg::Erg => {
            let (f, diag) = erg_label(t)?;
            let mut report = verify(t, &f)?;
            report.bound_checks = erg_bound_checks(t, &report);
            let ok = report.injective && report.all_checks_hold();
            Ok(Labeled {
                labeling: f,
                report,
                construction: serde_json::to_value(&diag).expect("diagnostics serialize"),
                ok,
            })
        }
        MethodArg::Bh => {
            let mn = matching_number(t);
            if mn.nu != t.n() {
                return Err(CoreError::NotPerfect);
            }
            let matching = Matching::new(mn.witness);
            let out = bh_label(t, &matching)?;
            let mut report = verify(t, &out.labeling)?;
            report.bound_checks = bijection_checks(&report, t.m());
            let strong = strongly_graceful(t, &out.labeling, &matching);
            let ok = report.graceful && report.all_checks_hold();
            Ok(Labeled {
                labeling: out.labeling,
                report,
                construction: json!({
                    "strongly_graceful": strong,
                    "x_part": out.x_part,
                    "y_part": out.y_part,
                }),
                ok,
            })
        }
        MethodArg::BhRelaxed => {
            let out = bh_relaxed_label(t)?;
            let mut report = verify(t, &out.labeling)?;
            report.bound_checks = bh_relaxed_bound_checks(&out, &report);
            let ok = report.injective && report.all_checks_hold();
            Ok(Labeled {
                labeling: out.labeling,
                report,
                construction: json!({
                    "certificate": out.certificate,
                    "core_order": out.core_order,
                    "contracted": out.contracted,
                    "expanded": out.expanded,
                }),
                ok,
            })
        }
        MethodArg::Shell => {
            let out = shell_graceful(t)?;
            let mut report = verify(t, &out.labeling)?;
            report.bound_checks = bijection_checks(&report, t.m());
            let ok = report.graceful && report.all_checks_hold();
            Ok(Labeled {
                labeling: out.labeling,
                report,
                construction: json!({
                    "route": match out.route {
                        ShellRoute::Matching => "matching",
                        ShellRoute::OddExpansion => "odd-expansion",
                    },
                    "a_part": out.a_part,
                    "b_part": out.b_part,
                }),
                ok,
            })
        }
        MethodArg::AlphaShell => {
            let out = shell_alpha_label(t)?;
            let mut report = verify(t, &out.labeling)?;
            report.bound_checks = alpha_shell_bound_checks(&out, &report);
            let ok = report.injective && report.all_checks_hold();
            Ok(Labeled {
                labeling: out.labeling,
                report,
                construction: json!({
                    "certificate": out.certificate,
                    "pieces": out.pieces,
                }),
                ok,
            })
        }
    }
}

fn cmd_label(a: LabelArgs) -> R<()> {
    let t = read_tree(&a.input)?;
    let lab = run_method(&t, a.method).map_err(domain)?;
    let report = json!({
        "ok": lab.ok,
        "verification": lab.report,
        "construction": lab.construction,
    });
    let doc = LabelingDoc::new(&t, &lab.labeling, report);
    emit_json(&a.out, &serde_json::to_value(&doc).map_err(domain)?)?;
    if lab.ok {
        Ok(())
    } else {
        Err(domain(anyhow!("labeling failed its promised checks")))
    }
}

fn cmd_verify(a: VerifyArgs) -> R<()> {
    let doc: LabelingDoc = serde_json::from_str(&read_text(&a.input)?).map_err(usage)?;
    let t = doc.tree().map_err(usage)?;
    if doc.labels.len() != t.n() {
        return Err(usage(anyhow!(
            "document carries {} labels for {} vertices",
            doc.labels.len(),
            t.n()
        )));
    }
    let f = doc.labeling();
    let mut report = verify(&t, &f).map_err(domain)?;
    // recheck what the recorded method promises
    report.bound_checks = match doc.method {
        Method::Rrg => rrg_bound_checks(&t, &report),
        Method::Erg => erg_bound_checks(&t, &report),
        Method::Bh | Method::ShellDelta => bijection_checks(&report, t.m()),
        _ => Vec::new(),
    };
    let graceful_promised = matches!(doc.method, Method::Bh | Method::ShellDelta);
    let ok =
        report.injective && report.all_checks_hold() && (!graceful_promised || report.graceful);
    emit_json(
        &a.out,
        &json!({
            "ok": ok,
            "method": f.method.as_str(),
            "verification": report,
        }),
    )?;
    if ok {
        Ok(())
    } else {
        Err(domain(anyhow!("labeling document failed verification")))
    }
}

fn cmd_stats(a: StatsArgs) -> R<()> {
    let t = read_tree(&a.input)?;
    let lay = layout(&t, a.orientation.orientation());
    let levels = level_metrics(&lay);
    let identities = check_identities(&lay);
    let mn = matching_number(&t);
    let edge_groups = if t.distance_class() <= 2 {
        let es = edge_level_stats(&lay).map_err(domain)?;
        json!({
            "spine": es.spine,
            "per_pair": es
                .per_pair
                .iter()
                .map(|g| {
                    json!({
                        "i": g.i,
                        "m": g.m,
                        "s": g.s,
                        "ex_next": g.ex_next,
                        "q": g.q,
                        "d_avg": g.d_avg.map(ratio_str),
                        "dist1": g.dist1,
                        "dist2_next": g.dist2_next,
                    })
                })
                .collect::<Vec<_>>(),
        })
    } else {
        serde_json::Value::Null
    };
    emit_json(
        &a.out,
        &json!({
            "n": t.n(),
            "m": t.m(),
            "diameter": t.diameter(),
            "k_distance": t.distance_class(),
            "centers": t.centers(),
            "nu": mn.nu,
            "orientation": a.orientation.as_str(),
            "levels": levels,
            "identities": identities,
            "edge_groups": edge_groups,
        }),
    )
}

fn cmd_gen(a: GenArgs) -> R<()> {
    let spec = GenSpec {
        family: a.family.family(),
        spine: a.spine,
        max_branches: a.max_branches,
        max_leaves: a.max_leaves,
        k: a.k,
        seed: a.seed,
    };
    let t = generate(&spec).map_err(|e| match e {
        CoreError::InvalidSpec(_) => usage(e),
        other => domain(other),
    })?;
    emit(&a.out, &serialize_edge_list(&t))
}

fn cmd_enumerate(a: EnumerateArgs) -> R<()> {
    if a.max_n == 0 || a.max_n > 12 {
        return Err(usage(anyhow!("--max-n must be between 1 and 12")));
    }
    let mut counts = Vec::with_capacity(a.max_n);
    let mut trees = Vec::new();
    for n in 1..=a.max_n {
        let ts = enumerate_trees(n).map_err(domain)?;
        counts.push(ts.len());
        for t in ts {
            trees.push(json!({ "n": t.n(), "m": t.m(), "edges": t.edges() }));
        }
    }
    emit_json(
        &a.out,
        &json!({ "max_n": a.max_n, "counts": counts, "trees": trees }),
    )
}

fn cmd_oracle(a: OracleArgs) -> R<()> {
    match a.what {
        OracleCmd::Gracesize { file } => {
            let t = read_tree(&file)?;
            let gs = exact_gracesize(&t).map_err(domain)?;
            emit_json(
                &None,
                &json!({
                    "n": t.n(),
                    "m": t.m(),
                    "gracesize": gs,
                    "graceful": gs == t.m(),
                }),
            )
        }
        OracleCmd::Alpha { file } => {
            let t = read_tree(&file)?;
            let alpha = exact_alpha_size(&t).map_err(domain)?;
            emit_json(
                &None,
                &json!({
                    "n": t.n(),
                    "m": t.m(),
                    "alpha_size": alpha,
                    "full": alpha == t.m(),
                }),
            )
        }
        OracleCmd::Graceful { file } => {
            let t = read_tree(&file)?;
            let found = brute_graceful(&t).map_err(domain)?;
            emit_json(
                &None,
                &json!({
                    "n": t.n(),
                    "m": t.m(),
                    "graceful": found.is_some(),
                    "labels": found.map(|f| f.labels),
                }),
            )
        }
    }
}

fn cmd_bounds(a: BoundsArgs) -> R<()> {
    let t = read_tree(&a.input)?;
    let m = t.m() as i64;
    let d = t.diameter() as i64;
    let mn = matching_number(&t);
    let ex_right = level_metrics(&layout(&t, Orientation::Right)).ex;
    let ex_left = level_metrics(&layout(&t, Orientation::Left)).ex;
    let alpha = alpha_bound_lobster(m, d);
    let (gs_value, gs) = gracesize_lower(m, d, mn.nu as i64);
    emit_json(
        &a.out,
        &json!({
            "n": t.n(),
            "m": t.m(),
            "diameter": t.diameter(),
            "k_distance": t.distance_class(),
            "nu": mn.nu,
            "ex": { "left": ex_left, "right": ex_right },
            "range_relaxed_max_label": {
                "formula": "floor((3m - d)/2)",
                "value": rrg_bounds(m, d),
            },
            "contiguous_distinct_weights": {
                "formula": "max{(3m - d + 6)/4, (5m + d + 3)/8}",
                "value": ratio_str(alpha),
                "ceiling": ceil_ratio(alpha),
            },
            "gracesize_lower": {
                "formula": "max{(3m)/4 + (d - nu)/8 + 3/2, nu}",
                "averaged_arm": gs.formula,
                "value": gs.bound,
                "ceiling": ceil_ratio(gs_value),
                "three_quarters_applies": gs.three_quarters_applies,
            },
        }),
    )
}

/// One CSV row of a batch sweep. Field order is the column order.
#[derive(Debug, Serialize)]
struct BatchRow {
    id: String,
    n: usize,
    m: usize,
    d: usize,
    k_distance: usize,
    ex: usize,
    ex_prime: usize,
    s: usize,
    nu: usize,
    method: &'static str,
    epsilon: usize,
    max_label: u64,
    bound_rrg: String,
    bound_alpha: String,
    bound_gs: String,
    ok: bool,
}

fn batch_row(a: &BatchArgs, i: usize, method: MethodArg) -> R<BatchRow> {
    let spec = GenSpec {
        family: a.family.family(),
        spine: 7 + (i % 8),
        max_branches: 1,
        max_leaves: 2,
        k: 2,
        seed: a.seed.wrapping_add(i as u64),
    };
    let t = generate(&spec).map_err(|e| match e {
        CoreError::InvalidSpec(_) => usage(e),
        other => domain(other),
    })?;
    let lay = layout(&t, Orientation::Right);
    let stats = level_metrics(&lay);
    let mn = matching_number(&t);
    let m = t.m() as i64;
    let d = t.diameter() as i64;
    let (gs_value, _) = gracesize_lower(m, d, mn.nu as i64);
    // a method whose precondition the tree misses yields an ok=false row
    let (epsilon, max_label, ok) = match run_method(&t, method) {
        Ok(lab) => (lab.report.epsilon, lab.report.max_label, lab.ok),
        Err(_) => (0, 0, false),
    };
    Ok(BatchRow {
        id: format!("{}-{:04}", a.family.as_str(), i),
        n: t.n(),
        m: t.m(),
        d: t.diameter(),
        k_distance: t.distance_class(),
        ex: stats.ex,
        ex_prime: stats.ex_prime,
        s: stats.s,
        nu: mn.nu,
        method: method.as_str(),
        epsilon,
        max_label,
        bound_rrg: ratio_str(Ratio::new(3 * m - d, 2)),
        bound_alpha: ratio_str(alpha_bound_lobster(m, d)),
        bound_gs: ratio_str(gs_value),
        ok,
    })
}

fn cmd_batch(a: BatchArgs) -> R<()> {
    if a.count == 0 {
        return Err(usage(anyhow!("--count must be positive")));
    }
    let jobs: Vec<(usize, MethodArg)> = (0..a.count)
        .flat_map(|i| a.methods.iter().map(move |&m| (i, m)))
        .collect();
    // indexed parallel map keeps the (tree, method) order deterministic
    let rows = jobs
        .par_iter()
        .map(|&(i, method)| batch_row(&a, i, method))
        .collect::<R<Vec<_>>>()?;
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in &rows {
        writer.serialize(row).map_err(domain)?;
    }
    let bytes = writer.into_inner().map_err(|e| domain(anyhow!("{e}")))?;
    emit(&a.out, &String::from_utf8(bytes).map_err(domain)?)
}

fn render_dot(t: &Tree, f: Option<&Labeling>) -> String {
    let mut s = String::from("graph {\n");
    for v in 0..t.n() {
        let label = match f {
            Some(f) => f.labels[v].to_string(),
            None => v.to_string(),
        };
        s.push_str(&format!("  {} [label=\"{}\"];\n", v, label));
    }
    let mut edges = t.edges().to_vec();
    edges.sort_unstable();
    for (u, v) in edges {
        match f {
            Some(f) => {
                let w = f.labels[u].abs_diff(f.labels[v]);
                s.push_str(&format!("  {} -- {} [label=\"{}\"];\n", u, v, w));
            }
            None => s.push_str(&format!("  {} -- {};\n", u, v)),
        }
    }
    s.push_str("}\n");
    s
}

fn cmd_export_dot(a: ExportDotArgs) -> R<()> {
    let text = match (&a.input, &a.doc) {
        (Some(path), None) => {
            let t = read_tree(path)?;
            render_dot(&t, None)
        }
        (None, Some(path)) => {
            let doc: LabelingDoc = serde_json::from_str(&read_text(path)?).map_err(usage)?;
            let t = doc.tree().map_err(usage)?;
            if doc.labels.len() != t.n() {
                return Err(usage(anyhow!(
                    "document carries {} labels for {} vertices",
                    doc.labels.len(),
                    t.n()
                )));
            }
            render_dot(&t, Some(&doc.labeling()))
        }
        _ => return Err(usage(anyhow!("pass exactly one of --in or --doc"))),
    };
    emit(&a.out, &text)
}
