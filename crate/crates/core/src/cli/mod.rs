//! Command-line driver.
//!
//! Subcommands read a [`SweepConfig`] (the bundled default when `--config` is
//! absent) and write their reports into `--out`. Exit codes: 0 success,
//! 1 verification failure, 2 configuration error, 3 numerical failure.

pub mod config;
pub mod output;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Uniform};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::indices::{
    compare_gentle_vs_local, half_line_indices, verify_cut_independence,
    walk_winding, HalfLineResult, IndexTable, IndexOptions, RegionSpaces, GAP_SAMPLES,
};
use crate::lattice::{CMatrix, C64};
use crate::models::{Decoupler, Walk};
use crate::schur::{
    cyclic_eigen_count, eigendetect, required_half_width, op_norm, renewal_check, schur_eval, schur_eval_series,
    PerturbedWalk, RenewalFormula, SchurContext,
};
use crate::spectral::{essential_gap, GapReport, DEFAULT_GAP_THRESHOLD};
use crate::symmetry::paulis;
use config::{ConfigError, SweepConfig, DEFAULT_CONFIG};
use output::{csv_writer, fmt_float, write_json};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "qwalk", version, about = "Symmetry indices of one-dimensional quantum walks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// TOML configuration; the bundled default when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Directory for the reports.
    #[arg(long, global = true, value_name = "DIR", default_value = ".")]
    out: PathBuf,
    /// Worker threads; all available cores when omitted.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    /// Seed of the randomized checks, overriding `verify.seed`.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Winding and si→ over the configured angle grid (CSV).
    PhaseDiagram,
    /// Index table, edge states and eigenfunctions at one configuration.
    EdgeStates,
    /// Pass/fail report of the index invariants over the grid.
    Verify,
    /// Schur function values, eigenvalue detection and the renewal identity.
    SchurProbe,
}

#[derive(Debug)]
enum Failure {
    Config(String),
    Numerical(String),
    Verification,
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e.0)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Config(format!("i/o: {e}"))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Numerical(e.to_string())
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(()) => EXIT_OK,
        Err(Failure::Config(m)) => {
            eprintln!("configuration error: {m}");
            EXIT_CONFIG
        }
        Err(Failure::Numerical(m)) => {
            eprintln!("numerical failure: {m}");
            EXIT_NUMERICAL
        }
        Err(Failure::Verification) => EXIT_VERIFY,
    }
}

fn execute(cli: &Cli) -> Result<(), Failure> {
    let mut cfg = match &cli.config {
        Some(p) => SweepConfig::load(p)?,
        None => SweepConfig::parse(DEFAULT_CONFIG)?,
    };
    if let Some(s) = cli.seed {
        cfg.verify.seed = s;
    }
    std::fs::create_dir_all(&cli.out)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Failure::Config("--threads must be positive".into()));
        }
        pool = pool.num_threads(n);
    }
    let pool = pool
        .build()
        .map_err(|e| Failure::Config(format!("thread pool: {e}")))?;
    pool.install(|| match cli.command {
        Command::PhaseDiagram => phase_diagram(&cfg, &cli.out),
        Command::EdgeStates => edge_states(&cfg, &cli.out),
        Command::Verify => verify(&cfg, &cli.out),
        Command::SchurProbe => schur_probe(&cfg, &cli.out),
    })
}

/// Smallest bulk gaps at `±1` over the bulk phases of `walk`.
fn bulk_gaps(walk: &Walk) -> crate::Result<GapReport> {
    let (l, r) = walk.bulk_walks();
    let mut out = GapReport {
        gap_at_plus: f64::INFINITY,
        gap_at_minus: f64::INFINITY,
        closed_plus: false,
        closed_minus: false,
    };
    for b in [l, r] {
        let g = essential_gap(&b.symbol().expect("bulk"), GAP_SAMPLES, DEFAULT_GAP_THRESHOLD)?;
        out.gap_at_plus = out.gap_at_plus.min(g.gap_at_plus);
        out.gap_at_minus = out.gap_at_minus.min(g.gap_at_minus);
        out.closed_plus |= g.closed_plus;
        out.closed_minus |= g.closed_minus;
    }
    Ok(out)
}

fn gapped(g: &GapReport, tol: f64) -> bool {
    g.gap_at_plus > tol && g.gap_at_minus > tol
}

fn sanitize(msg: &str) -> String {
    msg.replace([',', '\n'], ";")
}

struct PhaseRow {
    point: Vec<f64>,
    gaps: Option<GapReport>,
    winding: Option<i64>,
    si_right: Option<i64>,
    status: String,
}

fn phase_point(cfg: &SweepConfig, point: &[f64]) -> PhaseRow {
    let walk = cfg.bulk_walk(point);
    let mut row = PhaseRow {
        point: point.to_vec(),
        gaps: None,
        winding: None,
        si_right: None,
        status: "ok".into(),
    };
    let g = match bulk_gaps(&walk) {
        Ok(g) => g,
        Err(e) => {
            row.status = format!("error: {}", sanitize(&e.to_string()));
            return row;
        }
    };
    row.gaps = Some(g);
    if !gapped(&g, cfg.tolerances.gap) {
        row.status = "gap_closed".into();
        return row;
    }
    match walk_winding(&walk) {
        Ok(w) => row.winding = Some(w.winding),
        Err(e) => {
            row.status = format!("error: {}", sanitize(&e.to_string()));
            return row;
        }
    }
    match half_line_indices(&walk, cfg.indices.cut, &cfg.index_options()) {
        Ok(h) => row.si_right = Some(h.table.si_right.value),
        Err(e) => row.status = format!("error: {}", sanitize(&e.to_string())),
    }
    row
}

fn phase_diagram(cfg: &SweepConfig, out: &Path) -> Result<(), Failure> {
    let points = cfg.points();
    let rows: Vec<PhaseRow> = points.par_iter().map(|p| phase_point(cfg, p)).collect();
    let names = cfg.model.kind.angle_names();
    let mut header: Vec<&str> = names.to_vec();
    header.extend([
        "gap_at_plus",
        "gap_at_minus",
        "winding",
        "si_right",
        "agree",
        "status",
    ]);
    let mut w = csv_writer(&out.join(&cfg.outputs.phase_diagram), &header)?;
    let na = || "NA".to_string();
    for r in &rows {
        let mut rec: Vec<String> = r.point.iter().map(|&a| fmt_float(a)).collect();
        rec.push(r.gaps.map_or_else(na, |g| fmt_float(g.gap_at_plus)));
        rec.push(r.gaps.map_or_else(na, |g| fmt_float(g.gap_at_minus)));
        rec.push(r.winding.map_or_else(na, |v| v.to_string()));
        rec.push(r.si_right.map_or_else(na, |v| v.to_string()));
        rec.push(match (r.winding, r.si_right) {
            (Some(a), Some(b)) => (a == b).to_string(),
            _ => na(),
        });
        rec.push(r.status.clone());
        w.write_record(&rec).map_err(std::io::Error::other)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct StateEntry {
    id: usize,
    region: &'static str,
    eigenvalue_target: f64,
    eigenvalue: [f64; 2],
    eigenphase: f64,
    residual: f64,
    chirality: f64,
    center: f64,
    edge_mass_left: f64,
    edge_mass_right: f64,
    middle_mass: f64,
}

#[derive(Serialize)]
struct EdgeReport {
    model: config::ModelName,
    garnish: bool,
    angles: BTreeMap<String, f64>,
    crossover: Option<BTreeMap<String, f64>>,
    cut: i64,
    half_width: usize,
    escalations: usize,
    decoupler: Decoupler,
    table: IndexTable,
    winding_left: Option<i64>,
    winding_right: Option<i64>,
    edge_dimension: usize,
    eigenvalues: Vec<[f64; 2]>,
    states: Vec<StateEntry>,
}

/// Counted states of one region with the phase of each vector fixed so its
/// largest component is real and positive.
fn region_states<'a>(
    name: &'static str,
    region: &'a RegionSpaces,
    first_id: usize,
) -> Vec<(StateEntry, nalgebra::DVector<C64>, &'a crate::lattice::CellStructure)> {
    let mut out = Vec::new();
    for lambda in [1.0, -1.0] {
        let (rep, keep) = region.counted(lambda);
        let chir = crate::indices::chiralities(rep);
        for (i, _) in keep.iter().enumerate().filter(|(_, &k)| k) {
            let mut v = rep.basis.column(i).into_owned();
            let jmax = v
                .iter()
                .enumerate()
                .fold((0usize, 0.0f64), |acc, (j, z)| {
                    if z.norm() > acc.1 + 1e-12 {
                        (j, z.norm())
                    } else {
                        acc
                    }
                })
                .0;
            let ph = v[jmax] / v[jmax].norm();
            v *= ph.conj();
            let ev = rep.rayleigh[i];
            let p = rep.profiles[i];
            out.push((
                StateEntry {
                    id: first_id + out.len(),
                    region: name,
                    eigenvalue_target: lambda,
                    eigenvalue: [ev.re, ev.im],
                    eigenphase: ev.arg(),
                    residual: rep.residuals[i],
                    chirality: chir[i],
                    center: p.center,
                    edge_mass_left: p.edge_mass_left,
                    edge_mass_right: p.edge_mass_right,
                    middle_mass: p.middle_mass,
                },
                v,
                &rep.structure,
            ));
        }
    }
    out
}

fn edge_states(cfg: &SweepConfig, out: &Path) -> Result<(), Failure> {
    let point = cfg.single_point()?;
    let walk = cfg.walk(&point);
    let h: HalfLineResult = half_line_indices(&walk, cfg.indices.cut, &cfg.index_options())?;
    let (l, r) = walk.bulk_walks();
    let names = cfg.model.kind.angle_names();
    let mut all = Vec::new();
    for (name, region) in [("left", &h.left), ("right", &h.right), ("whole", &h.whole)] {
        let first = all.len();
        all.extend(region_states(name, region, first));
    }
    let report = EdgeReport {
        model: cfg.model.kind,
        garnish: cfg.model.garnish,
        angles: names.iter().map(|n| n.to_string()).zip(point.iter().copied()).collect(),
        crossover: cfg.crossover.as_ref().map(|c| {
            names.iter().map(|n| (n.to_string(), c.right[*n])).collect()
        }),
        cut: h.cut,
        half_width: h.half_width,
        escalations: h.escalations,
        decoupler: cfg.indices.decoupler,
        table: h.table,
        winding_left: walk_winding(&l).ok().map(|w| w.winding),
        winding_right: walk_winding(&r).ok().map(|w| w.winding),
        edge_dimension: h.edge_dimension(),
        eigenvalues: all.iter().map(|(s, _, _)| s.eigenvalue).collect(),
        states: Vec::new(),
    };
    let mut w = csv_writer(
        &out.join(&cfg.outputs.eigenfunctions),
        &["state", "x", "component", "re", "im", "chirality", "eigenvalue_target"],
    )?;
    for (s, v, structure) in &all {
        for (g, z) in v.iter().enumerate() {
            let (x, c) = structure.locate(g);
            w.write_record([
                s.id.to_string(),
                x.to_string(),
                c.to_string(),
                fmt_float(z.re),
                fmt_float(z.im),
                fmt_float(s.chirality),
                fmt_float(s.eigenvalue_target),
            ])
            .map_err(std::io::Error::other)?;
        }
    }
    w.flush()?;
    let report = EdgeReport {
        states: all.into_iter().map(|(s, _, _)| s).collect(),
        ..report
    };
    write_json(&out.join(&cfg.outputs.edge_report), &report)?;
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
struct Check {
    name: &'static str,
    status: Status,
    detail: String,
}

/// Invariants checked at every grid point, in report order.
const INVARIANTS: [&str; 11] = [
    "admissibility",
    "attribution",
    "sum_rule",
    "column_sums",
    "row_sums_gentle",
    "winding_agreement",
    "lower_bound",
    "cut_independence",
    "gentle_vs_local",
    "schur_eigendetect",
    "renewal",
];

#[derive(Serialize)]
struct PointReport {
    angles: Vec<f64>,
    gapped: bool,
    table: Option<IndexTable>,
    checks: Vec<Check>,
}

#[derive(Serialize)]
struct InvariantSummary {
    name: &'static str,
    status: Status,
    passed: usize,
    failed: usize,
    skipped: usize,
}

#[derive(Serialize)]
struct VerifyReport {
    all_pass: bool,
    seed: u64,
    invariants: Vec<InvariantSummary>,
    points: Vec<PointReport>,
}

fn check(name: &'static str, ok: bool, detail: impl Into<String>) -> Check {
    Check {
        name,
        status: if ok { Status::Pass } else { Status::Fail },
        detail: detail.into(),
    }
}

fn skip(name: &'static str, why: &str) -> Check {
    Check {
        name,
        status: Status::Skipped,
        detail: why.into(),
    }
}

fn random_point_in_disc(rng: &mut ChaCha8Rng, radius: f64) -> C64 {
    let u = Uniform::new(0.0_f64, 1.0).expect("valid range");
    let r = radius * u.sample(rng).sqrt();
    let t = 2.0 * std::f64::consts::PI * u.sample(rng);
    C64::from_polar(r, t)
}

fn verify_point(cfg: &SweepConfig, point: &[f64], seed: u64) -> PointReport {
    let walk = cfg.walk(point);
    let mut checks = Vec::new();
    let report = |checks: Vec<Check>, gapped: bool, table| PointReport {
        angles: point.to_vec(),
        gapped,
        table,
        checks: INVARIANTS
            .iter()
            .map(|n| {
                checks
                    .iter()
                    .find(|c| c.name == *n)
                    .cloned()
                    .unwrap_or_else(|| skip(n, "not evaluated"))
            })
            .collect(),
    };

    let n_adm = 2 * walk.min_cells();
    match walk
        .build_window(cfg.indices.cut, n_adm, &[])
        .and_then(|w| {
            let rep = walk.rep(w.structure())?;
            rep.check_admissible(&w, cfg.tolerances.admissibility)
        }) {
        Ok(a) => checks.push(check("admissibility", a.admissible, format!("{:?}", a.defects))),
        Err(e) => checks.push(check("admissibility", false, e.to_string())),
    }

    let gaps = match bulk_gaps(&walk) {
        Ok(g) => g,
        Err(e) => {
            checks.push(check("attribution", false, e.to_string()));
            return report(checks, false, None);
        }
    };
    if !gapped(&gaps, cfg.tolerances.gap) {
        let why = format!(
            "gap closed: {:.3e} at +1, {:.3e} at -1; indices undefined",
            gaps.gap_at_plus, gaps.gap_at_minus
        );
        for n in &INVARIANTS[1..] {
            checks.push(skip(n, &why));
        }
        return report(checks, false, None);
    }

    let opts = IndexOptions {
        decoupler: Decoupler::Gentle,
        ..cfg.index_options()
    };
    let cmp = match compare_gentle_vs_local(&walk, cfg.indices.cut, &opts) {
        Ok(c) => c,
        Err(e) => {
            checks.push(check("attribution", false, e.to_string()));
            for n in &INVARIANTS[2..] {
                checks.push(skip(n, "indices unavailable: attribution failed"));
            }
            return report(checks, true, None);
        }
    };
    checks.push(check(
        "attribution",
        true,
        format!(
            "half width {} after {} escalations",
            cmp.gentle.half_width, cmp.gentle.escalations
        ),
    ));
    let (g, r) = (&cmp.gentle.table, &cmp.local.table);
    checks.push(check(
        "sum_rule",
        g.sum_rule_holds() && r.sum_rule_holds(),
        format!(
            "si = {}, si_left = {}, si_right = {}",
            g.si_total.value, g.si_left.value, g.si_right.value
        ),
    ));
    checks.push(check(
        "column_sums",
        g.column_sums_hold() && r.column_sums_hold(),
        "",
    ));
    checks.push(check("row_sums_gentle", g.row_sums_hold(), ""));

    let (bl, br) = walk.bulk_walks();
    match (walk_winding(&bl), walk_winding(&br)) {
        (Ok(wl), Ok(wr)) => {
            let ok = g.si_right.value == wr.winding && g.si_left.value == -wl.winding;
            checks.push(check(
                "winding_agreement",
                ok,
                format!("windings {} | {}", wl.winding, wr.winding),
            ));
        }
        (a, b) => checks.push(check(
            "winding_agreement",
            false,
            format!("{:?} {:?}", a.err(), b.err()),
        )),
    }
    let dim = cmp.gentle.edge_dimension();
    checks.push(check(
        "lower_bound",
        dim as i64 >= g.si_total.value.abs(),
        format!("dim {dim} vs |si| {}", g.si_total.value.abs()),
    ));
    let x0 = cfg.indices.cut;
    match verify_cut_independence(&walk, x0, x0 + cfg.verify.cut_separation, &opts) {
        Ok(c) => checks.push(check(
            "cut_independence",
            c.holds,
            format!(
                "si_right {} / {}, middle {}",
                c.si_right_first.value, c.si_right_second.value, c.si_middle.value
            ),
        )),
        Err(e) => checks.push(check("cut_independence", false, e.to_string())),
    }
    checks.push(check(
        "gentle_vs_local",
        cmp.marginals_agree,
        format!("gentle {:?} reflection {:?}", ent(g), ent(r)),
    ));

    let s = &cfg.schur;
    match required_half_width(&walk, s.min_half_width, s.tol) {
        Ok(n) if n > s.max_half_width => {
            let why = format!("Schur window of {n} cells exceeds schur.max_half_width");
            checks.push(skip("schur_eigendetect", &why));
            checks.push(skip("renewal", &why));
            return report(checks, true, Some(*g));
        }
        _ => {}
    }
    match schur_checks(cfg, &walk, seed) {
        Ok(c) => checks.extend(c),
        Err(e) => {
            checks.push(check("schur_eigendetect", false, e.to_string()));
            checks.push(check("renewal", false, e.to_string()));
        }
    }
    report(checks, true, Some(*g))
}

fn ent(t: &IndexTable) -> [i64; 4] {
    t.entries().map(|e| e.value)
}

fn schur_checks(cfg: &SweepConfig, walk: &Walk, seed: u64) -> crate::Result<Vec<Check>> {
    let s = &cfg.schur;
    let ctx = SchurContext::for_walk(walk, cfg.indices.cut, &s.cells, s.min_half_width, s.tol)?;
    let mut dims = Vec::new();
    let mut ok = true;
    for lambda in [1.0, -1.0] {
        let d = eigendetect(&ctx, lambda, s.tol)?.dimension;
        let c = cyclic_eigen_count(&ctx, lambda, cfg.tolerances.eig)?;
        ok &= d == c;
        dims.push((d, c));
    }
    let eig = check(
        "schur_eigendetect",
        ok,
        format!("(detected, dense) at +1 {:?}, at -1 {:?}", dims[0], dims[1]),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0_f64;
    let mut matched = true;
    for _ in 0..cfg.verify.renewal_samples {
        let v = crate::testing::random_unitary(ctx.dim(), &mut rng);
        let z = random_point_in_disc(&mut rng, 0.9);
        let r = renewal_check(&ctx, &v, &[z])?;
        matched &= r.matching == (PerturbedWalk::VW, RenewalFormula::VF);
        worst = worst.max(r.deviation);
    }
    let ren = check(
        "renewal",
        matched && worst < 1e-7,
        format!("f_VW = V f, largest deviation {worst:.3e}"),
    );
    Ok(vec![eig, ren])
}

fn verify(cfg: &SweepConfig, out: &Path) -> Result<(), Failure> {
    let points = cfg.points();
    let seed = cfg.verify.seed;
    let reports: Vec<PointReport> = points
        .par_iter()
        .enumerate()
        .map(|(i, p)| verify_point(cfg, p, seed.wrapping_add(i as u64)))
        .collect();
    let invariants: Vec<InvariantSummary> = INVARIANTS
        .iter()
        .enumerate()
        .map(|(k, name)| {
            let count = |s| reports.iter().filter(|r| r.checks[k].status == s).count();
            let (passed, failed, skipped) =
                (count(Status::Pass), count(Status::Fail), count(Status::Skipped));
            let status = if failed > 0 {
                Status::Fail
            } else if passed > 0 {
                Status::Pass
            } else {
                Status::Skipped
            };
            InvariantSummary {
                name,
                status,
                passed,
                failed,
                skipped,
            }
        })
        .collect();
    let all_pass = invariants.iter().all(|i| i.status != Status::Fail);
    for i in &invariants {
        println!(
            "{:<20} {:<8} pass {} fail {} skipped {}",
            i.name,
            format!("{:?}", i.status).to_lowercase(),
            i.passed,
            i.failed,
            i.skipped
        );
    }
    let report = VerifyReport {
        all_pass,
        seed,
        invariants,
        points: reports,
    };
    write_json(&out.join(&cfg.outputs.verify_report), &report)?;
    if all_pass {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

#[derive(Serialize)]
struct Evaluation {
    z: [f64; 2],
    /// Row-major entries as `[re, im]`.
    f: Vec<Vec<[f64; 2]>>,
    norm: f64,
    /// Deviation from the truncated series, where the series converges.
    series_deviation: Option<f64>,
}

#[derive(Serialize)]
struct Detection {
    lambda: f64,
    dimension: usize,
    dense_count: usize,
    chirality_trace: Option<f64>,
}

#[derive(Serialize)]
struct RenewalEntry {
    walk: PerturbedWalk,
    formula: RenewalFormula,
    deviation: f64,
}

#[derive(Serialize)]
struct SchurReport {
    cells: Vec<i64>,
    subspace_dim: usize,
    half_width: usize,
    evaluations: Vec<Evaluation>,
    eigendetect: Vec<Detection>,
    renewal_seed: u64,
    renewal_matching: RenewalEntry,
    renewal: Vec<RenewalEntry>,
}

fn matrix_entries(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    m.row_iter()
        .map(|r| r.iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

fn schur_probe(cfg: &SweepConfig, out: &Path) -> Result<(), Failure> {
    let point = cfg.single_point()?;
    let walk = cfg.walk(&point);
    let s = &cfg.schur;
    let n = required_half_width(&walk, s.min_half_width, s.tol)?;
    if n > s.max_half_width {
        return Err(Failure::Numerical(format!(
            "Schur window of {n} cells exceeds schur.max_half_width = {}",
            s.max_half_width
        )));
    }
    let ctx = SchurContext::for_walk(&walk, cfg.indices.cut, &s.cells, s.min_half_width, s.tol)?;
    let mut evaluations = Vec::new();
    for z in &s.z {
        let zc = C64::new(z[0], z[1]);
        let f = schur_eval(&ctx, zc)?;
        let series_deviation = if zc.norm() < 1.0 {
            schur_eval_series(&ctx, zc)
                .ok()
                .map(|g| op_norm(&(g - &f)))
        } else {
            None
        };
        evaluations.push(Evaluation {
            z: *z,
            norm: op_norm(&f),
            f: matrix_entries(&f),
            series_deviation,
        });
    }
    let mut detections = Vec::new();
    for lambda in [1.0, -1.0] {
        let d = eigendetect(&ctx, lambda, s.tol)?;
        detections.push(Detection {
            lambda,
            dimension: d.dimension,
            dense_count: cyclic_eigen_count(&ctx, lambda, cfg.tolerances.eig)?,
            chirality_trace: d.chirality_trace,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.verify.seed);
    let v = if ctx.dim() == 2 {
        paulis::i_sigma2()
    } else {
        crate::testing::random_unitary(ctx.dim(), &mut rng)
    };
    let zs: Vec<C64> = (0..cfg.verify.renewal_samples.max(1))
        .map(|_| random_point_in_disc(&mut rng, 0.9))
        .collect();
    let r = renewal_check(&ctx, &v, &zs)?;
    let entry = |(w, f): (PerturbedWalk, RenewalFormula), d: f64| RenewalEntry {
        walk: w,
        formula: f,
        deviation: d,
    };
    let report = SchurReport {
        cells: s.cells.clone(),
        subspace_dim: ctx.dim(),
        half_width: (ctx.walk().structure().n_cells()) / 2,
        evaluations,
        eigendetect: detections,
        renewal_seed: cfg.verify.seed,
        renewal_matching: entry(r.matching, r.deviation),
        renewal: r.deviations.iter().map(|(&k, &d)| entry(k, d)).collect(),
    };
    write_json(&out.join(&cfg.outputs.schur_report), &report)?;
    Ok(())
}
