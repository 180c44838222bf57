//! `twoguard`: exact two-sided terrain guarding from the command line.
//!
//! Subcommands: `gen`, `discretize`, `solve`, `verify`, `oracle`, `render`,
//! `campaign`. All file formats are JSON with exact rational coordinates;
//! rendering emits SVG 1.1. Exit codes: 0 success, 1 verification or
//! feasibility failure, 2 usage error.

pub mod campaign;
pub mod gen;
pub mod render;

use anyhow::{bail, Context, Result};
use campaign::{run_campaign, CampaignSpec};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gen::{gen_terrain, GenSpec, Profile};
use render::{render_svg, RenderLayers};
use serde_json::json;
use std::path::{Path, PathBuf};
use twoguard_core::{
    boundary_points, brute_force_optimal, build_witness_set, compute_all_extremes, json as tgjson,
    solve, verify_two_sided_continuous, GuardSet, OracleError, OracleTarget, Provenance, Terrain,
    Verdict, WitnessMode, ORACLE_DEFAULT_MAX_N,
};

#[derive(Parser)]
#[command(
    name = "twoguard",
    version,
    about = "Exact solver and verifier for two-sided guarding of 1.5D terrains"
)]
pub struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum WitnessArg {
    Paper,
    Dense,
}

impl From<WitnessArg> for WitnessMode {
    fn from(w: WitnessArg) -> WitnessMode {
        match w {
            WitnessArg::Paper => WitnessMode::Paper,
            WitnessArg::Dense => WitnessMode::Dense,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Uniform,
    Spiky,
    Staircase,
}

impl From<ProfileArg> for Profile {
    fn from(p: ProfileArg) -> Profile {
        match p {
            ProfileArg::Uniform => Profile::Uniform,
            ProfileArg::Spiky => Profile::Spiky,
            ProfileArg::Staircase => Profile::Staircase,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a seeded random terrain.
    Gen(GenArgs),
    /// Emit boundary points and the witness set of a terrain.
    Discretize(DiscretizeArgs),
    /// Run the two-pass solver and verify the result.
    Solve(SolveArgs),
    /// Check a guard set against the whole terrain.
    Verify(VerifyArgs),
    /// Exhaustive minimum guard set (small instances).
    Oracle(OracleArgs),
    /// Draw a terrain and optional layers as SVG.
    Render(RenderArgs),
    /// Generate, solve, verify, and cross-check many instances.
    Campaign(CampaignArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Vertex count.
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    y_min: i64,
    #[arg(long, default_value_t = 8)]
    y_max: i64,
    #[arg(long, value_enum, default_value_t = ProfileArg::Uniform)]
    profile: ProfileArg,
    /// Output path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DiscretizeArgs {
    /// Terrain JSON path.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = WitnessArg::Paper)]
    witnesses: WitnessArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = WitnessArg::Paper)]
    witnesses: WitnessArg,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include the leftmost/rightmost-visible-vertex map in the report.
    #[arg(long)]
    emit_extremes: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Guard vertex indices, comma separated, e.g. 0,2,4.
    #[arg(long)]
    guards: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Optimize against full continuous coverage instead of the witness set.
    #[arg(long)]
    continuous: bool,
    #[arg(long, value_enum, default_value_t = WitnessArg::Paper)]
    witnesses: WitnessArg,
    #[arg(long, default_value_t = ORACLE_DEFAULT_MAX_N)]
    max_n: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Guard vertex indices to mark, comma separated.
    #[arg(long)]
    guards: Option<String>,
    /// Mark this witness set.
    #[arg(long, value_enum)]
    witnesses: Option<WitnessArg>,
    /// Mark boundary points.
    #[arg(long)]
    boundary: bool,
    /// Stroke each guard's visible portions.
    #[arg(long)]
    shade: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CampaignArgs {
    #[arg(long)]
    count: usize,
    #[arg(long, default_value_t = 3)]
    n_min: usize,
    #[arg(long, default_value_t = 12)]
    n_max: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    y_min: i64,
    #[arg(long, default_value_t = 12)]
    y_max: i64,
    #[arg(long, value_enum, default_value_t = ProfileArg::Uniform)]
    profile: ProfileArg,
    #[arg(long, default_value_t = ORACLE_DEFAULT_MAX_N)]
    max_n: usize,
    /// Summary JSON path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write per-instance rows as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Directory for shrunken failure fixtures.
    #[arg(long)]
    fixtures: Option<PathBuf>,
}

fn read_terrain(path: &Path) -> Result<Terrain> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    tgjson::terrain_from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, content).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn emit_json(out: Option<&Path>, v: &serde_json::Value) -> Result<()> {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    emit(out, &s)
}

fn parse_guard_list(list: &str, n: usize) -> Result<GuardSet> {
    let mut idx = Vec::new();
    for part in list.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let g: usize = part
            .parse()
            .with_context(|| format!("bad guard index {part:?}"))?;
        if g >= n {
            bail!("guard index {g} out of range for {n} vertices");
        }
        if idx.contains(&g) {
            bail!("duplicate guard index {g}");
        }
        idx.push(g);
    }
    if idx.is_empty() {
        bail!("no guard indices given");
    }
    Ok(GuardSet::from_pairs(
        idx.into_iter().map(|g| (g, Provenance::Forced)).collect(),
    ))
}

/// Runs one parsed command; the returned code is the process exit code.
fn dispatch(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Gen(a) => {
            let t = gen_terrain(&GenSpec {
                n: a.n,
                seed: a.seed,
                y_min: a.y_min,
                y_max: a.y_max,
                profile: a.profile.into(),
            })?;
            emit(a.out.as_deref(), &tgjson::terrain_to_string(&t))?;
            Ok(0)
        }
        Cmd::Discretize(a) => {
            let t = read_terrain(&a.input)?;
            let bps = boundary_points(&t);
            let xs = build_witness_set(&t, a.witnesses.into());
            let v = json!({
                "boundary": tgjson::boundary_to_value(&bps),
                "witnesses": tgjson::witnesses_to_value(&xs),
            });
            emit_json(a.out.as_deref(), &v)?;
            Ok(0)
        }
        Cmd::Solve(a) => {
            let t = read_terrain(&a.input)?;
            let report = solve(&t, a.witnesses.into());
            let mut v = tgjson::report_to_value(&report);
            if a.emit_extremes {
                let xs = build_witness_set(&t, a.witnesses.into());
                let em = compute_all_extremes(&t, &xs);
                v["extremes"] = tgjson::extremes_to_value(&em);
            }
            emit_json(a.out.as_deref(), &v)?;
            Ok(if report.verified { 0 } else { 1 })
        }
        Cmd::Verify(a) => {
            let t = read_terrain(&a.input)?;
            let s = parse_guard_list(&a.guards, t.n())?;
            let cert = verify_two_sided_continuous(&t, &s);
            emit_json(a.out.as_deref(), &tgjson::certificate_to_value(&cert))?;
            Ok(if cert.verdict == Verdict::Covered { 0 } else { 1 })
        }
        Cmd::Oracle(a) => {
            let t = read_terrain(&a.input)?;
            let xs;
            let target = if a.continuous {
                OracleTarget::Continuous
            } else {
                xs = build_witness_set(&t, a.witnesses.into());
                OracleTarget::Witnesses(&xs)
            };
            let opt = match brute_force_optimal(&t, target, a.max_n) {
                Ok(s) => s,
                Err(e @ OracleError::TooLarge { .. }) => bail!(e),
            };
            let v = json!({
                "target": if a.continuous { "continuous" } else { "witnesses" },
                "size": opt.len(),
                "guards": tgjson::guard_set_to_value(&opt),
            });
            emit_json(a.out.as_deref(), &v)?;
            Ok(0)
        }
        Cmd::Render(a) => {
            let t = read_terrain(&a.input)?;
            let s = a
                .guards
                .as_deref()
                .map(|g| parse_guard_list(g, t.n()))
                .transpose()?;
            let xs = a.witnesses.map(|w| build_witness_set(&t, w.into()));
            let bps = if a.boundary {
                Some(boundary_points(&t))
            } else {
                None
            };
            let svg = render_svg(
                &t,
                &RenderLayers {
                    guards: s.as_ref(),
                    witnesses: xs.as_ref(),
                    boundary: bps.as_deref(),
                    shade: a.shade,
                },
            );
            emit(a.out.as_deref(), &svg)?;
            Ok(0)
        }
        Cmd::Campaign(a) => {
            let out = run_campaign(
                &CampaignSpec {
                    count: a.count,
                    n_min: a.n_min,
                    n_max: a.n_max,
                    seed: a.seed,
                    y_min: a.y_min,
                    y_max: a.y_max,
                    profile: a.profile.into(),
                    max_n: a.max_n,
                },
                a.fixtures.as_deref(),
            )?;
            if let Some(p) = &a.csv {
                std::fs::write(p, &out.csv)
                    .with_context(|| format!("writing {}", p.display()))?;
            }
            emit_json(a.out.as_deref(), &out.summary)?;
            let clean = out.summary["failures"].as_array().is_some_and(|f| f.is_empty());
            Ok(if clean { 0 } else { 1 })
        }
    }
}

/// Entry point shared by the binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}
