//! Randomized end-to-end campaign: generate, solve, verify, and (at oracle
//! scale) cross-check optimality, in parallel. Failures are data: each one
//! is shrunk by vertex deletion and written out as a terrain fixture, and
//! the summary stays deterministic for a fixed seed.

use crate::gen::{gen_terrain, GenSpec, Profile};
use anyhow::{Context, Result};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::fmt;
use std::path::{Path, PathBuf};
use twoguard_core::{
    brute_force_optimal, build_witness_set, json as tgjson, solve, verify_two_sided_continuous,
    OracleTarget, Terrain, Verdict, WitnessMode,
};

#[derive(Debug, Clone, Copy)]
pub struct CampaignSpec {
    pub count: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub seed: u64,
    pub y_min: i64,
    pub y_max: i64,
    pub profile: Profile,
    /// Oracle comparisons run only when n is at most this.
    pub max_n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureKind {
    /// solve's guard set failed continuous verification.
    Infeasible(WitnessMode),
    /// solve's guard count differs from the exhaustive optimum.
    NotOptimal,
    /// Paper and dense witness modes disagree on the guard count.
    ModeMismatch,
}

impl fmt::Display for FailureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailureKind::Infeasible(WitnessMode::Paper) => write!(f, "infeasible-paper"),
            FailureKind::Infeasible(WitnessMode::Dense) => write!(f, "infeasible-dense"),
            FailureKind::NotOptimal => write!(f, "not-optimal"),
            FailureKind::ModeMismatch => write!(f, "mode-mismatch"),
        }
    }
}

struct InstanceResult {
    index: usize,
    seed: u64,
    n: usize,
    paper_guards: usize,
    dense_guards: usize,
    oracle_size: Option<usize>,
    extremes_ratio: f64,
    pass_ratio: f64,
    failures: Vec<FailureKind>,
}

fn failure_of_kind(t: &Terrain, kind: FailureKind, max_n: usize) -> bool {
    match kind {
        FailureKind::Infeasible(mode) => !solve(t, mode).verified,
        FailureKind::NotOptimal => {
            if t.n() > max_n {
                return false;
            }
            let r = solve(t, WitnessMode::Paper);
            let xs = build_witness_set(t, WitnessMode::Paper);
            match brute_force_optimal(t, OracleTarget::Witnesses(&xs), max_n) {
                Ok(opt) => r.guard_set.len() != opt.len(),
                Err(_) => false,
            }
        }
        FailureKind::ModeMismatch => {
            let p = solve(t, WitnessMode::Paper);
            let d = solve(t, WitnessMode::Dense);
            p.guard_set.len() != d.guard_set.len()
        }
    }
}

/// Deletes vertices one at a time, keeping each deletion only if the
/// failure persists, until no single deletion preserves it.
pub fn shrink_failure(t: &Terrain, kind: FailureKind, max_n: usize) -> Terrain {
    let mut cur = t.clone();
    loop {
        let mut shrunk = None;
        for skip in 0..cur.n() {
            if cur.n() <= 2 {
                break;
            }
            let verts: Vec<_> = cur
                .vertices()
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != skip)
                .map(|(_, v)| v.clone())
                .collect();
            let cand = match Terrain::new(verts) {
                Ok(t) => t,
                Err(_) => continue,
            };
            if failure_of_kind(&cand, kind, max_n) {
                shrunk = Some(cand);
                break;
            }
        }
        match shrunk {
            Some(next) => cur = next,
            None => return cur,
        }
    }
}

fn run_instance(spec: &CampaignSpec, index: usize) -> InstanceResult {
    let seed = spec.seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    let n = spec.n_min + (seed % (spec.n_max - spec.n_min + 1) as u64) as usize;
    let t = gen_terrain(&GenSpec {
        n,
        seed,
        y_min: spec.y_min,
        y_max: spec.y_max,
        profile: spec.profile,
    })
    .expect("campaign specs are validated up front");

    let paper = solve(&t, WitnessMode::Paper);
    let dense = solve(&t, WitnessMode::Dense);
    let mut failures = Vec::new();
    if !paper.verified {
        failures.push(FailureKind::Infeasible(WitnessMode::Paper));
    }
    if !dense.verified {
        failures.push(FailureKind::Infeasible(WitnessMode::Dense));
    }
    if paper.guard_set.len() != dense.guard_set.len() {
        failures.push(FailureKind::ModeMismatch);
    }
    let oracle_size = if n <= spec.max_n {
        let xs = build_witness_set(&t, WitnessMode::Paper);
        let opt = brute_force_optimal(&t, OracleTarget::Witnesses(&xs), spec.max_n)
            .expect("n is within the oracle bound");
        debug_assert_eq!(
            verify_two_sided_continuous(&t, &opt).verdict,
            Verdict::Covered
        );
        if opt.len() != paper.guard_set.len() {
            failures.push(FailureKind::NotOptimal);
        }
        Some(opt.len())
    } else {
        None
    };

    let ratio = |v: u64, b: u64| v as f64 / b.max(1) as f64;
    InstanceResult {
        index,
        seed,
        n,
        paper_guards: paper.guard_set.len(),
        dense_guards: dense.guard_set.len(),
        oracle_size,
        extremes_ratio: ratio(
            paper.extremes_tests_left.max(paper.extremes_tests_right),
            paper.extremes_test_bound,
        ),
        pass_ratio: ratio(
            paper.left_pass_visits.max(paper.right_pass_visits),
            paper.pass_visit_bound,
        ),
        failures,
    }
}

pub struct CampaignOutput {
    pub summary: Value,
    pub csv: String,
    pub fixture_count: usize,
}

pub fn run_campaign(spec: &CampaignSpec, fixture_dir: Option<&Path>) -> Result<CampaignOutput> {
    anyhow::ensure!(spec.count > 0, "count must be positive");
    anyhow::ensure!(
        2 <= spec.n_min && spec.n_min <= spec.n_max,
        "need 2 <= n_min <= n_max, got [{}, {}]",
        spec.n_min,
        spec.n_max
    );
    anyhow::ensure!(spec.y_min <= spec.y_max, "empty height range");

    let results: Vec<InstanceResult> = (0..spec.count)
        .into_par_iter()
        .map(|i| run_instance(spec, i))
        .collect();

    let feasible = results.iter().filter(|r| {
        !r.failures
            .iter()
            .any(|k| matches!(k, FailureKind::Infeasible(_)))
    });
    let oracle_checked = results.iter().filter(|r| r.oracle_size.is_some()).count();
    let oracle_equal = results
        .iter()
        .filter(|r| r.oracle_size.is_some() && !r.failures.contains(&FailureKind::NotOptimal))
        .count();
    let mode_agree = results
        .iter()
        .filter(|r| !r.failures.contains(&FailureKind::ModeMismatch))
        .count();
    let max_extremes_ratio = results
        .iter()
        .map(|r| r.extremes_ratio)
        .fold(0.0f64, f64::max);
    let max_pass_ratio = results.iter().map(|r| r.pass_ratio).fold(0.0f64, f64::max);

    let mut fixture_count = 0;
    let mut failure_rows = Vec::new();
    for r in &results {
        for &kind in &r.failures {
            let mut row = json!({
                "instance": r.index,
                "seed": r.seed.to_string(),
                "n": r.n,
                "kind": kind.to_string(),
            });
            if let Some(dir) = fixture_dir {
                let t = gen_terrain(&GenSpec {
                    n: r.n,
                    seed: r.seed,
                    y_min: spec.y_min,
                    y_max: spec.y_max,
                    profile: spec.profile,
                })
                .expect("regenerating a completed instance");
                let small = shrink_failure(&t, kind, spec.max_n);
                std::fs::create_dir_all(dir)
                    .with_context(|| format!("creating {}", dir.display()))?;
                let name: PathBuf = dir.join(format!("{kind}-seed{}-n{}.json", r.seed, small.n()));
                std::fs::write(&name, tgjson::terrain_to_string(&small))
                    .with_context(|| format!("writing {}", name.display()))?;
                row["fixture"] = json!(name.display().to_string());
                fixture_count += 1;
            }
            failure_rows.push(row);
        }
    }

    let summary = json!({
        "count": spec.count,
        "seed": spec.seed.to_string(),
        "n_range": [spec.n_min, spec.n_max],
        "feasible": feasible.count(),
        "mode_agree": mode_agree,
        "oracle_checked": oracle_checked,
        "oracle_equal": oracle_equal,
        "max_extremes_ratio": max_extremes_ratio,
        "max_pass_ratio": max_pass_ratio,
        "failures": failure_rows,
    });

    let mut csv = String::from("instance,seed,n,paper_guards,dense_guards,oracle_size,failures\n");
    for r in &results {
        let kinds: Vec<String> = r.failures.iter().map(|k| k.to_string()).collect();
        csv.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.index,
            r.seed,
            r.n,
            r.paper_guards,
            r.dense_guards,
            r.oracle_size.map_or(String::new(), |s| s.to_string()),
            kinds.join(";"),
        ));
    }

    Ok(CampaignOutput {
        summary,
        csv,
        fixture_count,
    })
}
