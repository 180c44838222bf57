//! Greedy two-sided guard placement over a witness set.
//!
//! The pipeline places the forced endpoint guards, then runs a
//! right-guarding pass (every witness gets a guard at or to its right) and
//! a left-guarding pass seeded with the right pass's output. Each pass
//! walks the witnesses toward one side and keeps a stack of active
//! candidate guards; a witness is assigned to the nearest candidate that
//! sees it, and when even the witness's extreme visible vertex is passed
//! without success that extreme vertex is added as a new guard. Candidates
//! that fail are retired permanently, as are vertices strictly between a
//! witness and its assigned guard, which is what bounds the total number
//! of candidate visits by `2 |X| + |V|` per pass.

use crate::discretize::{build_witness_set, WitnessMode, WitnessSet};
use crate::extremes::{compute_all_extremes, ExtremeMap};
use crate::terrain::{Terrain, TerrainPoint};
use crate::verify::{verify_two_sided_continuous, Verdict};
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Endpoint guard placed unconditionally.
    Forced,
    RightPass,
    LeftPass,
    /// Produced by exhaustive search rather than the greedy passes.
    Oracle,
}

impl Provenance {
    pub fn label(self) -> &'static str {
        match self {
            Provenance::Forced => "forced",
            Provenance::RightPass => "right-pass",
            Provenance::LeftPass => "left-pass",
            Provenance::Oracle => "oracle",
        }
    }
}

/// Sorted, duplicate-free set of guard vertices with per-guard provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuardSet {
    guards: Vec<usize>,
    provenance: Vec<Provenance>,
}

impl GuardSet {
    pub fn from_pairs(mut pairs: Vec<(usize, Provenance)>) -> Self {
        pairs.sort_by_key(|p| p.0);
        for w in pairs.windows(2) {
            assert_ne!(w[0].0, w[1].0, "duplicate guard {}", w[0].0);
        }
        GuardSet {
            guards: pairs.iter().map(|p| p.0).collect(),
            provenance: pairs.iter().map(|p| p.1).collect(),
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.guards
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.guards.len()
    }

    pub fn is_empty(&self) -> bool {
        self.guards.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.guards.binary_search(&j).is_ok()
    }

    pub fn provenance_of(&self, j: usize) -> Option<Provenance> {
        self.guards
            .binary_search(&j)
            .ok()
            .map(|i| self.provenance[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Provenance)> + '_ {
        self.guards
            .iter()
            .copied()
            .zip(self.provenance.iter().copied())
    }
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub mode: WitnessMode,
    pub witness_count: usize,
    pub guard_set: GuardSet,
    pub extremes_tests_left: u64,
    pub extremes_tests_right: u64,
    /// 2 |Q| where Q is the merged witness + vertex sequence.
    pub extremes_test_bound: u64,
    pub right_pass_visits: u64,
    pub left_pass_visits: u64,
    /// 2 |X| + |V|, per pass.
    pub pass_visit_bound: u64,
    pub verified: bool,
    pub wall_ms: f64,
}

/// Result of one guarding pass: the guard set and how many times the pass
/// looked at a candidate guard (bounded by `2 |X| + |V|`).
pub struct PassOutcome {
    pub set: GuardSet,
    pub visits: u64,
}

/// Smallest unretired index at or above `j`, with path halving.
fn skip_find(skip: &mut [usize], mut j: usize) -> usize {
    while skip[j] != j {
        skip[j] = skip[skip[j]];
        j = skip[j];
    }
    j
}

/// Retires vertices `lo..=hi`; each vertex is retired at most once over the
/// whole pass.
fn retire_range(skip: &mut [usize], retired: &mut [bool], lo: usize, hi: usize) {
    let mut j = skip_find(skip, lo);
    while j <= hi {
        retired[j] = true;
        skip[j] = j + 1;
        j = skip_find(skip, j + 1);
    }
}

/// The guarding pass toward the left: every witness ends up with a guard at
/// or to its left. `witnesses` ascending in x on `t`; `leftmost[i]` is the
/// leftmost vertex seeing witness `i`. The right pass runs this same code
/// on the reflected terrain.
fn forward_pass(
    t: &Terrain,
    witnesses: &[TerrainPoint],
    leftmost: &[usize],
    seed: &GuardSet,
    label: Provenance,
) -> PassOutcome {
    let n = t.n();
    let mut retired = vec![false; n];
    let mut skip: Vec<usize> = (0..=n).collect();
    let mut have = vec![false; n];
    let mut pairs: Vec<(usize, Provenance)> = seed.iter().collect();
    for &(g, _) in pairs.iter() {
        have[g] = true;
    }
    let pending: Vec<usize> = seed.indices().to_vec();
    let mut pp = 0;
    let mut stack: Vec<usize> = Vec::new();
    let mut visits: u64 = 0;

    for (i, w) in witnesses.iter().enumerate() {
        while pp < pending.len() && *t.x(pending[pp]) < w.x {
            let g = pending[pp];
            pp += 1;
            debug_assert!(!retired[g], "pending guards sit right of every retired range");
            stack.push(g);
        }
        loop {
            if let Some(&g) = stack.last() {
                visits += 1;
                if t.sees(&t.vertex_point(g), w) {
                    retire_range(&mut skip, &mut retired, g + 1, w.edge);
                    break;
                }
                if g > leftmost[i] {
                    stack.pop();
                    retired[g] = true;
                    skip[g] = g + 1;
                    continue;
                }
                debug_assert!(
                    g < leftmost[i],
                    "the leftmost visible vertex must see its witness"
                );
            }
            // Scan passed L(w) (or ran out of candidates): add L(w).
            let gi = leftmost[i];
            if !have[gi] {
                have[gi] = true;
                pairs.push((gi, label));
            }
            if !retired[gi] {
                stack.push(gi);
            }
            retire_range(&mut skip, &mut retired, gi + 1, w.edge);
            break;
        }
    }
    PassOutcome {
        set: GuardSet::from_pairs(pairs),
        visits,
    }
}

pub(crate) fn left_pass(
    t: &Terrain,
    xs: &WitnessSet,
    ext: &ExtremeMap,
    seed: &GuardSet,
) -> PassOutcome {
    assert!(seed.contains(0), "left pass needs the left endpoint guard");
    let leftmost: Vec<usize> = (0..xs.len()).map(|i| ext.left_of_witness(i)).collect();
    forward_pass(t, &xs.points, &leftmost, seed, Provenance::LeftPass)
}

pub(crate) fn right_pass(
    t: &Terrain,
    xs: &WitnessSet,
    ext: &ExtremeMap,
    seed: &GuardSet,
) -> PassOutcome {
    let n = t.n();
    assert!(
        seed.contains(n - 1),
        "right pass needs the right endpoint guard"
    );
    let refl = t.reflected();
    let rw: Vec<TerrainPoint> = xs.points.iter().rev().map(|p| t.reflect_point(p)).collect();
    let rl: Vec<usize> = (0..xs.len())
        .map(|i| n - 1 - ext.right_of_witness(xs.len() - 1 - i))
        .collect();
    let rseed = GuardSet::from_pairs(seed.iter().map(|(g, p)| (n - 1 - g, p)).collect());
    let out = forward_pass(&refl, &rw, &rl, &rseed, Provenance::RightPass);
    PassOutcome {
        set: GuardSet::from_pairs(out.set.iter().map(|(g, p)| (n - 1 - g, p)).collect()),
        visits: out.visits,
    }
}

/// Guards such that every witness has a guard at or to its left; adds the
/// leftmost visible vertex of each witness the seed cannot serve. The seed
/// must contain vertex 0.
pub fn left_guarding(
    t: &Terrain,
    xs: &WitnessSet,
    ext: &ExtremeMap,
    seed: &GuardSet,
) -> PassOutcome {
    left_pass(t, xs, ext, seed)
}

/// Mirror of [`left_guarding`]: every witness gets a guard at or to its
/// right. The seed must contain the last vertex.
pub fn right_guarding(
    t: &Terrain,
    xs: &WitnessSet,
    ext: &ExtremeMap,
    seed: &GuardSet,
) -> PassOutcome {
    right_pass(t, xs, ext, seed)
}

/// Full pipeline: witness set, extremes, forced endpoints, right pass, left
/// pass seeded with the right pass's guards, then continuous verification.
pub fn solve(t: &Terrain, mode: WitnessMode) -> SolveReport {
    let start = Instant::now();
    let n = t.n();
    let xs = build_witness_set(t, mode);
    let ext = compute_all_extremes(t, &xs);

    let right_seed = GuardSet::from_pairs(vec![(n - 1, Provenance::Forced)]);
    let right = right_pass(t, &xs, &ext, &right_seed);

    let mut left_seed_pairs: Vec<(usize, Provenance)> = right.set.iter().collect();
    if !right.set.contains(0) {
        left_seed_pairs.push((0, Provenance::Forced));
    }
    let left_seed = GuardSet::from_pairs(left_seed_pairs);
    let left = left_pass(t, &xs, &ext, &left_seed);

    let cert = verify_two_sided_continuous(t, &left.set);
    SolveReport {
        mode,
        witness_count: xs.len(),
        extremes_tests_left: ext.tests_left,
        extremes_tests_right: ext.tests_right,
        extremes_test_bound: 2 * ext.points.len() as u64,
        right_pass_visits: right.visits,
        left_pass_visits: left.visits,
        pass_visit_bound: 2 * xs.len() as u64 + n as u64,
        verified: cert.verdict == Verdict::Covered,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
        guard_set: left.set,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discretize::build_witness_set;
    use crate::verify::{minimal_one_sided_oracle, Side, ORACLE_DEFAULT_MAX_N};

    fn valley() -> Terrain {
        Terrain::from_ints(&[(0, 2), (1, 0), (2, 2)])
    }

    fn peak() -> Terrain {
        Terrain::from_ints(&[(0, 0), (1, 2), (2, 0)])
    }

    fn double_valley() -> Terrain {
        Terrain::from_ints(&[(0, 2), (1, 0), (2, 1), (3, 0), (4, 2)])
    }

    fn seed(pairs: &[usize]) -> GuardSet {
        GuardSet::from_pairs(pairs.iter().map(|&g| (g, Provenance::Forced)).collect())
    }

    fn prepared(t: &Terrain) -> (WitnessSet, ExtremeMap) {
        let xs = build_witness_set(t, WitnessMode::Paper);
        let ext = compute_all_extremes(t, &xs);
        (xs, ext)
    }

    #[test]
    fn left_pass_examples() {
        let t = valley();
        let (xs, ext) = prepared(&t);
        let out = left_guarding(&t, &xs, &ext, &seed(&[0])).set;
        assert_eq!(out.indices(), &[0], "rim vertex left-guards everything");

        let t = peak();
        let (xs, ext) = prepared(&t);
        let out = left_guarding(&t, &xs, &ext, &seed(&[0])).set;
        assert_eq!(out.indices(), &[0, 1]);
        assert_eq!(out.provenance_of(1), Some(Provenance::LeftPass));

        let t = double_valley();
        let (xs, ext) = prepared(&t);
        let out = left_guarding(&t, &xs, &ext, &seed(&[0, 2])).set;
        assert_eq!(out.indices(), &[0, 2], "no additions needed");
    }

    #[test]
    fn right_pass_examples() {
        let t = valley();
        let (xs, ext) = prepared(&t);
        let out = right_guarding(&t, &xs, &ext, &seed(&[2])).set;
        assert_eq!(out.indices(), &[2]);

        let t = peak();
        let (xs, ext) = prepared(&t);
        let out = right_guarding(&t, &xs, &ext, &seed(&[2])).set;
        assert_eq!(out.indices(), &[1, 2]);
        assert_eq!(out.provenance_of(1), Some(Provenance::RightPass));

        let t = double_valley();
        let (xs, ext) = prepared(&t);
        let out = right_guarding(&t, &xs, &ext, &seed(&[4])).set;
        assert_eq!(out.indices(), &[2, 4], "middle saddle right-guards the left half");
    }

    #[test]
    fn solve_desk_instances() {
        let r = solve(&valley(), WitnessMode::Paper);
        assert_eq!(r.guard_set.indices(), &[0, 2]);
        assert!(r.verified);

        let r = solve(&peak(), WitnessMode::Paper);
        assert_eq!(r.guard_set.indices(), &[0, 1, 2]);
        assert!(r.verified);

        let r = solve(&double_valley(), WitnessMode::Paper);
        assert_eq!(r.guard_set.indices(), &[0, 2, 4]);
        assert!(r.verified);
        assert_eq!(r.guard_set.provenance_of(0), Some(Provenance::Forced));
        assert_eq!(r.guard_set.provenance_of(2), Some(Provenance::RightPass));
        assert_eq!(r.guard_set.provenance_of(4), Some(Provenance::Forced));
    }

    #[test]
    fn solve_is_deterministic() {
        let t = double_valley();
        let a = solve(&t, WitnessMode::Paper);
        let b = solve(&t, WitnessMode::Paper);
        assert_eq!(a.guard_set, b.guard_set);
        assert_eq!(a.right_pass_visits, b.right_pass_visits);
        assert_eq!(a.left_pass_visits, b.left_pass_visits);
    }

    #[test]
    fn dense_mode_agrees_on_desk_instances() {
        for t in [valley(), peak(), double_valley()] {
            let p = solve(&t, WitnessMode::Paper);
            let d = solve(&t, WitnessMode::Dense);
            assert_eq!(p.guard_set.indices(), d.guard_set.indices());
            assert!(d.verified);
        }
    }

    #[test]
    fn visit_counters_within_bound() {
        for t in [valley(), peak(), double_valley()] {
            for mode in [WitnessMode::Paper, WitnessMode::Dense] {
                let r = solve(&t, mode);
                assert!(r.right_pass_visits <= r.pass_visit_bound);
                assert!(r.left_pass_visits <= r.pass_visit_bound);
                assert!(r.extremes_tests_left <= r.extremes_test_bound);
                assert!(r.extremes_tests_right <= r.extremes_test_bound);
            }
        }
    }

    #[test]
    fn passes_are_minimal_exhaustively_small() {
        // All 4^4 height assignments on 4 vertices: pass additions match the
        // brute-force one-sided minimum for several seeds.
        for code in 0..256u32 {
            let hs: Vec<i64> = (0..4).map(|i| ((code >> (2 * i)) & 3) as i64).collect();
            let coords: Vec<(i64, i64)> =
                hs.iter().enumerate().map(|(i, &h)| (i as i64, h)).collect();
            let t = Terrain::from_ints(&coords);
            let (xs, ext) = prepared(&t);
            for s in [seed(&[0]), seed(&[0, 3])] {
                let out = left_pass(&t, &xs, &ext, &s);
                let added = out.set.len() - s.len();
                let want = minimal_one_sided_oracle(&t, &xs, Side::Left, &s, ORACLE_DEFAULT_MAX_N)
                    .unwrap();
                assert_eq!(added, want, "heights {hs:?} left seed {:?}", s.indices());
            }
            let s = seed(&[3]);
            let out = right_pass(&t, &xs, &ext, &s);
            let added = out.set.len() - 1;
            let want =
                minimal_one_sided_oracle(&t, &xs, Side::Right, &s, ORACLE_DEFAULT_MAX_N).unwrap();
            assert_eq!(added, want, "heights {hs:?} right");
        }
    }

    #[test]
    fn guard_set_rejects_duplicates() {
        let r = std::panic::catch_unwind(|| {
            GuardSet::from_pairs(vec![(1, Provenance::Forced), (1, Provenance::LeftPass)])
        });
        assert!(r.is_err());
    }

    #[test]
    fn endpoints_always_in_solution() {
        for code in 0..81u32 {
            let hs = [code % 3, (code / 3) % 3, (code / 9) % 3, (code / 27) % 3];
            let coords: Vec<(i64, i64)> = hs
                .iter()
                .enumerate()
                .map(|(i, &h)| (i as i64, h as i64))
                .collect();
            let t = Terrain::from_ints(&coords);
            let r = solve(&t, WitnessMode::Paper);
            assert!(r.guard_set.contains(0));
            assert!(r.guard_set.contains(3));
            assert!(r.verified, "heights {hs:?} must verify");
        }
    }
}
