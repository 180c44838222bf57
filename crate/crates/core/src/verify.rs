//! Ground truth: continuous two-sided coverage checking and exhaustive
//! minimum-guard-set search.
//!
//! The verifier overlays every guard's per-edge visibility intervals. The
//! interval endpoints cut each edge into atomic subsegments on which every
//! guard's visibility status is constant, so checking an atom's interior
//! reduces to interval containment and is exact, not sampled. Vertices are
//! checked separately through interval endpoints on their incident edges,
//! with vertex touches (degenerate endpoint intervals) retained. A point is
//! covered when some guard at or to its left and a distinct guard at or to
//! its right both see it.
//!
//! The oracles enumerate vertex subsets containing both endpoints in
//! increasing cardinality, then lexicographically, so results are
//! deterministic and the reported optimum is the lexicographically smallest.

use crate::discretize::{sweep_right, WitnessSet};
use crate::rat::{midpoint, rint, Rat};
use crate::solver::{GuardSet, Provenance};
use crate::terrain::{Terrain, TerrainPoint};
use num_traits::Zero;
use thiserror::Error;

pub const ORACLE_DEFAULT_MAX_N: usize = 18;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Covered,
    Uncovered,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Atomic subsegment `[t_lo, t_hi]` of `edge` with one witnessing guard
/// pair: the leftmost qualifying left guard and the rightmost qualifying
/// right guard. The pair is distinct by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentWitness {
    pub edge: usize,
    pub t_lo: Rat,
    pub t_hi: Rat,
    pub left_guard: usize,
    pub right_guard: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexWitness {
    pub vertex: usize,
    pub left_guard: usize,
    pub right_guard: usize,
}

#[derive(Debug, Clone)]
pub struct CoverageCertificate {
    pub verdict: Verdict,
    /// A point with no qualifying guard pair; present iff uncovered.
    pub failing_point: Option<TerrainPoint>,
    pub segments: Vec<SegmentWitness>,
    pub vertices: Vec<VertexWitness>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance has {n} vertices, oracle bound is {max_n}")]
    TooLarge { n: usize, max_n: usize },
}

#[derive(Debug, Clone, Copy)]
pub enum OracleTarget<'a> {
    /// Two-sided coverage of every witness point.
    Witnesses(&'a WitnessSet),
    /// Full continuous verification.
    Continuous,
}

/// Per-edge visibility intervals of every guard, vertex touches included.
/// Entries are ascending by guard index, at most one per guard per edge.
fn guard_buckets(t: &Terrain, s: &GuardSet) -> Vec<Vec<(usize, Rat, Rat)>> {
    let n = t.n();
    let edges = t.edges();
    let refl = t.reflected();
    let mut bucket: Vec<Vec<(usize, Rat, Rat)>> = vec![Vec::new(); edges];
    for &g in s.indices() {
        for raw in sweep_right(t, g) {
            bucket[raw.edge].push((g, raw.t_lo, raw.t_hi));
        }
        for raw in sweep_right(&refl, n - 1 - g) {
            let e = edges - 1 - raw.edge;
            bucket[e].push((g, rint(1) - &raw.t_hi, rint(1) - &raw.t_lo));
        }
    }
    bucket
}

/// Qualifying guard pair for vertex `v`, or `None` when uncovered. A guard
/// sees `v` iff its interval on an incident edge reaches the endpoint
/// parameter, vertex touches counting.
fn vertex_guards(
    t: &Terrain,
    s: &GuardSet,
    bucket: &[Vec<(usize, Rat, Rat)>],
    v: usize,
) -> Option<VertexWitness> {
    let n = t.n();
    let one = rint(1);
    let self_guard = s.contains(v);
    let mut left = if self_guard { Some(v) } else { None };
    if v > 0 {
        for (g, _, hi) in &bucket[v - 1] {
            if *g >= v {
                break;
            }
            if *hi == one {
                left = Some(*g);
                break;
            }
        }
    }
    let mut right = if self_guard { Some(v) } else { None };
    if v + 1 < n {
        for (g, lo, _) in bucket[v].iter().rev() {
            if *g <= v {
                break;
            }
            if lo.is_zero() {
                right = Some(*g);
                break;
            }
        }
    }
    match (left, right) {
        (Some(a), Some(b)) if a != b => Some(VertexWitness {
            vertex: v,
            left_guard: a,
            right_guard: b,
        }),
        _ => None,
    }
}

/// Continuous two-sided coverage check. The scan runs left to right
/// (vertex, then the edge to its right), so an uncovered verdict reports
/// the leftmost failing atom midpoint or vertex.
pub fn verify_two_sided_continuous(t: &Terrain, s: &GuardSet) -> CoverageCertificate {
    assert!(!s.is_empty(), "guard set must be nonempty");
    let n = t.n();
    let bucket = guard_buckets(t, s);
    let mut segments = Vec::new();
    let mut vertices = Vec::new();
    let one = rint(1);

    for v in 0..n {
        match vertex_guards(t, s, &bucket, v) {
            Some(w) => vertices.push(w),
            None => {
                return CoverageCertificate {
                    verdict: Verdict::Uncovered,
                    failing_point: Some(t.vertex_point(v)),
                    segments,
                    vertices,
                }
            }
        }
        if v + 1 == n {
            break;
        }
        let e = v;
        let mut cuts: Vec<Rat> = Vec::new();
        for (_, lo, hi) in &bucket[e] {
            if !lo.is_zero() && *lo < one {
                cuts.push(lo.clone());
            }
            if !hi.is_zero() && *hi < one {
                cuts.push(hi.clone());
            }
        }
        cuts.sort();
        cuts.dedup();
        let mut bounds = Vec::with_capacity(cuts.len() + 2);
        bounds.push(Rat::zero());
        bounds.extend(cuts);
        bounds.push(one.clone());
        for pair in bounds.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            let mut left = None;
            for (g, lo, hi) in &bucket[e] {
                if *g > e {
                    break;
                }
                if lo <= a && b <= hi {
                    left = Some(*g);
                    break;
                }
            }
            let mut right = None;
            for (g, lo, hi) in bucket[e].iter().rev() {
                if *g <= e {
                    break;
                }
                if lo <= a && b <= hi {
                    right = Some(*g);
                    break;
                }
            }
            match (left, right) {
                (Some(l), Some(r)) => segments.push(SegmentWitness {
                    edge: e,
                    t_lo: a.clone(),
                    t_hi: b.clone(),
                    left_guard: l,
                    right_guard: r,
                }),
                _ => {
                    let mid = midpoint(a, b);
                    let p = t.point_on_edge(e, &mid).expect("interior midpoint");
                    return CoverageCertificate {
                        verdict: Verdict::Uncovered,
                        failing_point: Some(p),
                        segments,
                        vertices,
                    };
                }
            }
        }
    }
    CoverageCertificate {
        verdict: Verdict::Covered,
        failing_point: None,
        segments,
        vertices,
    }
}

/// Lexicographic k-combination enumerator over `0..m`.
fn first_combination(m: usize, k: usize) -> Option<Vec<usize>> {
    if k > m {
        return None;
    }
    Some((0..k).collect())
}

fn next_combination(c: &mut [usize], m: usize) -> bool {
    let k = c.len();
    if k == 0 {
        return false;
    }
    let mut i = k - 1;
    loop {
        if c[i] < m - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
        if i == 0 {
            return false;
        }
        i -= 1;
    }
}

struct BitMask {
    words: Vec<u64>,
}

impl BitMask {
    fn empty(bits: usize) -> Self {
        BitMask {
            words: vec![0; bits.div_ceil(64)],
        }
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn union_covers(sets: &[&BitMask], bits: usize) -> bool {
        let words = bits.div_ceil(64);
        for w in 0..words {
            let mut acc = 0u64;
            for s in sets {
                acc |= s.words[w];
            }
            let want = if (w + 1) * 64 <= bits {
                u64::MAX
            } else {
                (1u64 << (bits % 64)) - 1
            };
            if acc & want != want {
                return false;
            }
        }
        true
    }
}

fn side_covers(t: &Terrain, g: usize, w: &TerrainPoint, side: Side) -> bool {
    let ordered = match side {
        Side::Left => *t.x(g) <= w.x,
        Side::Right => *t.x(g) >= w.x,
    };
    ordered && t.sees(&t.vertex_point(g), w)
}

/// Smallest vertex set containing both endpoints that covers the target;
/// lexicographically smallest among minimum sets.
pub fn brute_force_optimal(
    t: &Terrain,
    target: OracleTarget,
    max_n: usize,
) -> Result<GuardSet, OracleError> {
    let n = t.n();
    if n > max_n {
        return Err(OracleError::TooLarge { n, max_n });
    }
    let middles: Vec<usize> = (1..n - 1).collect();

    let masks = match target {
        OracleTarget::Witnesses(xs) => {
            let bits = xs.len();
            let mut left: Vec<BitMask> = Vec::with_capacity(n);
            let mut right: Vec<BitMask> = Vec::with_capacity(n);
            for g in 0..n {
                let mut lm = BitMask::empty(bits);
                let mut rm = BitMask::empty(bits);
                for (i, w) in xs.points.iter().enumerate() {
                    if side_covers(t, g, w, Side::Left) {
                        lm.set(i);
                    }
                    if side_covers(t, g, w, Side::Right) {
                        rm.set(i);
                    }
                }
                left.push(lm);
                right.push(rm);
            }
            Some((left, right, bits))
        }
        OracleTarget::Continuous => None,
    };

    let covers = |subset: &[usize]| -> bool {
        match &masks {
            Some((left, right, bits)) => {
                let ls: Vec<&BitMask> = subset.iter().map(|&g| &left[g]).collect();
                let rs: Vec<&BitMask> = subset.iter().map(|&g| &right[g]).collect();
                BitMask::union_covers(&ls, *bits) && BitMask::union_covers(&rs, *bits)
            }
            None => {
                let gs = GuardSet::from_pairs(
                    subset.iter().map(|&g| (g, Provenance::Oracle)).collect(),
                );
                verify_two_sided_continuous(t, &gs).verdict == Verdict::Covered
            }
        }
    };

    for k in 0..=middles.len() {
        let mut combo = match first_combination(middles.len(), k) {
            Some(c) => c,
            None => break,
        };
        loop {
            let mut subset = Vec::with_capacity(k + 2);
            subset.push(0);
            subset.extend(combo.iter().map(|&i| middles[i]));
            subset.push(n - 1);
            if covers(&subset) {
                let pairs = subset
                    .into_iter()
                    .map(|g| {
                        let p = if g == 0 || g == n - 1 {
                            Provenance::Forced
                        } else {
                            Provenance::Oracle
                        };
                        (g, p)
                    })
                    .collect();
                return Ok(GuardSet::from_pairs(pairs));
            }
            if !next_combination(&mut combo, middles.len()) {
                break;
            }
        }
    }
    unreachable!("the full vertex set always covers both targets");
}

/// Minimum number of vertices to add to `seed` so that every witness has a
/// guard on the given side.
pub fn minimal_one_sided_oracle(
    t: &Terrain,
    xs: &WitnessSet,
    side: Side,
    seed: &GuardSet,
    max_n: usize,
) -> Result<usize, OracleError> {
    let n = t.n();
    if n > max_n {
        return Err(OracleError::TooLarge { n, max_n });
    }
    let bits = xs.len();
    let mut need = BitMask::empty(bits);
    let mut masks: Vec<BitMask> = Vec::with_capacity(n);
    for g in 0..n {
        let mut m = BitMask::empty(bits);
        for (i, w) in xs.points.iter().enumerate() {
            if side_covers(t, g, w, side) {
                m.set(i);
            }
        }
        masks.push(m);
    }
    for i in 0..bits {
        if !seed.indices().iter().any(|&g| masks[g].words[i / 64] & (1 << (i % 64)) != 0) {
            need.set(i);
        }
    }
    let candidates: Vec<usize> = (0..n).filter(|&g| !seed.contains(g)).collect();
    for k in 0..=candidates.len() {
        let mut combo = match first_combination(candidates.len(), k) {
            Some(c) => c,
            None => break,
        };
        loop {
            let sets: Vec<&BitMask> = combo.iter().map(|&i| &masks[candidates[i]]).collect();
            let mut ok = true;
            for w in 0..need.words.len() {
                let mut acc = 0u64;
                for s in &sets {
                    acc |= s.words[w];
                }
                if acc & need.words[w] != need.words[w] {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Ok(k);
            }
            if !next_combination(&mut combo, candidates.len()) {
                break;
            }
        }
    }
    unreachable!("adding every vertex always covers every witness");
}
