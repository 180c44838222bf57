//! Leftmost and rightmost visible vertices for every witness and vertex.
//!
//! For a chain point `q`, `L(q)` is the leftmost vertex seeing `q` and
//! `R(q)` the rightmost. Both passes run as a single left-to-right sweep
//! over the merged point sequence `Q` (witnesses plus vertices): the
//! candidate for `L(q)` starts at the nearest vertex strictly left of `q`
//! (which always sees `q`) and hops down the already-computed chain
//! `c -> L(c)` while the next chain vertex still sees `q`. When the hop
//! fails the current candidate is `L(q)`: a vertex seeing `q` whose own
//! leftmost seer does not see `q` cannot be undercut from further left.
//! `R` is the same sweep on the x-reflected terrain.
//!
//! Every hop test either terminates the current point or permanently
//! shortens the chain, so each pass performs at most `2 |Q|` visibility
//! tests; the counters record the actual number.

use crate::discretize::WitnessSet;
use crate::terrain::{Terrain, TerrainPoint};

#[derive(Debug, Clone)]
pub struct ExtremeMap {
    /// Q = witnesses and vertices, ascending by x.
    pub points: Vec<TerrainPoint>,
    /// Leftmost visible vertex per point of Q.
    pub leftmost: Vec<usize>,
    /// Rightmost visible vertex per point of Q.
    pub rightmost: Vec<usize>,
    /// Position in `points` of witness `i` of the witness set.
    pub witness_positions: Vec<usize>,
    /// Position in `points` of vertex `j`.
    pub vertex_positions: Vec<usize>,
    pub tests_left: u64,
    pub tests_right: u64,
}

impl ExtremeMap {
    pub fn left_of_witness(&self, i: usize) -> usize {
        self.leftmost[self.witness_positions[i]]
    }

    pub fn right_of_witness(&self, i: usize) -> usize {
        self.rightmost[self.witness_positions[i]]
    }

    pub fn left_of_vertex(&self, j: usize) -> usize {
        self.leftmost[self.vertex_positions[j]]
    }

    pub fn right_of_vertex(&self, j: usize) -> usize {
        self.rightmost[self.vertex_positions[j]]
    }
}

/// One leftward pass. `pts` must be ascending in x and contain every vertex
/// of `t`. Returns L per point and the number of sees tests.
fn leftmost_pass(t: &Terrain, pts: &[TerrainPoint]) -> (Vec<usize>, u64) {
    let n = t.n();
    let mut l_vertex: Vec<usize> = vec![usize::MAX; n];
    let mut out = Vec::with_capacity(pts.len());
    let mut tests: u64 = 0;
    for p in pts {
        let seed = match p.vertex {
            Some(0) => {
                l_vertex[0] = 0;
                out.push(0);
                continue;
            }
            Some(j) => j - 1,
            None => p.edge,
        };
        let mut cand = seed;
        let l = loop {
            if cand == 0 {
                break 0;
            }
            let next = l_vertex[cand];
            debug_assert!(next < cand, "chain must descend");
            tests += 1;
            if t.sees(&t.vertex_point(next), p) {
                cand = next;
            } else {
                break cand;
            }
        };
        if let Some(j) = p.vertex {
            l_vertex[j] = l;
        }
        out.push(l);
    }
    (out, tests)
}

/// L and R for every witness and every vertex.
pub fn compute_all_extremes(t: &Terrain, xs: &WitnessSet) -> ExtremeMap {
    let n = t.n();
    let mut points: Vec<TerrainPoint> = Vec::with_capacity(n + xs.len());
    let mut witness_positions = vec![0usize; xs.len()];
    let mut vertex_positions = vec![0usize; n];
    let mut wi = 0;
    for j in 0..n {
        vertex_positions[j] = points.len();
        points.push(t.vertex_point(j));
        while wi < xs.len() && (j + 1 == n || xs.points[wi].x < *t.x(j + 1)) {
            debug_assert!(xs.points[wi].x > *t.x(j));
            witness_positions[wi] = points.len();
            points.push(xs.points[wi].clone());
            wi += 1;
        }
    }
    let (leftmost, tests_left) = leftmost_pass(t, &points);

    let refl = t.reflected();
    let refl_points: Vec<TerrainPoint> =
        points.iter().rev().map(|p| t.reflect_point(p)).collect();
    let (refl_left, tests_right) = leftmost_pass(&refl, &refl_points);
    let m = points.len();
    let rightmost: Vec<usize> = (0..m).map(|i| n - 1 - refl_left[m - 1 - i]).collect();

    ExtremeMap {
        points,
        leftmost,
        rightmost,
        witness_positions,
        vertex_positions,
        tests_left,
        tests_right,
    }
}

/// Linear-scan oracle: leftmost and rightmost vertex seeing `p`.
pub fn brute_extreme(t: &Terrain, p: &TerrainPoint) -> (usize, usize) {
    let mut l = None;
    let mut r = None;
    for j in 0..t.n() {
        if t.sees(&t.vertex_point(j), p) {
            if l.is_none() {
                l = Some(j);
            }
            r = Some(j);
        }
    }
    (l.expect("some vertex sees p"), r.expect("some vertex sees p"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discretize::{build_witness_set, WitnessMode};
    use crate::rat::rq;

    fn peak() -> Terrain {
        Terrain::from_ints(&[(0, 0), (1, 2), (2, 0)])
    }

    fn valley() -> Terrain {
        Terrain::from_ints(&[(0, 2), (1, 0), (2, 2)])
    }

    fn double_valley() -> Terrain {
        Terrain::from_ints(&[(0, 2), (1, 0), (2, 1), (3, 0), (4, 2)])
    }

    fn empty_witnesses() -> WitnessSet {
        WitnessSet {
            mode: WitnessMode::Paper,
            points: Vec::new(),
        }
    }

    #[test]
    fn peak_vertex_extremes() {
        let t = peak();
        let em = compute_all_extremes(&t, &empty_witnesses());
        let l: Vec<usize> = (0..3).map(|j| em.left_of_vertex(j)).collect();
        let r: Vec<usize> = (0..3).map(|j| em.right_of_vertex(j)).collect();
        assert_eq!(l, vec![0, 0, 1], "peak blocks the outer pair");
        assert_eq!(r, vec![1, 2, 2]);
    }

    #[test]
    fn witness_extremes_on_desk_instances() {
        let t = peak();
        let xs = build_witness_set(&t, WitnessMode::Paper);
        let em = compute_all_extremes(&t, &xs);
        // Witness (3/2, 1) on edge 1: the line from v_0 passes under v_1.
        assert_eq!(xs.points[1].x, rq(3, 2));
        assert_eq!(em.left_of_witness(1), 1);
        assert_eq!(em.right_of_witness(1), 2);

        let w = double_valley();
        let xs = build_witness_set(&w, WitnessMode::Paper);
        let em = compute_all_extremes(&w, &xs);
        // Witness (3/2, 1/2) on edge 1: v_0 sees the whole edge; v_3 and
        // v_4 are blocked by v_2.
        assert_eq!(xs.points[2].x, rq(3, 2));
        assert_eq!(em.left_of_witness(2), 0);
        assert_eq!(em.right_of_witness(2), 2);
    }

    #[test]
    fn valley_sees_everything_from_rims() {
        let t = valley();
        let xs = build_witness_set(&t, WitnessMode::Paper);
        let em = compute_all_extremes(&t, &xs);
        for pos in 0..em.points.len() {
            assert_eq!(em.leftmost[pos], 0);
            assert_eq!(em.rightmost[pos], 2);
        }
    }

    #[test]
    fn brute_examples() {
        let t = peak();
        assert_eq!(brute_extreme(&t, &t.vertex_point(1)), (0, 2));
        let p = t.point_on_edge(0, &rq(1, 2)).unwrap();
        assert_eq!(brute_extreme(&t, &p), (0, 1));

        let w = double_valley();
        let p = w.point_on_edge(3, &rq(1, 10)).unwrap();
        assert_eq!(p.x, rq(31, 10));
        assert_eq!(brute_extreme(&w, &p), (2, 4));
    }

    #[test]
    fn sweep_matches_brute_on_desk_instances() {
        for t in [peak(), valley(), double_valley()] {
            for mode in [WitnessMode::Paper, WitnessMode::Dense] {
                let xs = build_witness_set(&t, mode);
                let em = compute_all_extremes(&t, &xs);
                for (pos, p) in em.points.iter().enumerate() {
                    let (l, r) = brute_extreme(&t, p);
                    assert_eq!(em.leftmost[pos], l);
                    assert_eq!(em.rightmost[pos], r);
                }
            }
        }
    }

    #[test]
    fn sweep_matches_brute_exhaustively_small() {
        // Every integer terrain on 5 vertices with heights in 0..4, paper
        // witnesses included.
        for code in 0..1024u32 {
            let hs: Vec<i64> = (0..5).map(|i| ((code >> (2 * i)) & 3) as i64).collect();
            let coords: Vec<(i64, i64)> = hs.iter().enumerate().map(|(i, &h)| (i as i64, h)).collect();
            let t = Terrain::from_ints(&coords);
            let xs = build_witness_set(&t, WitnessMode::Paper);
            let em = compute_all_extremes(&t, &xs);
            for (pos, p) in em.points.iter().enumerate() {
                let (l, r) = brute_extreme(&t, p);
                assert_eq!(em.leftmost[pos], l, "heights {hs:?} point {pos}");
                assert_eq!(em.rightmost[pos], r, "heights {hs:?} point {pos}");
            }
        }
    }

    #[test]
    fn work_counter_bound() {
        for code in 0..256u32 {
            let hs: Vec<i64> = (0..4).map(|i| ((code >> (2 * i)) & 3) as i64).collect();
            let coords: Vec<(i64, i64)> = hs.iter().enumerate().map(|(i, &h)| (i as i64, h)).collect();
            let t = Terrain::from_ints(&coords);
            let xs = build_witness_set(&t, WitnessMode::Dense);
            let em = compute_all_extremes(&t, &xs);
            let q = em.points.len() as u64;
            assert!(em.tests_left <= 2 * q, "left {} > 2*{q}", em.tests_left);
            assert!(em.tests_right <= 2 * q, "right {} > 2*{q}", em.tests_right);
        }
    }

    #[test]
    fn extreme_invariants() {
        let w = double_valley();
        let xs = build_witness_set(&w, WitnessMode::Paper);
        let em = compute_all_extremes(&w, &xs);
        for (pos, p) in em.points.iter().enumerate() {
            let l = em.leftmost[pos];
            let r = em.rightmost[pos];
            assert!(*w.x(l) <= p.x && p.x <= *w.x(r));
            assert!(w.sees(&w.vertex_point(l), p));
            assert!(w.sees(&w.vertex_point(r), p));
            for j in 0..l {
                assert!(!w.sees(&w.vertex_point(j), p));
            }
            for j in r + 1..w.n() {
                assert!(!w.sees(&w.vertex_point(j), p));
            }
        }
    }

    #[test]
    fn chain_membership() {
        // L(q) lies on the L-ancestor chain of the nearest vertex left of q
        // (or is that vertex itself, or v_0).
        let w = double_valley();
        let xs = build_witness_set(&w, WitnessMode::Dense);
        let em = compute_all_extremes(&w, &xs);
        for (pos, p) in em.points.iter().enumerate() {
            let start = match p.vertex {
                Some(0) => continue,
                Some(j) => j - 1,
                None => p.edge,
            };
            let mut chain = vec![start];
            let mut c = start;
            while c != 0 {
                c = em.left_of_vertex(c);
                chain.push(c);
            }
            assert!(
                chain.contains(&em.leftmost[pos]),
                "L({pos}) = {} not on chain {chain:?}",
                em.leftmost[pos]
            );
        }
    }

    #[test]
    fn merged_points_are_sorted_and_complete() {
        let w = double_valley();
        let xs = build_witness_set(&w, WitnessMode::Paper);
        let em = compute_all_extremes(&w, &xs);
        assert_eq!(em.points.len(), w.n() + xs.len());
        for pair in em.points.windows(2) {
            assert!(pair[0].x < pair[1].x);
        }
        for j in 0..w.n() {
            assert_eq!(em.points[em.vertex_positions[j]].vertex, Some(j));
        }
        for (i, wp) in xs.points.iter().enumerate() {
            assert_eq!(em.points[em.witness_positions[i]].x, wp.x);
        }
    }
}
