//! Reduction of the continuous guarding problem to a finite witness set.
//!
//! From a vertex `v`, the visible portion of any edge is a single closed
//! (possibly empty) interval: every vertex between `v` and the edge
//! contributes one linear sign constraint in the edge parameter, and the
//! binding constraint is the one through the blocker of maximum slope as
//! seen from `v`. Interval endpoints that fall strictly inside an edge are
//! *boundary points*: crossings of a shadow line through some blocking
//! vertex. Witness points are placed around boundary points so that guarding
//! the witnesses forces guarding of the whole chain.
//!
//! Indexing note: an interval endpoint exactly at `t = 0` or `t = 1` is a
//! vertex touch, not a boundary point.

use crate::rat::{midpoint, rint, Rat};
use crate::terrain::{Terrain, TerrainPoint};
use crate::visibility::cross_sign;
use num_traits::Zero;

/// Closed visible portion `[t_lo, t_hi]` of edge `edge`, in edge parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VisibilityInterval {
    pub edge: usize,
    pub t_lo: Rat,
    pub t_hi: Rat,
}

impl VisibilityInterval {
    pub fn contains(&self, t: &Rat) -> bool {
        &self.t_lo <= t && t <= &self.t_hi
    }

    pub fn is_degenerate(&self) -> bool {
        self.t_lo == self.t_hi
    }
}

/// Interior point of an edge where a shadow line through `through_vertex`,
/// cast from `source_vertex`, crosses the edge. Both vertices see the point
/// and are collinear with it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryPoint {
    pub edge: usize,
    pub t: Rat,
    pub x: Rat,
    pub y: Rat,
    pub source_vertex: usize,
    pub through_vertex: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessMode {
    /// At most two witnesses per edge, flanking the extreme boundary points.
    Paper,
    /// One witness per atomic subsegment between consecutive boundary points.
    Dense,
}

/// Finite witness set, sorted by x. Every witness is strictly interior to
/// its edge.
#[derive(Debug, Clone)]
pub struct WitnessSet {
    pub mode: WitnessMode,
    pub points: Vec<TerrainPoint>,
}

impl WitnessSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Which end of a clipped interval is a shadow crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum ShadowEnd {
    Lo,
    Hi,
}

/// Raw per-edge visibility from one vertex, before the degenerate-touch
/// filter. `shadow` names the blocking vertex when the corresponding
/// interval end lies strictly inside the edge.
#[derive(Debug, Clone)]
pub(crate) struct RawInterval {
    pub edge: usize,
    pub t_lo: Rat,
    pub t_hi: Rat,
    pub shadow: Option<(ShadowEnd, usize)>,
}

/// Exact cross product value `(b - a) x (c - a)` over vertex indices.
fn cross_value_verts(t: &Terrain, a: usize, b: usize, c: usize) -> Rat {
    let (ax, ay) = t.vertex(a);
    let (bx, by) = t.vertex(b);
    let (cx, cy) = t.vertex(c);
    (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
}

fn cross_sign_verts(t: &Terrain, a: usize, b: usize, c: usize) -> i8 {
    if let (Some(qa), Some(qb), Some(qc)) =
        (t.quick_vertex(a), t.quick_vertex(b), t.quick_vertex(c))
    {
        crate::visibility::quick_cross_sign(qa, qb, qc)
    } else {
        let (ax, ay) = t.vertex(a);
        let (bx, by) = t.vertex(b);
        let (cx, cy) = t.vertex(c);
        cross_sign((ax, ay), (bx, by), (cx, cy))
    }
}

/// Clips edge `k` against the shadow line from `v` through blocker `b`.
/// Precondition: `v < b <= k`, and `b` has maximal slope from `v` among
/// vertices `v+1..=k`. Returns the raw closed interval, `None` when nothing
/// of the edge (not even an endpoint) is visible.
fn clip_edge(t: &Terrain, v: usize, b: usize, k: usize) -> Option<RawInterval> {
    let s0 = cross_sign_verts(t, v, b, k);
    let s1 = cross_sign_verts(t, v, b, k + 1);
    match (s0 >= 0, s1 >= 0) {
        (true, true) => Some(RawInterval {
            edge: k,
            t_lo: Rat::zero(),
            t_hi: rint(1),
            shadow: None,
        }),
        (true, false) => {
            // Visible prefix [0, t*]; the shadow line crosses the edge.
            let c0 = cross_value_verts(t, v, b, k);
            let c1 = cross_value_verts(t, v, b, k + 1);
            let t_star = &c0 / (&c0 - &c1);
            let shadow = if t_star.is_zero() {
                None
            } else {
                Some((ShadowEnd::Hi, b))
            };
            Some(RawInterval {
                edge: k,
                t_lo: Rat::zero(),
                t_hi: t_star,
                shadow,
            })
        }
        (false, true) => {
            let c0 = cross_value_verts(t, v, b, k);
            let c1 = cross_value_verts(t, v, b, k + 1);
            let t_star = &c0 / (&c0 - &c1);
            let shadow = if t_star == rint(1) {
                None
            } else {
                Some((ShadowEnd::Lo, b))
            };
            Some(RawInterval {
                edge: k,
                t_lo: t_star,
                t_hi: rint(1),
                shadow,
            })
        }
        (false, false) => None,
    }
}

/// All raw visibility intervals of edges at or to the right of vertex `v`,
/// in one left-to-right sweep maintaining the maximum-slope blocker. Breaks
/// early once the shadow line provably stays above the whole chain.
pub(crate) fn sweep_right(t: &Terrain, v: usize) -> Vec<RawInterval> {
    let mut out = Vec::new();
    let edges = t.edges();
    if v <= edges - 1 {
        out.push(RawInterval {
            edge: v,
            t_lo: Rat::zero(),
            t_hi: rint(1),
            shadow: None,
        });
    }
    if v + 1 > edges - 1 {
        return out;
    }
    let mut blocker = v + 1;
    for k in v + 1..edges {
        // Fold vertex k into the blocker set for edge k; ties keep the
        // rightmost, so the reported shadow vertex is nearest the edge.
        if k > v + 1 && cross_sign_verts(t, v, blocker, k) >= 0 {
            blocker = k;
        }
        let clipped = clip_edge(t, v, blocker, k);
        let invisible = clipped.is_none();
        if let Some(raw) = clipped {
            out.push(raw);
        }
        if invisible && t.y(blocker) >= t.y(v) {
            // Shadow line is non-descending; once it clears the global
            // maximum height the rest of the chain stays hidden.
            let (vx, vy) = t.vertex(v);
            let (bx, by) = t.vertex(blocker);
            let probe = (t.x(k + 1), t.max_y());
            if cross_sign((vx, vy), (bx, by), probe) < 0 {
                break;
            }
        }
    }
    out
}

/// Raw intervals across every edge for one vertex, via the rightward sweep
/// on the terrain and on its reflection. `refl` must be `t.reflected()`.
pub(crate) fn raw_profile(t: &Terrain, refl: &Terrain, v: usize) -> Vec<Option<RawInterval>> {
    let n = t.n();
    let edges = t.edges();
    let mut out: Vec<Option<RawInterval>> = vec![None; edges];
    for raw in sweep_right(t, v) {
        let e = raw.edge;
        out[e] = Some(raw);
    }
    for raw in sweep_right(refl, n - 1 - v) {
        let edge = edges - 1 - raw.edge;
        if out[edge].is_some() {
            // Right sweep already owns edges >= v; reflection covers < v.
            continue;
        }
        let t_lo = rint(1) - &raw.t_hi;
        let t_hi = rint(1) - &raw.t_lo;
        let shadow = raw.shadow.map(|(end, b)| {
            let end = match end {
                ShadowEnd::Lo => ShadowEnd::Hi,
                ShadowEnd::Hi => ShadowEnd::Lo,
            };
            (end, n - 1 - b)
        });
        out[edge] = Some(RawInterval {
            edge,
            t_lo,
            t_hi,
            shadow,
        });
    }
    out
}

fn raw_to_public(raw: RawInterval) -> Option<VisibilityInterval> {
    // A degenerate interval at t = 0 or t = 1 is a vertex touch, not a
    // visible portion of the edge.
    if raw.t_lo == raw.t_hi && (raw.t_lo.is_zero() || raw.t_lo == rint(1)) {
        return None;
    }
    Some(VisibilityInterval {
        edge: raw.edge,
        t_lo: raw.t_lo,
        t_hi: raw.t_hi,
    })
}

/// Visible portion of edge `k` from vertex `v`, or `None` when invisible.
/// If `v` is an endpoint of the edge the whole edge `[0, 1]` is visible.
pub fn visible_interval(t: &Terrain, v: usize, k: usize) -> Option<VisibilityInterval> {
    assert!(k < t.edges(), "edge index out of range");
    assert!(v < t.n(), "vertex index out of range");
    if v == k || v == k + 1 {
        return Some(VisibilityInterval {
            edge: k,
            t_lo: Rat::zero(),
            t_hi: rint(1),
        });
    }
    if v < k {
        let mut blocker = v + 1;
        for w in v + 2..=k {
            if cross_sign_verts(t, v, blocker, w) >= 0 {
                blocker = w;
            }
        }
        return clip_edge(t, v, blocker, k).and_then(raw_to_public);
    }
    // v > k + 1: solve on the reflection.
    let n = t.n();
    let refl = t.reflected();
    visible_interval(&refl, n - 1 - v, t.edges() - 1 - k).map(|iv| VisibilityInterval {
        edge: k,
        t_lo: rint(1) - &iv.t_hi,
        t_hi: rint(1) - &iv.t_lo,
    })
}

/// Visible portions of every edge from vertex `v`.
pub fn visibility_profile(t: &Terrain, v: usize) -> Vec<Option<VisibilityInterval>> {
    let refl = t.reflected();
    raw_profile(t, &refl, v)
        .into_iter()
        .map(|r| r.and_then(raw_to_public))
        .collect()
}

/// All boundary points of the terrain, grouped by edge and sorted by x
/// within each edge. Duplicate crossings (the same point reached from
/// several vertices) are merged; attribution goes to the smallest
/// `(source, through)` pair.
pub fn boundary_points(t: &Terrain) -> Vec<BoundaryPoint> {
    let n = t.n();
    let refl = t.reflected();
    let mut found: Vec<(usize, Rat, usize, usize)> = Vec::new();
    for v in 0..n {
        for raw in sweep_right(t, v) {
            if let Some((end, b)) = raw.shadow {
                let tt = match end {
                    ShadowEnd::Lo => raw.t_lo.clone(),
                    ShadowEnd::Hi => raw.t_hi.clone(),
                };
                found.push((raw.edge, tt, v, b));
            }
        }
        for raw in sweep_right(&refl, n - 1 - v) {
            if let Some((end, b)) = raw.shadow {
                let tt = match end {
                    ShadowEnd::Lo => rint(1) - &raw.t_lo,
                    ShadowEnd::Hi => rint(1) - &raw.t_hi,
                };
                found.push((t.edges() - 1 - raw.edge, tt, v, n - 1 - b));
            }
        }
    }
    found.sort_by(|a, b| {
        a.0.cmp(&b.0)
            .then_with(|| a.1.cmp(&b.1))
            .then_with(|| a.2.cmp(&b.2))
            .then_with(|| a.3.cmp(&b.3))
    });
    found.dedup_by(|a, b| a.0 == b.0 && a.1 == b.1);
    found
        .into_iter()
        .map(|(edge, tt, source, through)| {
            let p = t.point_on_edge(edge, &tt).expect("interior parameter");
            BoundaryPoint {
                edge,
                t: tt,
                x: p.x,
                y: p.y,
                source_vertex: source,
                through_vertex: through,
            }
        })
        .collect()
}

/// Builds the witness set for the requested mode. Paper mode places the edge
/// midpoint on boundary-free edges and otherwise two witnesses hugging the
/// extreme boundary points; dense mode places one witness per atomic
/// subsegment. Witnesses are strictly interior to their edges.
pub fn build_witness_set(t: &Terrain, mode: WitnessMode) -> WitnessSet {
    let bps = boundary_points(t);
    let mut per_edge: Vec<Vec<&Rat>> = vec![Vec::new(); t.edges()];
    for bp in &bps {
        per_edge[bp.edge].push(&bp.t);
    }
    let half = |a: &Rat, b: &Rat| midpoint(a, b);
    let mut points = Vec::new();
    let one = rint(1);
    for (edge, cuts) in per_edge.iter().enumerate() {
        let mut ts: Vec<Rat> = Vec::new();
        match mode {
            WitnessMode::Paper => {
                if cuts.is_empty() {
                    ts.push(half(&Rat::zero(), &one));
                } else {
                    let first = cuts.first().unwrap();
                    let last = cuts.last().unwrap();
                    ts.push(half(&Rat::zero(), first));
                    ts.push(half(last, &one));
                }
            }
            WitnessMode::Dense => {
                let mut prev = Rat::zero();
                for c in cuts {
                    ts.push(half(&prev, c));
                    prev = (*c).clone();
                }
                ts.push(half(&prev, &one));
            }
        }
        for tt in ts {
            points.push(t.point_on_edge(edge, &tt).expect("interior parameter"));
        }
    }
    points.sort_by(|a, b| a.x.cmp(&b.x));
    WitnessSet { mode, points }
}
