//! The closed visibility predicate.
//!
//! `p` sees `q` when the segment `pq` nowhere passes strictly below the
//! chain; touching the chain counts as visible. Because both the segment and
//! the chain are piecewise linear, it suffices to check every vertex whose x
//! lies in `[p.x, q.x]` against the line through `p` and `q`: `p` sees `q`
//! iff no such vertex lies strictly above that line.
//!
//! Orientation signs are computed exactly. Small coordinates take an i128
//! path; anything else falls back to big-rational arithmetic.

use crate::rat::Rat;
use crate::terrain::{point_quick, Terrain, TerrainPoint};
use num_traits::Signed;

/// Sign of the cross product `(b - a) x (c - a)`: positive when `c` lies
/// strictly to the left of the directed line `a -> b`, i.e. strictly above
/// it when `a.x < b.x`.
pub fn cross_sign(a: (&Rat, &Rat), b: (&Rat, &Rat), c: (&Rat, &Rat)) -> i8 {
    if let (Some(qa), Some(qb), Some(qc)) = (
        point_quick(a.0, a.1),
        point_quick(b.0, b.1),
        point_quick(c.0, c.1),
    ) {
        return quick_cross_sign(qa, qb, qc);
    }
    let det = (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0);
    if det.is_positive() {
        1
    } else if det.is_negative() {
        -1
    } else {
        0
    }
}

/// i128 evaluation over scaled-integer points `(x*d, y*d, d)`. The bounds in
/// `point_quick` keep every intermediate product well inside i128.
pub(crate) fn quick_cross_sign(
    (ax, ay, ad): (i64, i64, i64),
    (bx, by, bd): (i64, i64, i64),
    (cx, cy, cd): (i64, i64, i64),
) -> i8 {
    let (ax, ay, ad) = (ax as i128, ay as i128, ad as i128);
    let (bx, by, bd) = (bx as i128, by as i128, bd as i128);
    let (cx, cy, cd) = (cx as i128, cy as i128, cd as i128);
    // det * (ad^2 * bd * cd), and the scale factor is positive.
    let det = (bx * ad - ax * bd) * (cy * ad - ay * cd) - (by * ad - ay * bd) * (cx * ad - ax * cd);
    det.signum() as i8
}

impl Terrain {
    /// Closed visibility between two chain points.
    pub fn sees(&self, p: &TerrainPoint, q: &TerrainPoint) -> bool {
        let (lo, hi) = if p.x <= q.x { (p, q) } else { (q, p) };
        if lo.x == hi.x {
            return true;
        }
        // Vertices strictly inside the x-span, plus span endpoints that are
        // vertices; the latter lie on the sight line and never block.
        let first = match lo.vertex {
            Some(j) => j + 1,
            None => lo.edge + 1,
        };
        let last = match hi.vertex {
            Some(j) => j.saturating_sub(1),
            None => hi.edge,
        };
        if first > last {
            return true;
        }
        let lo_q = point_quick(&lo.x, &lo.y);
        let hi_q = point_quick(&hi.x, &hi.y);
        if let (Some(a), Some(b)) = (lo_q, hi_q) {
            for k in first..=last {
                match self.quick_vertex(k) {
                    Some(c) => {
                        if quick_cross_sign(a, b, c) > 0 {
                            return false;
                        }
                    }
                    None => {
                        let (cx, cy) = self.vertex(k);
                        if cross_sign((&lo.x, &lo.y), (&hi.x, &hi.y), (cx, cy)) > 0 {
                            return false;
                        }
                    }
                }
            }
            return true;
        }
        for k in first..=last {
            let (cx, cy) = self.vertex(k);
            if cross_sign((&lo.x, &lo.y), (&hi.x, &hi.y), (cx, cy)) > 0 {
                return false;
            }
        }
        true
    }

    /// Visibility between two vertices by index.
    pub fn sees_vertices(&self, i: usize, j: usize) -> bool {
        self.sees(&self.vertex_point(i), &self.vertex_point(j))
    }
}
