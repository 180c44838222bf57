//! Terrain representation.
//!
//! A terrain is an x-monotone polygonal chain given by its vertices in
//! strictly increasing x order. Consecutive vertices may be collinear; that
//! is a valid, if redundant, chain. Vertices and edges are indexed from 0;
//! edge `k` runs from vertex `k` to vertex `k + 1`.
//!
//! Invariants held by a constructed [`Terrain`]:
//! * at least two vertices;
//! * `x` strictly increasing, so `x` is a total order on chain points.

use crate::rat::{format_rat, quick_i64, rint, Rat};
use num_traits::Zero;
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TerrainError {
    #[error("terrain needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {1} does not increase x over vertex {0}")]
    NonMonotoneX(usize, usize),
    #[error("edge index {edge} out of range for {edges} edges")]
    EdgeOutOfRange { edge: usize, edges: usize },
    #[error("edge parameter {0} outside [0, 1]")]
    ParameterOutOfRange(String),
}

/// A point on the chain. `edge` is canonical: a point coinciding with vertex
/// `j` is stored with `vertex == Some(j)` and `edge == min(j, n - 2)`, i.e.
/// on the edge to its right except for the last vertex. Points on a fixed
/// terrain are totally ordered by `x`, and `x` alone is the comparison key.
#[derive(Debug, Clone)]
pub struct TerrainPoint {
    pub edge: usize,
    pub x: Rat,
    pub y: Rat,
    pub vertex: Option<usize>,
}

impl TerrainPoint {
    pub fn is_vertex(&self) -> bool {
        self.vertex.is_some()
    }
}

impl PartialEq for TerrainPoint {
    fn eq(&self, other: &Self) -> bool {
        self.x == other.x
    }
}
impl Eq for TerrainPoint {}
impl PartialOrd for TerrainPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for TerrainPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.x.cmp(&other.x)
    }
}

#[derive(Debug, Clone)]
pub struct Terrain {
    verts: Vec<(Rat, Rat)>,
    /// Scaled-integer view of each vertex for the i128 orientation fast
    /// path: `(x * den, y * den, den)` when the coordinates are small.
    quick: Vec<Option<(i64, i64, i64)>>,
    max_y: Rat,
}

impl Terrain {
    pub fn new(verts: Vec<(Rat, Rat)>) -> Result<Self, TerrainError> {
        if verts.len() < 2 {
            return Err(TerrainError::TooFewVertices(verts.len()));
        }
        for i in 1..verts.len() {
            if verts[i].0 <= verts[i - 1].0 {
                return Err(TerrainError::NonMonotoneX(i - 1, i));
            }
        }
        let quick = verts.iter().map(|(x, y)| point_quick(x, y)).collect();
        let max_y = verts
            .iter()
            .map(|(_, y)| y.clone())
            .max()
            .expect("nonempty");
        Ok(Terrain {
            verts,
            quick,
            max_y,
        })
    }

    /// Integer-coordinate terrain for tests and generators. Panics on an
    /// invalid chain.
    pub fn from_ints(coords: &[(i64, i64)]) -> Self {
        Terrain::new(
            coords
                .iter()
                .map(|&(x, y)| (rint(x), rint(y)))
                .collect(),
        )
        .expect("valid integer terrain")
    }

    pub fn n(&self) -> usize {
        self.verts.len()
    }

    pub fn edges(&self) -> usize {
        self.verts.len() - 1
    }

    pub fn vertex(&self, i: usize) -> &(Rat, Rat) {
        &self.verts[i]
    }

    pub fn x(&self, i: usize) -> &Rat {
        &self.verts[i].0
    }

    pub fn y(&self, i: usize) -> &Rat {
        &self.verts[i].1
    }

    pub fn vertices(&self) -> &[(Rat, Rat)] {
        &self.verts
    }

    pub(crate) fn quick_vertex(&self, i: usize) -> Option<(i64, i64, i64)> {
        self.quick[i]
    }

    pub(crate) fn max_y(&self) -> &Rat {
        &self.max_y
    }

    /// Canonical edge index for vertex `j`.
    pub fn vertex_edge(&self, j: usize) -> usize {
        j.min(self.n() - 2)
    }

    pub fn vertex_point(&self, j: usize) -> TerrainPoint {
        let (x, y) = &self.verts[j];
        TerrainPoint {
            edge: self.vertex_edge(j),
            x: x.clone(),
            y: y.clone(),
            vertex: Some(j),
        }
    }

    /// Affine point `v_j + t (v_{j+1} - v_j)` on edge `j`, `t` in `[0, 1]`.
    /// Endpoint parameters normalize to the canonical vertex form.
    pub fn point_on_edge(&self, edge: usize, t: &Rat) -> Result<TerrainPoint, TerrainError> {
        if edge >= self.edges() {
            return Err(TerrainError::EdgeOutOfRange {
                edge,
                edges: self.edges(),
            });
        }
        if t < &Rat::zero() || t > &rint(1) {
            return Err(TerrainError::ParameterOutOfRange(format_rat(t)));
        }
        if t.is_zero() {
            return Ok(self.vertex_point(edge));
        }
        if t == &rint(1) {
            return Ok(self.vertex_point(edge + 1));
        }
        let (ax, ay) = &self.verts[edge];
        let (bx, by) = &self.verts[edge + 1];
        Ok(TerrainPoint {
            edge,
            x: ax + t * (bx - ax),
            y: ay + t * (by - ay),
            vertex: None,
        })
    }

    /// Edge parameter of a chain point: `(p.x - x_j) / (x_{j+1} - x_j)` for
    /// `j = p.edge`.
    pub fn edge_parameter(&self, p: &TerrainPoint) -> Rat {
        if let Some(j) = p.vertex {
            return if j == p.edge { Rat::zero() } else { rint(1) };
        }
        let (ax, _) = &self.verts[p.edge];
        let (bx, _) = &self.verts[p.edge + 1];
        (&p.x - ax) / (bx - ax)
    }

    /// The same chain mirrored through `x = 0`: vertex `j` maps to
    /// `n - 1 - j`. Used to run left-to-right sweeps in the other direction.
    pub fn reflected(&self) -> Terrain {
        let verts = self
            .verts
            .iter()
            .rev()
            .map(|(x, y)| (-x, y.clone()))
            .collect();
        Terrain::new(verts).expect("reflection preserves validity")
    }

    /// Maps a point of `self` onto [`Terrain::reflected`].
    pub fn reflect_point(&self, p: &TerrainPoint) -> TerrainPoint {
        let n = self.n();
        match p.vertex {
            Some(j) => TerrainPoint {
                edge: (n - 1 - j).min(n - 2),
                x: -&p.x,
                y: p.y.clone(),
                vertex: Some(n - 1 - j),
            },
            None => TerrainPoint {
                edge: n - 2 - p.edge,
                x: -&p.x,
                y: p.y.clone(),
                vertex: None,
            },
        }
    }
}

pub(crate) fn point_quick(x: &Rat, y: &Rat) -> Option<(i64, i64, i64)> {
    let (xn, xd) = quick_i64(x)?;
    let (yn, yd) = quick_i64(y)?;
    let g = gcd_i64(xd, yd);
    let den = xd.checked_mul(yd / g)?;
    if den >= (1 << 20) {
        return None;
    }
    let sx = xn.checked_mul(den / xd)?;
    let sy = yn.checked_mul(den / yd)?;
    if sx.abs() < (1 << 40) && sy.abs() < (1 << 40) {
        Some((sx, sy, den))
    } else {
        None
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}
