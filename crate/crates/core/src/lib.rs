//! Exact algorithms for two-sided guarding of 1.5D terrains.
//!
//! A terrain is an x-monotone polygonal chain. A point `p` on the chain is
//! *two-sided guarded* by a set of terrain vertices when two distinct guards
//! see it, one at or to the left of `p` and one at or to the right. This
//! crate computes a small two-sided guard set for the whole chain and checks
//! the result exactly:
//!
//! * [`terrain`] — terrain representation, exact rational coordinates, the
//!   closed visibility predicate [`Terrain::sees`].
//! * [`discretize`] — per-vertex visibility intervals on edges, boundary
//!   points (shadow endpoints), and the finite witness sets that reduce the
//!   continuous problem to a discrete one.
//! * [`extremes`] — leftmost/rightmost visible vertex for every witness and
//!   vertex, via a linear-work candidate-chain sweep.
//! * [`solver`] — the two-pass greedy solver over the witness set.
//! * [`verify`] — continuous (not sampled) verification of two-sided
//!   coverage, plus brute-force oracles used to cross-check the solver.
//!
//! All geometric decisions are made with arbitrary-precision rational
//! arithmetic; floating point never enters a predicate.

pub mod discretize;
pub mod extremes;
pub mod json;
pub mod rat;
pub mod solver;
pub mod terrain;
pub mod verify;
mod visibility;

pub use discretize::{
    boundary_points, build_witness_set, visibility_profile, visible_interval, BoundaryPoint,
    VisibilityInterval, WitnessMode, WitnessSet,
};
pub use extremes::{brute_extreme, compute_all_extremes, ExtremeMap};
pub use rat::Rat;
pub use solver::{
    left_guarding, right_guarding, solve, GuardSet, PassOutcome, Provenance, SolveReport,
};
pub use terrain::{Terrain, TerrainError, TerrainPoint};
pub use verify::{
    brute_force_optimal, minimal_one_sided_oracle, verify_two_sided_continuous,
    CoverageCertificate, OracleError, OracleTarget, SegmentWitness, Side, Verdict, VertexWitness,
    ORACLE_DEFAULT_MAX_N,
};
