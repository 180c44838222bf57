//! JSON encoding of terrains and derived artifacts.
//!
//! Terrain format: `{"vertices": [[x, y], ...]}`. Coordinates are read as
//! integers or rational strings ("p" or "p/q") and always written as
//! canonical rational strings, so round trips are exact. Floats are
//! rejected: they would silently lose exactness. All indices are 0-based.

use crate::discretize::BoundaryPoint;
use crate::extremes::ExtremeMap;
use crate::rat::{format_rat, parse_rat, Rat};
use crate::solver::{GuardSet, SolveReport};
use crate::terrain::{Terrain, TerrainError, TerrainPoint};
use crate::verify::{CoverageCertificate, Verdict};
use crate::WitnessSet;
use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("invalid JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Terrain(#[from] TerrainError),
}

fn shape(msg: impl Into<String>) -> JsonError {
    JsonError::Shape(msg.into())
}

pub fn rat_to_value(r: &Rat) -> Value {
    Value::String(format_rat(r))
}

pub fn value_to_rat(v: &Value) -> Result<Rat, JsonError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rat::from_integer(BigInt::from(i)))
            } else {
                Err(shape(format!("coordinate {n} is not an integer; use a \"p/q\" string")))
            }
        }
        Value::String(s) => {
            parse_rat(s).map_err(|e| shape(format!("bad rational {s:?}: {e}")))
        }
        other => Err(shape(format!("expected number or string, got {other}"))),
    }
}

pub fn terrain_to_value(t: &Terrain) -> Value {
    let vertices: Vec<Value> = t
        .vertices()
        .iter()
        .map(|(x, y)| Value::Array(vec![rat_to_value(x), rat_to_value(y)]))
        .collect();
    json!({ "vertices": vertices })
}

pub fn terrain_to_string(t: &Terrain) -> String {
    let mut s = serde_json::to_string_pretty(&terrain_to_value(t)).expect("serializable");
    s.push('\n');
    s
}

pub fn terrain_from_value(v: &Value) -> Result<Terrain, JsonError> {
    let obj = v.as_object().ok_or_else(|| shape("top level must be an object"))?;
    let verts = obj
        .get("vertices")
        .ok_or_else(|| shape("missing \"vertices\" key"))?
        .as_array()
        .ok_or_else(|| shape("\"vertices\" must be an array"))?;
    let mut coords = Vec::with_capacity(verts.len());
    for (i, entry) in verts.iter().enumerate() {
        let pair = entry
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| shape(format!("vertex {i} must be a [x, y] pair")))?;
        let x = value_to_rat(&pair[0])?;
        let y = value_to_rat(&pair[1])?;
        coords.push((x, y));
    }
    Ok(Terrain::new(coords)?)
}

pub fn terrain_from_str(s: &str) -> Result<Terrain, JsonError> {
    let v: Value = serde_json::from_str(s)?;
    terrain_from_value(&v)
}

fn point_to_value(p: &TerrainPoint) -> Value {
    let mut m = Map::new();
    m.insert("edge".into(), json!(p.edge));
    m.insert("x".into(), rat_to_value(&p.x));
    m.insert("y".into(), rat_to_value(&p.y));
    if let Some(v) = p.vertex {
        m.insert("vertex".into(), json!(v));
    }
    Value::Object(m)
}

pub fn witnesses_to_value(xs: &WitnessSet) -> Value {
    let mode = match xs.mode {
        crate::WitnessMode::Paper => "paper",
        crate::WitnessMode::Dense => "dense",
    };
    let points: Vec<Value> = xs.points.iter().map(point_to_value).collect();
    json!({ "mode": mode, "count": xs.len(), "points": points })
}

pub fn boundary_to_value(bps: &[BoundaryPoint]) -> Value {
    let points: Vec<Value> = bps
        .iter()
        .map(|b| {
            json!({
                "edge": b.edge,
                "t": rat_to_value(&b.t),
                "x": rat_to_value(&b.x),
                "y": rat_to_value(&b.y),
                "source_vertex": b.source_vertex,
                "through_vertex": b.through_vertex,
            })
        })
        .collect();
    json!({ "count": bps.len(), "points": points })
}

pub fn guard_set_to_value(s: &GuardSet) -> Value {
    let guards: Vec<Value> = s
        .iter()
        .map(|(g, p)| json!({ "vertex": g, "provenance": p.label() }))
        .collect();
    json!(guards)
}

pub fn certificate_to_value(c: &CoverageCertificate) -> Value {
    let verdict = match c.verdict {
        Verdict::Covered => "covered",
        Verdict::Uncovered => "uncovered",
    };
    let segments: Vec<Value> = c
        .segments
        .iter()
        .map(|s| {
            json!({
                "edge": s.edge,
                "t_lo": rat_to_value(&s.t_lo),
                "t_hi": rat_to_value(&s.t_hi),
                "left_guard": s.left_guard,
                "right_guard": s.right_guard,
            })
        })
        .collect();
    let vertices: Vec<Value> = c
        .vertices
        .iter()
        .map(|v| {
            json!({
                "vertex": v.vertex,
                "left_guard": v.left_guard,
                "right_guard": v.right_guard,
            })
        })
        .collect();
    let mut m = Map::new();
    m.insert("verdict".into(), json!(verdict));
    if let Some(p) = &c.failing_point {
        m.insert("failing_point".into(), point_to_value(p));
    }
    m.insert("segments".into(), Value::Array(segments));
    m.insert("vertices".into(), Value::Array(vertices));
    Value::Object(m)
}

pub fn extremes_to_value(em: &ExtremeMap) -> Value {
    let points: Vec<Value> = (0..em.points.len())
        .map(|i| {
            let mut m = Map::new();
            m.insert("point".into(), point_to_value(&em.points[i]));
            m.insert("leftmost".into(), json!(em.leftmost[i]));
            m.insert("rightmost".into(), json!(em.rightmost[i]));
            Value::Object(m)
        })
        .collect();
    json!({
        "tests_left": em.tests_left,
        "tests_right": em.tests_right,
        "points": points,
    })
}

pub fn report_to_value(r: &SolveReport) -> Value {
    let mode = match r.mode {
        crate::WitnessMode::Paper => "paper",
        crate::WitnessMode::Dense => "dense",
    };
    json!({
        "mode": mode,
        "witness_count": r.witness_count,
        "guards": guard_set_to_value(&r.guard_set),
        "guard_count": r.guard_set.len(),
        "extremes_tests_left": r.extremes_tests_left,
        "extremes_tests_right": r.extremes_tests_right,
        "extremes_test_bound": r.extremes_test_bound,
        "right_pass_visits": r.right_pass_visits,
        "left_pass_visits": r.left_pass_visits,
        "pass_visit_bound": r.pass_visit_bound,
        "verified": r.verified,
        "wall_ms": r.wall_ms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rint, rq};

    #[test]
    fn terrain_round_trip_is_exact() {
        let t = Terrain::new(vec![
            (rint(0), rq(1, 3)),
            (rq(1, 2), rint(2)),
            (rint(2), rint(0)),
        ])
        .unwrap();
        let s = terrain_to_string(&t);
        let back = terrain_from_str(&s).unwrap();
        assert_eq!(back.vertices(), t.vertices());
    }

    #[test]
    fn integers_and_strings_both_parse() {
        let t = terrain_from_str(r#"{"vertices": [[0, 0], ["1", "1/2"], [2, 0]]}"#).unwrap();
        assert_eq!(*t.y(1), rq(1, 2));
        assert_eq!(*t.x(2), rint(2));
    }

    #[test]
    fn floats_are_rejected() {
        let err = terrain_from_str(r#"{"vertices": [[0, 0.5], [1, 1]]}"#).unwrap_err();
        assert!(err.to_string().contains("p/q"), "{err}");
    }

    #[test]
    fn shape_errors_name_the_problem() {
        for (input, needle) in [
            (r#"[1, 2]"#, "object"),
            (r#"{}"#, "vertices"),
            (r#"{"vertices": 3}"#, "array"),
            (r#"{"vertices": [[1]]}"#, "pair"),
            (r#"{"vertices": [[1, "x"]]}"#, "bad rational"),
        ] {
            let err = terrain_from_str(input).unwrap_err();
            assert!(err.to_string().contains(needle), "{input} -> {err}");
        }
        let err = terrain_from_str(r#"{"vertices": [[0, 0]]}"#).unwrap_err();
        assert!(matches!(err, JsonError::Terrain(_)), "{err}");
    }

    #[test]
    fn canonical_strings_on_write() {
        let t = Terrain::new(vec![(rint(0), rq(2, 4)), (rq(6, 3), rint(-1))]).unwrap();
        let v = terrain_to_value(&t);
        let verts = v["vertices"].as_array().unwrap();
        assert_eq!(verts[0][1], json!("1/2"));
        assert_eq!(verts[1][0], json!("2"));
        assert_eq!(verts[1][1], json!("-1"));
    }
}
