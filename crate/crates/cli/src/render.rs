//! Static SVG figures: the terrain polyline plus optional guard, witness,
//! and boundary-point layers, and optional per-guard visibility shading.
//! Output is deterministic for fixed inputs.

use twoguard_core::discretize::BoundaryPoint;
use twoguard_core::rat::to_f64;
use twoguard_core::{visibility_profile, GuardSet, Terrain, WitnessSet};

pub struct RenderLayers<'a> {
    pub guards: Option<&'a GuardSet>,
    pub witnesses: Option<&'a WitnessSet>,
    pub boundary: Option<&'a [BoundaryPoint]>,
    /// Stroke each guard's visible portions slightly above the chain.
    pub shade: bool,
}

impl Default for RenderLayers<'_> {
    fn default() -> Self {
        RenderLayers {
            guards: None,
            witnesses: None,
            boundary: None,
            shade: false,
        }
    }
}

fn fmt(v: f64) -> String {
    // Fixed precision keeps the output byte-stable and diffable.
    let s = format!("{v:.4}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

pub fn render_svg(t: &Terrain, layers: &RenderLayers) -> String {
    let n = t.n();
    let xs: Vec<f64> = (0..n).map(|j| to_f64(t.x(j))).collect();
    let ys: Vec<f64> = (0..n).map(|j| to_f64(t.y(j))).collect();
    let (x_lo, x_hi) = (xs[0], xs[n - 1]);
    let y_lo = ys.iter().cloned().fold(f64::INFINITY, f64::min);
    let y_hi = ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let w = (x_hi - x_lo).max(1e-9);
    let h = (y_hi - y_lo).max(w / 10.0);
    let mx = 0.05 * w;
    let my = 0.05 * h;
    // SVG y grows downward; flip about the box so higher terrain is up.
    let fy = |y: f64| y_hi - y + my;
    let fx = |x: f64| x - x_lo + mx;
    let r = 0.012 * w.max(h);

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 {} {}\">\n",
        fmt(w + 2.0 * mx),
        fmt(h + 2.0 * my),
    ));
    out.push_str(&format!(
        "  <style>\n    .terrain {{ fill: none; stroke: #333; stroke-width: {sw}; }}\n    .shade {{ fill: none; stroke: #9c6; stroke-width: {shw}; opacity: 0.5; }}\n    .guard {{ fill: #c33; }}\n    .witness {{ fill: #36c; }}\n    .boundary {{ fill: #f90; stroke: #333; stroke-width: {bw}; }}\n  </style>\n",
        sw = fmt(r * 0.5),
        shw = fmt(r * 0.8),
        bw = fmt(r * 0.2),
    ));

    if layers.shade {
        if let Some(s) = layers.guards {
            for &g in s.indices() {
                for iv in visibility_profile(t, g).into_iter().flatten() {
                    let a = t.point_on_edge(iv.edge, &iv.t_lo).unwrap();
                    let b = t.point_on_edge(iv.edge, &iv.t_hi).unwrap();
                    out.push_str(&format!(
                        "  <line class=\"shade\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n",
                        fmt(fx(to_f64(&a.x))),
                        fmt(fy(to_f64(&a.y))),
                        fmt(fx(to_f64(&b.x))),
                        fmt(fy(to_f64(&b.y))),
                    ));
                }
            }
        }
    }

    let pts: Vec<String> = (0..n)
        .map(|j| format!("{},{}", fmt(fx(xs[j])), fmt(fy(ys[j]))))
        .collect();
    out.push_str(&format!(
        "  <polyline class=\"terrain\" points=\"{}\"/>\n",
        pts.join(" ")
    ));

    if let Some(bps) = layers.boundary {
        for b in bps {
            let (cx, cy) = (fx(to_f64(&b.x)), fy(to_f64(&b.y)));
            out.push_str(&format!(
                "  <rect class=\"boundary\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" transform=\"rotate(45 {} {})\"/>\n",
                fmt(cx - r * 0.8),
                fmt(cy - r * 0.8),
                fmt(r * 1.6),
                fmt(r * 1.6),
                fmt(cx),
                fmt(cy),
            ));
        }
    }
    if let Some(xs_set) = layers.witnesses {
        for p in &xs_set.points {
            out.push_str(&format!(
                "  <circle class=\"witness\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>\n",
                fmt(fx(to_f64(&p.x))),
                fmt(fy(to_f64(&p.y))),
                fmt(r * 0.6),
            ));
        }
    }
    if let Some(s) = layers.guards {
        for &g in s.indices() {
            out.push_str(&format!(
                "  <circle class=\"guard\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>\n",
                fmt(fx(xs[g])),
                fmt(fy(ys[g])),
                fmt(r),
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}
