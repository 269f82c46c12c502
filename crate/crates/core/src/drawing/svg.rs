use std::fmt::Write;

use num_traits::ToPrimitive;

use crate::clustered::ClusteredGraph;
use crate::geometry::Rational;

use super::CPlanarDrawing;

const UNIT: f64 = 40.0;
const PAD: f64 = 20.0;

fn f(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn edge_color(a: &str, b: &str) -> &'static str {
    if a.starts_with("eR:") || b.starts_with("eR:") {
        "red"
    } else if a.starts_with("eB:") || b.starts_with("eB:") {
        "blue"
    } else {
        "black"
    }
}

/// SVG 1.1 picture of a drawing. Output depends only on the input.
///
/// Without the clustered graph no edges are drawn and regions are layered
/// by name instead of by hierarchy order.
pub fn svg_render(cpd: &CPlanarDrawing, c: Option<&ClusteredGraph>) -> String {
    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    for p in cpd.coords.values() {
        xs.push(f(&p.x));
        ys.push(f(&p.y));
    }
    for r in cpd.regions.values() {
        xs.extend([f(&r.xmin), f(&r.xmax)]);
        ys.extend([f(&r.ymin), f(&r.ymax)]);
    }
    let min = |v: &[f64]| v.iter().copied().fold(f64::INFINITY, f64::min);
    let max = |v: &[f64]| v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (x0, x1, y0, y1) = if xs.is_empty() {
        (0.0, 0.0, 0.0, 0.0)
    } else {
        (min(&xs), max(&xs), min(&ys), max(&ys))
    };
    let sx = |x: f64| (x - x0) * UNIT + PAD;
    let sy = |y: f64| (y1 - y) * UNIT + PAD;
    let width = (x1 - x0) * UNIT + 2.0 * PAD;
    let height = (y1 - y0) * UNIT + 2.0 * PAD;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.3}" height="{height:.3}" viewBox="0 0 {width:.3} {height:.3}">"#
    );
    let names: Vec<&str> = match c {
        Some(c) => {
            let h = &c.hierarchy;
            h.preorder().into_iter().map(|k| h.name(k)).collect()
        }
        None => cpd.regions.keys().map(String::as_str).collect(),
    };
    let _ = writeln!(
        out,
        r#"<g id="clusters" font-size="6" font-family="sans-serif">"#
    );
    for name in names {
        let Some(r) = cpd.regions.get(name) else {
            continue;
        };
        let (rx, ry) = (sx(f(&r.xmin)), sy(f(&r.ymax)));
        let (rw, rh) = (
            (f(&r.xmax) - f(&r.xmin)) * UNIT,
            (f(&r.ymax) - f(&r.ymin)) * UNIT,
        );
        let _ = writeln!(
            out,
            r##"<rect x="{rx:.3}" y="{ry:.3}" width="{rw:.3}" height="{rh:.3}" fill="#888888" fill-opacity="0.08" stroke="#555555" stroke-width="0.5"/>"##
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.3}" y="{:.3}">{}</text>"#,
            rx + 1.0,
            ry + 6.0,
            esc(name)
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<g id="edges" stroke-width="1">"#);
    for (a, b) in c.iter().flat_map(|c| c.graph.edge_names()) {
        let (Some(p), Some(q)) = (cpd.coords.get(a), cpd.coords.get(b)) else {
            continue;
        };
        let _ = writeln!(
            out,
            r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="{}"/>"#,
            sx(f(&p.x)),
            sy(f(&p.y)),
            sx(f(&q.x)),
            sy(f(&q.y)),
            edge_color(a, b)
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<g id="vertices" fill="black">"#);
    for (v, p) in &cpd.coords {
        let _ = writeln!(
            out,
            r#"<circle cx="{:.3}" cy="{:.3}" r="1.5"><title>{}</title></circle>"#,
            sx(f(&p.x)),
            sy(f(&p.y)),
            esc(v)
        );
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    out
}
