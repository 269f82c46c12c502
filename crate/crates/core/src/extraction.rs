//! From a c-planar drawing of a reduced instance back to a leaf order, and
//! from a certified order to the two drawings of the simultaneous embedding.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use crate::drawing::CPlanarDrawing;
use crate::error::{Error, Result};
use crate::geometry::{Point, Rational, Rect};
use crate::instance::{normalize_pair, LeafOrder, LeafPair, Page, PtbeInstance};
use crate::ptbe::{is_representable, page_alternation_free};
use crate::reduction::{GadgetMap, MU_ALPHA};

fn strictly_inside(r: &Rect, p: &Point) -> bool {
    r.contains_strictly(p)
}

fn on_or_inside(r: &Rect, p: &Point) -> bool {
    r.xmin <= p.x && p.x <= r.xmax && r.ymin <= p.y && p.y <= r.ymax
}

/// Whether the closed segment `pq` meets the closed rectangle, both
/// endpoints being outside it. Clips the segment against each slab.
fn segment_touches(r: &Rect, p: &Point, q: &Point) -> bool {
    let zero = Rational::from_integer(0.into());
    let one = Rational::from_integer(1.into());
    let (mut lo, mut hi) = (zero.clone(), one);
    for (a, b, min, max) in [
        (&p.x, &q.x, &r.xmin, &r.xmax),
        (&p.y, &q.y, &r.ymin, &r.ymax),
    ] {
        let d = b - a;
        if d == zero {
            if a < min || a > max {
                return false;
            }
            continue;
        }
        let t1 = (min - a) / &d;
        let t2 = (max - a) / &d;
        let (t1, t2) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        if t1 > lo {
            lo = t1;
        }
        if t2 < hi {
            hi = t2;
        }
        if lo > hi {
            return false;
        }
    }
    true
}

/// Point where the segment from `p` (inside) to `q` (outside) leaves `r`.
fn exit_point(r: &Rect, p: &Point, q: &Point) -> Point {
    let mut t: Option<Rational> = None;
    for (a, b, min, max) in [
        (&p.x, &q.x, &r.xmin, &r.xmax),
        (&p.y, &q.y, &r.ymin, &r.ymax),
    ] {
        let bound = if b > max {
            Some(max)
        } else if b < min {
            Some(min)
        } else {
            None
        };
        if let Some(bound) = bound {
            let s = (bound - a) / (b - a);
            t = Some(match t {
                Some(cur) if cur <= s => cur,
                _ => s,
            });
        }
    }
    let t = t.expect("q lies outside r");
    Point::new(&p.x + (&q.x - &p.x) * &t, &p.y + (&q.y - &p.y) * &t)
}

/// Counter-clockwise boundary parameter starting at the bottom-left corner.
fn perimeter_position(r: &Rect, p: &Point) -> Rational {
    let w = &r.xmax - &r.xmin;
    let h = &r.ymax - &r.ymin;
    if p.y == r.ymin {
        &p.x - &r.xmin
    } else if p.x == r.xmax {
        &w + (&p.y - &r.ymin)
    } else if p.y == r.ymax {
        &w + &h + (&r.xmax - &p.x)
    } else {
        &w + &w + &h + (&r.ymax - &p.y)
    }
}

/// Orders leaves by where their leaf-paths cross the boundary of the alpha
/// cluster's rectangle, walking it counter-clockwise from the bottom-left
/// corner. Works for both reduction variants.
pub fn extract_order(cpd: &CPlanarDrawing, gm: &GadgetMap) -> Result<LeafOrder> {
    let r = cpd
        .regions
        .get(MU_ALPHA)
        .ok_or_else(|| Error::GadgetMismatch(format!("no region for `{MU_ALPHA}`")))?;
    let mut keyed: Vec<(Rational, String)> = Vec::with_capacity(gm.leaf_paths.len());
    for leaf in gm.leaf_paths.keys() {
        let chain = gm.leaf_chain(leaf).expect("known leaf");
        let pts: Vec<&Point> = chain
            .iter()
            .map(|v| {
                cpd.coords
                    .get(v)
                    .ok_or_else(|| Error::GadgetMismatch(format!("no position for `{v}`")))
            })
            .collect::<Result<_>>()?;
        let mut crossings = Vec::new();
        let mut malformed = 0;
        for w in pts.windows(2) {
            let (p, q) = (w[0], w[1]);
            let (pin, qin) = (strictly_inside(r, p), strictly_inside(r, q));
            let on_boundary = |x: &Point| on_or_inside(r, x) && !strictly_inside(r, x);
            if on_boundary(p) || on_boundary(q) {
                malformed += 1;
                continue;
            }
            match (pin, qin) {
                (true, false) => crossings.push(exit_point(r, p, q)),
                (false, true) => crossings.push(exit_point(r, q, p)),
                (false, false) if segment_touches(r, p, q) => malformed += 2,
                _ => {}
            }
        }
        if crossings.len() != 1 || malformed > 0 {
            return Err(Error::MalformedCrossing {
                leaf: leaf.clone(),
                crossings: crossings.len() + malformed,
            });
        }
        keyed.push((perimeter_position(r, &crossings[0]), leaf.clone()));
    }
    keyed.sort();
    Ok(LeafOrder(keyed.into_iter().map(|(_, l)| l).collect()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SefeCertificate {
    pub order: LeafOrder,
    pub representable: bool,
    pub page1_clean: bool,
    pub page2_clean: bool,
    /// Flags above were taken from the reversed order.
    pub reversed: bool,
    pub accepted: bool,
}

/// Checks tree-representability and both pages for `order` and, failing
/// that, for its reverse.
pub fn certify(instance: &PtbeInstance, order: &LeafOrder) -> Result<SefeCertificate> {
    order.check_permutation(&instance.tree)?;
    let eval = |o: &LeafOrder, reversed: bool| -> Result<SefeCertificate> {
        let representable = is_representable(&instance.tree, o)?;
        let page1_clean = page_alternation_free(o, &instance.page1)?.is_none();
        let page2_clean = page_alternation_free(o, &instance.page2)?.is_none();
        Ok(SefeCertificate {
            order: order.clone(),
            representable,
            page1_clean,
            page2_clean,
            reversed,
            accepted: representable && page1_clean && page2_clean,
        })
    };
    let forward = eval(order, false)?;
    if forward.accepted {
        return Ok(forward);
    }
    let backward = eval(&order.reversed(), true)?;
    Ok(if backward.accepted { backward } else { forward })
}

/// The two drawings of a simultaneous embedding sharing one tree layout.
///
/// Leaves sit on the spine `y = 0` in order; an internal node spanning
/// positions `a..b` at depth `k` sits at `((a+b)/2, -((b-a)/2 + 1/2 - k*eta))`
/// with `eta = 1/(4(D+1))`, so every subtree hangs in its own V below its
/// interval. Page edges are semicircles above the spine.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SefeDrawings {
    pub order: LeafOrder,
    pub nodes: BTreeMap<String, (f64, f64)>,
    pub tree_edges: Vec<(String, String)>,
    pub page1: Vec<LeafPair>,
    pub page2: Vec<LeafPair>,
}

pub fn sefe_drawings(instance: &PtbeInstance, order: &LeafOrder) -> Result<SefeDrawings> {
    let cert = certify(instance, order)?;
    if !cert.accepted {
        return Err(Error::NotCertified);
    }
    let t = &instance.tree;
    let pos: BTreeMap<&str, f64> = order
        .as_slice()
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), (i + 1) as f64))
        .collect();
    let max_depth = (0..t.len()).map(|v| t.depth(v)).max().unwrap_or(0);
    let eta = 1.0 / (4.0 * (max_depth as f64 + 1.0));
    let mut nodes = BTreeMap::new();
    for v in 0..t.len() {
        let name = t.name(v).to_string();
        if t.is_leaf(v) {
            nodes.insert(name.clone(), (pos[name.as_str()], 0.0));
            continue;
        }
        let xs: Vec<f64> = t.leaves_under(v).iter().map(|&l| pos[t.name(l)]).collect();
        let a = xs.iter().copied().fold(f64::INFINITY, f64::min);
        let b = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let s = 0.5 - eta * t.depth(v) as f64;
        nodes.insert(name, ((a + b) / 2.0, -((b - a) / 2.0 + s)));
    }
    let tree_edges = t
        .edges()
        .map(|(p, c)| (t.name(p).to_string(), t.name(c).to_string()))
        .collect();
    let norm = |p: &[LeafPair]| {
        let mut v: Vec<LeafPair> = p.iter().map(|(a, b)| normalize_pair(a, b)).collect();
        v.sort();
        v
    };
    Ok(SefeDrawings {
        order: order.clone(),
        nodes,
        tree_edges,
        page1: norm(&instance.page1),
        page2: norm(&instance.page2),
    })
}

const ARC_SAMPLES: usize = 64;

type Seg = ((f64, f64), (f64, f64));

impl SefeDrawings {
    pub fn page(&self, page: Page) -> &[LeafPair] {
        match page {
            Page::One => &self.page1,
            Page::Two => &self.page2,
        }
    }

    /// Arc endpoints left to right with centre and radius.
    fn arc(&self, (a, b): &LeafPair) -> (f64, f64, f64) {
        let (x1, x2) = (self.nodes[a].0, self.nodes[b].0);
        let (l, r) = if x1 < x2 { (x1, x2) } else { (x2, x1) };
        (l, r, (r - l) / 2.0)
    }

    /// Polylines of one drawing: tree edges plus sampled arcs.
    pub fn polylines(&self, page: Page) -> Vec<Vec<(f64, f64)>> {
        let mut out: Vec<Vec<(f64, f64)>> = self
            .tree_edges
            .iter()
            .map(|(p, c)| vec![self.nodes[p], self.nodes[c]])
            .collect();
        for e in self.page(page) {
            let (l, r, rad) = self.arc(e);
            let cx = (l + r) / 2.0;
            out.push(
                (0..=ARC_SAMPLES)
                    .map(|k| {
                        let th = std::f64::consts::PI * (1.0 - k as f64 / ARC_SAMPLES as f64);
                        (cx + rad * th.cos(), rad * th.sin())
                    })
                    .collect(),
            );
        }
        out
    }

    /// Approximate check that no two sampled curves of the drawing cross
    /// properly. Touching at shared endpoints is allowed.
    pub fn spot_check(&self, page: Page) -> bool {
        let lines = self.polylines(page);
        let segs: Vec<Vec<Seg>> = lines
            .iter()
            .map(|l| l.windows(2).map(|w| (w[0], w[1])).collect())
            .collect();
        for i in 0..segs.len() {
            for j in i + 1..segs.len() {
                for s in &segs[i] {
                    for t in &segs[j] {
                        if proper_cross(*s, *t) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// SVG of one drawing: tree in black, page arcs red (page one) or blue.
    pub fn svg(&self, page: Page) -> String {
        const UNIT: f64 = 40.0;
        const PAD: f64 = 20.0;
        let n = self.order.len().max(1) as f64;
        let lowest = self.nodes.values().map(|p| p.1).fold(0.0, f64::min);
        let highest = self
            .page(page)
            .iter()
            .map(|e| self.arc(e).2)
            .fold(0.0, f64::max);
        let width = (n + 1.0) * UNIT + 2.0 * PAD;
        let height = (highest - lowest) * UNIT + 2.0 * PAD;
        let sx = |x: f64| x * UNIT + PAD;
        let sy = |y: f64| (highest - y) * UNIT + PAD;
        let color = match page {
            Page::One => "red",
            Page::Two => "blue",
        };
        let mut out = String::new();
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.3}" height="{height:.3}" viewBox="0 0 {width:.3} {height:.3}">"#
        );
        let _ = writeln!(out, r#"<g id="tree" stroke="black" stroke-width="1">"#);
        for (p, c) in &self.tree_edges {
            let (a, b) = (self.nodes[p], self.nodes[c]);
            let _ = writeln!(
                out,
                r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#,
                sx(a.0),
                sy(a.1),
                sx(b.0),
                sy(b.1)
            );
        }
        let _ = writeln!(out, "</g>");
        let _ = writeln!(
            out,
            r#"<g id="{page}" stroke="{color}" stroke-width="1" fill="none">"#
        );
        for e in self.page(page) {
            let (l, r, rad) = self.arc(e);
            let _ = writeln!(
                out,
                r#"<path d="M {:.3} {:.3} A {:.3} {:.3} 0 0 1 {:.3} {:.3}"/>"#,
                sx(l),
                sy(0.0),
                rad * UNIT,
                rad * UNIT,
                sx(r),
                sy(0.0)
            );
        }
        let _ = writeln!(out, "</g>");
        let _ = writeln!(
            out,
            r#"<g id="nodes" font-size="8" font-family="sans-serif">"#
        );
        for (name, &(x, y)) in &self.nodes {
            let _ = writeln!(
                out,
                r#"<circle cx="{:.3}" cy="{:.3}" r="2"/>"#,
                sx(x),
                sy(y)
            );
            if y == 0.0 {
                let _ = writeln!(
                    out,
                    r#"<text x="{:.3}" y="{:.3}">{}</text>"#,
                    sx(x) + 2.0,
                    sy(y) + 9.0,
                    name
                );
            }
        }
        let _ = writeln!(out, "</g>");
        out.push_str("</svg>\n");
        out
    }
}

fn orient(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> f64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

fn proper_cross(s: Seg, t: Seg) -> bool {
    const EPS: f64 = 1e-12;
    let sign = |v: f64| {
        if v > EPS {
            Ordering::Greater
        } else if v < -EPS {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    };
    let o1 = sign(orient(s.0, s.1, t.0));
    let o2 = sign(orient(s.0, s.1, t.1));
    let o3 = sign(orient(t.0, t.1, s.0));
    let o4 = sign(orient(t.0, t.1, s.1));
    [o1, o2, o3, o4].iter().all(|o| *o != Ordering::Equal) && o1 != o2 && o3 != o4
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::{compute_regions, place_vertices_flat, place_vertices_nonflat};
    use crate::fixtures::*;
    use crate::generate::{random_instance, Shape};
    use crate::geometry::int;
    use crate::ptbe::{solve, SolveOptions};
    use crate::reduction::{reduce_flat, reduce_nonflat};

    fn nonflat_drawing(inst: &PtbeInstance, w: &LeafOrder) -> (CPlanarDrawing, GadgetMap) {
        let (c, gm) = reduce_nonflat(inst).unwrap();
        let xy = place_vertices_nonflat(&c, &gm, w).unwrap();
        let regions = compute_regions(&xy, &c);
        (CPlanarDrawing::new(xy, regions), gm)
    }

    #[test]
    fn roundtrip_recovers_witness() {
        for seed in 0..150u64 {
            let inst = random_instance(2 + seed as usize % 7, 3, 3, seed, Shape::RandomTree);
            let Some(w) = solve(&inst, SolveOptions::default()).unwrap().witness else {
                continue;
            };
            let (cpd, gm) = nonflat_drawing(&inst, &w);
            let o = extract_order(&cpd, &gm).unwrap();
            assert!(o == w || o == w.reversed());
            assert!(certify(&inst, &o).unwrap().accepted);

            let (c, gmf) = reduce_flat(&inst).unwrap();
            let flat = place_vertices_flat(&c, &gmf, &w).unwrap();
            assert_eq!(extract_order(&flat, &gmf).unwrap(), o);
        }
    }

    #[test]
    fn mirrored_drawing_gives_reverse() {
        let inst = example_instance();
        let w = solve(&inst, SolveOptions::default())
            .unwrap()
            .witness
            .unwrap();
        let (cpd, gm) = nonflat_drawing(&inst, &w);
        let l = inst.leaf_count() as i64;
        let m = cpd.mirrored(&int(l + 1));
        assert_eq!(extract_order(&cpd, &gm).unwrap(), w);
        assert_eq!(extract_order(&m, &gm).unwrap(), w.reversed());
    }

    #[test]
    fn double_crossing_is_malformed() {
        let inst = example_instance();
        let w = solve(&inst, SolveOptions::default())
            .unwrap()
            .witness
            .unwrap();
        let (mut cpd, gm) = nonflat_drawing(&inst, &w);
        // Move v:a above the alpha row: its path now stays outside, then
        // the beta edge passes through the region.
        cpd.coords.insert("v:a".into(), Point::new(int(1), int(2)));
        cpd.coords.insert("va:a".into(), Point::new(int(1), int(3)));
        cpd.coords
            .insert("vb:a".into(), Point::new(int(1), int(-1)));
        let err = extract_order(&cpd, &gm).unwrap_err();
        assert!(matches!(err, Error::MalformedCrossing { .. }));
    }

    #[test]
    fn certify_examples() {
        let inst = star_instance(&["a", "b", "c", "d"], &[("a", "c"), ("b", "d")], &[]);
        let c = certify(&inst, &LeafOrder::new(["a", "b", "c", "d"])).unwrap();
        assert!(!c.accepted);
        assert!(c.representable && !c.page1_clean && c.page2_clean);

        let inst = example_instance();
        let w = solve(&inst, SolveOptions::default())
            .unwrap()
            .witness
            .unwrap();
        assert!(certify(&inst, &w).unwrap().accepted);
        assert!(certify(&inst, &w.reversed()).unwrap().accepted);
        assert!(certify(&inst, &LeafOrder::new(["a"])).is_err());
        let json = serde_json::to_string(&certify(&inst, &w).unwrap()).unwrap();
        assert!(json.contains("\"page1Clean\":true") && json.contains("\"accepted\":true"));
    }

    #[test]
    fn sefe_drawings_share_tree_and_pass_spot_check() {
        for seed in 0..60u64 {
            let inst = random_instance(3 + seed as usize % 6, 3, 3, seed, Shape::RandomTree);
            let Some(w) = solve(&inst, SolveOptions::default()).unwrap().witness else {
                continue;
            };
            let d = sefe_drawings(&inst, &w).unwrap();
            assert!(d.spot_check(Page::One), "{inst:?}");
            assert!(d.spot_check(Page::Two), "{inst:?}");
            let (s1, s2) = (d.svg(Page::One), d.svg(Page::Two));
            assert_eq!(s1.matches("<path").count(), inst.page1.len());
            assert_eq!(s2.matches("<path").count(), inst.page2.len());
            assert_eq!(s1.matches("<line").count(), s2.matches("<line").count());
            let t = d.tree_edges.len();
            assert_eq!(d.polylines(Page::One)[..t], d.polylines(Page::Two)[..t]);
        }
    }

    #[test]
    fn empty_pages_give_identical_drawings() {
        let inst = PtbeInstance::new(two_pairs_tree(), vec![], vec![]);
        let w = LeafOrder::new(["a", "b", "c", "d"]);
        let d = sefe_drawings(&inst, &w).unwrap();
        assert_eq!(d.polylines(Page::One), d.polylines(Page::Two));
    }

    #[test]
    fn spot_check_sees_alternating_arcs() {
        let inst = star_instance(&["a", "b", "c", "d"], &[("a", "c"), ("b", "d")], &[]);
        let d = SefeDrawings {
            order: LeafOrder::new(["a", "b", "c", "d"]),
            nodes: [("a", 1.0), ("b", 2.0), ("c", 3.0), ("d", 4.0)]
                .iter()
                .map(|(n, x)| (n.to_string(), (*x, 0.0)))
                .collect(),
            tree_edges: vec![],
            page1: inst.page1.clone(),
            page2: vec![],
        };
        assert!(!d.spot_check(Page::One));
        assert!(sefe_drawings(&inst, &d.order).is_err());
    }
}
