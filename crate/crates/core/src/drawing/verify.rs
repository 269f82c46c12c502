use std::collections::BTreeSet;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::clustered::ClusteredGraph;
use crate::geometry::{
    locate, narrow, on_closed_segment, overlap_at_shared_endpoint, rect_strictly_inside,
    rects_disjoint, segment_meets_rect, segments_intersect, Coord, Grid, IPoint, IRect, Rational,
    Side,
};
use crate::graph::Graph;

use super::{CPlanarDrawing, Coords};

type NamedEdge = (String, String);

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PlanarityViolation {
    MissingVertex { vertex: String },
    CoincidentVertices { a: String, b: String },
    VertexOnEdge { vertex: String, edge: NamedEdge },
    Crossing { e1: NamedEdge, e2: NamedEdge },
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CPlanarityViolation {
    MissingVertex { vertex: String },
    MissingRegion { cluster: String },
    DegenerateRegion { cluster: String },
    MemberNotInside { vertex: String, cluster: String },
    ForeignNotOutside { vertex: String, cluster: String },
    RegionNotNested { inner: String, outer: String },
    RegionsOverlap { a: String, b: String },
    EdgeReentersRegion { edge: NamedEdge, cluster: String },
}

/// Coordinates of the listed points and rectangles on one integer grid.
struct Scaled<T> {
    pts: Vec<IPoint<T>>,
    rects: Vec<IRect<T>>,
}

enum AnyScaled {
    Small(Scaled<i128>),
    Big(Scaled<BigInt>),
}

fn scale(points: &[[&Rational; 2]], rects: &[[&Rational; 4]]) -> AnyScaled {
    let grid = Grid::for_values(
        points
            .iter()
            .flat_map(|p| p.iter().copied())
            .chain(rects.iter().flat_map(|r| r.iter().copied())),
    );
    let flat: Vec<BigInt> = points
        .iter()
        .flat_map(|p| p.iter().map(|v| grid.scale(v)))
        .chain(rects.iter().flat_map(|r| r.iter().map(|v| grid.scale(v))))
        .collect();
    let np = points.len() * 2;
    fn build<T: Clone>(flat: &[T], np: usize) -> Scaled<T> {
        Scaled {
            pts: flat[..np]
                .chunks(2)
                .map(|c| [c[0].clone(), c[1].clone()])
                .collect(),
            rects: flat[np..]
                .chunks(4)
                .map(|c| [c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()])
                .collect(),
        }
    }
    match narrow(&flat) {
        Some(small) => AnyScaled::Small(build(&small, np)),
        None => AnyScaled::Big(build(&flat, np)),
    }
}

fn bbox<T: Coord>(a: &IPoint<T>, b: &IPoint<T>) -> IRect<T> {
    let (x0, x1) = if a[0] <= b[0] {
        (&a[0], &b[0])
    } else {
        (&b[0], &a[0])
    };
    let (y0, y1) = if a[1] <= b[1] {
        (&a[1], &b[1])
    } else {
        (&b[1], &a[1])
    };
    [x0.clone(), x1.clone(), y0.clone(), y1.clone()]
}

enum RawPlanar {
    Coincident(usize, usize),
    OnEdge(usize, usize),
    Cross(usize, usize),
}

fn planarity_core<T: Coord>(pts: &[IPoint<T>], edges: &[(usize, usize)]) -> Vec<RawPlanar> {
    let mut out = Vec::new();
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&a, &b| pts[a].cmp(&pts[b]));
    for w in order.windows(2) {
        if pts[w[0]] == pts[w[1]] {
            out.push(RawPlanar::Coincident(w[0].min(w[1]), w[0].max(w[1])));
        }
    }
    let boxes: Vec<IRect<T>> = edges.iter().map(|&(a, b)| bbox(&pts[a], &pts[b])).collect();
    let on_edge: Vec<RawPlanar> = edges
        .par_iter()
        .enumerate()
        .flat_map_iter(|(k, &(a, b))| {
            let bx = &boxes[k];
            (0..pts.len())
                .filter(move |&v| v != a && v != b)
                .filter(move |&v| locate(&pts[v], bx) != Side::Outside)
                .filter(move |&v| on_closed_segment(&pts[v], &pts[a], &pts[b]))
                .map(move |v| RawPlanar::OnEdge(v, k))
        })
        .collect();
    out.extend(on_edge);
    let crossings: Vec<RawPlanar> = (0..edges.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let boxes = &boxes;
            (i + 1..edges.len()).filter_map(move |j| {
                if rects_disjoint(&boxes[i], &boxes[j]) {
                    return None;
                }
                let (a, b) = edges[i];
                let (c, d) = edges[j];
                let shared = [(a, b, c, d), (a, b, d, c), (b, a, c, d), (b, a, d, c)]
                    .into_iter()
                    .find(|&(p, _, q, _)| p == q);
                let bad = match shared {
                    Some((p, q1, _, q2)) => overlap_at_shared_endpoint(&pts[p], &pts[q1], &pts[q2]),
                    None => segments_intersect(&pts[a], &pts[b], &pts[c], &pts[d]),
                };
                bad.then_some(RawPlanar::Cross(i, j))
            })
        })
        .collect();
    out.extend(crossings);
    out
}

fn edge_name(g: &Graph, (a, b): (usize, usize)) -> NamedEdge {
    (g.name(a).to_string(), g.name(b).to_string())
}

/// Checks that no two edges meet except at a shared endpoint, that no vertex
/// lies on another edge and that no two vertices coincide. The result is
/// sorted and empty when the drawing is planar.
pub fn verify_planarity(coords: &Coords, g: &Graph) -> Vec<PlanarityViolation> {
    let mut missing: Vec<PlanarityViolation> = g
        .names()
        .iter()
        .filter(|v| !coords.contains_key(*v))
        .map(|v| PlanarityViolation::MissingVertex { vertex: v.clone() })
        .collect();
    if !missing.is_empty() {
        missing.sort();
        return missing;
    }
    let points: Vec<[&Rational; 2]> = g
        .names()
        .iter()
        .map(|v| {
            let p = &coords[v];
            [&p.x, &p.y]
        })
        .collect();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let raw = match scale(&points, &[]) {
        AnyScaled::Small(s) => planarity_core(&s.pts, &edges),
        AnyScaled::Big(s) => planarity_core(&s.pts, &edges),
    };
    let mut out: Vec<PlanarityViolation> = raw
        .into_iter()
        .map(|r| match r {
            RawPlanar::Coincident(a, b) => PlanarityViolation::CoincidentVertices {
                a: g.name(a).to_string(),
                b: g.name(b).to_string(),
            },
            RawPlanar::OnEdge(v, k) => PlanarityViolation::VertexOnEdge {
                vertex: g.name(v).to_string(),
                edge: edge_name(g, edges[k]),
            },
            RawPlanar::Cross(i, j) => PlanarityViolation::Crossing {
                e1: edge_name(g, edges[i]),
                e2: edge_name(g, edges[j]),
            },
        })
        .collect();
    out.sort();
    out
}

enum RawCp {
    MemberNotInside(usize, usize),
    ForeignNotOutside(usize, usize),
    NotNested(usize, usize),
    Overlap(usize, usize),
    Reenters(usize, usize),
}

struct ClusterInfo {
    /// Graph vertex ids in the subtree of each cluster.
    members: Vec<BTreeSet<usize>>,
    /// `ancestor[i][j]`: cluster `i` is a proper ancestor of cluster `j`.
    ancestor: Vec<Vec<bool>>,
}

fn cplanarity_core<T: Coord>(
    s: &Scaled<T>,
    edges: &[(usize, usize)],
    info: &ClusterInfo,
) -> Vec<RawCp> {
    let k = s.rects.len();
    let per_cluster: Vec<RawCp> = (0..k)
        .into_par_iter()
        .flat_map_iter(|ci| {
            let r = &s.rects[ci];
            let members = &info.members[ci];
            let mut out = Vec::new();
            for (v, p) in s.pts.iter().enumerate() {
                let side = locate(p, r);
                if members.contains(&v) {
                    if side != Side::Inside {
                        out.push(RawCp::MemberNotInside(v, ci));
                    }
                } else if side != Side::Outside {
                    out.push(RawCp::ForeignNotOutside(v, ci));
                }
            }
            for cj in ci + 1..k {
                let other = &s.rects[cj];
                if info.ancestor[ci][cj] {
                    if !rect_strictly_inside(other, r) {
                        out.push(RawCp::NotNested(cj, ci));
                    }
                } else if info.ancestor[cj][ci] {
                    if !rect_strictly_inside(r, other) {
                        out.push(RawCp::NotNested(ci, cj));
                    }
                } else if !rects_disjoint(r, other) {
                    out.push(RawCp::Overlap(ci, cj));
                }
            }
            for (e, &(a, b)) in edges.iter().enumerate() {
                if members.contains(&a) || members.contains(&b) {
                    continue;
                }
                if segment_meets_rect(&s.pts[a], &s.pts[b], r) {
                    out.push(RawCp::Reenters(e, ci));
                }
            }
            out
        })
        .collect();
    per_cluster
}

/// Checks containment, region nesting and edge-region crossings of a
/// drawing whose planarity has already been established. An edge with both
/// endpoints outside a region must avoid it entirely; edges with an
/// endpoint inside cross its boundary at most once by convexity.
pub fn verify_cplanarity(cpd: &CPlanarDrawing, c: &ClusteredGraph) -> Vec<CPlanarityViolation> {
    let g = &c.graph;
    let h = &c.hierarchy;
    let clusters = c.clusters();
    let mut early: Vec<CPlanarityViolation> = g
        .names()
        .iter()
        .filter(|v| !cpd.coords.contains_key(*v))
        .map(|v| CPlanarityViolation::MissingVertex { vertex: v.clone() })
        .collect();
    for &k in &clusters {
        let name = h.name(k);
        match cpd.regions.get(name) {
            None => early.push(CPlanarityViolation::MissingRegion {
                cluster: name.to_string(),
            }),
            Some(r) if !r.is_proper() => early.push(CPlanarityViolation::DegenerateRegion {
                cluster: name.to_string(),
            }),
            Some(_) => {}
        }
    }
    if !early.is_empty() {
        early.sort();
        return early;
    }

    let members: Vec<BTreeSet<usize>> = clusters
        .iter()
        .map(|&k| {
            h.leaves_under(k)
                .into_iter()
                .filter_map(|l| g.id(h.name(l)))
                .collect()
        })
        .collect();
    let ancestor: Vec<Vec<bool>> = clusters
        .iter()
        .map(|&a| {
            clusters
                .iter()
                .map(|&b| h.is_proper_ancestor(a, b))
                .collect()
        })
        .collect();
    let info = ClusterInfo { members, ancestor };
    let points: Vec<[&Rational; 2]> = g
        .names()
        .iter()
        .map(|v| {
            let p = &cpd.coords[v];
            [&p.x, &p.y]
        })
        .collect();
    let rects: Vec<[&Rational; 4]> = clusters
        .iter()
        .map(|&k| {
            let r = &cpd.regions[h.name(k)];
            [&r.xmin, &r.xmax, &r.ymin, &r.ymax]
        })
        .collect();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let raw = match scale(&points, &rects) {
        AnyScaled::Small(s) => cplanarity_core(&s, &edges, &info),
        AnyScaled::Big(s) => cplanarity_core(&s, &edges, &info),
    };
    let cname = |i: usize| h.name(clusters[i]).to_string();
    let vname = |v: usize| g.name(v).to_string();
    let mut out: Vec<CPlanarityViolation> = raw
        .into_iter()
        .map(|r| match r {
            RawCp::MemberNotInside(v, k) => CPlanarityViolation::MemberNotInside {
                vertex: vname(v),
                cluster: cname(k),
            },
            RawCp::ForeignNotOutside(v, k) => CPlanarityViolation::ForeignNotOutside {
                vertex: vname(v),
                cluster: cname(k),
            },
            RawCp::NotNested(i, o) => CPlanarityViolation::RegionNotNested {
                inner: cname(i),
                outer: cname(o),
            },
            RawCp::Overlap(a, b) => CPlanarityViolation::RegionsOverlap {
                a: cname(a),
                b: cname(b),
            },
            RawCp::Reenters(e, k) => CPlanarityViolation::EdgeReentersRegion {
                edge: edge_name(g, edges[e]),
                cluster: cname(k),
            },
        })
        .collect();
    out.sort();
    out
}
