use std::collections::BTreeMap;

use crate::clustered::ClusteredGraph;
use crate::error::{Error, Result};
use crate::geometry::{int, rat, Point, Rational};
use crate::instance::{LeafOrder, Page};
use crate::reduction::{
    GadgetMap, Variant, U1_ALPHA, U1_BETA, U1_RHO, U2_ALPHA, U2_BETA, U2_RHO, U_B, U_R,
};

use super::{compute_regions, verify_cplanarity, verify_planarity, CPlanarDrawing, Coords};

/// Tunable offsets of the flat placement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatConstants {
    /// L∞ distance of a split copy from its original's point.
    pub epsilon: Rational,
    /// Vertical spacing of marker rows.
    pub marker_step: Rational,
}

impl Default for FlatConstants {
    fn default() -> Self {
        FlatConstants {
            epsilon: rat(1, 8),
            marker_step: rat(1, 4),
        }
    }
}

fn check_order(gm: &GadgetMap, order: &LeafOrder) -> Result<BTreeMap<String, i64>> {
    let mut pos = BTreeMap::new();
    for (k, leaf) in order.as_slice().iter().enumerate() {
        if !gm.leaf_paths.contains_key(leaf) {
            return Err(Error::NotAPermutation(format!("`{leaf}` is not a leaf")));
        }
        if pos.insert(leaf.clone(), k as i64 + 1).is_some() {
            return Err(Error::NotAPermutation(format!("`{leaf}` appears twice")));
        }
    }
    if let Some(missing) = gm.leaf_paths.keys().find(|l| !pos.contains_key(*l)) {
        return Err(Error::NotAPermutation(format!("`{missing}` is missing")));
    }
    Ok(pos)
}

fn pt(x: Rational, y: Rational) -> Point {
    Point::new(x, y)
}

/// Frame width. A single leaf would make some frame points coincide, so the
/// frame never gets narrower than two leaves.
fn frame_width(leaves: usize) -> i64 {
    leaves.max(2) as i64
}

/// Coordinates of every non-flat object, keyed by its original name.
fn nonflat_points(gm: &GadgetMap, pos: &BTreeMap<String, i64>) -> Coords {
    let l = frame_width(pos.len());
    let mut out = Coords::new();
    let mut put = |name: &str, x: Rational, y: Rational| {
        out.insert(name.to_string(), pt(x, y));
    };
    put("u1", int(-1), int(l + 1));
    put("u2", int(l + 2), int(l + 1));
    put("u3", int(l + 2), int(0));
    put("u4", int(l + 2), int(-l - 1));
    put("u5", int(-1), int(-l - 1));
    put("u6", int(-1), int(0));
    put("u7", int(0), int(l));
    put(U_B, rat(l, 2), int(l));
    put("u8", int(l + 1), int(l));
    put(U2_ALPHA, int(l + 1), int(1));
    put(U2_RHO, int(l + 1), int(0));
    put(U2_BETA, int(l + 1), int(-1));
    put("u9", int(l + 1), int(-l));
    put(U_R, rat(l, 2), int(-l));
    put("u10", int(0), int(-l));
    put(U1_BETA, int(0), int(-1));
    put(U1_RHO, int(0), int(0));
    put(U1_ALPHA, int(0), int(1));
    for (leaf, p) in &gm.leaf_paths {
        let x = pos[leaf];
        put(&p.alpha, int(x), int(1));
        put(&p.middle, int(x), int(0));
        put(&p.beta, int(x), int(-1));
    }
    for e in &gm.edge_paths {
        let (x, y) = (pos[&e.ends.0], pos[&e.ends.1]);
        let mx = rat(x + y, 2);
        let d = (x - y).abs();
        let my = match e.page {
            Page::Two => rat(2 * d + 1, 2),
            Page::One => rat(-2 * d - 1, 2),
        };
        put(&e.middle, mx, my);
    }
    out
}

fn ensure_variant(gm: &GadgetMap, want: Variant) -> Result<()> {
    if gm.variant != want {
        return Err(Error::GadgetMismatch(format!(
            "gadget map is {:?}, expected {:?}",
            gm.variant, want
        )));
    }
    Ok(())
}

fn restrict(all: &Coords, c: &ClusteredGraph) -> Result<Coords> {
    c.graph
        .names()
        .iter()
        .map(|v| {
            all.get(v)
                .map(|p| (v.clone(), p.clone()))
                .ok_or_else(|| Error::GadgetMismatch(format!("no position for vertex `{v}`")))
        })
        .collect()
}

/// Places the non-flat reduction for a witness order: the frame on two
/// nested boxes, leaf `i` on the vertical `x = phi(i)`, and edge-path middles
/// above (page two) or below (page one) the midpoint of their leaves.
pub fn place_vertices_nonflat(
    c: &ClusteredGraph,
    gm: &GadgetMap,
    order: &LeafOrder,
) -> Result<Coords> {
    ensure_variant(gm, Variant::NonFlat)?;
    let pos = check_order(gm, order)?;
    restrict(&nonflat_points(gm, &pos), c)
}

/// Places the flat reduction and verifies the result.
///
/// Starting from the non-flat coordinates: the alpha cluster becomes the row
/// `y = 1/2`, marker rows sit below the leaf row one `marker_step` apart
/// (deepest tree cluster nearest), the beta cluster row comes next and
/// everything at `y <= -1` moves down to make room. Split copies sit at
/// L∞ distance `epsilon` from their original towards their neighbour.
pub fn place_vertices_flat(
    c: &ClusteredGraph,
    gm: &GadgetMap,
    order: &LeafOrder,
) -> Result<CPlanarDrawing> {
    place_vertices_flat_with(c, gm, order, &FlatConstants::default())
}

pub fn place_vertices_flat_with(
    c: &ClusteredGraph,
    gm: &GadgetMap,
    order: &LeafOrder,
    k: &FlatConstants,
) -> Result<CPlanarDrawing> {
    ensure_variant(gm, Variant::Flat)?;
    let pos = check_order(gm, order)?;
    let l = frame_width(pos.len());
    let depth = gm
        .leaf_paths
        .values()
        .map(|p| p.markers.len())
        .max()
        .unwrap_or(0) as i64;
    let step = &k.marker_step;
    let y_beta = -(step * int(depth + 2));
    let shift = &y_beta + rat(1, 2);
    let half = rat(1, 2);

    let mut base: Coords = nonflat_points(gm, &pos);
    for p in base.values_mut() {
        if p.y <= int(-1) {
            p.y += &shift;
        }
    }
    let mut fixed = Coords::new();
    let mut put = |name: &str, x: Rational, y: &Rational| {
        fixed.insert(name.to_string(), pt(x, y.clone()));
    };
    put(U1_BETA, int(0), &y_beta);
    put(U2_BETA, int(l + 1), &y_beta);
    put(U1_ALPHA, int(0), &half);
    put(U2_ALPHA, int(l + 1), &half);
    let rho_y = rat(-1, 16);
    put(&format!("z_rho:{U1_RHO}"), rat(1, 2), &rho_y);
    put(&format!("z_rho:{U2_RHO}"), rat(2 * l + 1, 2), &rho_y);
    for (leaf, p) in &gm.leaf_paths {
        let x = pos[leaf];
        if !gm.is_split(&p.alpha) {
            put(&p.alpha, int(x), &half);
        }
        if !gm.is_split(&p.beta) {
            put(&p.beta, int(x), &y_beta);
        }
        if let Some(z) = &p.z_alpha {
            put(z, int(x), &half);
        }
        if let Some(z) = &p.z_beta {
            put(z, int(x), &y_beta);
        }
        // Marker of the tree cluster at depth d (1 = topmost) sits at row
        // depth - d + 1; this leaf's markers run from depth len down to 1.
        let n = p.markers.len() as i64;
        for (i, m) in p.markers.iter().enumerate() {
            let d = n - i as i64;
            put(m, int(x), &-(step * int(depth - d + 1)));
        }
    }
    for (v, p) in &base {
        if !fixed.contains_key(v) {
            fixed.insert(v.clone(), p.clone());
        }
    }

    let copy_of: BTreeMap<&str, &str> = gm
        .split_copies
        .iter()
        .flat_map(|(orig, copies)| copies.iter().map(move |c| (c.as_str(), orig.as_str())))
        .collect();
    let adj = c.graph.adjacency();
    let mut coords = Coords::new();
    for (v, name) in c.graph.names().iter().enumerate() {
        let p = match copy_of.get(name.as_str()) {
            Some(orig) => {
                let [n] = adj[v].as_slice() else {
                    return Err(Error::GadgetMismatch(format!(
                        "copy `{name}` is not a path end"
                    )));
                };
                let nn = c.graph.name(*n);
                let target_name = copy_of.get(nn).copied().unwrap_or(nn);
                let target = fixed.get(target_name);
                let from = fixed.get(*orig);
                match (from, target) {
                    (Some(f), Some(t)) => f.step_towards(t, &k.epsilon),
                    _ => {
                        return Err(Error::GadgetMismatch(format!(
                            "no position for copy `{name}`"
                        )))
                    }
                }
            }
            None => fixed
                .get(name)
                .cloned()
                .ok_or_else(|| Error::GadgetMismatch(format!("no position for vertex `{name}`")))?,
        };
        coords.insert(name.clone(), p);
    }
    let regions = compute_regions(&coords, c);
    let cpd = CPlanarDrawing::new(coords, regions);
    let planar = verify_planarity(&cpd.coords, &c.graph);
    if let Some(v) = planar.first() {
        return Err(Error::PlacementFailed(format!(
            "{v:?} ({} violations)",
            planar.len()
        )));
    }
    let cp = verify_cplanarity(&cpd, c);
    if let Some(v) = cp.first() {
        return Err(Error::PlacementFailed(format!(
            "{v:?} ({} violations)",
            cp.len()
        )));
    }
    Ok(cpd)
}
