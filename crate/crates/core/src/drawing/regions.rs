use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::clustered::ClusteredGraph;
use crate::geometry::{rat, Point, Rational, Rect};

use super::Coords;

/// `1 / (4 (H + 2))` for a hierarchy of height `H`.
pub fn margin_unit(hierarchy_height: usize) -> Rational {
    rat(1, 4 * (hierarchy_height as i64 + 2))
}

/// One rectangle per non-root cluster: the bounding box of every vertex in
/// the cluster's subtree, grown by `(h + 1) * delta` where `h` counts the
/// cluster levels below it (0 when all children are vertices). Clusters
/// whose subtree has no placed vertex get no region.
pub fn compute_regions(coords: &Coords, c: &ClusteredGraph) -> BTreeMap<String, Rect> {
    let h = &c.hierarchy;
    let delta = margin_unit(h.height());
    let heights = h.node_heights();
    let mut out = BTreeMap::new();
    for cluster in c.clusters() {
        let pts: Vec<&Point> = h
            .leaves_under(cluster)
            .into_iter()
            .filter_map(|v| coords.get(h.name(v)))
            .collect();
        let level = heights[cluster].saturating_sub(1) as i64 + 1;
        let margin = &delta * Rational::from_integer(BigInt::from(level));
        if let Some(r) = Rect::around(pts, &margin) {
            out.insert(h.name(cluster).to_string(), r);
        }
    }
    out
}
