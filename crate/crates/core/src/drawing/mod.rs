//! Straight-line drawings with rectangular cluster regions.
//!
//! [`place_vertices_nonflat`] and [`place_vertices_flat`] turn a witness
//! order into coordinates for the reduced graphs, [`compute_regions`] adds
//! nested rectangles, and [`verify_planarity`] / [`verify_cplanarity`] check
//! the result with exact integer predicates.

mod place;
mod regions;
mod svg;
mod verify;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::geometry::{Point, Rect};

pub use place::{
    place_vertices_flat, place_vertices_flat_with, place_vertices_nonflat, FlatConstants,
};
pub use regions::{compute_regions, margin_unit};
pub use svg::svg_render;
pub use verify::{verify_cplanarity, verify_planarity, CPlanarityViolation, PlanarityViolation};

pub type Coords = BTreeMap<String, Point>;

/// Vertex coordinates plus one rectangle per non-root cluster.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CPlanarDrawing {
    pub coords: Coords,
    #[serde(default)]
    pub regions: BTreeMap<String, Rect>,
}

impl CPlanarDrawing {
    pub fn new(coords: Coords, regions: BTreeMap<String, Rect>) -> Self {
        CPlanarDrawing { coords, regions }
    }

    /// Mirror image `x -> axis - x`; regions follow.
    pub fn mirrored(&self, axis: &crate::geometry::Rational) -> CPlanarDrawing {
        CPlanarDrawing {
            coords: self
                .coords
                .iter()
                .map(|(k, p)| (k.clone(), Point::new(axis - &p.x, p.y.clone())))
                .collect(),
            regions: self
                .regions
                .iter()
                .map(|(k, r)| (k.clone(), r.mirrored_x(axis)))
                .collect(),
        }
    }
}
