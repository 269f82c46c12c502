//! Reduction from SEFE of two graphs whose common graph is a tree (in its
//! partitioned T-coherent 2-page book-embedding form) to clustered planarity.
//!
//! The crate covers both directions of the equivalence: [`reduction`] builds
//! the non-flat and flat clustered graphs, [`drawing`] turns a witness order
//! into an explicit c-planar straight-line drawing and checks it with exact
//! arithmetic, and [`extraction`] recovers a witness order from such a
//! drawing. [`ptbe`] decides small instances exhaustively and [`oracle`] is a
//! brute-force c-planarity test for tiny flat clustered graphs.

pub mod clustered;
pub mod drawing;
pub mod error;
pub mod extraction;
pub mod generate;
pub mod geometry;
pub mod graph;
pub mod instance;
pub mod io;
pub mod oracle;
pub mod pipeline;
pub mod ptbe;
pub mod reduction;

#[cfg(test)]
pub(crate) mod fixtures;

pub use clustered::{is_flat, validate_clustered, ClusterViolation, ClusteredGraph};
pub use drawing::{
    compute_regions, place_vertices_flat, place_vertices_nonflat, svg_render, verify_cplanarity,
    verify_planarity, CPlanarDrawing, CPlanarityViolation, Coords, PlanarityViolation,
};
pub use error::{Error, Result};
pub use extraction::{certify, extract_order, sefe_drawings, SefeCertificate, SefeDrawings};
pub use generate::{random_instance, Shape};
pub use geometry::{Point, Rational, Rect};
pub use graph::{Graph, RootedTree};
pub use instance::{
    ptbe_to_sefe, sefe_to_ptbe, validate_ptbe, LeafOrder, LeafPair, Page, PtbeInstance,
    SefeInstance, ValidationReport, Violation,
};
pub use oracle::{cplanar_bruteforce, Verdict, Witness};
pub use pipeline::{roundtrip, Roundtrip, RoundtripReport};
pub use ptbe::{is_representable, is_witness, solve, SolveOptions, SolveOutcome, Strategy};
pub use reduction::{reduce, reduce_flat, reduce_nonflat, structural_check, GadgetMap, Variant};
