//! Reductions from a PTBE instance to clustered planarity.
//!
//! [`reduce_nonflat`] builds a frame of two nested cycles, one leaf-path per
//! tree leaf, one edge-path per page edge, and clusters mirroring the tree.
//! [`reduce_flat`] rewrites that output into a flat hierarchy over a set of
//! paths. Both return a [`GadgetMap`] recording where every object came from.

mod check;
mod dot;
mod draft;
mod flat;
mod gadget;
mod nonflat;

pub use check::{check_marker_law, structural_check, Check, StructuralReport};
pub use dot::{graph_dot, hierarchy_dot};
pub use flat::{reduce_flat, wrap_name};
pub use gadget::{EdgePath, GadgetMap, LeafPath, SourceStats, Variant};
pub use nonflat::{
    alpha_name, beta_name, edge_middle_name, frame_cycles, middle_name, nu_name, reduce_nonflat,
    CONNECTORS, LAMBDA, MU_ALPHA, MU_B, MU_BETA, MU_R, MU_RHO, U1_ALPHA, U1_BETA, U1_RHO, U2_ALPHA,
    U2_BETA, U2_RHO, U_B, U_R,
};

use crate::clustered::ClusteredGraph;
use crate::error::Result;
use crate::graph::RootedTree;
use crate::instance::PtbeInstance;

/// Removes a root with a single child until the root branches or the tree
/// is a single node. Pages are untouched.
pub fn normalize_root(instance: &PtbeInstance) -> PtbeInstance {
    let mut tree = instance.tree.clone();
    while let [only] = tree.children(tree.root()) {
        let new_root = tree.name(*only).to_string();
        let old_root = tree.root();
        let recs: Vec<(String, Option<String>)> = tree
            .records()
            .into_iter()
            .filter(|(n, _)| n != tree.name(old_root))
            .map(|(n, p)| if n == new_root { (n, None) } else { (n, p) })
            .collect();
        tree = RootedTree::from_parents(&new_root, &recs).expect("subtree of a valid tree");
    }
    PtbeInstance::new(tree, instance.page1.clone(), instance.page2.clone())
}

pub fn reduce(instance: &PtbeInstance, variant: Variant) -> Result<(ClusteredGraph, GadgetMap)> {
    match variant {
        Variant::NonFlat => reduce_nonflat(instance),
        Variant::Flat => reduce_flat(instance),
    }
}
