use std::collections::BTreeSet;

use serde::Serialize;

use crate::clustered::{is_flat, validate_clustered, ClusteredGraph};
use crate::instance::PtbeInstance;

use super::gadget::{GadgetMap, SourceStats, Variant};
use super::normalize_root;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralReport {
    pub variant: Variant,
    pub checks: Vec<Check>,
}

impl StructuralReport {
    pub fn is_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &'static str, ok: bool, detail: String) {
        self.checks.push(Check { name, ok, detail });
    }

    fn expect_eq(&mut self, name: &'static str, got: usize, want: usize) {
        self.push(name, got == want, format!("got {got}, expected {want}"));
    }
}

/// Expected non-flat sizes as `(vertices, edges, non-root clusters)`.
pub fn nonflat_counts(s: &SourceStats) -> (usize, usize, usize) {
    let p = s.page1 + s.page2;
    (
        18 + 3 * s.leaves + p,
        24 + 2 * s.leaves + 2 * p,
        15 + s.internal.saturating_sub(1),
    )
}

/// Checks the builder postconditions of the chosen variant. Count laws need
/// the source sizes; without a gadget map they are inferred from vertex
/// names and the cluster count is skipped.
pub fn structural_check(
    c: &ClusteredGraph,
    variant: Variant,
    gm: Option<&GadgetMap>,
) -> StructuralReport {
    let mut r = StructuralReport {
        variant,
        checks: Vec::new(),
    };
    let bad = validate_clustered(c);
    r.push(
        "hierarchy-leaves",
        bad.is_empty(),
        bad.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("; "),
    );
    let g = &c.graph;
    match variant {
        Variant::NonFlat => {
            let count = |prefix: &str| g.names().iter().filter(|n| n.starts_with(prefix)).count();
            let stats = gm.map(|m| m.source).unwrap_or(SourceStats {
                leaves: count("v:"),
                page1: count("eR:"),
                page2: count("eB:"),
                internal: 0,
            });
            let (nv, ne, nc) = nonflat_counts(&stats);
            r.expect_eq("vertex-count", g.vertex_count(), nv);
            r.expect_eq("edge-count", g.edge_count(), ne);
            if gm.is_some() {
                r.expect_eq("cluster-count", c.clusters().len(), nc);
            }
        }
        Variant::Flat => {
            r.push(
                "flat",
                is_flat(c),
                format!("hierarchy height {}", c.hierarchy.height()),
            );
            let max = g.degrees().into_iter().max().unwrap_or(0);
            r.push("max-degree", max <= 2, format!("maximum degree {max}"));
            let (_, comps) = g.components();
            let forest = comps + g.edge_count() == g.vertex_count();
            r.push(
                "acyclic",
                forest,
                format!(
                    "{comps} components, {} vertices, {} edges",
                    g.vertex_count(),
                    g.edge_count()
                ),
            );
        }
    }
    if let Some(m) = gm {
        let errs = m.totality_errors(c);
        r.push("gadget-totality", errs.is_empty(), errs.join("; "));
        let mut broken = Vec::new();
        for leaf in m.leaf_paths.keys() {
            let chain = m.leaf_chain(leaf).expect("known leaf");
            if chain.windows(2).any(|w| !g.has_edge_named(&w[0], &w[1])) {
                broken.push(leaf.clone());
            }
        }
        r.push("leaf-chains", broken.is_empty(), broken.join(", "));
    }
    r
}

/// Each leaf-path of a flat output must carry exactly one marker per tree
/// cluster that contained its middle vertex, each in that cluster's marker
/// cluster, deepest first.
pub fn check_marker_law(
    instance: &PtbeInstance,
    c: &ClusteredGraph,
    gm: &GadgetMap,
) -> Vec<String> {
    let inst = normalize_root(instance);
    let t = &inst.tree;
    let h = &c.hierarchy;
    let mut errors = Vec::new();
    let used: BTreeSet<&String> = gm.leaf_paths.values().flat_map(|p| &p.markers).collect();
    for v in t.leaves() {
        let leaf = t.name(v);
        let Some(p) = gm.leaf_paths.get(leaf) else {
            errors.push(format!("leaf `{leaf}` has no leaf-path"));
            continue;
        };
        let mut ancestors = Vec::new();
        let mut x = v;
        while let Some(par) = t.parent(x) {
            if par != t.root() {
                ancestors.push(t.name(par).to_string());
            }
            x = par;
        }
        if p.markers.len() != ancestors.len() {
            errors.push(format!(
                "leaf `{leaf}`: {} markers for {} ancestor clusters",
                p.markers.len(),
                ancestors.len()
            ));
            continue;
        }
        for (m, w) in p.markers.iter().zip(&ancestors) {
            let want = gm.marker_clusters.get(w);
            let got = h.id(m).and_then(|id| h.parent(id)).map(|pid| h.name(pid));
            if want.map(String::as_str) != got {
                errors.push(format!(
                    "marker `{m}` is not in the marker cluster of `{w}`"
                ));
            }
        }
    }
    let all_markers = c
        .graph
        .names()
        .iter()
        .filter(|n| n.starts_with("mark:"))
        .count();
    if all_markers != used.len() {
        errors.push(format!(
            "{all_markers} marker vertices, {} on leaf-paths",
            used.len()
        ));
    }
    errors
}
