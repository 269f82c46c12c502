use std::collections::{BTreeMap, BTreeSet};

use crate::clustered::ClusteredGraph;
use crate::error::Result;
use crate::instance::PtbeInstance;

use super::draft::Draft;
use super::gadget::{copy_name, GadgetMap, Variant};
use super::nonflat::{self, LAMBDA, MU_ALPHA, MU_BETA, MU_RHO, U1_BETA, U1_RHO, U2_BETA, U2_RHO};

pub fn wrap_name(v: &str) -> String {
    format!("mu:{v}")
}

/// Builds the flat clustered graph whose underlying graph is a set of paths.
pub fn reduce_flat(instance: &PtbeInstance) -> Result<(ClusteredGraph, GadgetMap)> {
    let (draft, gm) = build(instance)?;
    Ok((draft.finish()?, gm))
}

pub(crate) fn build(instance: &PtbeInstance) -> Result<(Draft, GadgetMap)> {
    let (mut d, mut gm) = nonflat::build(instance)?;
    gm.variant = Variant::Flat;

    // Singleton wraps around the rho frame vertices and busy path ends.
    let mut wrapped: Vec<String> = vec![U1_RHO.to_string(), U2_RHO.to_string()];
    for p in gm.leaf_paths.values() {
        for v in [&p.alpha, &p.beta] {
            if d.degree(v) >= 2 {
                wrapped.push(v.clone());
            }
        }
    }
    for v in &wrapped {
        let c = wrap_name(v);
        let parent = d.parent(v).to_string();
        d.add_cluster(&c, &parent);
        d.reparent(v, &c);
        gm.wrap_clusters.insert(v.clone(), c);
    }

    // Split the vertex of every cluster whose subtree holds a single vertex.
    // Tree clusters are left alone: splitting a leaf-path middle would cut
    // the path.
    let tree_clusters: BTreeSet<&String> = gm.cluster_of.values().collect();
    let mut targets = BTreeSet::new();
    for c in d.clusters() {
        if tree_clusters.contains(c) {
            continue;
        }
        let kids = d.children(c);
        if let [only] = kids.as_slice() {
            if !d.is_cluster(only) {
                targets.insert(only.clone());
            }
        }
    }
    gm.split_copies = d.split(&targets);

    // Subdividers that keep the alpha/beta clusters on every leaf-path.
    for (leaf, p) in gm.leaf_paths.iter_mut() {
        for (end, cluster, beta) in [(&p.alpha, MU_ALPHA, false), (&p.beta, MU_BETA, true)] {
            let Some(wrap) = gm.wrap_clusters.get(end) else {
                continue;
            };
            let live = copy_name(end, &p.middle);
            let z = if beta {
                format!("z_beta:{leaf}")
            } else {
                format!("z_alpha:{leaf}")
            };
            d.subdivide(&live, &p.middle, &z, cluster);
            d.reparent(wrap, LAMBDA);
            if beta {
                p.z_beta = Some(z);
            } else {
                p.z_alpha = Some(z);
            }
        }
    }

    for (rho, beta) in [(U1_RHO, U1_BETA), (U2_RHO, U2_BETA)] {
        let s = format!("z_rho:{rho}");
        d.subdivide(&copy_name(rho, beta), beta, &s, MU_RHO);
        d.reparent(&gm.wrap_clusters[rho], LAMBDA);
        gm.rho_subdividers.push(s);
    }

    // Replace nested tree clusters by root-level marker clusters, deepest
    // first. Each marker goes next to the leaf-path's beta-cluster member.
    let leaf_of: BTreeMap<String, String> = gm
        .leaf_paths
        .iter()
        .map(|(leaf, p)| (p.middle.clone(), leaf.clone()))
        .collect();
    let tree_of: BTreeMap<String, String> = gm
        .cluster_of
        .iter()
        .map(|(w, c)| (c.clone(), w.clone()))
        .collect();
    loop {
        let next = d
            .clusters()
            .filter(|c| tree_of.contains_key(*c))
            .filter(|c| d.children(c).iter().all(|k| !d.is_cluster(k)))
            .max_by(|a, b| d.depth(a).cmp(&d.depth(b)).then_with(|| b.cmp(a)))
            .cloned();
        let Some(c) = next else { break };
        let w = &tree_of[&c];
        let marker_cluster = format!("flat:{c}");
        d.add_cluster(&marker_cluster, LAMBDA);
        let up = d.parent(&c).to_string();
        for v in d.children(&c) {
            d.reparent(&v, &up);
            let leaf = &leaf_of[&v];
            let p = gm.leaf_paths.get_mut(leaf).expect("leaf-path");
            let end = p.z_beta.clone().unwrap_or_else(|| p.beta.clone());
            let inner = p
                .markers
                .last()
                .cloned()
                .unwrap_or_else(|| p.middle.clone());
            let m = format!("mark:{c}:{leaf}");
            d.subdivide(&inner, &end, &m, &marker_cluster);
            p.markers.push(m);
        }
        d.remove_cluster(&c);
        gm.cluster_of.remove(w);
        gm.marker_clusters.insert(w.clone(), marker_cluster);
    }
    Ok((d, gm))
}
