//! Provenance of every vertex and cluster produced by the reductions.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::clustered::ClusteredGraph;
use crate::instance::{LeafPair, Page};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    NonFlat,
    Flat,
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "nonflat" | "non-flat" => Ok(Variant::NonFlat),
            "flat" => Ok(Variant::Flat),
            other => Err(format!(
                "unknown variant `{other}` (expected nonflat or flat)"
            )),
        }
    }
}

/// The three vertices standing for one tree leaf, plus what flattening adds.
///
/// `alpha` and `beta` keep their original names even when flattening split
/// them; use [`GadgetMap::leaf_chain`] for the live vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafPath {
    pub alpha: String,
    pub middle: String,
    pub beta: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z_alpha: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z_beta: Option<String>,
    /// Flattening markers in path order from `middle` towards `beta`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub markers: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgePath {
    pub page: Page,
    pub ends: LeafPair,
    pub middle: String,
}

/// Size of the (root-normalized) source instance.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceStats {
    pub leaves: usize,
    pub page1: usize,
    pub page2: usize,
    pub internal: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetMap {
    pub variant: Variant,
    pub tree_root: String,
    /// Role name to vertex id for the frame graph (both are the same string).
    pub fixed_vertices: BTreeMap<String, String>,
    pub leaf_paths: BTreeMap<String, LeafPath>,
    pub edge_paths: Vec<EdgePath>,
    /// Internal tree vertex to its cluster. Emptied by flattening.
    pub cluster_of: BTreeMap<String, String>,
    /// Role name to cluster id, including the root `lambda`.
    pub special_clusters: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub split_copies: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub wrap_clusters: BTreeMap<String, String>,
    /// Internal tree vertex to the root-level cluster holding its markers.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub marker_clusters: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rho_subdividers: Vec<String>,
    pub source: SourceStats,
}

pub(crate) fn copy_name(orig: &str, neighbor: &str) -> String {
    format!("copy:{orig}:{neighbor}")
}

impl GadgetMap {
    pub fn is_split(&self, v: &str) -> bool {
        self.split_copies.contains_key(v)
    }

    /// The live vertex standing for `v` on its edge towards `toward`.
    pub fn live(&self, v: &str, toward: &str) -> String {
        if self.is_split(v) {
            copy_name(v, toward)
        } else {
            v.to_string()
        }
    }

    /// Live leaf-path vertices from the alpha-cluster member to the
    /// beta-cluster member.
    pub fn leaf_chain(&self, leaf: &str) -> Option<Vec<String>> {
        let p = self.leaf_paths.get(leaf)?;
        let mut out = Vec::with_capacity(4 + p.markers.len());
        out.push(match &p.z_alpha {
            Some(z) => z.clone(),
            None => p.alpha.clone(),
        });
        out.push(p.middle.clone());
        out.extend(p.markers.iter().cloned());
        out.push(match &p.z_beta {
            Some(z) => z.clone(),
            None => p.beta.clone(),
        });
        Some(out)
    }

    /// Every live vertex and cluster paired with the entry that created it.
    pub fn provenance(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (role, id) in &self.fixed_vertices {
            if !self.is_split(id) {
                out.push((id.clone(), format!("fixed {role}")));
            }
        }
        for (leaf, p) in &self.leaf_paths {
            for (v, what) in [(&p.alpha, "alpha"), (&p.beta, "beta")] {
                if !self.is_split(v) {
                    out.push((v.clone(), format!("leaf {leaf} {what}")));
                }
            }
            out.push((p.middle.clone(), format!("leaf {leaf} middle")));
            for z in p.z_alpha.iter().chain(&p.z_beta) {
                out.push((z.clone(), format!("leaf {leaf} subdivider")));
            }
            for m in &p.markers {
                out.push((m.clone(), format!("leaf {leaf} marker")));
            }
        }
        for e in &self.edge_paths {
            out.push((
                e.middle.clone(),
                format!("edge {} {}-{}", e.page, e.ends.0, e.ends.1),
            ));
        }
        for (orig, copies) in &self.split_copies {
            for c in copies {
                out.push((c.clone(), format!("copy of {orig}")));
            }
        }
        for s in &self.rho_subdividers {
            out.push((s.clone(), "rho subdivider".to_string()));
        }
        for (role, id) in &self.special_clusters {
            out.push((id.clone(), format!("cluster {role}")));
        }
        for (w, id) in &self.cluster_of {
            out.push((id.clone(), format!("tree cluster {w}")));
        }
        for (v, id) in &self.wrap_clusters {
            out.push((id.clone(), format!("wrap of {v}")));
        }
        for (w, id) in &self.marker_clusters {
            out.push((id.clone(), format!("markers of {w}")));
        }
        out
    }

    /// Problems with the provenance of `c`: objects claimed zero or several
    /// times, and entries naming objects that do not exist.
    pub fn totality_errors(&self, c: &ClusteredGraph) -> Vec<String> {
        let h = &c.hierarchy;
        let mut objects: BTreeSet<String> = c.graph.names().iter().cloned().collect();
        objects.extend(h.internal().into_iter().map(|v| h.name(v).to_string()));
        let mut claims: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for (id, entry) in self.provenance() {
            claims.entry(id).or_default().push(entry);
        }
        let mut errors = Vec::new();
        for obj in &objects {
            match claims.get(obj).map(Vec::len).unwrap_or(0) {
                1 => {}
                0 => errors.push(format!("`{obj}` has no provenance")),
                _ => errors.push(format!("`{obj}` claimed by {:?}", claims[obj])),
            }
        }
        for id in claims.keys() {
            if !objects.contains(id) {
                errors.push(format!("provenance names missing object `{id}`"));
            }
        }
        errors
    }
}
