//! Clustered graphs: an underlying graph plus a cluster hierarchy whose
//! leaves are exactly the graph's vertices.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::graph::{Graph, RootedTree};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusteredGraph {
    pub graph: Graph,
    pub hierarchy: RootedTree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "id", rename_all = "snake_case")]
pub enum ClusterViolation {
    /// A hierarchy leaf that is not a graph vertex.
    LeafNotVertex(String),
    /// A graph vertex that is not a hierarchy leaf.
    VertexNotLeaf(String),
}

impl fmt::Display for ClusterViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClusterViolation::LeafNotVertex(v) => {
                write!(f, "hierarchy leaf `{v}` is not a graph vertex")
            }
            ClusterViolation::VertexNotLeaf(v) => {
                write!(f, "graph vertex `{v}` is not a hierarchy leaf")
            }
        }
    }
}

impl ClusteredGraph {
    pub fn new(graph: Graph, hierarchy: RootedTree) -> Self {
        ClusteredGraph { graph, hierarchy }
    }

    pub fn validate(&self) -> Vec<ClusterViolation> {
        validate_clustered(self)
    }

    pub fn is_flat(&self) -> bool {
        is_flat(self)
    }

    /// Hierarchy node of graph vertex `v` (same name in both structures).
    pub fn hierarchy_node(&self, v: usize) -> Option<usize> {
        self.hierarchy.id(self.graph.name(v))
    }

    /// Internal hierarchy nodes other than the root.
    pub fn clusters(&self) -> Vec<usize> {
        let root = self.hierarchy.root();
        self.hierarchy
            .internal()
            .into_iter()
            .filter(|&c| c != root)
            .collect()
    }
}

pub fn validate_clustered(c: &ClusteredGraph) -> Vec<ClusterViolation> {
    let h = &c.hierarchy;
    let leaves: BTreeSet<&str> = h.leaves().into_iter().map(|v| h.name(v)).collect();
    let vertices: BTreeSet<&str> = c.graph.names().iter().map(String::as_str).collect();
    let mut out: Vec<ClusterViolation> = leaves
        .difference(&vertices)
        .map(|v| ClusterViolation::LeafNotVertex(v.to_string()))
        .collect();
    out.extend(
        vertices
            .difference(&leaves)
            .map(|v| ClusterViolation::VertexNotLeaf(v.to_string())),
    );
    out
}

/// True iff every hierarchy leaf's parent is a child of the root.
pub fn is_flat(c: &ClusteredGraph) -> bool {
    let h = &c.hierarchy;
    let root = h.root();
    h.leaves().into_iter().all(|v| {
        h.parent(v)
            .map(|p| h.parent(p) == Some(root))
            .unwrap_or(false)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::tree;

    fn graph(v: &[&str]) -> Graph {
        Graph::new(v, &[] as &[(&str, &str)]).unwrap()
    }

    #[test]
    fn height_two_is_flat() {
        let h = tree(
            "root",
            &[
                ("root", None),
                ("m1", Some("root")),
                ("m2", Some("root")),
                ("a", Some("m1")),
                ("b", Some("m2")),
            ],
        );
        let c = ClusteredGraph::new(graph(&["a", "b"]), h);
        assert!(c.validate().is_empty());
        assert!(c.is_flat());
    }

    #[test]
    fn nested_cluster_is_not_flat() {
        let h = tree(
            "root",
            &[
                ("root", None),
                ("m1", Some("root")),
                ("m2", Some("m1")),
                ("a", Some("m2")),
                ("b", Some("m1")),
            ],
        );
        let c = ClusteredGraph::new(graph(&["a", "b"]), h);
        assert!(!c.is_flat());
    }

    #[test]
    fn mismatched_leaf_set_is_reported() {
        let h = tree(
            "root",
            &[("root", None), ("m1", Some("root")), ("a", Some("m1"))],
        );
        let c = ClusteredGraph::new(graph(&["a", "b"]), h);
        assert_eq!(
            c.validate(),
            vec![ClusterViolation::VertexNotLeaf("b".into())]
        );
    }
}
