//! JSON file formats for instances and clustered graphs.
//!
//! Instance:
//! `{"tree": {"root": "r", "nodes": [{"id": "a", "parent": "r"}, ...]},
//!   "pages": {"E1": [["a", "c"]], "E2": [...]}}`
//!
//! Clustered graph:
//! `{"graph": {"vertices": [...], "edges": [["u", "v"], ...]}, "hierarchy": <tree>}`

use serde::{Deserialize, Serialize};

use crate::clustered::ClusteredGraph;
use crate::error::Result;
use crate::graph::{Graph, RootedTree};
use crate::instance::{LeafOrder, PtbeInstance};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeJson {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parent: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub root: String,
    pub nodes: Vec<NodeJson>,
}

impl TreeJson {
    pub fn from_tree(tree: &RootedTree) -> Self {
        TreeJson {
            root: tree.name(tree.root()).to_string(),
            nodes: tree
                .records()
                .into_iter()
                .map(|(id, parent)| NodeJson { id, parent })
                .collect(),
        }
    }

    pub fn to_tree(&self) -> Result<RootedTree> {
        let recs: Vec<(String, Option<String>)> = self
            .nodes
            .iter()
            .map(|n| (n.id.clone(), n.parent.clone()))
            .collect();
        RootedTree::from_parents(&self.root, &recs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PagesJson {
    #[serde(rename = "E1", default)]
    pub e1: Vec<[String; 2]>,
    #[serde(rename = "E2", default)]
    pub e2: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceJson {
    pub tree: TreeJson,
    pub pages: PagesJson,
}

impl InstanceJson {
    pub fn from_instance(inst: &PtbeInstance) -> Self {
        let conv = |p: &[(String, String)]| p.iter().map(|(a, b)| [a.clone(), b.clone()]).collect();
        InstanceJson {
            tree: TreeJson::from_tree(&inst.tree),
            pages: PagesJson {
                e1: conv(&inst.page1),
                e2: conv(&inst.page2),
            },
        }
    }

    /// Builds the instance. Tree defects are errors; page defects are left
    /// for [`crate::instance::validate_ptbe`] to report.
    pub fn to_instance(&self) -> Result<PtbeInstance> {
        let conv = |p: &[[String; 2]]| p.iter().map(|[a, b]| (a.clone(), b.clone())).collect();
        Ok(PtbeInstance::new(
            self.tree.to_tree()?,
            conv(&self.pages.e1),
            conv(&self.pages.e2),
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

impl GraphJson {
    pub fn from_graph(g: &Graph) -> Self {
        GraphJson {
            vertices: g.names().to_vec(),
            edges: g
                .edge_names()
                .map(|(a, b)| [a.to_string(), b.to_string()])
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        let edges: Vec<(&str, &str)> = self
            .edges
            .iter()
            .map(|[a, b]| (a.as_str(), b.as_str()))
            .collect();
        Graph::new(&self.vertices, &edges)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusteredJson {
    pub graph: GraphJson,
    pub hierarchy: TreeJson,
}

impl ClusteredJson {
    pub fn from_clustered(c: &ClusteredGraph) -> Self {
        ClusteredJson {
            graph: GraphJson::from_graph(&c.graph),
            hierarchy: TreeJson::from_tree(&c.hierarchy),
        }
    }

    pub fn to_clustered(&self) -> Result<ClusteredGraph> {
        Ok(ClusteredGraph::new(
            self.graph.to_graph()?,
            self.hierarchy.to_tree()?,
        ))
    }
}

/// Order files: `{"order": [...]}`; a bare array is accepted on input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderJson {
    pub order: LeafOrder,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OrderInput {
    Wrapped(OrderJson),
    Bare(LeafOrder),
}

pub fn parse_order(text: &str) -> Result<LeafOrder> {
    Ok(match serde_json::from_str::<OrderInput>(text)? {
        OrderInput::Wrapped(o) => o.order,
        OrderInput::Bare(o) => o,
    })
}

pub fn parse_instance(text: &str) -> Result<PtbeInstance> {
    serde_json::from_str::<InstanceJson>(text)?.to_instance()
}

pub fn instance_to_json(inst: &PtbeInstance) -> String {
    to_pretty(&InstanceJson::from_instance(inst))
}

pub fn parse_clustered(text: &str) -> Result<ClusteredGraph> {
    serde_json::from_str::<ClusteredJson>(text)?.to_clustered()
}

pub fn clustered_to_json(c: &ClusteredGraph) -> String {
    to_pretty(&ClusteredJson::from_clustered(c))
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::example_instance;

    #[test]
    fn instance_json_roundtrip() {
        let inst = example_instance();
        let text = instance_to_json(&inst);
        assert!(text.contains("\"E1\""));
        assert_eq!(parse_instance(&text).unwrap(), inst);
    }

    #[test]
    fn parses_schema_sample() {
        let text = r#"{"tree": {"root": "r", "nodes": [{"id": "r"}, {"id": "a", "parent": "r"},
            {"id": "b", "parent": "r"}]}, "pages": {"E1": [["a", "b"]], "E2": []}}"#;
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.leaf_count(), 2);
        assert_eq!(inst.page1.len(), 1);
    }

    #[test]
    fn multi_edges_rejected_at_parse() {
        let text = r#"{"graph": {"vertices": ["a", "b"], "edges": [["a","b"],["b","a"]]},
            "hierarchy": {"root": "x", "nodes": [{"id": "x"}, {"id": "a", "parent": "x"}, {"id": "b", "parent": "x"}]}}"#;
        assert!(parse_clustered(text).is_err());
    }

    #[test]
    fn order_formats() {
        assert_eq!(
            parse_order(r#"["a","b"]"#).unwrap(),
            LeafOrder::new(["a", "b"])
        );
        assert_eq!(
            parse_order(r#"{"order": ["b","a"]}"#).unwrap(),
            LeafOrder::new(["b", "a"])
        );
    }
}
