//! Partitioned T-coherent 2-page book-embedding instances, their SEFE
//! counterparts, and leaf orders.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, RootedTree};

/// One of the two pages. Page one is drawn red, page two blue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Page {
    One,
    Two,
}

impl fmt::Display for Page {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Page::One => f.write_str("E1"),
            Page::Two => f.write_str("E2"),
        }
    }
}

pub type LeafPair = (String, String);

/// Orders a pair so the lexicographically smaller name comes first.
pub fn normalize_pair(a: &str, b: &str) -> LeafPair {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// A single broken instance constraint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    UnknownEndpoint {
        page: Page,
        edge: LeafPair,
        endpoint: String,
    },
    EndpointNotLeaf {
        page: Page,
        edge: LeafPair,
        endpoint: String,
    },
    SelfLoop {
        page: Page,
        edge: LeafPair,
    },
    DuplicateEdge {
        page: Page,
        edge: LeafPair,
    },
    PagesNotDisjoint {
        edge: LeafPair,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownEndpoint {
                page,
                edge,
                endpoint,
            } => write!(
                f,
                "unknown endpoint `{endpoint}` in {page} edge ({}, {})",
                edge.0, edge.1
            ),
            Violation::EndpointNotLeaf {
                page,
                edge,
                endpoint,
            } => write!(
                f,
                "endpoint not a leaf: `{endpoint}` in {page} edge ({}, {})",
                edge.0, edge.1
            ),
            Violation::SelfLoop { page, edge } => {
                write!(f, "self-loop in {page}: ({}, {})", edge.0, edge.1)
            }
            Violation::DuplicateEdge { page, edge } => {
                write!(f, "duplicate edge in {page}: ({}, {})", edge.0, edge.1)
            }
            Violation::PagesNotDisjoint { edge } => {
                write!(f, "pages not disjoint: ({}, {})", edge.0, edge.1)
            }
        }
    }
}

/// Result of validating an instance; violations are data, not failures.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A rooted tree plus two page edge sets over its leaves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PtbeInstance {
    pub tree: RootedTree,
    pub page1: Vec<LeafPair>,
    pub page2: Vec<LeafPair>,
}

impl PtbeInstance {
    pub fn new(tree: RootedTree, page1: Vec<LeafPair>, page2: Vec<LeafPair>) -> Self {
        PtbeInstance { tree, page1, page2 }
    }

    pub fn page(&self, page: Page) -> &[LeafPair] {
        match page {
            Page::One => &self.page1,
            Page::Two => &self.page2,
        }
    }

    pub fn validate(&self) -> ValidationReport {
        validate_ptbe(self)
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_ok() {
            Ok(())
        } else {
            Err(Error::InvalidInstance(report.violations))
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.tree.leaf_count()
    }

    /// Page edges as tree node indices. Only meaningful on a valid instance.
    pub fn page_ids(&self, page: Page) -> Vec<(usize, usize)> {
        self.page(page)
            .iter()
            .map(|(a, b)| {
                (
                    self.tree.id(a).expect("validated endpoint"),
                    self.tree.id(b).expect("validated endpoint"),
                )
            })
            .collect()
    }

    /// Same instance with each pair normalized and both pages sorted.
    pub fn canonical(&self) -> PtbeInstance {
        let norm = |p: &[LeafPair]| {
            let set: BTreeSet<LeafPair> = p.iter().map(|(a, b)| normalize_pair(a, b)).collect();
            set.into_iter().collect()
        };
        PtbeInstance {
            tree: self.tree.clone(),
            page1: norm(&self.page1),
            page2: norm(&self.page2),
        }
    }
}

/// Checks every instance invariant and reports each offending object.
pub fn validate_ptbe(instance: &PtbeInstance) -> ValidationReport {
    let tree = &instance.tree;
    let mut violations = Vec::new();
    let mut seen: [HashSet<LeafPair>; 2] = [HashSet::new(), HashSet::new()];
    for (slot, page) in [Page::One, Page::Two].into_iter().enumerate() {
        for (a, b) in instance.page(page) {
            let edge = (a.clone(), b.clone());
            for end in [a, b] {
                match tree.id(end) {
                    None => violations.push(Violation::UnknownEndpoint {
                        page,
                        edge: edge.clone(),
                        endpoint: end.clone(),
                    }),
                    Some(v) if !tree.is_leaf(v) => violations.push(Violation::EndpointNotLeaf {
                        page,
                        edge: edge.clone(),
                        endpoint: end.clone(),
                    }),
                    Some(_) => {}
                }
            }
            if a == b {
                violations.push(Violation::SelfLoop {
                    page,
                    edge: edge.clone(),
                });
                continue;
            }
            if !seen[slot].insert(normalize_pair(a, b)) {
                violations.push(Violation::DuplicateEdge { page, edge });
            }
        }
    }
    let mut shared: Vec<&LeafPair> = seen[0].intersection(&seen[1]).collect();
    shared.sort();
    for edge in shared {
        violations.push(Violation::PagesNotDisjoint { edge: edge.clone() });
    }
    ValidationReport { violations }
}

/// Two graphs on a common vertex set.
///
/// `root_hint` remembers the tree root when the instance came from a rooted
/// tree, so converting back recovers the same rooting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SefeInstance {
    pub graph1: Graph,
    pub graph2: Graph,
    pub root_hint: Option<String>,
}

impl SefeInstance {
    /// Edges present in both graphs, by name, each pair normalized.
    pub fn common_edges(&self) -> BTreeSet<LeafPair> {
        let second: BTreeSet<LeafPair> = self
            .graph2
            .edge_names()
            .map(|(a, b)| normalize_pair(a, b))
            .collect();
        self.graph1
            .edge_names()
            .map(|(a, b)| normalize_pair(a, b))
            .filter(|e| second.contains(e))
            .collect()
    }
}

/// `G_i = (V(T), E(T) ∪ E_i)` for both pages.
pub fn ptbe_to_sefe(instance: &PtbeInstance) -> Result<SefeInstance> {
    instance.ensure_valid()?;
    let tree = &instance.tree;
    let tree_edges: Vec<(&str, &str)> = tree
        .edges()
        .map(|(p, c)| (tree.name(p), tree.name(c)))
        .collect();
    let build = |page: &[LeafPair]| {
        let mut edges = tree_edges.clone();
        edges.extend(page.iter().map(|(a, b)| (a.as_str(), b.as_str())));
        Graph::new(tree.names(), &edges)
    };
    Ok(SefeInstance {
        graph1: build(&instance.page1)?,
        graph2: build(&instance.page2)?,
        root_hint: Some(tree.name(tree.root()).to_string()),
    })
}

/// Inverse of [`ptbe_to_sefe`] for instances whose common graph is a
/// spanning tree and whose exclusive edges join leaves of that tree.
pub fn sefe_to_ptbe(instance: &SefeInstance) -> Result<PtbeInstance> {
    let g1 = &instance.graph1;
    let g2 = &instance.graph2;
    if g1.names() != g2.names() {
        return Err(Error::NotTreeForm(
            "graphs do not share a vertex set".into(),
        ));
    }
    let n = g1.vertex_count();
    if n == 0 {
        return Err(Error::NotTreeForm("empty vertex set".into()));
    }
    let common = instance.common_edges();
    let common_graph = Graph::new(
        g1.names(),
        &common
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect::<Vec<_>>(),
    )?;
    if common.len() + 1 != n || common_graph.components().1 != 1 {
        return Err(Error::NotTreeForm(format!(
            "common graph has {} edges on {} vertices and is not a spanning tree",
            common.len(),
            n
        )));
    }
    let adj = common_graph.adjacency();
    let root = match &instance.root_hint {
        Some(r) => common_graph
            .id(r)
            .ok_or_else(|| Error::UnknownId(r.clone()))?,
        None => (0..n).find(|&v| adj[v].len() >= 2).unwrap_or(0),
    };
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(v);
                stack.push(w);
            }
        }
    }
    let records: Vec<(String, Option<String>)> = (0..n)
        .map(|v| {
            (
                common_graph.name(v).to_string(),
                parent[v].map(|p| common_graph.name(p).to_string()),
            )
        })
        .collect();
    let tree = RootedTree::from_parents(common_graph.name(root), &records)?;
    let exclusive = |g: &Graph| -> Result<Vec<LeafPair>> {
        let mut out = Vec::new();
        for (a, b) in g.edge_names() {
            let e = normalize_pair(a, b);
            if common.contains(&e) {
                continue;
            }
            for end in [a, b] {
                if !tree.is_leaf(tree.id(end).expect("shared vertex set")) {
                    return Err(Error::NotTreeForm(format!(
                        "exclusive edge ({a}, {b}) touches internal vertex `{end}`"
                    )));
                }
            }
            out.push(e);
        }
        Ok(out)
    };
    let page1 = exclusive(g1)?;
    let page2 = exclusive(g2)?;
    let out = PtbeInstance::new(tree, page1, page2);
    out.ensure_valid()?;
    Ok(out)
}

/// A linear order of leaves, by name.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LeafOrder(pub Vec<String>);

impl LeafOrder {
    pub fn new<S: Into<String>>(leaves: impl IntoIterator<Item = S>) -> Self {
        LeafOrder(leaves.into_iter().map(Into::into).collect())
    }

    pub fn as_slice(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> LeafOrder {
        LeafOrder(self.0.iter().rev().cloned().collect())
    }

    /// Zero-based position of each leaf.
    pub fn positions(&self) -> HashMap<&str, usize> {
        self.0
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect()
    }

    /// Checks that the order lists every leaf of `tree` exactly once.
    pub fn check_permutation(&self, tree: &RootedTree) -> Result<()> {
        let leaves: BTreeSet<&str> = tree.leaves().into_iter().map(|v| tree.name(v)).collect();
        let mut seen = BTreeSet::new();
        for s in &self.0 {
            if !leaves.contains(s.as_str()) {
                return Err(Error::NotAPermutation(format!("`{s}` is not a leaf")));
            }
            if !seen.insert(s.as_str()) {
                return Err(Error::NotAPermutation(format!("`{s}` appears twice")));
            }
        }
        if seen.len() != leaves.len() {
            let missing = leaves.difference(&seen).next().unwrap();
            return Err(Error::NotAPermutation(format!("`{missing}` is missing")));
        }
        Ok(())
    }
}
