//! Simple undirected graphs and rooted trees over opaque string identifiers.
//!
//! Both types re-index their identifiers to dense integers sorted by name, so
//! iteration order is deterministic and independent of input order.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

/// A simple undirected graph. Vertex indices are dense and sorted by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    edges: BTreeSet<(usize, usize)>,
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn build_index<S: AsRef<str>>(names: &[S]) -> Result<(Vec<String>, HashMap<String, usize>)> {
    let mut sorted: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
    sorted.sort();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicateId(w[0].clone()));
        }
    }
    let index = sorted
        .iter()
        .enumerate()
        .map(|(i, n)| (n.clone(), i))
        .collect();
    Ok((sorted, index))
}

impl Graph {
    /// Builds a graph, rejecting duplicate vertices, self-loops, multi-edges
    /// and edges with undeclared endpoints.
    pub fn new<S: AsRef<str>, T: AsRef<str>>(vertices: &[S], edges: &[(T, T)]) -> Result<Self> {
        let (names, index) = build_index(vertices)?;
        let mut graph = Graph {
            names,
            index,
            edges: BTreeSet::new(),
        };
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let ia = graph.id(a).ok_or_else(|| Error::UnknownId(a.to_string()))?;
            let ib = graph.id(b).ok_or_else(|| Error::UnknownId(b.to_string()))?;
            if ia == ib {
                return Err(Error::SelfLoop(a.to_string()));
            }
            if !graph.edges.insert(ordered(ia, ib)) {
                return Err(Error::DuplicateEdge(a.to_string(), b.to_string()));
            }
        }
        Ok(graph)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn id(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Edges as index pairs `(a, b)` with `a < b`, in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_names(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.edges
            .iter()
            .map(move |&(a, b)| (self.names[a].as_str(), self.names[b].as_str()))
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&ordered(a, b))
    }

    pub fn has_edge_named(&self, a: &str, b: &str) -> bool {
        match (self.id(a), self.id(b)) {
            (Some(a), Some(b)) => self.has_edge(a, b),
            _ => false,
        }
    }

    /// Neighbour lists, each sorted ascending.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.names.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.names.len()];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    /// Component label per vertex plus the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let adj = self.adjacency();
        let mut label = vec![usize::MAX; self.names.len()];
        let mut count = 0;
        for s in 0..self.names.len() {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// Returns a copy without the given edge (by name). Used for mutation tests.
    pub fn without_edge(&self, a: &str, b: &str) -> Result<Graph> {
        let ia = self.id(a).ok_or_else(|| Error::UnknownId(a.to_string()))?;
        let ib = self.id(b).ok_or_else(|| Error::UnknownId(b.to_string()))?;
        let mut g = self.clone();
        if !g.edges.remove(&ordered(ia, ib)) {
            return Err(Error::UnknownId(format!("{a}--{b}")));
        }
        Ok(g)
    }
}

/// A rooted tree. Node indices are dense and sorted by name; children lists
/// are sorted ascending, which fixes the canonical enumeration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    names: Vec<String>,
    index: HashMap<String, usize>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    root: usize,
}

impl RootedTree {
    /// Builds a tree from `(node, parent)` records. Exactly one record must
    /// have no parent, and it must be `root`.
    pub fn from_parents<S: AsRef<str>>(root: &str, nodes: &[(S, Option<S>)]) -> Result<Self> {
        let ids: Vec<&str> = nodes.iter().map(|(n, _)| n.as_ref()).collect();
        let (names, index) = build_index(&ids)?;
        let n = names.len();
        let root_id = *index
            .get(root)
            .ok_or_else(|| Error::MalformedTree(format!("root `{root}` is not a declared node")))?;
        let mut parent = vec![None; n];
        for (node, par) in nodes {
            let v = index[node.as_ref()];
            match par {
                None => {
                    if v != root_id {
                        return Err(Error::MalformedTree(format!(
                            "node `{}` has no parent but is not the root",
                            node.as_ref()
                        )));
                    }
                }
                Some(p) => {
                    let p = p.as_ref();
                    let pid = *index
                        .get(p)
                        .ok_or_else(|| Error::UnknownId(p.to_string()))?;
                    if v == root_id {
                        return Err(Error::MalformedTree(format!("root `{root}` has a parent")));
                    }
                    if pid == v {
                        return Err(Error::MalformedTree(format!("`{p}` is its own parent")));
                    }
                    parent[v] = Some(pid);
                }
            }
        }
        let mut children = vec![Vec::new(); n];
        for v in 0..n {
            if let Some(p) = parent[v] {
                children[p].push(v);
            }
        }
        // Indices follow name order, so pushing in index order keeps lists sorted.
        let mut seen = vec![false; n];
        let mut stack = vec![root_id];
        seen[root_id] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &c in &children[v] {
                if !seen[c] {
                    seen[c] = true;
                    reached += 1;
                    stack.push(c);
                }
            }
        }
        if reached != n {
            let lost = (0..n).find(|&v| !seen[v]).unwrap();
            return Err(Error::MalformedTree(format!(
                "node `{}` is not reachable from the root",
                names[lost]
            )));
        }
        Ok(RootedTree {
            names,
            index,
            parent,
            children,
            root: root_id,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn id(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.children[v].is_empty()
    }

    /// Leaves in ascending identifier order.
    pub fn leaves(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.is_leaf(v)).collect()
    }

    pub fn internal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| !self.is_leaf(v)).collect()
    }

    pub fn leaf_count(&self) -> usize {
        (0..self.len()).filter(|&v| self.is_leaf(v)).count()
    }

    /// Nodes in preorder (children visited in ascending order).
    pub fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.children[v].iter().rev());
        }
        out
    }

    /// Nodes in postorder (children before parents).
    pub fn postorder(&self) -> Vec<usize> {
        let mut out = self.preorder();
        out.reverse();
        out
    }

    pub fn depth(&self, mut v: usize) -> usize {
        let mut d = 0;
        while let Some(p) = self.parent[v] {
            d += 1;
            v = p;
        }
        d
    }

    /// Number of edges on the longest root-to-leaf path.
    pub fn height(&self) -> usize {
        (0..self.len())
            .filter(|&v| self.is_leaf(v))
            .map(|v| self.depth(v))
            .max()
            .unwrap_or(0)
    }

    /// Height of each node: 0 for leaves, 1 + max over children otherwise.
    pub fn node_heights(&self) -> Vec<usize> {
        let mut h = vec![0; self.len()];
        for v in self.postorder() {
            h[v] = self.children[v]
                .iter()
                .map(|&c| h[c] + 1)
                .max()
                .unwrap_or(0);
        }
        h
    }

    /// Leaves below `v` (inclusive when `v` is itself a leaf), in preorder.
    pub fn leaves_under(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            if self.is_leaf(x) {
                out.push(x);
            } else {
                stack.extend(self.children[x].iter().rev());
            }
        }
        out
    }

    /// True when `anc` is a proper ancestor of `v`.
    pub fn is_proper_ancestor(&self, anc: usize, mut v: usize) -> bool {
        while let Some(p) = self.parent[v] {
            if p == anc {
                return true;
            }
            v = p;
        }
        false
    }

    /// Parent-child pairs as node indices.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).filter_map(move |v| self.parent[v].map(|p| (p, v)))
    }

    /// `(node, parent)` records by name, sorted by node name.
    pub fn records(&self) -> Vec<(String, Option<String>)> {
        (0..self.len())
            .map(|v| {
                (
                    self.names[v].clone(),
                    self.parent[v].map(|p| self.names[p].clone()),
                )
            })
            .collect()
    }
}
