//! Mutable clustered graph used while building reductions.

use std::collections::{BTreeMap, BTreeSet};

use crate::clustered::ClusteredGraph;
use crate::error::Result;
use crate::graph::{Graph, RootedTree};

use super::gadget::copy_name;

#[derive(Clone, Debug)]
pub(crate) struct Draft {
    root: String,
    adj: BTreeMap<String, BTreeSet<String>>,
    /// Hierarchy parent of every vertex and non-root cluster.
    parent: BTreeMap<String, String>,
    clusters: BTreeSet<String>,
}

impl Draft {
    pub fn new(root: &str) -> Self {
        Draft {
            root: root.to_string(),
            adj: BTreeMap::new(),
            parent: BTreeMap::new(),
            clusters: BTreeSet::new(),
        }
    }

    pub fn add_cluster(&mut self, id: &str, parent: &str) {
        self.clusters.insert(id.to_string());
        self.parent.insert(id.to_string(), parent.to_string());
    }

    pub fn add_vertex(&mut self, id: &str, cluster: &str) {
        self.adj.entry(id.to_string()).or_default();
        self.parent.insert(id.to_string(), cluster.to_string());
    }

    pub fn add_edge(&mut self, a: &str, b: &str) {
        self.adj
            .get_mut(a)
            .expect("endpoint declared")
            .insert(b.to_string());
        self.adj
            .get_mut(b)
            .expect("endpoint declared")
            .insert(a.to_string());
    }

    pub fn remove_edge(&mut self, a: &str, b: &str) {
        let removed = self.adj.get_mut(a).map(|s| s.remove(b)).unwrap_or(false)
            && self.adj.get_mut(b).map(|s| s.remove(a)).unwrap_or(false);
        assert!(removed, "edge {a}-{b} missing");
    }

    pub fn degree(&self, v: &str) -> usize {
        self.adj.get(v).map(BTreeSet::len).unwrap_or(0)
    }

    pub fn parent(&self, node: &str) -> &str {
        &self.parent[node]
    }

    pub fn reparent(&mut self, node: &str, parent: &str) {
        *self.parent.get_mut(node).expect("node declared") = parent.to_string();
    }

    pub fn is_cluster(&self, node: &str) -> bool {
        self.clusters.contains(node)
    }

    pub fn children(&self, cluster: &str) -> Vec<String> {
        self.parent
            .iter()
            .filter(|(_, p)| p.as_str() == cluster)
            .map(|(c, _)| c.clone())
            .collect()
    }

    pub fn clusters(&self) -> impl Iterator<Item = &String> {
        self.clusters.iter()
    }

    pub fn remove_cluster(&mut self, id: &str) {
        assert!(self.children(id).is_empty(), "cluster {id} not empty");
        self.clusters.remove(id);
        self.parent.remove(id);
    }

    pub fn depth<'a>(&'a self, mut node: &'a str) -> usize {
        let mut d = 0;
        while let Some(p) = self.parent.get(node) {
            d += 1;
            node = p;
        }
        d
    }

    /// Replaces edge `a`-`b` by `a`-`mid`-`b`, with `mid` in `cluster`.
    pub fn subdivide(&mut self, a: &str, b: &str, mid: &str, cluster: &str) {
        self.remove_edge(a, b);
        self.add_vertex(mid, cluster);
        self.add_edge(a, mid);
        self.add_edge(mid, b);
    }

    /// Replaces each vertex `t` of `targets` by one copy per incident edge,
    /// named after the original endpoints so the result does not depend on
    /// processing order. Copies join `t`'s cluster. Returns the copies.
    pub fn split(&mut self, targets: &BTreeSet<String>) -> BTreeMap<String, Vec<String>> {
        let live = |v: &String, other: &String| {
            if targets.contains(v) {
                copy_name(v, other)
            } else {
                v.clone()
            }
        };
        let mut edges = Vec::new();
        for t in targets {
            for z in &self.adj[t] {
                edges.push((t.clone(), z.clone()));
            }
        }
        let mut copies: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for (t, z) in &edges {
            let c = live(t, z);
            copies.entry(t.clone()).or_default().push(c.clone());
            let cluster = self.parent[t].clone();
            self.add_vertex(&c, &cluster);
        }
        for (t, z) in &edges {
            if self.adj[t].contains(z) {
                self.remove_edge(t, z);
                self.add_edge(&live(t, z), &live(z, t));
            }
        }
        for t in targets {
            debug_assert!(self.adj[t].is_empty());
            self.adj.remove(t);
            self.parent.remove(t);
        }
        copies
    }

    pub fn finish(&self) -> Result<ClusteredGraph> {
        let vertices: Vec<&str> = self.adj.keys().map(String::as_str).collect();
        let mut edges = Vec::new();
        for (a, ns) in &self.adj {
            for b in ns {
                if a < b {
                    edges.push((a.as_str(), b.as_str()));
                }
            }
        }
        let graph = Graph::new(&vertices, &edges)?;
        let mut recs: Vec<(&str, Option<&str>)> = vec![(self.root.as_str(), None)];
        recs.extend(
            self.parent
                .iter()
                .map(|(c, p)| (c.as_str(), Some(p.as_str()))),
        );
        let hierarchy = RootedTree::from_parents(&self.root, &recs)?;
        Ok(ClusteredGraph::new(graph, hierarchy))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_between_two_targets_joins_copies() {
        let mut d = Draft::new("R");
        d.add_cluster("A", "R");
        d.add_cluster("B", "R");
        d.add_vertex("a", "A");
        d.add_vertex("b", "B");
        d.add_vertex("c", "R");
        d.add_edge("a", "b");
        d.add_edge("a", "c");
        let targets: BTreeSet<String> = ["a".to_string(), "b".to_string()].into();
        let copies = d.split(&targets);
        assert_eq!(copies["a"], vec!["copy:a:b", "copy:a:c"]);
        let c = d.finish().unwrap();
        assert!(c.graph.has_edge_named("copy:a:b", "copy:b:a"));
        assert!(c.graph.has_edge_named("copy:a:c", "c"));
        assert_eq!(c.graph.vertex_count(), 4);
        let h = &c.hierarchy;
        assert_eq!(h.name(h.parent(h.id("copy:b:a").unwrap()).unwrap()), "B");
    }
}
