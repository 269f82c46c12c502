use std::fmt::Write;

use crate::clustered::ClusteredGraph;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected DOT graph with clusters as nested `cluster_` subgraphs.
pub fn graph_dot(c: &ClusteredGraph) -> String {
    let h = &c.hierarchy;
    let mut out = String::from("graph G {\n  node [shape=point];\n");
    fn emit(c: &ClusteredGraph, node: usize, indent: usize, out: &mut String) {
        let h = &c.hierarchy;
        let pad = "  ".repeat(indent);
        for &k in h.children(node) {
            if h.is_leaf(k) {
                let _ = writeln!(
                    out,
                    "{pad}{} [xlabel={}];",
                    quote(h.name(k)),
                    quote(h.name(k))
                );
            } else {
                let _ = writeln!(
                    out,
                    "{pad}subgraph {} {{",
                    quote(&format!("cluster_{}", h.name(k)))
                );
                let _ = writeln!(out, "{pad}  label={};", quote(h.name(k)));
                emit(c, k, indent + 1, out);
                let _ = writeln!(out, "{pad}}}");
            }
        }
    }
    emit(c, h.root(), 1, &mut out);
    for (a, b) in c.graph.edge_names() {
        let _ = writeln!(out, "  {} -- {};", quote(a), quote(b));
    }
    out.push_str("}\n");
    out
}

/// The cluster hierarchy as a DOT tree, clusters boxed.
pub fn hierarchy_dot(c: &ClusteredGraph) -> String {
    let h = &c.hierarchy;
    let mut out = String::from("digraph T {\n");
    for v in h.preorder() {
        let shape = if h.is_leaf(v) { "ellipse" } else { "box" };
        let _ = writeln!(out, "  {} [shape={shape}];", quote(h.name(v)));
    }
    for (p, v) in h.edges() {
        let _ = writeln!(out, "  {} -> {};", quote(h.name(p)), quote(h.name(v)));
    }
    out.push_str("}\n");
    out
}
