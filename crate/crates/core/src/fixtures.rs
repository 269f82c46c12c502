//! Small hand-built instances shared by unit tests.

use crate::graph::RootedTree;
use crate::instance::{LeafPair, PtbeInstance};

pub fn pair(a: &str, b: &str) -> LeafPair {
    (a.to_string(), b.to_string())
}

pub fn pairs(p: &[(&str, &str)]) -> Vec<LeafPair> {
    p.iter().map(|(a, b)| pair(a, b)).collect()
}

pub fn tree(root: &str, recs: &[(&str, Option<&str>)]) -> RootedTree {
    RootedTree::from_parents(root, recs).unwrap()
}

pub fn star(leaves: &[&str]) -> RootedTree {
    let mut recs = vec![("r", None)];
    recs.extend(leaves.iter().map(|l| (*l, Some("r"))));
    tree("r", &recs)
}

pub fn star_instance(leaves: &[&str], p1: &[(&str, &str)], p2: &[(&str, &str)]) -> PtbeInstance {
    PtbeInstance::new(star(leaves), pairs(p1), pairs(p2))
}

/// r -> {w1 -> {a, b}, c}
pub fn example_tree() -> RootedTree {
    tree(
        "r",
        &[
            ("r", None),
            ("w1", Some("r")),
            ("a", Some("w1")),
            ("b", Some("w1")),
            ("c", Some("r")),
        ],
    )
}

/// The worked instance: E1 = {(a, b)}, E2 = {(b, c)}.
pub fn example_instance() -> PtbeInstance {
    PtbeInstance::new(example_tree(), pairs(&[("a", "b")]), pairs(&[("b", "c")]))
}

/// r -> {w1 -> {a, b}, w2 -> {c, d}}
pub fn two_pairs_tree() -> RootedTree {
    tree(
        "r",
        &[
            ("r", None),
            ("w1", Some("r")),
            ("w2", Some("r")),
            ("a", Some("w1")),
            ("b", Some("w1")),
            ("c", Some("w2")),
            ("d", Some("w2")),
        ],
    )
}
