//! Seeded random instance generator.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::RootedTree;
use crate::instance::{LeafPair, PtbeInstance};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Star,
    RandomTree,
}

const MAX_ARITY: usize = 4;

/// Builds a random tree with `leaves` leaves, then draws `edges1` and
/// `edges2` distinct leaf pairs without replacement (clamped to what is
/// available).
///
/// Random trees grow by recursive attachment: a uniformly chosen node either
/// gains a leaf child (internal, arity below four) or, if it is a leaf, is
/// expanded into a node with two leaf children.
pub fn random_instance(
    leaves: usize,
    edges1: usize,
    edges2: usize,
    seed: u64,
    shape: Shape,
) -> PtbeInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let leaves = leaves.max(1);
    // children[v] for node v; node 0 is the root.
    let mut children: Vec<Vec<usize>> = vec![Vec::new()];
    let attach = |children: &mut Vec<Vec<usize>>, parent: usize| {
        children.push(Vec::new());
        let id = children.len() - 1;
        children[parent].push(id);
    };
    match shape {
        Shape::Star => {
            for _ in 0..leaves {
                attach(&mut children, 0);
            }
        }
        Shape::RandomTree => {
            attach(&mut children, 0);
            if leaves >= 2 {
                attach(&mut children, 0);
            }
            let mut count = children[0].len();
            while count < leaves {
                let v = rng.gen_range(0..children.len());
                if children[v].is_empty() {
                    attach(&mut children, v);
                    attach(&mut children, v);
                    count += 1;
                } else if children[v].len() < MAX_ARITY {
                    attach(&mut children, v);
                    count += 1;
                }
            }
        }
    }
    let width = children.len().to_string().len().max(2);
    let mut names = vec![String::new(); children.len()];
    names[0] = "r".to_string();
    let (mut li, mut wi) = (0, 0);
    let mut stack = vec![0usize];
    while let Some(v) = stack.pop() {
        if v != 0 {
            if children[v].is_empty() {
                li += 1;
                names[v] = format!("l{li:0width$}");
            } else {
                wi += 1;
                names[v] = format!("w{wi:0width$}");
            }
        }
        stack.extend(children[v].iter().rev());
    }
    let mut records: Vec<(String, Option<String>)> = vec![(names[0].clone(), None)];
    for (p, kids) in children.iter().enumerate() {
        for &c in kids {
            records.push((names[c].clone(), Some(names[p].clone())));
        }
    }
    let tree = RootedTree::from_parents("r", &records).expect("generated tree is well formed");
    let leaf_names: Vec<String> = tree
        .leaves()
        .into_iter()
        .map(|v| tree.name(v).to_string())
        .collect();
    let mut all_pairs: Vec<LeafPair> = Vec::new();
    for i in 0..leaf_names.len() {
        for j in i + 1..leaf_names.len() {
            all_pairs.push((leaf_names[i].clone(), leaf_names[j].clone()));
        }
    }
    all_pairs.shuffle(&mut rng);
    let e1 = edges1.min(all_pairs.len());
    let e2 = edges2.min(all_pairs.len() - e1);
    let mut page1: Vec<LeafPair> = all_pairs[..e1].to_vec();
    let mut page2: Vec<LeafPair> = all_pairs[e1..e1 + e2].to_vec();
    page1.sort();
    page2.sort();
    PtbeInstance::new(tree, page1, page2)
}

/// Instance drawn with size parameters chosen by the seed: 2 to 8 leaves,
/// at most 8 page edges in total, star and random-tree shapes alternating.
pub fn corpus_instance(seed: u64) -> PtbeInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_c0de);
    let leaves = rng.gen_range(2..=8);
    let total = rng.gen_range(0..=8);
    let e1 = rng.gen_range(0..=total);
    let shape = if seed.is_multiple_of(2) {
        Shape::Star
    } else {
        Shape::RandomTree
    };
    random_instance(leaves, e1, total - e1, seed, shape)
}

/// Canonical shape: a leaf, or a sorted multiset of at least two subshapes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct ShapeNode(Vec<ShapeNode>);

fn shapes_with(n: usize, memo: &mut Vec<Option<Vec<ShapeNode>>>) -> Vec<ShapeNode> {
    if let Some(s) = &memo[n] {
        return s.clone();
    }
    let out = if n == 1 {
        vec![ShapeNode(vec![])]
    } else {
        let mut out = Vec::new();
        let mut stack: Vec<ShapeNode> = Vec::new();
        forests(n, n - 1, usize::MAX, &mut stack, &mut out, memo);
        out
    };
    memo[n] = Some(out.clone());
    out
}

/// Children lists with non-increasing (size, index) summing to `n`.
fn forests(
    n: usize,
    max_size: usize,
    max_idx: usize,
    stack: &mut Vec<ShapeNode>,
    out: &mut Vec<ShapeNode>,
    memo: &mut Vec<Option<Vec<ShapeNode>>>,
) {
    if n == 0 {
        if stack.len() >= 2 {
            out.push(ShapeNode(stack.clone()));
        }
        return;
    }
    for size in (1..=max_size.min(n)).rev() {
        let subs = shapes_with(size, memo);
        let top = if size == max_size {
            max_idx.min(subs.len() - 1)
        } else {
            subs.len() - 1
        };
        for idx in (0..=top).rev() {
            stack.push(subs[idx].clone());
            forests(n - size, size, idx, stack, out, memo);
            stack.pop();
        }
    }
}

/// Every rooted tree with `leaves` leaves whose internal nodes have at
/// least two children, up to isomorphism. Leaves are named `l1, l2, ...`
/// left to right and internal nodes `w1, w2, ...`; the root is `r`.
pub fn tree_shapes(leaves: usize) -> Vec<RootedTree> {
    if leaves < 2 {
        return Vec::new();
    }
    let mut memo = vec![None; leaves + 1];
    shapes_with(leaves, &mut memo)
        .into_iter()
        .map(|s| {
            let mut records: Vec<(String, Option<String>)> = vec![("r".into(), None)];
            let (mut li, mut wi) = (0, 0);
            let mut stack: Vec<(&ShapeNode, String)> =
                s.0.iter().rev().map(|c| (c, "r".to_string())).collect();
            while let Some((node, parent)) = stack.pop() {
                let name = if node.0.is_empty() {
                    li += 1;
                    format!("l{li}")
                } else {
                    wi += 1;
                    format!("w{wi}")
                };
                stack.extend(node.0.iter().rev().map(|c| (c, name.clone())));
                records.push((name, Some(parent)));
            }
            RootedTree::from_parents("r", &records).expect("well formed")
        })
        .collect()
}

/// All pairs of disjoint page sets over `leaves` with at most `max_total`
/// edges altogether.
pub fn page_sets(leaves: &[String], max_total: usize) -> Vec<(Vec<LeafPair>, Vec<LeafPair>)> {
    let mut pairs = Vec::new();
    for i in 0..leaves.len() {
        for j in i + 1..leaves.len() {
            pairs.push((leaves[i].clone(), leaves[j].clone()));
        }
    }
    let mut out = Vec::new();
    let mut chosen: Vec<(usize, bool)> = Vec::new();
    fn go(
        start: usize,
        pairs: &[LeafPair],
        max_total: usize,
        chosen: &mut Vec<(usize, bool)>,
        out: &mut Vec<(Vec<LeafPair>, Vec<LeafPair>)>,
    ) {
        let page = |second: bool, chosen: &[(usize, bool)]| {
            chosen
                .iter()
                .filter(|c| c.1 == second)
                .map(|c| pairs[c.0].clone())
                .collect()
        };
        out.push((page(false, chosen), page(true, chosen)));
        if chosen.len() == max_total {
            return;
        }
        for i in start..pairs.len() {
            for second in [false, true] {
                chosen.push((i, second));
                go(i + 1, pairs, max_total, chosen, out);
                chosen.pop();
            }
        }
    }
    go(0, &pairs, max_total, &mut chosen, &mut out);
    out
}
