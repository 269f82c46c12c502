//! Exhaustive decision procedures for partitioned T-coherent 2-page book
//! embeddings.
//!
//! Two independent strategies are provided so they can cross-check each
//! other: [`Strategy::ByChildPermutation`] walks the orders represented by the
//! tree (one permutation of children per internal node), optionally pruning
//! prefixes that already contain an alternating pair, while
//! [`Strategy::ByFilteredPermutation`] walks all permutations of the leaves and
//! filters them through [`is_representable`].

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::RootedTree;
use crate::instance::{LeafOrder, LeafPair, Page, PtbeInstance};

/// Default maximum number of leaves the solver accepts.
pub const DEFAULT_LEAF_CAP: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Strategy {
    ByChildPermutation,
    ByFilteredPermutation,
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    pub strategy: Strategy,
    pub leaf_cap: usize,
    /// Only used by [`Strategy::ByChildPermutation`].
    pub prune: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            strategy: Strategy::ByChildPermutation,
            leaf_cap: DEFAULT_LEAF_CAP,
            prune: true,
        }
    }
}

impl SolveOptions {
    pub fn with_strategy(strategy: Strategy) -> Self {
        SolveOptions {
            strategy,
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub orders_examined: u64,
    pub witnesses_found: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOutcome {
    pub witness: Option<LeafOrder>,
    pub stats: SearchStats,
}

impl SolveOutcome {
    pub fn is_yes(&self) -> bool {
        self.witness.is_some()
    }
}

/// True iff the leaves below every internal node occupy consecutive
/// positions of `order`.
pub fn is_representable(tree: &RootedTree, order: &LeafOrder) -> Result<bool> {
    order.check_permutation(tree)?;
    let mut pos = vec![usize::MAX; tree.len()];
    for (i, leaf) in order.as_slice().iter().enumerate() {
        pos[tree.id(leaf).expect("checked permutation")] = i;
    }
    Ok(representable_ids(tree, &pos))
}

fn representable_ids(tree: &RootedTree, pos: &[usize]) -> bool {
    let n = tree.len();
    let mut lo = vec![usize::MAX; n];
    let mut hi = vec![0usize; n];
    let mut count = vec![0usize; n];
    for v in tree.postorder() {
        if tree.is_leaf(v) {
            lo[v] = pos[v];
            hi[v] = pos[v];
            count[v] = 1;
            continue;
        }
        for &c in tree.children(v) {
            lo[v] = lo[v].min(lo[c]);
            hi[v] = hi[v].max(hi[c]);
            count[v] += count[c];
        }
        if hi[v] - lo[v] + 1 != count[v] {
            return false;
        }
    }
    true
}

/// Returns the first pair of page edges whose endpoints alternate in
/// `order`, or `None` when the page is alternation-free.
pub fn page_alternation_free(
    order: &LeafOrder,
    page: &[LeafPair],
) -> Result<Option<(LeafPair, LeafPair)>> {
    let pos = order.positions();
    let mut spans = Vec::with_capacity(page.len());
    for (a, b) in page {
        let pa = *pos
            .get(a.as_str())
            .ok_or_else(|| Error::NotAPermutation(format!("endpoint `{a}` missing from order")))?;
        let pb = *pos
            .get(b.as_str())
            .ok_or_else(|| Error::NotAPermutation(format!("endpoint `{b}` missing from order")))?;
        spans.push((pa.min(pb), pa.max(pb)));
    }
    Ok(first_alternation(&spans).map(|(i, j)| {
        let (e1, e2) = if spans[i].0 < spans[j].0 {
            (i, j)
        } else {
            (j, i)
        };
        (page[e1].clone(), page[e2].clone())
    }))
}

fn interleave(a: (usize, usize), b: (usize, usize)) -> bool {
    (a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1)
}

fn first_alternation(spans: &[(usize, usize)]) -> Option<(usize, usize)> {
    for i in 0..spans.len() {
        for j in i + 1..spans.len() {
            if interleave(spans[i], spans[j]) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Rearranges `v` into its lexicographic successor; returns `false` (and
/// leaves `v` sorted ascending) when `v` was the last permutation.
pub(crate) fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Deterministic stream of every leaf order represented by a tree.
///
/// Orders are produced lexicographically over the children permutations of
/// the internal nodes read in preorder, so the last node in the current
/// layout varies fastest. This matches the left-to-right backtracking of the
/// pruned solver, which therefore finds the same first witness.
#[derive(Clone, Debug)]
pub struct CoherentOrders<'a> {
    tree: &'a RootedTree,
    arrangement: Vec<Vec<usize>>,
    started: bool,
    done: bool,
}

pub fn enumerate_coherent_orders(tree: &RootedTree) -> CoherentOrders<'_> {
    CoherentOrders {
        tree,
        arrangement: (0..tree.len()).map(|v| tree.children(v).to_vec()).collect(),
        started: false,
        done: false,
    }
}

impl CoherentOrders<'_> {
    fn layout(&self) -> (Vec<usize>, Vec<usize>) {
        let mut leaves = Vec::new();
        let mut internal = Vec::new();
        let mut stack = vec![self.tree.root()];
        while let Some(v) = stack.pop() {
            if self.tree.is_leaf(v) {
                leaves.push(v);
            } else {
                internal.push(v);
                stack.extend(self.arrangement[v].iter().rev());
            }
        }
        (leaves, internal)
    }

    /// Next order as leaf node indices.
    pub fn next_ids(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.layout().0);
        }
        let (_, internal) = self.layout();
        for &v in internal.iter().rev() {
            if next_permutation(&mut self.arrangement[v]) {
                return Some(self.layout().0);
            }
        }
        self.done = true;
        None
    }
}

impl Iterator for CoherentOrders<'_> {
    type Item = LeafOrder;

    fn next(&mut self) -> Option<LeafOrder> {
        let tree = self.tree;
        self.next_ids()
            .map(|ids| LeafOrder::new(ids.into_iter().map(|v| tree.name(v).to_string())))
    }
}

/// `∏ (children(v))!` over internal nodes; saturates at `u128::MAX`.
pub fn coherent_order_count(tree: &RootedTree) -> u128 {
    let mut total: u128 = 1;
    for v in tree.internal() {
        for k in 2..=tree.children(v).len() as u128 {
            total = total.saturating_mul(k);
        }
    }
    total
}

struct PageIndex {
    /// Per page: edges as leaf node index pairs.
    edges: [Vec<(usize, usize)>; 2],
    /// Per page: for each node, the indices of incident edges.
    incident: [Vec<Vec<usize>>; 2],
}

impl PageIndex {
    fn new(instance: &PtbeInstance) -> Self {
        let n = instance.tree.len();
        let build = |page| {
            let edges = instance.page_ids(page);
            let mut incident = vec![Vec::new(); n];
            for (k, &(a, b)) in edges.iter().enumerate() {
                incident[a].push(k);
                incident[b].push(k);
            }
            (edges, incident)
        };
        let (e1, i1) = build(Page::One);
        let (e2, i2) = build(Page::Two);
        PageIndex {
            edges: [e1, e2],
            incident: [i1, i2],
        }
    }

    fn clean(&self, pos: &[usize]) -> bool {
        self.edges.iter().all(|edges| {
            let spans: Vec<(usize, usize)> = edges
                .iter()
                .map(|&(a, b)| (pos[a].min(pos[b]), pos[a].max(pos[b])))
                .collect();
            first_alternation(&spans).is_none()
        })
    }

    /// With `leaf` just placed last, checks the edges it closes against every
    /// fully placed edge of the same page.
    fn placement_ok(&self, leaf: usize, pos: &[usize]) -> bool {
        let p = pos[leaf];
        for page in 0..2 {
            let edges = &self.edges[page];
            for &k in &self.incident[page][leaf] {
                let (a, b) = edges[k];
                let other = if a == leaf { b } else { a };
                let q = pos[other];
                if q == usize::MAX {
                    continue;
                }
                let span = (q, p);
                for (m, &(c, d)) in edges.iter().enumerate() {
                    if m == k || pos[c] == usize::MAX || pos[d] == usize::MAX {
                        continue;
                    }
                    let s = (pos[c].min(pos[d]), pos[c].max(pos[d]));
                    if interleave(span, s) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Decides the instance, returning a witness order when one exists.
pub fn solve(instance: &PtbeInstance, options: SolveOptions) -> Result<SolveOutcome> {
    instance.ensure_valid()?;
    let tree = &instance.tree;
    let leaves = tree.leaf_count();
    if leaves > options.leaf_cap {
        return Err(Error::SearchBudgetExceeded {
            leaves,
            cap: options.leaf_cap,
        });
    }
    let index = PageIndex::new(instance);
    let mut stats = SearchStats::default();
    let found = match (options.strategy, options.prune) {
        (Strategy::ByChildPermutation, true) => {
            let mut search = Backtrack {
                tree,
                index: &index,
                pos: vec![usize::MAX; tree.len()],
                prefix: Vec::with_capacity(leaves),
                pending: vec![tree.root()],
                stats: &mut stats,
            };
            if search.run() {
                Some(search.prefix.clone())
            } else {
                None
            }
        }
        (Strategy::ByChildPermutation, false) => {
            let mut orders = enumerate_coherent_orders(tree);
            let mut pos = vec![usize::MAX; tree.len()];
            let mut hit = None;
            while let Some(ids) = orders.next_ids() {
                stats.orders_examined += 1;
                for (i, &v) in ids.iter().enumerate() {
                    pos[v] = i;
                }
                if index.clean(&pos) {
                    hit = Some(ids);
                    break;
                }
            }
            hit
        }
        (Strategy::ByFilteredPermutation, _) => {
            let mut perm = tree.leaves();
            let mut pos = vec![usize::MAX; tree.len()];
            let mut hit = None;
            loop {
                stats.orders_examined += 1;
                for (i, &v) in perm.iter().enumerate() {
                    pos[v] = i;
                }
                if representable_ids(tree, &pos) && index.clean(&pos) {
                    hit = Some(perm.clone());
                    break;
                }
                if !next_permutation(&mut perm) {
                    break;
                }
            }
            hit
        }
    };
    if found.is_some() {
        stats.witnesses_found = 1;
    }
    Ok(SolveOutcome {
        witness: found.map(|ids| LeafOrder::new(ids.into_iter().map(|v| tree.name(v).to_string()))),
        stats,
    })
}

struct Backtrack<'a> {
    tree: &'a RootedTree,
    index: &'a PageIndex,
    pos: Vec<usize>,
    prefix: Vec<usize>,
    /// Nodes still to lay out, next one on top.
    pending: Vec<usize>,
    stats: &'a mut SearchStats,
}

impl Backtrack<'_> {
    fn run(&mut self) -> bool {
        let Some(node) = self.pending.pop() else {
            self.stats.orders_examined += 1;
            return true;
        };
        if self.tree.is_leaf(node) {
            self.pos[node] = self.prefix.len();
            self.prefix.push(node);
            if self.index.placement_ok(node, &self.pos) && self.run() {
                return true;
            }
            self.prefix.pop();
            self.pos[node] = usize::MAX;
        } else {
            let mut perm = self.tree.children(node).to_vec();
            let base = self.pending.len();
            loop {
                self.pending.extend(perm.iter().rev());
                if self.run() {
                    return true;
                }
                self.pending.truncate(base);
                if !next_permutation(&mut perm) {
                    break;
                }
            }
        }
        self.pending.push(node);
        false
    }
}

/// Witness check used by callers that did not run the solver themselves.
pub fn is_witness(instance: &PtbeInstance, order: &LeafOrder) -> Result<bool> {
    Ok(is_representable(&instance.tree, order)?
        && page_alternation_free(order, &instance.page1)?.is_none()
        && page_alternation_free(order, &instance.page2)?.is_none())
}

/// Positions of leaves by name, one-based, as used by drawings.
pub fn one_based_positions(order: &LeafOrder) -> HashMap<String, usize> {
    order
        .as_slice()
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i + 1))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::generate::{random_instance, Shape};

    fn order(s: &[&str]) -> LeafOrder {
        LeafOrder::new(s.iter().copied())
    }

    /// Independent representability oracle: every internal node's leaf set
    /// appears as one contiguous run when scanning the order.
    fn oracle_representable(tree: &RootedTree, order: &LeafOrder) -> bool {
        tree.internal().into_iter().all(|w| {
            let set: Vec<String> = tree
                .leaves_under(w)
                .into_iter()
                .map(|v| tree.name(v).to_string())
                .collect();
            let flags: Vec<bool> = order.as_slice().iter().map(|l| set.contains(l)).collect();
            let runs = flags
                .iter()
                .enumerate()
                .filter(|&(i, &f)| f && (i == 0 || !flags[i - 1]))
                .count();
            runs == 1
        })
    }

    /// Independent alternation oracle over four explicit position tests.
    fn oracle_clean(order: &LeafOrder, page: &[LeafPair]) -> bool {
        let p = |s: &str| order.as_slice().iter().position(|x| x == s).unwrap();
        for (i, (a, b)) in page.iter().enumerate() {
            for (c, d) in &page[i + 1..] {
                let (x1, y1) = (p(a).min(p(b)), p(a).max(p(b)));
                let (x2, y2) = (p(c).min(p(d)), p(c).max(p(d)));
                let cross = (x1 < x2 && x2 < y1 && y1 < y2) || (x2 < x1 && x1 < y2 && y2 < y1);
                if cross {
                    return false;
                }
            }
        }
        true
    }

    fn all_permutations(items: &[String]) -> Vec<Vec<String>> {
        if items.len() <= 1 {
            return vec![items.to_vec()];
        }
        let mut out = Vec::new();
        for i in 0..items.len() {
            let mut rest = items.to_vec();
            let head = rest.remove(i);
            for mut tail in all_permutations(&rest) {
                tail.insert(0, head.clone());
                out.push(tail);
            }
        }
        out
    }

    fn oracle_decide(inst: &PtbeInstance) -> bool {
        let leaves: Vec<String> = inst
            .tree
            .leaves()
            .into_iter()
            .map(|v| inst.tree.name(v).to_string())
            .collect();
        all_permutations(&leaves).into_iter().any(|p| {
            let o = LeafOrder(p);
            oracle_representable(&inst.tree, &o)
                && oracle_clean(&o, &inst.page1)
                && oracle_clean(&o, &inst.page2)
        })
    }

    #[test]
    fn representability_examples() {
        let t = two_pairs_tree();
        assert!(is_representable(&t, &order(&["a", "b", "c", "d"])).unwrap());
        assert!(!is_representable(&t, &order(&["a", "c", "b", "d"])).unwrap());
        let s = star(&["a", "b", "c", "d"]);
        assert!(is_representable(&s, &order(&["d", "b", "a", "c"])).unwrap());
        assert!(is_representable(&t, &order(&["a", "b", "c"])).is_err());
    }

    #[test]
    fn alternation_examples() {
        let page = pairs(&[("a", "c"), ("b", "d")]);
        assert_eq!(
            page_alternation_free(&order(&["a", "b", "c", "d"]), &page).unwrap(),
            Some((pair("a", "c"), pair("b", "d")))
        );
        assert_eq!(
            page_alternation_free(&order(&["a", "c", "b", "d"]), &page).unwrap(),
            None
        );
        let nested = pairs(&[("a", "d"), ("b", "c")]);
        assert_eq!(
            page_alternation_free(&order(&["a", "b", "c", "d"]), &nested).unwrap(),
            None
        );
        assert!(page_alternation_free(&order(&["a", "b"]), &page).is_err());
    }

    #[test]
    fn enumeration_counts() {
        // Oracle counts: 2!·2!·2! = 8, 4! = 24, and a single permutation.
        assert_eq!(enumerate_coherent_orders(&two_pairs_tree()).count(), 8);
        assert_eq!(
            enumerate_coherent_orders(&star(&["a", "b", "c", "d"])).count(),
            24
        );
        let path = tree("r", &[("r", None), ("w", Some("r")), ("a", Some("w"))]);
        assert_eq!(enumerate_coherent_orders(&path).count(), 1);
        assert_eq!(coherent_order_count(&two_pairs_tree()), 8);
    }

    #[test]
    fn enumeration_matches_filtered_permutations() {
        let t = example_tree();
        let mut got: Vec<LeafOrder> = enumerate_coherent_orders(&t).collect();
        let names: Vec<String> = t
            .leaves()
            .into_iter()
            .map(|v| t.name(v).to_string())
            .collect();
        let mut want: Vec<LeafOrder> = all_permutations(&names)
            .into_iter()
            .map(LeafOrder)
            .filter(|o| oracle_representable(&t, o))
            .collect();
        got.sort_by(|a, b| a.0.cmp(&b.0));
        want.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(got, want);
    }

    #[test]
    fn first_enumerated_order_is_sorted_layout() {
        let t = two_pairs_tree();
        let first = enumerate_coherent_orders(&t).next().unwrap();
        assert_eq!(first, order(&["a", "b", "c", "d"]));
    }

    #[test]
    fn star_with_crossing_pages_is_yes() {
        let inst = star_instance(&["a", "b", "c", "d"], &[("a", "c")], &[("b", "d")]);
        for strategy in [
            Strategy::ByChildPermutation,
            Strategy::ByFilteredPermutation,
        ] {
            let out = solve(&inst, SolveOptions::with_strategy(strategy)).unwrap();
            let w = out.witness.expect("yes instance");
            assert!(oracle_representable(&inst.tree, &w));
            assert!(oracle_clean(&w, &inst.page1) && oracle_clean(&w, &inst.page2));
        }
        // The canonical first order (a, b, c, d) is itself a witness.
        let out = solve(&inst, SolveOptions::default()).unwrap();
        assert_eq!(out.witness.unwrap(), order(&["a", "b", "c", "d"]));
    }

    fn k5_instance() -> PtbeInstance {
        star_instance(
            &["1", "2", "3", "4", "5"],
            &[("1", "2"), ("2", "3"), ("3", "4"), ("4", "5"), ("5", "1")],
            &[("1", "3"), ("1", "4"), ("2", "4"), ("2", "5"), ("3", "5")],
        )
    }

    #[test]
    fn k5_split_is_no() {
        let inst = k5_instance();
        assert!(!oracle_decide(&inst));
        for strategy in [
            Strategy::ByChildPermutation,
            Strategy::ByFilteredPermutation,
        ] {
            let out = solve(&inst, SolveOptions::with_strategy(strategy)).unwrap();
            assert!(out.witness.is_none());
        }
        let unpruned = SolveOptions {
            prune: false,
            ..Default::default()
        };
        let out = solve(&inst, unpruned).unwrap();
        assert!(out.witness.is_none());
        assert_eq!(out.stats.orders_examined, 120);
    }

    #[test]
    fn empty_pages_return_first_order() {
        let inst = PtbeInstance::new(two_pairs_tree(), vec![], vec![]);
        let out = solve(&inst, SolveOptions::default()).unwrap();
        assert_eq!(out.witness, enumerate_coherent_orders(&inst.tree).next());
    }

    #[test]
    fn leaf_cap_is_enforced() {
        let leaves: Vec<String> = (0..11).map(|i| format!("l{i:02}")).collect();
        let refs: Vec<&str> = leaves.iter().map(String::as_str).collect();
        let inst = star_instance(&refs, &[], &[]);
        assert!(matches!(
            solve(&inst, SolveOptions::default()),
            Err(Error::SearchBudgetExceeded {
                leaves: 11,
                cap: 10
            })
        ));
        let wide = SolveOptions {
            leaf_cap: 11,
            ..Default::default()
        };
        assert!(solve(&inst, wide).unwrap().is_yes());
    }

    #[test]
    fn invalid_instance_is_rejected() {
        let inst = star_instance(&["a", "b"], &[("a", "b")], &[("a", "b")]);
        assert!(matches!(
            solve(&inst, SolveOptions::default()),
            Err(Error::InvalidInstance(_))
        ));
    }

    #[test]
    fn next_permutation_cycles() {
        let mut v = vec![1, 2, 3];
        let mut n = 1;
        while next_permutation(&mut v) {
            n += 1;
        }
        assert_eq!(n, 6);
        assert_eq!(v, vec![1, 2, 3]);
    }

    mod props {
        use super::*;
        use proptest::prelude::{any, prop_assert, prop_assert_eq, proptest, ProptestConfig};
        use proptest::strategy::Strategy as PropStrategy;

        fn arb_instance() -> impl PropStrategy<Value = PtbeInstance> {
            (
                2usize..=7,
                0usize..=4,
                0usize..=4,
                any::<u64>(),
                any::<bool>(),
            )
                .prop_map(|(leaves, e1, e2, seed, star_shape)| {
                    let shape = if star_shape {
                        Shape::Star
                    } else {
                        Shape::RandomTree
                    };
                    random_instance(leaves, e1, e2, seed, shape)
                })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(200))]

            #[test]
            fn strategies_agree_with_oracle(inst in arb_instance()) {
                let a = solve(&inst, SolveOptions::with_strategy(Strategy::ByChildPermutation)).unwrap();
                let b = solve(&inst, SolveOptions::with_strategy(Strategy::ByFilteredPermutation)).unwrap();
                prop_assert_eq!(a.is_yes(), b.is_yes());
                if inst.leaf_count() <= 6 {
                    prop_assert_eq!(a.is_yes(), oracle_decide(&inst));
                }
                for w in [&a.witness, &b.witness].into_iter().flatten() {
                    prop_assert!(is_witness(&inst, w).unwrap());
                    prop_assert!(is_witness(&inst, &w.reversed()).unwrap());
                }
            }

            #[test]
            fn pruning_preserves_first_witness(inst in arb_instance()) {
                let pruned = solve(&inst, SolveOptions::default()).unwrap();
                let plain = solve(&inst, SolveOptions { prune: false, ..Default::default() }).unwrap();
                prop_assert_eq!(pruned.witness, plain.witness);
            }

            #[test]
            fn count_law(inst in arb_instance()) {
                let t = &inst.tree;
                let orders: Vec<LeafOrder> = enumerate_coherent_orders(t).collect();
                // Independent product of factorials.
                let mut expected: u128 = 1;
                for v in 0..t.len() {
                    let k = t.children(v).len() as u128;
                    expected *= (1..=k).product::<u128>();
                }
                prop_assert_eq!(orders.len() as u128, expected);
                let mut uniq = orders.clone();
                uniq.sort_by(|a, b| a.0.cmp(&b.0));
                uniq.dedup();
                prop_assert_eq!(uniq.len(), orders.len());
                for o in &orders {
                    prop_assert!(oracle_representable(t, o));
                }
            }
        }
    }
}
