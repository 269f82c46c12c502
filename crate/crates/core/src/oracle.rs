//! Brute-force c-planarity for very small flat clustered graphs.
//!
//! A flat clustered graph is c-planar iff some edge superset makes every
//! cluster and the whole graph connected and admits a planar embedding in
//! which, for each cluster, all outside vertices lie in one face of the
//! embedded cluster subgraph. Any working superset contains a minimal
//! connecting one that also works, and all minimal connecting sets have
//! the same size, so only sets of exactly that size are enumerated.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::clustered::ClusteredGraph;
use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 8;
pub const MAX_EXTRA_EDGES: usize = 4;
/// Rotation-search nodes across all saturation sets before giving up.
pub const DEFAULT_STEP_BUDGET: u64 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Added edges.
    pub saturation: Vec<(String, String)>,
    /// Neighbours of each vertex in counter-clockwise order.
    pub rotation: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    #[serde(rename = "cplanar")]
    CPlanar {
        witness: Witness,
    },
    #[serde(rename = "not-cplanar")]
    NotCPlanar,
    Unknown {
        reason: String,
    },
}

impl Verdict {
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::CPlanar { .. } => 0,
            Verdict::NotCPlanar => 1,
            Verdict::Unknown { .. } => 3,
        }
    }
}

/// Cluster index of each vertex.
fn cluster_index(c: &ClusteredGraph) -> Vec<usize> {
    let clusters = c.clusters();
    let pos: BTreeMap<usize, usize> = clusters.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    (0..c.graph.vertex_count())
        .map(|v| {
            let node = c.hierarchy_node(v).expect("validated");
            pos[&c.hierarchy.parent(node).expect("flat")]
        })
        .collect()
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        self.0[a.max(b)] = a.min(b);
        true
    }
}

/// Edges needed to connect every cluster and then the whole graph.
fn connecting_size(n: usize, edges: &[(usize, usize)], cl: &[usize]) -> usize {
    let mut d = Dsu::new(n);
    for &(a, b) in edges {
        if cl[a] == cl[b] {
            d.union(a, b);
        }
    }
    let mut need = 0;
    let mut first: BTreeMap<usize, usize> = BTreeMap::new();
    for v in 0..n {
        match first.get(&cl[v]) {
            Some(&u) => {
                if d.union(u, v) {
                    need += 1;
                }
            }
            None => {
                first.insert(cl[v], v);
            }
        }
    }
    for &(a, b) in edges {
        d.union(a, b);
    }
    let roots: BTreeSet<usize> = (0..n).map(|v| d.find(v)).collect();
    need + roots.len() - 1
}

fn c_connected(n: usize, edges: &[(usize, usize)], cl: &[usize]) -> bool {
    connecting_size(n, edges, cl) == 0
}

/// Dart `(u, k)` is the k-th neighbour slot of `u`.
struct Embedding<'a> {
    adj: &'a [Vec<usize>],
    /// rot[u][k]: slot at `u` following slot `k` counter-clockwise.
    rot: Vec<Vec<usize>>,
    /// back[u][k]: slot of `u` in the list of `adj[u][k]`.
    back: &'a [Vec<usize>],
}

impl Embedding<'_> {
    /// Next dart of the face walk after `(u, k)` (walking u -> adj[u][k]).
    fn next(&self, u: usize, k: usize) -> (usize, usize) {
        let v = self.adj[u][k];
        let j = self.back[u][k];
        (v, self.rot[v][j])
    }
}

fn back_slots(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    adj.iter()
        .enumerate()
        .map(|(u, ns)| {
            ns.iter()
                .map(|&v| adj[v].iter().position(|&w| w == u).expect("symmetric"))
                .collect()
        })
        .collect()
}

/// Face walks as lists of darts.
fn faces(e: &Embedding) -> Vec<Vec<(usize, usize)>> {
    let mut seen: Vec<Vec<bool>> = e.adj.iter().map(|ns| vec![false; ns.len()]).collect();
    let mut out = Vec::new();
    for u in 0..e.adj.len() {
        for k in 0..e.adj[u].len() {
            if seen[u][k] {
                continue;
            }
            let mut face = Vec::new();
            let (mut a, mut b) = (u, k);
            while !seen[a][b] {
                seen[a][b] = true;
                face.push((a, b));
                (a, b) = e.next(a, b);
            }
            out.push(face);
        }
    }
    out
}

/// Cluster condition on a planar embedding of the saturated graph.
fn clusters_ok(e: &Embedding, fs: &[Vec<(usize, usize)>], cl: &[usize]) -> bool {
    let n = e.adj.len();
    let mut face_of: Vec<Vec<usize>> = e.adj.iter().map(|ns| vec![0; ns.len()]).collect();
    for (i, f) in fs.iter().enumerate() {
        for &(u, k) in f {
            face_of[u][k] = i;
        }
    }
    let ids: BTreeSet<usize> = cl.iter().copied().collect();
    for mu in ids {
        let mut d = Dsu::new(fs.len());
        for u in 0..n {
            for k in 0..e.adj[u].len() {
                let v = e.adj[u][k];
                let in_h = cl[u] == mu && cl[v] == mu;
                if !in_h {
                    d.union(face_of[u][k], face_of[v][e.back[u][k]]);
                }
                if cl[u] != mu {
                    d.union(face_of[u][k], face_of[u][0]);
                }
            }
        }
        let mut class = None;
        for u in (0..n).filter(|&u| cl[u] != mu) {
            let r = d.find(face_of[u][0]);
            if *class.get_or_insert(r) != r {
                return false;
            }
        }
    }
    true
}

/// All cyclic orders of slots `0..d` with slot 0 fixed first, as successor maps.
fn cyclic_orders(d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![vec![]];
    }
    let mut rest: Vec<usize> = (1..d).collect();
    let mut out = Vec::new();
    permute(&mut rest, 0, &mut |p| {
        let mut succ = vec![0; d];
        let mut prev = 0;
        for &x in p {
            succ[prev] = x;
            prev = x;
        }
        succ[prev] = 0;
        out.push(succ);
    });
    out
}

fn permute(v: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
    if i == v.len() {
        f(v);
        return;
    }
    for j in i..v.len() {
        v.swap(i, j);
        permute(v, i + 1, f);
        v.swap(i, j);
    }
}

enum Search {
    Found(Vec<Vec<usize>>),
    Exhausted,
    OutOfBudget,
}

struct Searcher<'a> {
    adj: &'a [Vec<usize>],
    back: &'a [Vec<usize>],
    cl: &'a [usize],
    order: Vec<usize>,
    choices: Vec<Vec<Vec<usize>>>,
    target_faces: usize,
    steps: &'a AtomicU64,
    budget: u64,
    stop: &'a AtomicBool,
}

impl Searcher<'_> {
    /// Upper bound on the face count given the rotations fixed so far.
    fn face_bound(&self, rot: &[Option<Vec<usize>>]) -> usize {
        let mut seen: Vec<Vec<bool>> = self.adj.iter().map(|ns| vec![false; ns.len()]).collect();
        let (mut closed, mut open) = (0, 0);
        for u in 0..self.adj.len() {
            for k in 0..self.adj[u].len() {
                if seen[u][k] {
                    continue;
                }
                let (mut a, mut b) = (u, k);
                let mut walk = vec![];
                let done = loop {
                    if !walk.is_empty() && (a, b) == (u, k) {
                        break true;
                    }
                    if seen[a][b] {
                        break false;
                    }
                    walk.push((a, b));
                    let v = self.adj[a][b];
                    let Some(r) = &rot[v] else { break false };
                    (a, b) = (v, r[self.back[a][b]]);
                };
                if done {
                    closed += 1;
                    for (a, b) in walk {
                        seen[a][b] = true;
                    }
                } else {
                    open += 1;
                    // Only the starting dart is claimed; the rest may still
                    // belong to a face found later from another start.
                    seen[u][k] = true;
                }
            }
        }
        closed + open / 3
    }

    fn run(&self, i: usize, rot: &mut Vec<Option<Vec<usize>>>) -> Search {
        if self.stop.load(Ordering::Relaxed) {
            return Search::Exhausted;
        }
        if self.steps.fetch_add(1, Ordering::Relaxed) >= self.budget {
            return Search::OutOfBudget;
        }
        if i == self.order.len() {
            let r: Vec<Vec<usize>> = rot.iter().map(|x| x.clone().expect("complete")).collect();
            let e = Embedding {
                adj: self.adj,
                rot: r.clone(),
                back: self.back,
            };
            let fs = faces(&e);
            if fs.len() == self.target_faces && clusters_ok(&e, &fs, self.cl) {
                return Search::Found(r);
            }
            return Search::Exhausted;
        }
        let v = self.order[i];
        let mut out_of_budget = false;
        for succ in &self.choices[i] {
            rot[v] = Some(succ.clone());
            if self.face_bound(rot) < self.target_faces {
                continue;
            }
            match self.run(i + 1, rot) {
                Search::Found(r) => return Search::Found(r),
                Search::OutOfBudget => {
                    out_of_budget = true;
                    break;
                }
                Search::Exhausted => {}
            }
        }
        rot[v] = None;
        if out_of_budget {
            Search::OutOfBudget
        } else {
            Search::Exhausted
        }
    }
}

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    for ns in &mut adj {
        ns.sort_unstable();
    }
    adj
}

/// Vertices in BFS order from a highest-degree vertex so faces close early.
fn search_order(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let start = (0..n)
        .max_by_key(|&v| (adj[v].len(), std::cmp::Reverse(v)))
        .unwrap_or(0);
    let mut seen = vec![false; n];
    let mut order = vec![];
    let mut queue = std::collections::VecDeque::from([start]);
    seen[start] = true;
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    order
}

fn embed(
    n: usize,
    edges: &[(usize, usize)],
    cl: &[usize],
    steps: &AtomicU64,
    budget: u64,
    stop: &AtomicBool,
) -> Search {
    let m = edges.len();
    if n >= 3 && m > 3 * n - 6 {
        return Search::Exhausted;
    }
    let adj = adjacency(n, edges);
    let back = back_slots(&adj);
    let order = search_order(&adj);
    let choices = order.iter().map(|&v| cyclic_orders(adj[v].len())).collect();
    let s = Searcher {
        adj: &adj,
        back: &back,
        cl,
        order,
        choices,
        target_faces: m + 2 - n,
        steps,
        budget,
        stop,
    };
    let mut rot = vec![None; n];
    s.run(0, &mut rot)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

pub fn cplanar_bruteforce(c: &ClusteredGraph, max_extra: usize) -> Result<Verdict> {
    cplanar_bruteforce_with(c, max_extra, DEFAULT_STEP_BUDGET)
}

pub fn cplanar_bruteforce_with(
    c: &ClusteredGraph,
    max_extra: usize,
    budget: u64,
) -> Result<Verdict> {
    let n = c.graph.vertex_count();
    if n > MAX_VERTICES {
        return Err(Error::OracleCap(format!(
            "{n} vertices, at most {MAX_VERTICES} allowed"
        )));
    }
    if max_extra > MAX_EXTRA_EDGES {
        return Err(Error::OracleCap(format!(
            "{max_extra} extra edges, at most {MAX_EXTRA_EDGES} allowed"
        )));
    }
    if let Some(v) = c.validate().first() {
        return Err(Error::GadgetMismatch(v.to_string()));
    }
    if !c.is_flat() {
        return Err(Error::OracleCap("clustered graph is not flat".into()));
    }
    if n == 0 {
        return Ok(Verdict::CPlanar {
            witness: Witness {
                saturation: vec![],
                rotation: BTreeMap::new(),
            },
        });
    }
    let cl = cluster_index(c);
    let base: Vec<(usize, usize)> = c.graph.edges().collect();
    let need = connecting_size(n, &base, &cl);
    if need > max_extra {
        return Ok(Verdict::Unknown {
            reason: format!(
                "{need} extra edges needed to connect the clusters, budget is {max_extra}"
            ),
        });
    }
    let candidates: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| !c.graph.has_edge(a, b))
        .collect();
    let sets: Vec<Vec<(usize, usize)>> = combinations(candidates.len(), need)
        .into_iter()
        .map(|ix| ix.into_iter().map(|i| candidates[i]).collect::<Vec<_>>())
        .filter(|f| {
            let mut all = base.clone();
            all.extend(f.iter().copied());
            c_connected(n, &all, &cl)
        })
        .collect();
    let steps = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    // Each set is searched in parallel; the first accepting set in
    // enumeration order wins so the witness does not depend on scheduling.
    let results: Vec<Search> = sets
        .par_iter()
        .map(|f| {
            let mut all = base.clone();
            all.extend(f.iter().copied());
            let r = embed(n, &all, &cl, &steps, budget, &stop);
            if matches!(r, Search::Found(_)) {
                stop.store(true, Ordering::Relaxed);
            }
            r
        })
        .collect();
    let found = sets.iter().zip(&results).find_map(|(f, r)| match r {
        Search::Found(rot) => Some((f, rot)),
        _ => None,
    });
    if let Some((f, rot)) = found {
        let mut all = base.clone();
        all.extend(f.iter().copied());
        let adj = adjacency(n, &all);
        let name = |v: usize| c.graph.name(v).to_string();
        let rotation = (0..n)
            .map(|v| {
                let mut list = Vec::with_capacity(adj[v].len());
                let mut k = 0;
                for _ in 0..adj[v].len() {
                    list.push(name(adj[v][k]));
                    k = rot[v][k];
                }
                (name(v), list)
            })
            .collect();
        let saturation = f.iter().map(|&(a, b)| (name(a), name(b))).collect();
        return Ok(Verdict::CPlanar {
            witness: Witness {
                saturation,
                rotation,
            },
        });
    }
    if results.iter().any(|r| matches!(r, Search::OutOfBudget)) {
        return Ok(Verdict::Unknown {
            reason: format!("rotation search exceeded {budget} steps"),
        });
    }
    Ok(Verdict::NotCPlanar)
}

/// Re-checks a witness from scratch with name-keyed face tracing: the
/// rotation covers exactly the saturated graph, Euler's formula gives genus
/// zero, and every cluster sees all outside vertices in one face.
pub fn witness_is_valid(c: &ClusteredGraph, w: &Witness) -> bool {
    let mut edges: BTreeSet<(String, String)> = BTreeSet::new();
    let key = |a: &str, b: &str| {
        if a < b {
            (a.to_string(), b.to_string())
        } else {
            (b.to_string(), a.to_string())
        }
    };
    for (a, b) in c.graph.edge_names() {
        edges.insert(key(a, b));
    }
    for (a, b) in &w.saturation {
        if c.graph.id(a).is_none() || c.graph.id(b).is_none() || a == b || !edges.insert(key(a, b))
        {
            return false;
        }
    }
    let mut from_rot: BTreeSet<(String, String)> = BTreeSet::new();
    for v in c.graph.names() {
        let Some(list) = w.rotation.get(v) else {
            return false;
        };
        let uniq: BTreeSet<&String> = list.iter().collect();
        if uniq.len() != list.len() {
            return false;
        }
        for u in list {
            from_rot.insert(key(v, u));
        }
    }
    if from_rot != edges || w.rotation.len() != c.graph.vertex_count() {
        return false;
    }
    // Successor of dart u->v is v->x where x follows u in v's rotation.
    let succ = |u: &str, v: &str| -> (String, String) {
        let list = &w.rotation[v];
        let i = list.iter().position(|x| x == u).expect("symmetric");
        (v.to_string(), list[(i + 1) % list.len()].clone())
    };
    let mut face_of: BTreeMap<(String, String), usize> = BTreeMap::new();
    let mut count = 0;
    for (a, b) in edges
        .iter()
        .flat_map(|(a, b)| [(a.clone(), b.clone()), (b.clone(), a.clone())])
    {
        if face_of.contains_key(&(a.clone(), b.clone())) {
            continue;
        }
        let mut d = (a, b);
        while !face_of.contains_key(&d) {
            face_of.insert(d.clone(), count);
            d = succ(&d.0, &d.1);
        }
        count += 1;
    }
    let n = c.graph.vertex_count();
    let m = edges.len();
    if n >= 1 && count + n != m + 2 && m > 0 {
        return false;
    }
    let h = &c.hierarchy;
    let cluster = |v: &str| h.parent(h.id(v).expect("leaf")).expect("flat");
    for mu in c.clusters() {
        let mut d = Dsu::new(count);
        for ((u, v), &f) in &face_of {
            let in_h = cluster(u) == mu && cluster(v) == mu;
            if !in_h {
                d.union(f, face_of[&(v.clone(), u.clone())]);
            }
            if cluster(u) != mu {
                let first = &w.rotation[u][0];
                d.union(f, face_of[&(u.clone(), first.clone())]);
            }
        }
        let mut class = None;
        for u in c.graph.names().iter().filter(|u| cluster(u) != mu) {
            let Some(first) = w.rotation[u].first() else {
                continue;
            };
            let r = d.find(face_of[&(u.clone(), first.clone())]);
            if *class.get_or_insert(r) != r {
                return false;
            }
        }
    }
    true
}
