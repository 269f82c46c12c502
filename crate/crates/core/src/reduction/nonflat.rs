use std::collections::BTreeMap;

use crate::clustered::ClusteredGraph;
use crate::error::Result;
use crate::instance::{normalize_pair, Page, PtbeInstance};

use super::draft::Draft;
use super::gadget::{EdgePath, GadgetMap, LeafPath, SourceStats, Variant};
use super::normalize_root;

pub const LAMBDA: &str = "lambda";
pub const MU_B: &str = "muB";
pub const MU_R: &str = "muR";
pub const MU_ALPHA: &str = "mu_alpha";
pub const MU_RHO: &str = "mu_rho";
pub const MU_BETA: &str = "mu_beta";

pub const U_B: &str = "uB";
pub const U_R: &str = "uR";
pub const U1_ALPHA: &str = "u'alpha";
pub const U1_RHO: &str = "u'rho";
pub const U1_BETA: &str = "u'beta";
pub const U2_ALPHA: &str = "u''alpha";
pub const U2_RHO: &str = "u''rho";
pub const U2_BETA: &str = "u''beta";

pub fn alpha_name(leaf: &str) -> String {
    format!("va:{leaf}")
}

pub fn middle_name(leaf: &str) -> String {
    format!("v:{leaf}")
}

pub fn beta_name(leaf: &str) -> String {
    format!("vb:{leaf}")
}

pub fn nu_name(w: &str) -> String {
    format!("nu:{w}")
}

pub fn edge_middle_name(page: Page, a: &str, b: &str) -> String {
    let (a, b) = normalize_pair(a, b);
    match page {
        Page::One => format!("eR:{a}:{b}"),
        Page::Two => format!("eB:{a}:{b}"),
    }
}

/// The two frame cycles, in cyclic order.
pub fn frame_cycles() -> [Vec<String>; 2] {
    let c1 = (1..=6).map(|m| format!("u{m}")).collect();
    let c2 = [
        "u7", U_B, "u8", U2_ALPHA, U2_RHO, U2_BETA, "u9", U_R, "u10", U1_BETA, U1_RHO, U1_ALPHA,
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    [c1, c2]
}

pub const CONNECTORS: [(&str, &str); 6] = [
    ("u1", "u7"),
    ("u2", "u8"),
    ("u3", U2_RHO),
    ("u4", "u9"),
    ("u5", "u10"),
    ("u6", U1_RHO),
];

/// Builds the non-flat clustered graph of the reduction.
pub fn reduce_nonflat(instance: &PtbeInstance) -> Result<(ClusteredGraph, GadgetMap)> {
    let (draft, gm) = build(instance)?;
    Ok((draft.finish()?, gm))
}

pub(crate) fn build(instance: &PtbeInstance) -> Result<(Draft, GadgetMap)> {
    instance.ensure_valid()?;
    let inst = normalize_root(instance);
    let tree = &inst.tree;
    let mut d = Draft::new(LAMBDA);
    let mut special = BTreeMap::new();
    let mut fixed = BTreeMap::new();
    special.insert("lambda".to_string(), LAMBDA.to_string());

    for m in 1..=10 {
        let (c, u) = (format!("mu{m}"), format!("u{m}"));
        d.add_cluster(&c, LAMBDA);
        d.add_vertex(&u, &c);
        special.insert(c.clone(), c);
        fixed.insert(u.clone(), u);
    }
    let groups: [(&str, &[&str]); 5] = [
        (MU_B, &[U_B]),
        (MU_R, &[U_R]),
        (MU_ALPHA, &[U1_ALPHA, U2_ALPHA]),
        (MU_RHO, &[U1_RHO, U2_RHO]),
        (MU_BETA, &[U1_BETA, U2_BETA]),
    ];
    for (c, members) in groups {
        d.add_cluster(c, LAMBDA);
        special.insert(c.to_string(), c.to_string());
        for u in members {
            d.add_vertex(u, c);
            fixed.insert(u.to_string(), u.to_string());
        }
    }
    for cycle in frame_cycles() {
        for k in 0..cycle.len() {
            d.add_edge(&cycle[k], &cycle[(k + 1) % cycle.len()]);
        }
    }
    for (a, b) in CONNECTORS {
        d.add_edge(a, b);
    }

    let root = tree.root();
    let mut cluster_of = BTreeMap::new();
    let host = |v: usize| match tree.parent(v) {
        Some(p) if p != root => nu_name(tree.name(p)),
        _ => MU_RHO.to_string(),
    };
    for v in tree.preorder() {
        if v != root && !tree.is_leaf(v) {
            let c = nu_name(tree.name(v));
            d.add_cluster(&c, &host(v));
            cluster_of.insert(tree.name(v).to_string(), c);
        }
    }

    let mut leaf_paths = BTreeMap::new();
    for v in tree.leaves() {
        let leaf = tree.name(v);
        let (a, m, b) = (alpha_name(leaf), middle_name(leaf), beta_name(leaf));
        d.add_vertex(&a, MU_ALPHA);
        d.add_vertex(&m, &host(v));
        d.add_vertex(&b, MU_BETA);
        d.add_edge(&a, &m);
        d.add_edge(&m, &b);
        leaf_paths.insert(
            leaf.to_string(),
            LeafPath {
                alpha: a,
                middle: m,
                beta: b,
                z_alpha: None,
                z_beta: None,
                markers: Vec::new(),
            },
        );
    }

    let mut edge_paths = Vec::new();
    for page in [Page::One, Page::Two] {
        let (cluster, end): (&str, fn(&str) -> String) = match page {
            Page::One => (MU_R, beta_name),
            Page::Two => (MU_B, alpha_name),
        };
        let mut pairs: Vec<_> = inst
            .page(page)
            .iter()
            .map(|(a, b)| normalize_pair(a, b))
            .collect();
        pairs.sort();
        for (i, j) in pairs {
            let mid = edge_middle_name(page, &i, &j);
            d.add_vertex(&mid, cluster);
            d.add_edge(&end(&i), &mid);
            d.add_edge(&mid, &end(&j));
            edge_paths.push(EdgePath {
                page,
                ends: (i, j),
                middle: mid,
            });
        }
    }

    let gm = GadgetMap {
        variant: Variant::NonFlat,
        tree_root: tree.name(root).to_string(),
        fixed_vertices: fixed,
        leaf_paths,
        edge_paths,
        cluster_of,
        special_clusters: special,
        split_copies: BTreeMap::new(),
        wrap_clusters: BTreeMap::new(),
        marker_clusters: BTreeMap::new(),
        rho_subdividers: Vec::new(),
        source: SourceStats {
            leaves: tree.leaf_count(),
            page1: inst.page1.len(),
            page2: inst.page2.len(),
            internal: tree.internal().len(),
        },
    };
    Ok((d, gm))
}
