//! End-to-end roundtrip: solve, reduce, draw, verify, extract, certify.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::drawing::{
    compute_regions, place_vertices_flat, place_vertices_nonflat, svg_render, verify_cplanarity,
    verify_planarity, CPlanarDrawing,
};
use crate::error::Result;
use crate::extraction::{certify, extract_order, sefe_drawings, SefeCertificate};
use crate::instance::{LeafOrder, Page, PtbeInstance};
use crate::io::{clustered_to_json, to_pretty, OrderJson};
use crate::ptbe::{solve, SolveOptions};
use crate::reduction::{check_marker_law, reduce, structural_check, Variant};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stage {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundtripReport {
    pub variant: Variant,
    pub decision: bool,
    pub witness: Option<LeafOrder>,
    pub vertices: usize,
    pub edges: usize,
    pub clusters: usize,
    pub extracted: Option<LeafOrder>,
    pub certificate: Option<SefeCertificate>,
    pub stages: Vec<Stage>,
    pub consistent: bool,
}

/// Report plus every artifact keyed by file name.
#[derive(Clone, Debug)]
pub struct Roundtrip {
    pub report: RoundtripReport,
    pub artifacts: BTreeMap<String, String>,
}

fn stage(name: &str, ok: bool, detail: impl Into<String>) -> Stage {
    Stage {
        name: name.to_string(),
        ok,
        detail: detail.into(),
    }
}

/// Runs the whole pipeline. NO instances stop after the structural checks
/// of the reduction; that still counts as consistent.
pub fn roundtrip(
    instance: &PtbeInstance,
    variant: Variant,
    opts: SolveOptions,
) -> Result<Roundtrip> {
    let mut stages = Vec::new();
    let mut artifacts = BTreeMap::new();
    let outcome = solve(instance, opts)?;
    let witness = outcome.witness;
    stages.push(stage(
        "solve",
        true,
        if witness.is_some() { "YES" } else { "NO" },
    ));

    let (c, gm) = reduce(instance, variant)?;
    artifacts.insert("reduced.json".to_string(), clustered_to_json(&c));
    artifacts.insert("gadget_map.json".to_string(), to_pretty(&gm));
    let report = structural_check(&c, variant, Some(&gm));
    let failures: Vec<String> = report
        .failures()
        .map(|f| format!("{}: {}", f.name, f.detail))
        .collect();
    stages.push(stage("structure", failures.is_empty(), failures.join("; ")));
    if variant == Variant::Flat {
        let law = check_marker_law(instance, &c, &gm);
        stages.push(stage("marker-law", law.is_empty(), law.join("; ")));
    }

    let mut extracted = None;
    let mut certificate = None;
    if let Some(w) = &witness {
        artifacts.insert(
            "order.json".to_string(),
            to_pretty(&OrderJson { order: w.clone() }),
        );
        let cpd = match variant {
            Variant::NonFlat => {
                let coords = place_vertices_nonflat(&c, &gm, w)?;
                let regions = compute_regions(&coords, &c);
                let cpd = CPlanarDrawing::new(coords, regions);
                let p = verify_planarity(&cpd.coords, &c.graph);
                let q = verify_cplanarity(&cpd, &c);
                stages.push(stage(
                    "verify",
                    p.is_empty() && q.is_empty(),
                    format!("{} planarity, {} c-planarity violations", p.len(), q.len()),
                ));
                Some(cpd)
            }
            Variant::Flat => match place_vertices_flat(&c, &gm, w) {
                Ok(cpd) => {
                    stages.push(stage(
                        "verify",
                        true,
                        "0 planarity, 0 c-planarity violations",
                    ));
                    Some(cpd)
                }
                Err(e) => {
                    stages.push(stage("verify", false, e.to_string()));
                    None
                }
            },
        };
        if let Some(cpd) = cpd {
            artifacts.insert("drawing.json".to_string(), to_pretty(&cpd));
            artifacts.insert("drawing.svg".to_string(), svg_render(&cpd, Some(&c)));
            match extract_order(&cpd, &gm) {
                Ok(o) => {
                    let cert = certify(instance, &o)?;
                    let same = &o == w || o == w.reversed();
                    stages.push(stage(
                        "extract",
                        same && cert.accepted,
                        if same {
                            "matches witness"
                        } else {
                            "differs from witness"
                        },
                    ));
                    artifacts.insert("certificate.json".to_string(), to_pretty(&cert));
                    if cert.accepted {
                        let d = sefe_drawings(instance, &o)?;
                        let ok = d.spot_check(Page::One) && d.spot_check(Page::Two);
                        stages.push(stage(
                            "sefe",
                            ok,
                            if ok {
                                "spot check passed"
                            } else {
                                "spot check found a crossing"
                            },
                        ));
                        artifacts.insert("sefe1.svg".to_string(), d.svg(Page::One));
                        artifacts.insert("sefe2.svg".to_string(), d.svg(Page::Two));
                    }
                    extracted = Some(o);
                    certificate = Some(cert);
                }
                Err(e) => stages.push(stage("extract", false, e.to_string())),
            }
        }
    }

    let consistent = stages.iter().all(|s| s.ok);
    let report = RoundtripReport {
        variant,
        decision: witness.is_some(),
        witness,
        vertices: c.graph.vertex_count(),
        edges: c.graph.edge_count(),
        clusters: c.clusters().len(),
        extracted,
        certificate,
        stages,
        consistent,
    };
    artifacts.insert("report.json".to_string(), to_pretty(&report));
    Ok(Roundtrip { report, artifacts })
}
