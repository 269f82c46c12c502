use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use sefe_cplanar::io::{
    clustered_to_json, instance_to_json, parse_clustered, parse_instance, parse_order, to_pretty,
};
use sefe_cplanar::oracle::cplanar_bruteforce;
use sefe_cplanar::reduction::graph_dot;
use sefe_cplanar::{
    certify, compute_regions, extract_order, place_vertices_flat, place_vertices_nonflat,
    random_instance, reduce, roundtrip, sefe_drawings, solve, svg_render, validate_ptbe,
    verify_cplanarity, verify_planarity, CPlanarDrawing, GadgetMap, Page, Shape, SolveOptions,
    Strategy, Variant,
};

/// Exit codes: 0 success, 1 negative answer (NO, violations, not certified,
/// not c-planar, inconsistent roundtrip), 2 error, 3 oracle inconclusive.
#[derive(Parser)]
#[command(
    name = "sefe-cplanar",
    version,
    about = "SEFE with a tree intersection, reduced to clustered planarity"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    /// Permute children at every internal node.
    A,
    /// Filter all leaf permutations.
    B,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Nonflat,
    Flat,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Nonflat => Variant::NonFlat,
            VariantArg::Flat => Variant::Flat,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    Star,
    RandomTree,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check an instance file and print the violations.
    Validate { instance: PathBuf },
    /// Decide an instance exhaustively.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "a")]
        strategy: StrategyArg,
        #[arg(long, default_value_t = sefe_cplanar::ptbe::DEFAULT_LEAF_CAP)]
        cap: usize,
        /// Disable partial-order pruning.
        #[arg(long)]
        no_prune: bool,
    },
    /// Build the clustered graph of an instance.
    Reduce {
        instance: PathBuf,
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(short, long)]
        out: PathBuf,
        #[arg(long)]
        gadget_map: Option<PathBuf>,
        /// Also write Graphviz DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Place a reduced graph for a leaf order.
    Draw {
        reduced: PathBuf,
        gadget_map: PathBuf,
        order: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Check a drawing against a reduced graph.
    Verify { drawing: PathBuf, reduced: PathBuf },
    /// Recover the leaf order from a drawing and certify it.
    Extract {
        drawing: PathBuf,
        gadget_map: PathBuf,
        instance: PathBuf,
    },
    /// Solve, reduce, draw, verify, extract and certify in one go.
    Roundtrip {
        instance: PathBuf,
        #[arg(long, value_enum)]
        variant: VariantArg,
        /// Write every artifact into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Generate a random instance.
    Gen {
        #[arg(long)]
        leaves: usize,
        #[arg(long, default_value_t = 0)]
        edges1: usize,
        #[arg(long, default_value_t = 0)]
        edges2: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "random-tree")]
        shape: ShapeArg,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Render a drawing as SVG.
    Render {
        drawing: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
        /// Reduced graph, needed to draw edges.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Render the two drawings of the simultaneous embedding.
    SefeRender {
        instance: PathBuf,
        order: PathBuf,
        #[arg(short, long, num_args = 2, value_names = ["G1", "G2"])]
        out: Vec<PathBuf>,
    },
    /// Brute-force c-planarity of a tiny flat clustered graph.
    Oracle {
        clustered: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_extra: usize,
    },
}

fn read(p: &Path) -> Result<String> {
    fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
}

fn write(p: &Path, text: &str) -> Result<()> {
    fs::write(p, text).with_context(|| format!("writing {}", p.display()))
}

fn load_instance(p: &Path) -> Result<sefe_cplanar::PtbeInstance> {
    Ok(parse_instance(&read(p)?)?)
}

fn load_gadget_map(p: &Path) -> Result<GadgetMap> {
    Ok(serde_json::from_str(&read(p)?)?)
}

fn load_drawing(p: &Path) -> Result<CPlanarDrawing> {
    Ok(serde_json::from_str(&read(p)?)?)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Validate { instance } => {
            let inst = load_instance(&instance)?;
            let report = validate_ptbe(&inst);
            print!("{}", to_pretty(&report));
            Ok(if report.is_ok() { 0 } else { 2 })
        }
        Cmd::Solve {
            instance,
            strategy,
            cap,
            no_prune,
        } => {
            let inst = load_instance(&instance)?;
            let opts = SolveOptions {
                strategy: match strategy {
                    StrategyArg::A => Strategy::ByChildPermutation,
                    StrategyArg::B => Strategy::ByFilteredPermutation,
                },
                leaf_cap: cap,
                prune: !no_prune,
            };
            let out = solve(&inst, opts)?;
            let value = match &out.witness {
                Some(w) => json!({"decision": "YES", "order": w, "stats": out.stats}),
                None => json!({"decision": "NO", "stats": out.stats}),
            };
            print!("{}", to_pretty(&value));
            Ok(if out.is_yes() { 0 } else { 1 })
        }
        Cmd::Reduce {
            instance,
            variant,
            out,
            gadget_map,
            dot,
        } => {
            let inst = load_instance(&instance)?;
            let (c, gm) = reduce(&inst, variant.into())?;
            write(&out, &clustered_to_json(&c))?;
            if let Some(p) = gadget_map {
                write(&p, &to_pretty(&gm))?;
            }
            if let Some(p) = dot {
                write(&p, &graph_dot(&c))?;
            }
            Ok(0)
        }
        Cmd::Draw {
            reduced,
            gadget_map,
            order,
            out,
        } => {
            let c = parse_clustered(&read(&reduced)?)?;
            let gm = load_gadget_map(&gadget_map)?;
            let order = parse_order(&read(&order)?)?;
            let cpd = match gm.variant {
                Variant::NonFlat => {
                    let coords = place_vertices_nonflat(&c, &gm, &order)?;
                    let regions = compute_regions(&coords, &c);
                    CPlanarDrawing::new(coords, regions)
                }
                Variant::Flat => place_vertices_flat(&c, &gm, &order)?,
            };
            write(&out, &to_pretty(&cpd))?;
            Ok(0)
        }
        Cmd::Verify { drawing, reduced } => {
            let cpd = load_drawing(&drawing)?;
            let c = parse_clustered(&read(&reduced)?)?;
            let planarity = verify_planarity(&cpd.coords, &c.graph);
            let cplanarity = verify_cplanarity(&cpd, &c);
            let ok = planarity.is_empty() && cplanarity.is_empty();
            print!(
                "{}",
                to_pretty(&json!({"ok": ok, "planarity": planarity, "cplanarity": cplanarity}))
            );
            Ok(if ok { 0 } else { 1 })
        }
        Cmd::Extract {
            drawing,
            gadget_map,
            instance,
        } => {
            let cpd = load_drawing(&drawing)?;
            let gm = load_gadget_map(&gadget_map)?;
            let inst = load_instance(&instance)?;
            let order = extract_order(&cpd, &gm)?;
            let cert = certify(&inst, &order)?;
            print!("{}", to_pretty(&cert));
            Ok(if cert.accepted { 0 } else { 1 })
        }
        Cmd::Roundtrip {
            instance,
            variant,
            out_dir,
        } => {
            let inst = load_instance(&instance)?;
            let r = roundtrip(&inst, variant.into(), SolveOptions::default())?;
            if let Some(dir) = out_dir {
                fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
                for (name, text) in &r.artifacts {
                    write(&dir.join(name), text)?;
                }
            }
            print!("{}", to_pretty(&r.report));
            Ok(if r.report.consistent { 0 } else { 1 })
        }
        Cmd::Gen {
            leaves,
            edges1,
            edges2,
            seed,
            shape,
            out,
        } => {
            let shape = match shape {
                ShapeArg::Star => Shape::Star,
                ShapeArg::RandomTree => Shape::RandomTree,
            };
            let text = instance_to_json(&random_instance(leaves, edges1, edges2, seed, shape));
            match out {
                Some(p) => write(&p, &text)?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Cmd::Render {
            drawing,
            out,
            graph,
        } => {
            let cpd = load_drawing(&drawing)?;
            let c = match graph {
                Some(p) => Some(parse_clustered(&read(&p)?)?),
                None => None,
            };
            write(&out, &svg_render(&cpd, c.as_ref()))?;
            Ok(0)
        }
        Cmd::SefeRender {
            instance,
            order,
            out,
        } => {
            let inst = load_instance(&instance)?;
            let order = parse_order(&read(&order)?)?;
            let [g1, g2] = out.as_slice() else {
                bail!("expected two output paths")
            };
            let d = sefe_drawings(&inst, &order)?;
            write(g1, &d.svg(Page::One))?;
            write(g2, &d.svg(Page::Two))?;
            Ok(0)
        }
        Cmd::Oracle {
            clustered,
            max_extra,
        } => {
            let c = parse_clustered(&read(&clustered)?)?;
            let v = cplanar_bruteforce(&c, max_extra)?;
            print!("{}", to_pretty(&v));
            Ok(v.exit_code() as u8)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
