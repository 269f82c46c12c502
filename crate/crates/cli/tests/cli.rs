use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sefe-cplanar"))
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin()
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn star_json(leaves: &[&str], e1: &[(&str, &str)], e2: &[(&str, &str)]) -> String {
    let nodes: Vec<String> = leaves
        .iter()
        .map(|l| format!(r#"{{"id":"{l}","parent":"r"}}"#))
        .chain([r#"{"id":"r"}"#.to_string()])
        .collect();
    let pairs = |p: &[(&str, &str)]| {
        p.iter()
            .map(|(a, b)| format!(r#"["{a}","{b}"]"#))
            .collect::<Vec<_>>()
            .join(",")
    };
    format!(
        r#"{{"tree":{{"root":"r","nodes":[{}]}},"pages":{{"E1":[{}],"E2":[{}]}}}}"#,
        nodes.join(","),
        pairs(e1),
        pairs(e2)
    )
}

fn put(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn k5_pairs() -> Vec<(&'static str, &'static str)> {
    let v = ["a", "b", "c", "d", "e"];
    let mut out = vec![];
    for i in 0..5 {
        for j in i + 1..5 {
            out.push((v[i], v[j]));
        }
    }
    out
}

#[test]
fn gen_then_roundtrip_succeeds() {
    let d = TempDir::new().unwrap();
    let o = run(
        d.path(),
        &[
            "gen", "--leaves", "4", "--edges1", "1", "--edges2", "1", "--seed", "7", "-o", "i.json",
        ],
    );
    assert_eq!(code(&o), 0);
    for v in ["nonflat", "flat"] {
        let o = run(d.path(), &["roundtrip", "i.json", "--variant", v]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    }
}

#[test]
fn gen_is_seed_deterministic() {
    let d = TempDir::new().unwrap();
    let args = [
        "gen", "--leaves", "7", "--edges1", "3", "--edges2", "2", "--seed", "42",
    ];
    let a = run(d.path(), &args);
    let b = run(d.path(), &args);
    assert_eq!(a.stdout, b.stdout);
    let star = run(
        d.path(),
        &["gen", "--leaves", "7", "--seed", "42", "--shape", "star"],
    );
    assert_ne!(a.stdout, star.stdout);
}

#[test]
fn validate_exit_codes() {
    let d = TempDir::new().unwrap();
    put(
        d.path(),
        "ok.json",
        &star_json(&["a", "b", "c"], &[("a", "b")], &[("b", "c")]),
    );
    put(
        d.path(),
        "shared.json",
        &star_json(&["a", "b", "c"], &[("a", "b")], &[("b", "a")]),
    );
    put(d.path(), "broken.json", "{ not json");
    assert_eq!(code(&run(d.path(), &["validate", "ok.json"])), 0);
    let o = run(d.path(), &["validate", "shared.json"]);
    assert_eq!(code(&o), 2);
    assert!(!o.stdout.is_empty());
    assert_eq!(code(&run(d.path(), &["validate", "broken.json"])), 2);
    assert_eq!(code(&run(d.path(), &["validate", "missing.json"])), 2);
}

#[test]
fn solve_exit_codes() {
    let d = TempDir::new().unwrap();
    put(
        d.path(),
        "k5.json",
        &star_json(&["a", "b", "c", "d", "e"], &k5_pairs(), &[]),
    );
    put(
        d.path(),
        "yes.json",
        &star_json(&["a", "b", "c", "d"], &[("a", "c"), ("b", "d")], &[]),
    );
    for s in ["a", "b"] {
        let o = run(d.path(), &["solve", "k5.json", "--strategy", s]);
        assert_eq!(code(&o), 1);
        assert!(String::from_utf8_lossy(&o.stdout).contains("\"NO\""));
        assert_eq!(
            code(&run(d.path(), &["solve", "yes.json", "--strategy", s])),
            0
        );
    }
    assert_eq!(code(&run(d.path(), &["solve", "k5.json", "--cap", "3"])), 2);
}

#[test]
fn step_by_step_pipeline_and_failures() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    put(
        p,
        "i.json",
        &star_json(&["a", "b", "c", "d"], &[("a", "c")], &[("b", "d")]),
    );
    let o = run(p, &["solve", "i.json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    put(
        p,
        "order.json",
        &serde_json::to_string(&v["order"]).unwrap(),
    );
    for variant in ["nonflat", "flat"] {
        let o = run(
            p,
            &[
                "reduce",
                "i.json",
                "--variant",
                variant,
                "-o",
                "red.json",
                "--gadget-map",
                "gm.json",
                "--dot",
                "g.dot",
            ],
        );
        assert_eq!(code(&o), 0);
        assert!(fs::read_to_string(p.join("g.dot"))
            .unwrap()
            .starts_with("graph"));
        assert_eq!(
            code(&run(
                p,
                &["draw", "red.json", "gm.json", "order.json", "-o", "d.json"]
            )),
            0
        );
        assert_eq!(code(&run(p, &["verify", "d.json", "red.json"])), 0);
        let o = run(p, &["extract", "d.json", "gm.json", "i.json"]);
        assert_eq!(code(&o), 0);
        assert!(String::from_utf8_lossy(&o.stdout).contains("\"accepted\": true"));
        assert_eq!(
            code(&run(
                p,
                &["render", "d.json", "-o", "d.svg", "--graph", "red.json"]
            )),
            0
        );
        assert_eq!(code(&run(p, &["render", "d.json", "-o", "bare.svg"])), 0);
        assert!(fs::read_to_string(p.join("d.svg"))
            .unwrap()
            .contains("<line"));
    }

    // A drawing whose vertices are stacked on one point fails verification.
    let text = fs::read_to_string(p.join("d.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    for (_, pt) in v["coords"].as_object_mut().unwrap() {
        *pt = serde_json::json!(["0/1", "0/1"]);
    }
    put(p, "bad.json", &v.to_string());
    let o = run(p, &["verify", "bad.json", "red.json"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stdout).contains("coincident_vertices"));

    // The same drawing certified against an instance it does not solve.
    put(
        p,
        "other.json",
        &star_json(&["a", "b", "c", "d"], &[("a", "c"), ("b", "d")], &[]),
    );
    let o = run(p, &["extract", "d.json", "gm.json", "other.json"]);
    let order: Vec<String> = serde_json::from_value(v_order(&p.join("order.json"))).unwrap();
    let alternates = {
        let pos = |x: &str| order.iter().position(|y| y == x).unwrap();
        let (a, c, b, dd) = (pos("a"), pos("c"), pos("b"), pos("d"));
        let inside = |x: usize| a.min(c) < x && x < a.max(c);
        inside(b) != inside(dd)
    };
    assert_eq!(code(&o), if alternates { 1 } else { 0 });

    // Drawing with a missing vertex cannot be extracted.
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["coords"].as_object_mut().unwrap().remove("v:a");
    put(p, "partial.json", &v.to_string());
    assert_eq!(
        code(&run(p, &["extract", "partial.json", "gm.json", "i.json"])),
        2
    );
}

fn v_order(p: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn extract_rejects_uncertified_order() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    // Order a b c d solves the first instance but alternates on the second.
    put(
        p,
        "i.json",
        &star_json(&["a", "b", "c", "d"], &[("a", "b")], &[]),
    );
    put(
        p,
        "other.json",
        &star_json(&["a", "b", "c", "d"], &[("a", "c"), ("b", "d")], &[]),
    );
    put(p, "order.json", r#"{"order":["a","b","c","d"]}"#);
    assert_eq!(
        code(&run(
            p,
            &[
                "reduce",
                "i.json",
                "--variant",
                "nonflat",
                "-o",
                "red.json",
                "--gadget-map",
                "gm.json"
            ]
        )),
        0
    );
    assert_eq!(
        code(&run(
            p,
            &["draw", "red.json", "gm.json", "order.json", "-o", "d.json"]
        )),
        0
    );
    let o = run(p, &["extract", "d.json", "gm.json", "other.json"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stdout).contains("\"accepted\": false"));
}

#[test]
fn sefe_render_writes_two_files_or_refuses() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    put(
        p,
        "i.json",
        &star_json(&["a", "b", "c", "d"], &[("a", "c"), ("b", "d")], &[]),
    );
    put(p, "good.json", r#"["a","c","b","d"]"#);
    put(p, "bad.json", r#"["a","b","c","d"]"#);
    assert_eq!(
        code(&run(
            p,
            &[
                "sefe-render",
                "i.json",
                "good.json",
                "-o",
                "g1.svg",
                "g2.svg"
            ]
        )),
        0
    );
    assert!(fs::read_to_string(p.join("g1.svg"))
        .unwrap()
        .contains("<path"));
    assert!(!fs::read_to_string(p.join("g2.svg"))
        .unwrap()
        .contains("<path"));
    assert_eq!(
        code(&run(
            p,
            &[
                "sefe-render",
                "i.json",
                "bad.json",
                "-o",
                "x1.svg",
                "x2.svg"
            ]
        )),
        2
    );
}

fn clustered_json(
    vertices: &[&str],
    edges: &[(&str, &str)],
    clusters: &[(&str, &[&str])],
) -> String {
    let mut nodes = vec![r#"{"id":"root"}"#.to_string()];
    for (c, members) in clusters {
        nodes.push(format!(r#"{{"id":"{c}","parent":"root"}}"#));
        for m in *members {
            nodes.push(format!(r#"{{"id":"{m}","parent":"{c}"}}"#));
        }
    }
    let vs: Vec<String> = vertices.iter().map(|v| format!(r#""{v}""#)).collect();
    let es: Vec<String> = edges
        .iter()
        .map(|(a, b)| format!(r#"["{a}","{b}"]"#))
        .collect();
    format!(
        r#"{{"graph":{{"vertices":[{}],"edges":[{}]}},"hierarchy":{{"root":"root","nodes":[{}]}}}}"#,
        vs.join(","),
        es.join(","),
        nodes.join(",")
    )
}

#[test]
fn oracle_exit_codes() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    let v = ["a", "b", "c", "d", "e"];
    put(p, "k5.json", &clustered_json(&v, &k5_pairs(), &[("K", &v)]));
    let cyc = [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")];
    put(
        p,
        "cyc.json",
        &clustered_json(&v[..4], &cyc, &[("A", &["a", "c"]), ("B", &["b", "d"])]),
    );
    assert_eq!(code(&run(p, &["oracle", "k5.json"])), 1);
    let o = run(p, &["oracle", "cyc.json", "--max-extra", "2"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("\"cplanar\""));
    assert_eq!(
        code(&run(p, &["oracle", "cyc.json", "--max-extra", "1"])),
        3
    );
    assert_eq!(
        code(&run(p, &["oracle", "cyc.json", "--max-extra", "9"])),
        2
    );
}

#[test]
fn roundtrip_artifacts_are_byte_identical() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    assert_eq!(
        code(&run(
            p,
            &[
                "gen", "--leaves", "6", "--edges1", "2", "--edges2", "2", "--seed", "3", "-o",
                "i.json"
            ]
        )),
        0
    );
    for dir in ["one", "two"] {
        assert_eq!(
            code(&run(
                p,
                &["roundtrip", "i.json", "--variant", "flat", "--out-dir", dir]
            )),
            0
        );
    }
    let names: Vec<_> = fs::read_dir(p.join("one"))
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    assert!(names.len() >= 8);
    for n in names {
        assert_eq!(
            fs::read(p.join("one").join(&n)).unwrap(),
            fs::read(p.join("two").join(&n)).unwrap()
        );
    }
}

#[test]
fn help_lists_subcommands() {
    let o = bin().arg("--help").output().unwrap();
    let text = String::from_utf8_lossy(&o.stdout);
    for s in [
        "validate",
        "solve",
        "reduce",
        "draw",
        "verify",
        "extract",
        "roundtrip",
        "gen",
        "render",
        "sefe-render",
        "oracle",
    ] {
        assert!(text.contains(s), "{s}");
    }
    assert_eq!(code(&bin().arg("bogus").output().unwrap()), 2);
}
