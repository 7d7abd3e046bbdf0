//! End-to-end runs of the `geodesic` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use geodesic_center::{fixtures, RawDomain};
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geodesic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn dist_across_the_square() {
    let sq = data("square.json");
    let v = json(&run(&["dist", sq.to_str().unwrap(), "--from", "0,0", "--to", "1,1"]));
    assert!((v["distance"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-11);
    assert_eq!(v["path"].as_array().unwrap().len(), 2);
}

#[test]
fn dist_around_a_hole() {
    let holed = data("holed.json");
    let v = json(&run(&["dist", holed.to_str().unwrap(), "--from", "2,5", "--to", "8,5"]));
    assert!((v["distance"].as_f64().unwrap() - (2.0 + 2.0 * 5f64.sqrt())).abs() < 1e-10);
    assert_eq!(v["path"].as_array().unwrap().len(), 4);
}

#[test]
fn exit_codes() {
    let sq = data("square.json");
    let sq = sq.to_str().unwrap();
    assert_eq!(run(&["validate", sq]).status.code(), Some(0));

    let bowtie = scratch("bowtie.json");
    std::fs::write(&bowtie, r#"{"outer": [[0,0],[1,1],[1,0],[0,1]], "holes": []}"#).unwrap();
    let out = run(&["validate", bowtie.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["ok"], Value::Bool(false));
    assert_eq!(run(&["center", bowtie.to_str().unwrap()]).status.code(), Some(1));

    assert_eq!(
        run(&["dist", sq, "--from", "2,2", "--to", "0.5,0.5"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["dist", "/nonexistent/domain.json", "--from", "0,0", "--to", "1,1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["center", sq, "--eps", "0"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn center_bounds_on_the_square() {
    let sq = data("square.json");
    let v = json(&run(&["center", sq.to_str().unwrap(), "--eps", "0.1"]));
    let (u, l) = (v["U"].as_f64().unwrap(), v["L"].as_f64().unwrap());
    assert!(l <= u && u / l <= 1.1 + 1e-9, "L = {l}, U = {u}");
    assert!(u >= 0.5f64.sqrt() - 1e-9);
}

#[test]
fn diameter_of_the_square() {
    let sq = data("square.json");
    let v = json(&run(&["diameter", sq.to_str().unwrap(), "--eps", "0.1"]));
    let (u, l) = (v["U"].as_f64().unwrap(), v["L"].as_f64().unwrap());
    assert!((l - 2f64.sqrt()).abs() < 1e-9 && u >= l);
}

#[test]
fn spm_svg_parses_with_one_cell_per_root() {
    let holed = data("holed.json");
    let svg = scratch("holed_spm.svg");
    let v = json(&run(&[
        "spm",
        holed.to_str().unwrap(),
        "--source",
        "2,5",
        "--svg",
        svg.to_str().unwrap(),
    ]));
    let text = std::fs::read_to_string(&svg).unwrap();
    let doc = roxmltree::Document::parse(&text).expect("well-formed svg");
    let cells = doc
        .descendants()
        .filter(|n| n.attribute("class") == Some("cell"))
        .count();
    assert!(cells >= 1);
    assert_eq!(cells, v["cells"].as_array().unwrap().len());
    assert!((v["coverage"].as_f64().unwrap() - 1.0).abs() < 1e-9);
}

#[test]
fn gen_is_deterministic_and_valid() {
    let a = run(&["gen", "--seed", "7"]);
    let b = run(&["gen", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, run(&["gen", "--seed", "8"]).stdout);
    let path = scratch("gen7.json");
    std::fs::write(&path, &a.stdout).unwrap();
    assert_eq!(run(&["validate", path.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(
        run(&["check", path.to_str().unwrap(), "--trials", "3"]).status.code(),
        Some(0)
    );
}

#[test]
fn output_flag_writes_a_file() {
    let sq = data("square.json");
    let out = scratch("farthest.json");
    let status = run(&[
        "farthest",
        sq.to_str().unwrap(),
        "--point",
        "0.25,0.5",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert!(status.status.success() && status.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert!((v["phi"].as_f64().unwrap() - 0.75f64.hypot(0.5)).abs() < 1e-9);
}

#[test]
fn shipped_data_matches_fixtures() {
    for (name, d) in [
        ("square.json", fixtures::unit_square()),
        ("triangle.json", fixtures::equilateral_triangle()),
        ("holed.json", fixtures::holed_square()),
        ("three_lobes.json", fixtures::three_lobes()),
    ] {
        let (raw, want) = (RawDomain::load(data(name)).unwrap(), d.to_raw());
        let rings = |r: &RawDomain| {
            std::iter::once(r.outer.clone())
                .chain(r.holes.clone())
                .collect::<Vec<_>>()
        };
        let (a, b) = (rings(&raw), rings(&want));
        assert_eq!(a.len(), b.len(), "{name}");
        for (ra, rb) in a.iter().zip(&b) {
            assert_eq!(ra.len(), rb.len(), "{name}");
            assert!(ra.iter().zip(rb).all(|(p, q)| p.dist(*q) < 1e-12), "{name}");
        }
    }
}
