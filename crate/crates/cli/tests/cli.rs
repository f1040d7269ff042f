use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperflex")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn inflect_totals() {
    let c = data("curve_g2.json");
    let r2 = json(&run(&["inflect", &c, "--k", "2"]));
    assert_eq!(r2["total_degree"], 18);
    assert_eq!(r2["real_degree"], 18);
    let r3 = json(&run(&["inflect", &c, "--k", "3"]));
    assert_eq!(r3["total_degree"], 50);
    let t = json(&run(&["inflect", &c, "--k", "3", "--wronskian", "full", "--roots", "sturm"]));
    assert_eq!(t["real_degree"], r3["real_degree"]);
}

#[test]
fn exit_codes() {
    let c = data("curve_g2.json");
    assert_eq!(run(&["inflect", &c, "--k", "0"]).status.code(), Some(2));
    assert_eq!(run(&["patchwork", &data("family_g2_mismatch.json")]).status.code(), Some(3));
    assert_eq!(run(&["inflect", &data("missing.json")]).status.code(), Some(5));
    assert_eq!(run(&["inflect", &c, "--wronskian", "nope"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(run(&["inflect", bad.to_str().unwrap()]).status.code(), Some(2));
    let singular = dir.path().join("singular.json");
    std::fs::write(&singular, r#"{ "genus": 2, "f_coeffs": ["0", "1", "-2", "2", "-2", "1"] }"#).unwrap();
    assert_eq!(run(&["inflect", singular.to_str().unwrap()]).status.code(), Some(3));
    let piece = dir.path().join("piece.json");
    std::fs::write(&piece, r#"{ "genus": 1, "pieces": [{ "a": "1", "roots": ["1", "1"] }] }"#).unwrap();
    assert_eq!(run(&["regenerate", piece.to_str().unwrap()]).status.code(), Some(3));

    let file = dir.path().join("plain");
    std::fs::write(&file, "").unwrap();
    let out = run(&["patchwork", &data("family_g2.json"), "--svg", "--out", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn patchwork_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let r = json(&run(&["patchwork", &data("family_g2.json"), "--svg", "--json", "--out", d]));
    for f in ["subdivision.svg", "tropical.svg", "skeleton.svg", "patchwork.json"] {
        assert!(dir.path().join(f).is_file(), "{f} missing");
    }
    assert_eq!(r["skeleton"]["vertices"].as_array().unwrap().len(), 2 + 2 + 4);
    let g1 = tempfile::tempdir().unwrap();
    json(&run(&["patchwork", &data("family_g1.json"), "--svg", "--out", g1.path().to_str().unwrap()]));
    let svg = std::fs::read_to_string(g1.path().join("skeleton.svg")).unwrap();
    assert_eq!(svg.matches("<circle").count(), 1);
}

#[test]
fn regenerate_with_csv() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let r = json(&run(&["regenerate", &data("family_g2.json"), "--k", "3", "--csv", "--out", d]));
    assert_eq!(r["real"]["holds"], true);
    assert_eq!(r["complex"]["holds"], true);
    assert_eq!(r["real"]["measured"], r["real"]["predicted"]);
    let csv = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    assert!(csv.starts_with("halvings,epsilon,"));
    assert!(csv.lines().count() > 1);
}

#[test]
fn json_is_byte_identical() {
    let f = data("family_g2.json");
    for args in [vec!["specialize", f.as_str()], vec!["sweep", f.as_str(), "--max-halvings", "12"]] {
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
    let a = run(&["inflect", &data("curve_g2.json")]);
    let b = Command::new(env!("CARGO_BIN_EXE_hyperflex"))
        .args(["inflect", &data("curve_g2.json")])
        .env("HYPERFLEX_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bounds_command() {
    let r = json(&run(&["bounds", "--genus", "2", "--k", "3", "--n", "2"]));
    assert_eq!(r["holds"], true);
    assert_eq!(r["predicted"], r["achieved"]);
    assert_eq!(run(&["bounds", "--genus", "2", "--n", "4"]).status.code(), Some(2));
}
