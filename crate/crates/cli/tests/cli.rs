use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn algmatroid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_algmatroid")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = algmatroid(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

fn lists(v: &Value) -> Vec<Vec<u64>> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_array().unwrap().iter().map(|i| i.as_u64().unwrap()).collect())
        .collect()
}

#[test]
fn circle_rank_bases_circuits() {
    let circle = path("circle.problem");
    assert_eq!(json(&["rank", &circle, "x", "y"])["rank"], 1);
    assert_eq!(json(&["rank", &circle, "x y"])["rank"], 1);
    assert_eq!(json(&["rank", &circle])["rank"], 0);
    let b = json(&["bases", &circle]);
    assert_eq!(lists(&b["bases"]), vec![vec![0], vec![1]]);
    let c = json(&["circuits", &circle]);
    assert_eq!(lists(&c["circuits"]), vec![vec![0, 1]]);
    assert_eq!(c["schema"], "algmatroid-report/1");
}

#[test]
fn nonpappus_full_rank() {
    assert_eq!(json(&["rank", &path("nonpappus_f2.problem"), "--all"])["rank"], 3);
}

#[test]
fn circle_decorations() {
    let d = json(&["decorate", &path("circle.problem")]);
    let c = &d["decorations"]["circuits"][0];
    assert_eq!(c["degree"], 2);
    assert_eq!(c["polynomial"], "x^2+y^2-1");
    for b in d["decorations"]["bases"].as_array().unwrap() {
        assert_eq!(b["base_degree"], 2);
    }
    assert_eq!(d["histograms"]["base_degrees"]["2"], 2);
}

#[test]
fn nonpappus_degree_histogram() {
    let d = json(&["decorate", &path("nonpappus_f2.problem"), "--summary-only", "--no-bases"]);
    let h = &d["histograms"]["circuit_degrees"];
    let expected = [("1", 2), ("2", 33), ("3", 24), ("4", 21), ("5", 4), ("7", 2)];
    assert_eq!(h.as_object().unwrap().len(), expected.len());
    for (k, v) in expected {
        assert_eq!(h[k], v, "degree {k}");
    }
    assert!(d["decorations"]["circuits"][0].get("polynomial").is_none());
}

#[test]
fn mixture_base_degrees() {
    let d = json(&["decorate", &path("mixture.problem"), "--no-circuits", "--summary-only"]);
    assert_eq!(d["bases"].as_array().unwrap().len(), 112);
    let h = &d["histograms"]["base_degrees"];
    assert_eq!((h["1"].as_u64(), h["2"].as_u64(), h["3"].as_u64()), (Some(52), Some(54), Some(6)));
}

#[test]
fn nm_loci() {
    let torus = json(&["nm-locus", &path("torus.problem")]);
    assert_eq!(torus["nm_locus"]["empty"], false);
    assert!(torus["nm_locus"]["generator"].as_str().unwrap().contains("x*y*z"));
    let parabola = json(&["nm-locus", &path("parabola_param.problem")]);
    assert_eq!(parabola["nm_locus"]["generator"], "t");
    let line = json(&["nm-locus", &path("line_param.problem")]);
    assert_eq!(line["nm_locus"]["empty"], true);
}

#[test]
fn check_passes_on_fixture() {
    let r = json(&["check", &path("twisted_cubic.problem")]);
    assert_eq!(r["check"]["passed"], true);
    assert_eq!(r["check"]["naive_matches_exchange"], true);
    assert_eq!(r["check"]["duality_involution"], true);
    let checks = r["check"]["axioms"]["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["passed"] == true && c["checked"].as_u64().unwrap() > 0));
}

#[test]
fn cross_engine_on_parametrization() {
    let r = json(&["check", &path("twisted_cubic_param.problem"), "--cross-engine", "20"]);
    assert_eq!(r["check"]["cross_engine"]["mismatch"], Value::Null);
    assert_eq!(r["check"]["passed"], true);
}

#[test]
fn corrupted_bases_fail_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("np.json");
    let out = algmatroid(&["bases", &path("nonpappus_f2.problem"), "--out", good.to_str().unwrap()]);
    assert!(out.status.success());

    let mut m: Value = serde_json::from_str(&std::fs::read_to_string(&good).unwrap()).unwrap();
    let ok = algmatroid(&["check", "--matroid", good.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stdout));

    m["bases"].as_array_mut().unwrap().remove(0);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, serde_json::to_string(&m).unwrap()).unwrap();
    let out = algmatroid(&["check", "--matroid", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["check"]["passed"], false);
    let exchange = r["check"]["axioms"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "basis exchange")
        .unwrap()
        .clone();
    assert_eq!(exchange["passed"], false);
    assert!(exchange["witness"].is_string());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.problem");
    std::fs::write(&broken, "[field]\nQQ\n[variables]\nx y\n[ideal]\nx^2 + w\n").unwrap();
    assert_eq!(algmatroid(&["bases", broken.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(algmatroid(&["bases", "/nonexistent.problem"]).status.code(), Some(3));
    assert_eq!(algmatroid(&["bases", &path("nonpappus_f2.problem"), "--engine", "linear"]).status.code(), Some(3));
    assert_eq!(algmatroid(&["implicitize", &path("circle.problem")]).status.code(), Some(3));
    let tight = algmatroid(&["bases", &path("mixture.problem"), "--budget-pairs", "3"]);
    assert_eq!(tight.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["decorate", &path("mixture.problem"), "--no-circuits", "--seed", "7"];
    let a = algmatroid(&args);
    let b = algmatroid(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let p = path("pl4.problem");
    let a = algmatroid(&["bases", &p, "--seed", "3"]);
    let b = algmatroid(&["bases", &p, "--seed", "3", "--jobs", "2"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn action_override() {
    let p = path("circle.problem");
    let r = json(&["bases", &p, "--action", "(x y)"]);
    assert_eq!(r["orbits"]["group_order"], 2);
    assert_eq!(r["orbits"]["bases"].as_array().unwrap().len(), 1);
    let r = json(&["bases", &path("pl4.problem"), "--no-action"]);
    assert!(r.get("orbits").is_none());
    assert_eq!(r["bases"].as_array().unwrap().len(), 10560);
}

#[test]
fn summary_goes_to_stdout_with_out() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("c.json");
    let out = algmatroid(&["circuits", &path("circle.problem"), "--out", f.to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("circuits: 1"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(f).unwrap()).unwrap();
    assert_eq!(v["rank"], 1);
}
