use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn milnor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_milnor")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn machine(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--machine");
    let o = milnor(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn analyze_discriminant_text_report() {
    let o = milnor(&["analyze", data("delta3.txt").to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    for line in [
        "degree: 4",
        "hilbert.polynomial: 6t - 2",
        "singular_locus.support_degree: 3",
        "freeness.status: free",
        "generic_section.milnor: 6",
        "mixed_multiplicities: [1,3,3,1]",
        "polar_degree: 1",
        "homaloidal.verdict: true",
    ] {
        assert!(text.lines().any(|l| l == line), "missing `{line}` in\n{text}");
    }
}

#[test]
fn machine_output_is_reproducible() {
    let path = data("delta3.txt");
    let args = ["analyze", path.to_str().unwrap(), "--machine"];
    let (a, b) = (milnor(&args), milnor(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["hilbert"]["k0"], 1);
    assert_eq!(v["agreement"], serde_json::json!([32003, 65537]));
    assert!(v.get("timings").is_none());
}

#[test]
fn seed_changes_only_the_recorded_seeds() {
    let path = data("delta3.txt");
    let mut a = machine(&["analyze", path.to_str().unwrap(), "--seed", "1"]);
    let mut b = machine(&["analyze", path.to_str().unwrap(), "--seed", "9"]);
    assert_ne!(a["seeds"], b["seeds"]);
    a.as_object_mut().unwrap().remove("seeds");
    b.as_object_mut().unwrap().remove("seeds");
    assert_eq!(a, b);
}

#[test]
fn timings_are_opt_in() {
    let v = machine(&["analyze", data("quadric.txt").to_str().unwrap(), "--timings"]);
    assert!(v["timings"].is_object());
}

#[test]
fn plane_pappus_arrangement() {
    let v = machine(&["arrangement", data("pappus_w_forms.txt").to_str().unwrap()]);
    assert_eq!(v["hyperplanes"], 9);
    assert_eq!(v["betti_complement"], serde_json::json!([1, 8, 19]));
    assert_eq!(v["mixed_equals_betti"], true);
}

#[test]
fn generic_arrangement_formulas() {
    let v = machine(&["arrangement", data("generic5.txt").to_str().unwrap()]);
    assert_eq!(v["betti_complement"], serde_json::json!([1, 4, 6, 4]));
    assert_eq!(v["generic"], true);
    for key in ["formula_a", "formula_b", "formula_b1"] {
        assert_eq!(v[key]["holds"], true, "{key}: {}", v[key]);
    }
    assert_eq!(v["analysis"]["hilbert"]["polynomial"], "10t - 10");
}

#[test]
fn family_prints_a_parseable_input() {
    let o = milnor(&["family", "Dpp", "5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "vars: x, y, z, w\nx^4*z + y^5 + x^3*y*w\n");
    let v = machine(&["family", "Dpp(5)"]);
    assert_eq!(v["degree"], 5);

    let dir = std::env::temp_dir().join(format!("milnor-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("dpp5.txt");
    std::fs::write(&file, o.stdout).unwrap();
    let report = machine(&["analyze", file.to_str().unwrap()]);
    assert_eq!(report["freeness"]["status"], "nearly_free");
    assert_eq!(report["mixed_multiplicities"], serde_json::json!([1, 4, 5, 1]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn rational_and_prime_runs_agree() {
    let path = data("delta3.txt");
    let p = machine(&["analyze", path.to_str().unwrap()]);
    let q = machine(&["analyze", path.to_str().unwrap(), "--rational"]);
    assert_eq!(q["field"], "QQ");
    assert!(q.get("agreement").is_none());
    for key in ["hilbert", "betti", "freeness", "generic_section", "mixed_multiplicities", "polar_degree", "singular_locus"] {
        assert_eq!(p[key], q[key], "{key}");
    }
}

#[test]
fn corpus_single_module() {
    let o = milnor(&["corpus", "--only", "hilbert"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.lines().all(|l| !l.starts_with("FAIL")));
    assert_eq!(text.lines().last().unwrap(), "6 of 6 corpus checks passed over GF(32003)");
}

#[test]
fn exit_codes() {
    let dir = std::env::temp_dir().join(format!("milnor-exit-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "x^2 + + y\n").unwrap();
    assert_eq!(milnor(&["analyze", bad.to_str().unwrap()]).status.code(), Some(2));
    let unknown = dir.join("unknown.txt");
    std::fs::write(&unknown, "x^2 + v^2\n").unwrap();
    assert_eq!(milnor(&["analyze", unknown.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(milnor(&["analyze", dir.join("missing.txt").to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();

    let quadric = data("quadric.txt");
    assert_eq!(milnor(&["analyze", quadric.to_str().unwrap(), "--prime", "41"]).status.code(), Some(3));
    assert_eq!(milnor(&["analyze", quadric.to_str().unwrap(), "--prime", "12"]).status.code(), Some(3));
    assert_eq!(milnor(&["family", "D", "2"]).status.code(), Some(3));
    assert_eq!(milnor(&["arrangement", data("delta3.txt").to_str().unwrap()]).status.code(), Some(3));
}
