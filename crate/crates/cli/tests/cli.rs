use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fgc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fgc")).args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let o = fgc(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    serde_json::from_str(&ok(&a)).expect("json output")
}

fn examples(dir: &Path) -> PathBuf {
    ok(&["examples", "--out", dir.to_str().unwrap()]);
    dir.to_path_buf()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn dualize_twice_is_identity() {
    let d = tempfile::tempdir().unwrap();
    let root = examples(d.path());
    for name in ["s11-generic", "s12-gluable", "s03d-generic"] {
        let src = root.join(format!("coords/{name}.json"));
        let (a, b) = (d.path().join("a.json"), d.path().join("b.json"));
        ok(&["dualize", s(&src), "--out", s(&a)]);
        ok(&["dualize", s(&a), "--out", s(&b)]);
        assert_eq!(std::fs::read(&src).unwrap(), std::fs::read(&b).unwrap(), "{name}");
        assert_ne!(std::fs::read(&src).unwrap(), std::fs::read(&a).unwrap(), "{name}");
    }
}

#[test]
fn flip_back_restores_canonical_file() {
    let d = tempfile::tempdir().unwrap();
    let root = examples(d.path());
    let src = root.join("coords/s12-generic.json");
    let canon = d.path().join("canon.json");
    let tmp = d.path().join("tmp.json");
    // two flips through the reported back edge give the canonical numbering
    let r = json(&["flip", s(&src), "--edge", "0.0", "--out", s(&tmp)]);
    ok(&["flip", s(&tmp), "--edge", r["back_edge"].as_str().unwrap(), "--out", s(&canon)]);
    for edge in ["0.0", "1.2", "2.1", "3.0"] {
        let (f, g) = (d.path().join("f.json"), d.path().join("g.json"));
        let r = json(&["flip", s(&canon), "--edge", edge, "--out", s(&f)]);
        ok(&["flip", s(&f), "--edge", r["back_edge"].as_str().unwrap(), "--out", s(&g)]);
        assert_eq!(std::fs::read(&canon).unwrap(), std::fs::read(&g).unwrap(), "edge {edge}");
    }
}

#[test]
fn flip_reports_bad_edge() {
    let o = fgc(&["flip", "S11:generic", "--edge", "7.0"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("--edge"));
}

#[test]
fn reverse_of_all_ones_is_unchanged() {
    let d = tempfile::tempdir().unwrap();
    let root = examples(d.path());
    let src = root.join("coords/s11-ones.json");
    let out = d.path().join("r.json");
    ok(&["reverse", s(&src), "--out", s(&out)]);
    assert_eq!(std::fs::read(&src).unwrap(), std::fs::read(&out).unwrap());
}

#[test]
fn malformed_value_names_its_key() {
    let d = tempfile::tempdir().unwrap();
    let root = examples(d.path());
    let text = std::fs::read_to_string(root.join("coords/s11-generic.json")).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["edges"]["0.1"] = Value::String("2/0".into());
    let bad = d.path().join("bad.json");
    std::fs::write(&bad, serde_json::to_string(&v).unwrap()).unwrap();
    let o = fgc(&["classify", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("0.1"), "{err}");
}

#[test]
fn ranks_of_builtin_surfaces() {
    assert_eq!(json(&["rank", "S11:ones"])["rank"], 6);
    assert_eq!(json(&["rank", "S03:generic"])["rank"], 2);
    assert_eq!(json(&["rank", "S12:generic"])["rank"], 12);
}

#[test]
fn compatibility_suite_passes() {
    let v = json(&["check", "compatibility"]);
    assert_eq!(v["pass"], true);
    assert_eq!(v["pairs"].as_array().unwrap().len(), 3);
    let d = tempfile::tempdir().unwrap();
    let root = examples(d.path());
    let p = root.join("pairs/s11-b-aaabb.json");
    let v = json(&["check", "compatibility", "--pair", s(&p)]);
    assert_eq!(v["pass"], true);
    assert_eq!(v["pairs"][0]["intersections"], 3);
}

#[test]
fn seeded_checks_are_reproducible() {
    let a = ok(&["check", "jacobi", "--seed", "7", "--surface", "S12"]);
    let b = ok(&["check", "jacobi", "--seed", "7", "--surface", "S12"]);
    assert_eq!(a, b);
    assert!(a.contains("PASS"));
    let c = ok(&["check", "jacobi", "--seed", "8", "--surface", "S12"]);
    assert_ne!(a, c);
    assert!(ok(&["check", "flip-invariance", "--surface", "S03"]).contains("PASS"));
    assert!(ok(&["check", "casimirs", "--surface", "S12"]).contains("PASS"));
}

#[test]
fn failing_tolerance_exits_nonzero() {
    let o = fgc(&["check", "jacobi", "--tol", "1e-300"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL"));
}

#[test]
fn classify_all_ones_gives_cusps() {
    for name in ["S11:ones", "S12:ones", "S03:ones"] {
        let v = json(&["classify", name]);
        for e in v["ends"].as_array().unwrap() {
            assert_eq!(e["end"], "cusp", "{name}");
        }
        assert_eq!(v["finite_area"], true);
    }
    let v = json(&["classify", "S12:gluable"]);
    assert_ne!(v["ends"][0]["end"], "cusp");
}

#[test]
fn holonomy_of_curves_and_empty_path() {
    let d = tempfile::tempdir().unwrap();
    let root = examples(d.path());
    let curves = root.join("curves/s11.json");
    let v = json(&["holonomy", "S11:generic", "--curves", s(&curves)]);
    assert!(v["curves"].as_array().unwrap().len() >= 2);
    let per = json(&["holonomy", "S11:ones"]);
    assert_eq!(per["curves"][0]["det"], "1");
    assert_eq!(per["curves"][0]["diagonal_cubes"], serde_json::json!(["1", "1", "1"]));
    let empty = d.path().join("empty.json");
    std::fs::write(&empty, r#"{"curves": {"nothing": ""}}"#).unwrap();
    let v = json(&["holonomy", "S11:generic", "--curves", s(&empty)]);
    assert_eq!(v["curves"][0]["matrix"], serde_json::json!([["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]));
}

#[test]
fn develop_writes_svg_and_respects_cap() {
    let d = tempfile::tempdir().unwrap();
    let svg = d.path().join("t.svg");
    let v = json(&["develop", "S11:ones", "--depth", "2", "--out", s(&svg), "--flag-lines"]);
    assert_eq!(v["convex"], true);
    assert!(v["conic_residual"].as_f64().unwrap() < 1e-9);
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<svg"));
    let o = fgc(&["develop", "S11:ones", "--depth", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("depth"));
}

#[test]
fn bracket_of_coordinates_is_exact() {
    let v = json(&["bracket", "S11:generic", "t0", "e0.1"]);
    assert!(v.get("exact").is_some());
    let w = json(&["bracket", "S11:generic", "e0.1", "t0"]);
    assert_eq!(v["value"].as_f64().unwrap(), -w["value"].as_f64().unwrap());
    let c = json(&["bracket", "S11:generic", "X0", "t1"]);
    assert!(c["value"].as_f64().unwrap().abs() < 1e-9);
}

#[test]
fn info_reads_surfaces_and_builtins() {
    let v = json(&["info", "S12"]);
    assert_eq!(v["genus"], 1);
    assert_eq!(v["punctures"], 2);
    let d = tempfile::tempdir().unwrap();
    let root = examples(d.path());
    let w = json(&["info", s(&root.join("surfaces/s03.json"))]);
    assert_eq!(w["genus"], 0);
    assert_eq!(w["punctures"], 3);
}

#[test]
fn bundled_data_matches_generated_examples() {
    let d = tempfile::tempdir().unwrap();
    let root = examples(d.path());
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
    for sub in ["surfaces", "coords", "curves", "pairs"] {
        let mut names: Vec<_> = std::fs::read_dir(root.join(sub)).unwrap().map(|e| e.unwrap().file_name()).collect();
        names.sort();
        for n in names {
            let fresh = std::fs::read(root.join(sub).join(&n)).unwrap();
            let kept = std::fs::read(data.join(sub).join(&n)).unwrap_or_default();
            assert_eq!(fresh, kept, "{sub}/{n:?}");
        }
    }
}
