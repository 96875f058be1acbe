use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn hochlat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hochlat")).args(args).output().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("chain.json");
    assert!(hochlat(&["chain", "2", "--out", path(&good)]).status.success());
    assert_eq!(hochlat(&["validate", path(&good)]).status.code(), Some(0));

    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"elements":["a","b"],"table":[[1,0],[0,0]],"unit":null}"#).unwrap();
    let out = hochlat(&["--format", "json", "validate", path(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    let diag: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(diag["witness"].as_array().unwrap().len(), 3);

    let missing = dir.path().join("nope.json");
    assert_eq!(hochlat(&["validate", path(&missing)]).status.code(), Some(2));
}

#[test]
fn free_is_byte_stable_and_capped() {
    let a = hochlat(&["free", "2"]);
    let b = hochlat(&["free", "2"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let table: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(table["elements"].as_array().unwrap().len(), 4);
    assert_eq!(hochlat(&["free", "7"]).status.code(), Some(2));
    assert!(hochlat(&["--cap-elements", "128", "free", "7"]).status.success());
}

#[test]
fn unitize_reports_already_unital() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("f.json");
    assert!(hochlat(&["free", "2", "--out", path(&t)]).status.success());
    let out = hochlat(&["unitize", path(&t)]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("already unital"));

    let s = dir.path().join("s.json");
    fs::write(&s, r#"{"elements":["a","b"],"table":[[0,0],[0,1]],"unit":null}"#).unwrap();
    let out = hochlat(&["unitize", path(&s)]);
    let table: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(table["unit"], 2);
}

#[test]
fn homology_json_and_control() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("null.json");
    fs::write(&t, r#"{"elements":["1","n","z"],"table":[[0,1,2],[1,2,2],[2,2,2]],"unit":0}"#).unwrap();
    for engine in ["sparse", "dense"] {
        let out = hochlat(&["--format", "json", "homology", "--table", path(&t), "--nmax", "2", "--engine", engine]);
        assert!(out.status.success());
        let r: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert!(r["degrees"][0]["dim"].as_u64().unwrap() >= 1);
    }
    let out = hochlat(&["homology", "--table", path(&t), "--coefficients", "Adual", "--nmax", "1"]);
    assert!(out.status.success());
}

#[test]
fn cohomology_with_bimodule_file_and_unitisation() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("s.json");
    fs::write(&t, r#"{"elements":["n","z"],"table":[[1,1],[1,1]],"unit":null}"#).unwrap();
    let m = dir.path().join("m.json");
    fs::write(
        &m,
        r#"{"dim":2,"left":{"n":[[0,0],[1,1]],"z":[[0,0],[1,1]]},"right":{"n":[[0,0],[1,1]],"z":[[0,0],[1,1]]},"symmetric":true}"#,
    )
    .unwrap();
    let out = hochlat(&["cohomology", "--table", path(&t), "--coefficients", path(&m), "--nmax", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8(out.stdout).unwrap().contains("not unit-linked"));
    let out = hochlat(&[
        "--format", "json", "cohomology", "--table", path(&t), "--coefficients", path(&m), "--nmax", "2", "--unitisation",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["passed"], true);
}

#[test]
fn tower_build_verify_and_naturality() {
    let dir = tempfile::tempdir().unwrap();
    let tower = dir.path().join("tower");
    assert!(hochlat(&["sigma-build", "--jmax", "2", "--out", path(&tower)]).status.success());
    assert!(tower.join("w2.json").exists());

    let free = dir.path().join("free.json");
    let chain = dir.path().join("chain.json");
    assert!(hochlat(&["free", "2", "--out", path(&free)]).status.success());
    assert!(hochlat(&["chain", "2", "--out", path(&chain)]).status.success());
    let out = hochlat(&["sigma-verify", "--table", path(&free), "--jmax", "2", "--tower", path(&tower)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("PASS"));

    let m = dir.path().join("collapse.json");
    fs::write(&m, r#"{"source":"free.json","target":"chain.json","map":[0,1,1,1]}"#).unwrap();
    let out = hochlat(&["--format", "json", "naturality-check", "--morphism", path(&m), "--tower", path(&tower)]);
    assert_eq!(out.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r.as_array().unwrap().len(), 2);

    // a tower that fails re-verification is refused
    let w1 = tower.join("w1.json");
    let text = fs::read_to_string(&w1).unwrap().replacen("\"1/1\"", "\"2/1\"", 1);
    fs::write(&w1, text).unwrap();
    let out = hochlat(&["sigma-verify", "--table", path(&free), "--tower", path(&tower)]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sigma_verify_rejects_non_semilattice() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("band.json");
    fs::write(&t, r#"{"elements":["a","b"],"table":[[0,0],[1,1]],"unit":null}"#).unwrap();
    assert_eq!(hochlat(&["sigma-verify", "--table", path(&t), "--jmax", "1"]).status.code(), Some(1));
}

#[test]
fn homotopy_check_records() {
    let out = hochlat(&["--format", "json", "homotopy-check", "--k", "2", "--nmax", "2"]);
    assert!(out.status.success());
    let r: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r[0]["bound"], "5^2");
    assert_eq!(r[0]["identity_verified"], true);
}

#[test]
fn suite_text_and_empty_corpus() {
    let out = hochlat(&["suite", "--max-size", "2", "--chain-max", "2", "--morphisms", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("control: nonzero H_1 detected"));
    let out = hochlat(&[
        "--format", "json", "suite", "--max-size", "0", "--chain-max", "0", "--free-max", "0",
        "--non-unital-max", "0", "--no-control", "--morphisms", "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["summary"]["instances"], 0);
}

#[test]
fn dimension_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_hochlat"))
        .env("HOCHLAT_CAP_DIM", "10")
        .args(["homotopy-check", "--k", "2", "--nmax", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
