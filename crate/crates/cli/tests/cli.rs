use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn lietori(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lietori")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn build(dir: &TempDir, name: &str, args: &[&str]) -> String {
    let path = dir.path().join(name).to_string_lossy().into_owned();
    let mut full = vec!["build"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &path]);
    let out = lietori(&full);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty(), "build prints nothing on stdout");
    path
}

#[test]
fn build_writes_symplectic_file() {
    let dir = TempDir::new().unwrap();
    let path = build(&dir, "m.json", &["--family", "sp", "--r", "3", "--k", "1", "--p", "0", "--q", "0"]);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["params"]["family"], "sp");
    assert_eq!(doc["params"]["r"], 3);
}

#[test]
fn build_rejects_excluded_symplectic() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("x.json");
    let out = lietori(&[
        "build", "--family", "sp", "--r", "2", "--k", "1", "--p", "0", "--q", "0", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("excluded"));
    assert!(!path.exists());
}

#[test]
fn build_accepts_unitary_with_five_degrees() {
    let dir = TempDir::new().unwrap();
    build(
        &dir,
        "su.json",
        &["--family", "su", "--r", "1", "--k", "0", "--p", "0", "--q", "3", "--m", "5", "--delta",
          "0,0,0;1,0,0;0,1,0;0,0,1;1,1,0"],
    );
}

#[test]
fn build_rejects_bad_flags() {
    let dir = TempDir::new().unwrap();
    let out_path = dir.path().join("y.json");
    let out_path = out_path.to_str().unwrap();
    for args in [
        vec!["build", "--family", "sl", "--r", "1", "--quantum", "0:1", "--out", out_path],
        vec!["build", "--family", "sl", "--r", "1", "--quantum", "two", "--out", out_path],
        vec!["build", "--family", "sp", "--r", "3", "--k", "1", "--out", out_path],
        vec!["build", "--family", "o", "--r", "4", "--k", "1", "--out", out_path],
        vec!["build", "--family", "su", "--r", "1", "--k", "0", "--p", "0", "--q", "1", "--m", "3", "--delta", "0;1",
             "--out", out_path],
        vec!["build", "--family", "gl", "--r", "1", "--out", out_path],
    ] {
        assert_eq!(code(&lietori(&args)), 2, "{args:?}");
    }
}

#[test]
fn invariants_of_symplectic_model() {
    let dir = TempDir::new().unwrap();
    let path = build(&dir, "m.json", &["--family", "sp", "--r", "3", "--k", "1", "--p", "0", "--q", "0"]);
    let out = lietori(&["invariants", &path]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["type"], "C3");
    assert_eq!(v["nullity"], 2);
    assert_eq!(v["crk"], 66);
    assert_eq!(v["rkv"], serde_json::json!([4, 1]));
    assert_eq!(v["quotient"]["torsion"], serde_json::json!([2, 2]));
}

#[test]
fn output_is_deterministic_and_sorted() {
    let dir = TempDir::new().unwrap();
    let path = build(&dir, "a.json", &["--family", "sl", "--r", "2", "--quantum", "2:1"]);
    let first = lietori(&["invariants", &path]).stdout;
    let second = lietori(&["invariants", &path]).stdout;
    assert_eq!(first, second);
    let text = String::from_utf8(first).unwrap();
    let keys: Vec<usize> = ["\"crk\"", "\"nullity\"", "\"quotient\"", "\"rkv\"", "\"type\""]
        .iter()
        .map(|k| text.find(k).unwrap())
        .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]), "keys sorted: {text}");
}

#[test]
fn rewrite_round_trip_is_stable() {
    let dir = TempDir::new().unwrap();
    let path = build(
        &dir,
        "su.json",
        &["--family", "su", "--r", "1", "--k", "0", "--p", "2", "--q", "1", "--m", "2", "--delta", "0,0,0;1,0,0"],
    );
    let original = std::fs::read_to_string(&path).unwrap();
    let before = lietori(&["invariants", &path]).stdout;
    let parsed: Value = serde_json::from_str(&original).unwrap();
    let rewritten = dir.path().join("rewritten.json");
    std::fs::write(&rewritten, serde_json::to_string(&parsed).unwrap()).unwrap();
    let rewritten = rewritten.to_str().unwrap();
    assert_eq!(lietori(&["invariants", rewritten]).stdout, before);
    let d = lietori(&["decide-iso", &path, rewritten]);
    assert_eq!(code(&d), 0);
    // equal invariants within the unitary class never settle isomorphism
    assert_eq!(stdout_json(&d)["verdict"], "UNDECIDED");
}

#[test]
fn decide_iso_across_families() {
    let dir = TempDir::new().unwrap();
    let a = build(&dir, "a.json", &["--family", "o", "--r", "4", "--q", "1"]);
    let b = build(&dir, "b.json", &["--family", "o", "--r", "4", "--q", "1"]);
    let c = build(&dir, "c.json", &["--family", "sl", "--r", "1"]);
    assert_eq!(stdout_json(&lietori(&["decide-iso", &a, &b]))["verdict"], "ISOMORPHIC");
    assert_eq!(stdout_json(&lietori(&["decide-iso", &a, &c]))["verdict"], "NOT_ISOMORPHIC");
}

#[test]
fn verify_passes_and_reports_every_check() {
    let dir = TempDir::new().unwrap();
    let path = build(&dir, "sl.json", &["--family", "sl", "--r", "1", "--q", "1"]);
    let out = lietori(&["verify", &path, "--box", "2"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let v = stdout_json(&out);
    assert_eq!(v["box_radius"], 2);
    let checks = v["checks"].as_object().unwrap();
    assert!(checks.len() >= 9);
    assert!(checks.values().all(|c| c["status"] == "pass"));
}

#[test]
fn missing_and_malformed_files_exit_two() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("none.json");
    assert_eq!(code(&lietori(&["invariants", missing.to_str().unwrap()])), 2);
    let bad = dir.path().join("bad.json");
    for text in [
        "not json",
        r#"{"schema_version":2,"params":{"family":"o","r":4,"q":0}}"#,
        r#"{"schema_version":1,"params":{"family":"o","r":4,"q":0,"k":1}}"#,
        r#"{"schema_version":1,"params":{"family":"o","r":2,"q":0}}"#,
    ] {
        std::fs::write(&bad, text).unwrap();
        assert_eq!(code(&lietori(&["verify", bad.to_str().unwrap()])), 2, "{text}");
    }
}

#[test]
fn tables_with_small_bounds() {
    let out = lietori(&["tables", "--bounds", "r=2,k=1,p=1,q=1,m=3,zeta=4"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["all_match"], true);
    assert_eq!(v["disjointness"]["passed"], true);
    assert!(!v["rows"].as_array().unwrap().is_empty());
    assert_eq!(code(&lietori(&["tables", "--bounds", "r=0"])), 2);
    assert_eq!(code(&lietori(&["tables", "--bounds", "w=1"])), 2);
}

#[test]
fn exceptional_lookup_by_id_and_type() {
    let out = lietori(&["exceptional", "--id", "1"]);
    assert_eq!(code(&out), 0);
    let rows = stdout_json(&out);
    let row = &rows[0];
    assert_eq!(row["type"], "A1");
    assert_eq!(row["crk"], 133);
    assert_eq!(row["rkv"], serde_json::json!([27]));
    assert_eq!(row["quotient"]["torsion"], serde_json::json!([3, 3, 3]));

    let all = stdout_json(&lietori(&["exceptional"]));
    assert_eq!(all.as_array().unwrap().len(), 27);
    let g2 = stdout_json(&lietori(&["exceptional", "--type", "G2"]));
    assert!(g2.as_array().unwrap().iter().all(|r| r["type"] == "G2"));
    assert_eq!(code(&lietori(&["exceptional", "--id", "99"])), 2);
    assert_eq!(code(&lietori(&["exceptional", "--type", "Q7"])), 2);
}

#[test]
fn thread_override_is_validated() {
    let run = |val: &str| {
        Command::new(env!("CARGO_BIN_EXE_lietori"))
            .args(["exceptional", "--id", "2"])
            .env("LIETORI_THREADS", val)
            .output()
            .unwrap()
    };
    assert_eq!(code(&run("1")), 0);
    assert_eq!(code(&run("0")), 2);
    assert_eq!(code(&run("many")), 2);
    assert!(Path::new(env!("CARGO_BIN_EXE_lietori")).exists());
}

#[test]
fn single_degree_defaults_to_zero() {
    let dir = TempDir::new().unwrap();
    let path = build(&dir, "su1.json", &["--family", "su", "--r", "1", "--k", "1", "--p", "0", "--q", "1", "--m", "1"]);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["params"]["delta"], serde_json::json!([[0, 0, 0]]));
}
