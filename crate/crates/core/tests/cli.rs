mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::fixture_path;

fn tightcut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tightcut"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_check_decompose_verify() {
    let dir = tempfile::tempdir().unwrap();
    let c6 = dir.path().join("c6.el");
    let o = tightcut(&["generate", "C6", "--out", path(&c6)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(
        std::fs::read_to_string(&c6).unwrap(),
        std::fs::read_to_string(fixture_path("c6.el")).unwrap()
    );

    let o = tightcut(&["check", path(&c6), "--cut", "0,1,2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("matching covered: true"), "{out}");
    assert!(out.contains("tight=true trivial=false"), "{out}");
    assert!(out.contains("elp: true"), "{out}");

    let cert = dir.path().join("cert.json");
    let o = tightcut(&[
        "decompose",
        path(&c6),
        "--cut",
        "0,1,2",
        "--json",
        path(&cert),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("r = 1"));

    let o = tightcut(&["verify", path(&c6), "--cut", "0,1,2", path(&cert)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("certificate verified (r = 1)"));
}

#[test]
fn non_elp_fixture_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let g = fixture_path("nonelp_r2.el");
    let cert = dir.path().join("cert.json");
    let dots = dir.path().join("dot");
    let o = tightcut(&[
        "decompose",
        path(&g),
        "--cut",
        "0,2,3",
        "--json",
        path(&cert),
        "--dot",
        path(&dots),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(
        out.contains("r = 2") && out.contains("final: 2-separation cut"),
        "{out}"
    );
    assert!(dots.join("step1.dot").exists() && dots.join("step2.dot").exists());

    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    for key in ["input", "steps", "final", "r"] {
        assert!(json.get(key).is_some(), "missing {key}");
    }
    assert_eq!(json["r"], 2);
    assert_eq!(json["steps"].as_array().unwrap().len(), 1);

    let o = tightcut(&["verify", path(&g), "--cut", "0,2,3", path(&cert)]);
    assert!(o.status.success(), "{}", stderr(&o));

    // The same certificate against another cut is rejected.
    let o = tightcut(&["verify", path(&g), "--cut", "0,1,2,3,4,5", path(&cert)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("input mismatch"), "{}", stderr(&o));
}

#[test]
fn check_json_fields() {
    let o = tightcut(&["check", path(&fixture_path("petersen.el")), "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["n"], 10);
    assert_eq!(v["m"], 15);
    assert_eq!(v["matching_covered"], true);
    assert_eq!(v["bicritical"], true);
    assert_eq!(v["perfect_matchings"], 6);
    assert!(v["cut"].is_null());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.el");
    std::fs::write(&bad, "p 3 1\ne 0 5\n").unwrap();
    let o = tightcut(&["check", path(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));

    let k4 = fixture_path("k4.el");
    let o = tightcut(&["check", path(&k4), "--cut", "0,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("tight=false"));

    let petersen = fixture_path("petersen.el");
    let o = tightcut(&["decompose", path(&petersen), "--cut", "0,1,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not a tight cut"), "{}", stderr(&o));

    let o = tightcut(&["sweep", "--max-n", "40"]);
    assert_eq!(o.status.code(), Some(2));

    let o = tightcut(&["generate", "FOO", "--out", "-"]);
    assert_eq!(o.status.code(), Some(2));

    let o = tightcut(&["check", path(&k4), "--cut", "a,b"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn small_sweep_is_clean_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let o = tightcut(&["sweep", "--max-n", "4", "--report", path(&report)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("0 violations"));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
    assert!(v["counters"]["graphs"].as_u64().unwrap() > 0);
    assert_eq!(v["corpus"][0]["mode"], "exhaustive");

    // Tiny corpora miss most branches, which is a violation when asked for.
    let o = tightcut(&["sweep", "--max-n", "4", "--require-coverage"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn random_generation_is_seeded() {
    let a = tightcut(&[
        "generate", "--random", "--n", "10", "--seed", "7", "--out", "-",
    ]);
    let b = tightcut(&[
        "generate", "--random", "--n", "10", "--seed", "7", "--out", "-",
    ]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let g = tightcut::io::parse_edge_list(&stdout(&a)).unwrap();
    assert!(tightcut::matching::is_matching_covered(&g));
}
