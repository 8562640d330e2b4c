use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn coarse(dir: &Path, args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_coarse"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

/// Instance files shared by the corpus.
fn fixtures() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for args in [
        &["gen", "cycle", "--n", "6", "--out", "c6.json"][..],
        &["gen", "cycle", "--n", "4", "--out", "c4.json"],
        &["gen", "cycle", "--n", "24", "--out", "c24.json"],
        &["gen", "petersen", "--out", "petersen.json"],
        &["gen", "hypercube", "--d", "3", "--out", "q3.json"],
        &["gen", "tree", "--d", "3", "--radius", "3", "--out", "tree.json"],
        &["gen", "random-regular", "--n", "12", "--d", "3", "--out", "rr.json"],
        &["gen", "cyclic-group", "--n", "12", "--out", "z12.json"],
        &["gen", "cyclic-group", "--n", "2", "--out", "z2.json"],
        &["gen", "line", "--n", "6", "--out", "line6.json"],
        &["gen", "arcs", "--n", "24", "--len", "16", "--stride", "2", "--out", "arcs24.json"],
        &["gen", "arcs", "--n", "6", "--len", "3", "--stride", "1", "--out", "arcs6.json"],
    ] {
        let r = coarse(d, args);
        assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
    }
    write(d, "halves.json", r#"{"elements": [{"label": "a", "points": [0, 1]}, {"label": "b", "points": [2, 3]}]}"#);
    write(d, "blocks.json", r#"{"elements": [{"label": "a", "points": [0, 1, 2]}, {"label": "b", "points": [3, 4, 5]}]}"#);
    write(d, "whole6.json", r#"{"elements": [{"label": "all", "points": [0, 1, 2, 3, 4, 5]}]}"#);
    write(d, "uniform6.json", r#"{"weights": [0.1, 0.2, 0.2, 0.2, 0.2, 0.1]}"#);
    write(d, "asym.json", r#"{"n": 4, "dist": [[0,1,1,1],[1,0,1,1],[1,1,0,5],[1,1,1,0]]}"#);
    write(d, "missing.json", r#"{"elements": [{"label": "a", "points": [0, 1, 2, 3, 4]}]}"#);
    write(d, "badtype.json", r#"{"n": 2, "dist": [[0, "x"], [1, 0]]}"#);
    write(d, "pou2.json", r#"{"labels": ["a", "b"], "values": {"0": {"a": 1.0}, "1": {"a": 0.6666666666666666, "b": 0.3333333333333333}}}"#);
    write(d, "witness.json", r#"{"S_bound": 3.0, "A": {"0": [[0, 1]], "1": [[0, 1]], "2": [[0, 1]], "3": [[3, 1]], "4": [[3, 1]], "5": [[3, 1]]}}"#);
    dir
}

/// (arguments, expected exit code, expected stdout fragment)
const CORPUS: &[(&[&str], i32, &str)] = &[
    (&["cheeger", "--graph", "c6.json"], 0, "h = 2/3, A = [0,1,2]"),
    (&["cheeger", "--graph", "petersen.json", "--k", "3", "--eps", "1"], 0, "certificate: holds"),
    (&["cheeger", "--graph", "c24.json", "--sweep", "--k", "2", "--eps", "0.5"], 1, "certificate: fails"),
    (&["girth", "--graph", "petersen.json"], 0, "girth = 5"),
    (&["girth", "--graph", "tree.json"], 0, "girth = inf"),
    (&["halo", "--graph", "c6.json", "--set", "0,1"], 0, "|halo(A)| = 2"),
    (&["halo", "--graph", "petersen.json", "--claim", "1"], 0, "certificate: holds"),
    (&["halo", "--graph", "rr.json", "--max-size", "3", "--c", "0.5"], 0, "min |halo(A)|/|A|"),
    (&["halo", "--graph", "c24.json", "--max-size", "6", "--c", "0.5"], 1, "certificate: fails"),
    (&["amenability", "--graph", "c24.json", "--cover", "arcs24.json", "--r", "2", "--s", "4", "--eps", "0.5"], 0, "certificate: holds"),
    (&["amenability", "--graph", "c6.json", "--cover", "arcs6.json", "--r", "1", "--s", "2", "--eps", "0.1"], 1, "certificate: fails"),
    (&["double-count", "--graph", "c4.json", "--cover", "halves.json"], 0, "p_min = 1/2, c_min = 1"),
    (&["levin", "--space", "line6.json", "--r", "1.5"], 0, "coboundedness"),
    (&["round", "--pou", "pou2.json", "--eps", "1"], 0, "m = 10"),
    (&["cover-to-pou", "--graph", "c24.json", "--cover", "arcs24.json", "--r", "2", "--mu", "0.25"], 0, "certificate: holds"),
    (&["property-a", "--space", "line6.json", "--witness", "witness.json", "--R", "1", "--eps", "0.5"], 0, "certificate: holds"),
    (&["property-a", "--space", "line6.json", "--witness", "witness.json", "--R", "2", "--eps", "0.5"], 1, "certificate: fails"),
    (&["folner", "--group", "z12.json", "--set", "0,1,2,3"], 0, "max |σF Δ F|/|F| = 1/2"),
    (&["folner", "--group", "z12.json", "--set", "0,1,2,3", "--eps", "0.25"], 1, "certificate: fails"),
    (&["product-group", "--group", "z2.json", "--n", "6", "--M", "1"], 0, "127 subsets"),
    (&["msp", "--space", "line6.json", "--measure", "uniform6.json", "--cover", "whole6.json", "--R", "1", "--S", "5", "--c", "0.5"], 0, "total mass = 0.8"),
    (&["ula-scan", "--space", "line6.json", "--measure", "uniform6.json", "--cover", "whole6.json", "--R", "1", "--eps", "0.5"], 0, "element \"all\""),
    (&["net", "--graph", "q3.json", "--r", "2"], 0, "certificate: holds"),
    (&["expander-light", "--graph", "petersen.json", "--graph", "rr.json", "--max-size", "3", "--c", "0.5"], 0, "graph 1"),
    (&["gen", "complete", "--n", "3"], 0, "\"edges\""),
    // usage and validation errors
    (&["cheeger"], 2, ""),
    (&["levin", "--space", "asym.json", "--r", "1"], 2, ""),
    (&["double-count", "--space", "line6.json", "--cover", "missing.json"], 2, ""),
    (&["levin", "--space", "badtype.json", "--r", "1"], 2, ""),
    (&["cheeger", "--graph", "nowhere.json"], 2, ""),
    (&["product-group", "--group", "z2.json", "--n", "4", "--M", "1"], 2, ""),
    (&["ula-scan", "--space", "line6.json", "--measure", "uniform6.json", "--cover", "blocks.json", "--R", "3", "--eps", "0.1"], 2, ""),
    (&["gen", "cycle"], 2, ""),
];

#[test]
fn golden_corpus() {
    let dir = fixtures();
    assert!(CORPUS.len() >= 20);
    for (args, code, fragment) in CORPUS {
        let r = coarse(dir.path(), args);
        assert_eq!(r.code, *code, "{args:?}\nstdout: {}\nstderr: {}", r.stdout, r.stderr);
        assert!(r.stdout.contains(fragment), "{args:?}: missing {fragment:?} in\n{}", r.stdout);
    }
}

#[test]
fn validation_messages_name_the_problem() {
    let dir = fixtures();
    let r = coarse(dir.path(), &["levin", "--space", "asym.json", "--r", "1"]);
    assert!(r.stderr.contains("(2,3)"), "{}", r.stderr);
    let r = coarse(dir.path(), &["double-count", "--space", "line6.json", "--cover", "missing.json"]);
    assert!(r.stderr.contains("union ≠ X, missing [5]"), "{}", r.stderr);
    let r = coarse(dir.path(), &["levin", "--space", "badtype.json", "--r", "1"]);
    assert!(r.stderr.contains("/dist/0/1"), "{}", r.stderr);
}

#[test]
fn json_reports_round_trip() {
    let dir = fixtures();
    for (args, code, _) in CORPUS.iter().filter(|(a, c, _)| *c != 2 && a[0] != "gen") {
        let mut full = args.to_vec();
        full.extend(["--format", "json"]);
        let r = coarse(dir.path(), &full);
        assert_eq!(r.code, *code, "{full:?}: {}", r.stderr);
        let report: Value = serde_json::from_str(&r.stdout).unwrap();
        let again: Value = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
        assert_eq!(report, again);
        let status = report["certificate"]["status"].as_str().unwrap();
        assert_eq!(status == "fails", *code == 1, "{full:?}: status {status}");
        assert_eq!(report["operation"], args[0]);
    }
}

#[test]
fn seeded_runs_are_deterministic() {
    let dir = fixtures();
    let args = ["halo", "--graph", "rr.json", "--max-size", "5", "--samples", "200", "--seed", "7", "--format", "json"];
    let a = coarse(dir.path(), &args);
    let b = coarse(dir.path(), &args);
    assert_eq!(a.stdout, b.stdout);
}
