use std::path::{Path, PathBuf};

use ordkit::cli::main_with_args;
use ordkit::io::{poset_from_str, poset_to_string, read_poset, to_dot};
use ordkit::order::{lattices_up_to, FinPoset};
use serde_json::{json, Value};

fn run(args: &[&str]) -> i32 {
    let mut v = vec!["ordkit"];
    v.extend_from_slice(args);
    main_with_args(v)
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn every_small_lattice_round_trips_through_json() {
    for x in lattices_up_to(6).unwrap() {
        let s = poset_to_string(&x);
        let back = poset_from_str(&s).unwrap();
        assert!(back.same_order(&x));
        let dot = to_dot(&x);
        assert_eq!(dot.matches("->").count(), x.covers().len());
    }
}

#[test]
fn files_are_read_back() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "n5.json", &poset_to_string(&FinPoset::n5()));
    assert!(read_poset(&p).unwrap().is_isomorphic(&FinPoset::n5()));
    assert!(read_poset(&dir.path().join("missing.json")).is_err());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let lattice = write(d, "diamond.json", &poset_to_string(&FinPoset::diamond()));
    let broken = write(d, "broken.json", r#"{"n":2,"leq":[[true,false]]}"#);
    let lattice = lattice.to_str().unwrap();
    let broken = broken.to_str().unwrap();

    assert_eq!(run(&["posets", "enumerate", "-n", "4", "--lattices", "--count"]), 0);
    assert_eq!(run(&["continuity", "--doctrine", "all", "--lattice", lattice]), 0);
    assert_eq!(run(&["continuity", "--doctrine", "all", "--lattice", broken]), 2);
    assert_eq!(run(&["continuity", "--doctrine", "bogus", "--lattice", lattice]), 2);
    assert_eq!(run(&["dual", "--doctrine", "directed", "--input", lattice, "--direction", "lattice"]), 0);
    assert_eq!(run(&["export", "--input", lattice, "--format", "dot"]), 0);
    assert_eq!(run(&["pl", "rho", "--f", r#"{"pieces":[]}"#, "--g", "x"]), 2);
    assert_eq!(run(&["suite", "run", "nope"]), 2);
    assert_eq!(run(&["suite", "list"]), 0);
    assert_eq!(run(&["no-such-command"]), 2);
    assert_eq!(run(&["umod", "rho", "--module", "interval", "--a", "3/4", "--b", "1/4"]), 0);
    assert_eq!(run(&["umod", "glue", "--module", "interval", "--a", "1/2", "--b", "1/2", "--r", "1/2"]), 1);
}

#[test]
fn suite_reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        assert_eq!(run(&["suite", "run", "sound4", "--max-size", "3", "--out", p.to_str().unwrap()]), 0);
    }
    let ra = std::fs::read_to_string(&a).unwrap();
    assert_eq!(ra, std::fs::read_to_string(&b).unwrap());
    let v: Value = serde_json::from_str(&ra).unwrap();
    assert_eq!(v["suite"], "sound4");
    assert!(v.get("wall_ms").is_none());
}

#[test]
fn replay_payloads() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let poset: Value = serde_json::from_str(&poset_to_string(&FinPoset::n5())).unwrap();
    let good = json!({"suite": "sound4", "check": "soundness", "input": {"pair": "all", "poset": poset}});
    let p = write(d, "good.json", &good.to_string());
    assert_eq!(run(&["replay", p.to_str().unwrap()]), 0);
    assert!(matches!(ordkit::suite::replay(&good).unwrap(), ordkit::suite::Outcome::Pass));

    let bad = json!({"suite": "sound4", "check": "no-such-check", "input": {}});
    let p = write(d, "bad.json", &bad.to_string());
    assert_eq!(run(&["replay", p.to_str().unwrap()]), 2);
    let p = write(d, "schema.json", r#"{"suite": 1}"#);
    assert_eq!(run(&["replay", p.to_str().unwrap()]), 2);
}
