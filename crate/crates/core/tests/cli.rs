mod common;

use std::path::Path;
use std::process::Command;

use loopkit::{io, LoopTable};
use serde_json::Value;

fn loopkit(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_loopkit")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn save(dir: &Path, name: &str, l: &LoopTable) -> String {
    let p = dir.join(name);
    io::write_json(&p, l).unwrap();
    p.to_str().unwrap().to_string()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn check_reports_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let s3 = save(dir.path(), "s3.json", &common::s3());
    assert_eq!(loopkit(&["check", "--table", &s3, "--prop", "MOUFANG"]), (0, "holds\n".into()));
    let (code, text) = loopkit(&["check", "--table", &s3, "--prop", "COMMUTATIVE"]);
    assert_eq!(code, 1);
    assert!(text.starts_with("fails: "), "{text}");

    let report = dir.path().join("r.json");
    let r = report.to_str().unwrap();
    assert_eq!(loopkit(&["--json", r, "check", "--table", &s3, "--identity", "xy = yx"]).0, 1);
    let v = json(&report);
    assert_eq!(v["holds"], false);
    assert!(v["counterexample"].is_object());

    // both or neither target is a usage error
    assert_eq!(loopkit(&["check", "--table", &s3]).0, 2);
    assert_eq!(loopkit(&["check", "--table", &s3, "--prop", "FLEXIBLE", "--identity", "x=x"]).0, 2);
    assert_eq!(loopkit(&["check", "--table", &s3, "--identity", "x(y = x"]).0, 2);
}

#[test]
fn classify_lists_every_property() {
    let dir = tempfile::tempdir().unwrap();
    let k = save(dir.path(), "k.json", &common::klein());
    let report = dir.path().join("c.json");
    let (code, text) = loopkit(&["--json", report.to_str().unwrap(), "classify", "--table", &k]);
    assert_eq!(code, 0);
    assert!(text.contains("MIDDLE_BOL: true"));
    assert!(text.contains("COMMUTATIVE: true"));
    assert_eq!(json(&report)["ASSOCIATIVE"], true);
}

#[test]
fn search_prints_tables_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("s.json");
    let (code, text) =
        loopkit(&["--json", report.to_str().unwrap(), "search", "--order", "6", "--require", "MIDDLE_BOL", "--dedup"]);
    assert_eq!(code, 0);
    assert!(text.starts_with("found 2 loops"), "{text}");
    let v = json(&report);
    for key in ["spec", "complete", "nodes_explored", "loops"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["complete"], true);
    assert_eq!(v["loops"].as_array().unwrap().len(), 2);

    let (_, text) = loopkit(&["search", "--order", "5", "--limit", "3"]);
    assert!(text.starts_with("found 3 loops") && text.contains("complete: false"), "{text}");
    assert_eq!(loopkit(&["search", "--order", "11"]).0, 2);
    assert_eq!(loopkit(&["search", "--order", "7", "--dedup"]).0, 2);
}

#[test]
fn construct_isotope_and_iso() {
    let dir = tempfile::tempdir().unwrap();
    let g = save(dir.path(), "s3.json", &common::s3());
    let (code, text) = loopkit(&["construct", "--from", "right-bol", "--table", &g]);
    assert_eq!(code, 0);
    let built = io::from_json(text.trim()).unwrap();
    assert_eq!(built, loopkit::construct::opposite(&common::s3()));

    let (code, text) = loopkit(&["construct", "--from", "left-bol", "--table", &g]);
    assert_eq!(code, 0);
    assert_eq!(io::from_json(text.trim()).unwrap(), common::s3());

    let (code, text) = loopkit(&["isotope", "--table", &g, "--a", "2", "--b", "3"]);
    assert_eq!(code, 0);
    let iso = io::from_json(text.trim()).unwrap();
    assert!(common::is_isomorphic(&iso, &common::s3()));

    let opp = save(dir.path(), "opp.json", &built);
    assert_eq!(loopkit(&["iso", "--table", &g, "--table2", &opp]).0, 0);
    let z6 = save(dir.path(), "z6.json", &LoopTable::cyclic(6));
    let report = dir.path().join("i.json");
    let (code, text) = loopkit(&["--json", report.to_str().unwrap(), "iso", "--table", &g, "--table2", &z6]);
    assert_eq!((code, text.as_str()), (1, "not isomorphic\n"));
    assert_eq!(json(&report)["isomorphic"], false);

    // a loop that is not right Bol is refused
    let odd = common::all_loops(5)
        .into_iter()
        .find(|l| !loopkit::properties::check(l, "RIGHT_BOL").unwrap().holds)
        .unwrap();
    let odd = save(dir.path(), "odd.json", &odd);
    assert_eq!(loopkit(&["construct", "--from", "right-bol", "--table", &odd]).0, 2);
}

#[test]
fn corpus_build_and_verify_lemmas() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus");
    let c = corpus.to_str().unwrap();
    let (code, text) = loopkit(&["corpus", "build", "--orders", "2..6", "--out", c]);
    assert_eq!(code, 0);
    assert!(text.contains("MIDDLE_BOL/n6: 2 loops, complete: true"), "{text}");
    assert!(corpus.join("MIDDLE_BOL/n6/manifest.json").exists());

    let report = dir.path().join("v.json");
    let (code, text) = loopkit(&["--json", report.to_str().unwrap(), "verify-lemmas", "--corpus", c]);
    assert_eq!(code, 0, "{text}");
    let v = json(&report);
    for key in ["summary", "coverage", "matrix", "rows"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["summary"]["fail"], 0);

    // a corrupted entry is reported and fails the run
    std::fs::write(corpus.join("MIDDLE_BOL/n4/0.json"), "{\"n\":4,\"table\":[[0,1,2,3],[1,1,1,1]]}").unwrap();
    let (code, text) = loopkit(&["verify-lemmas", "--corpus", c]);
    assert_eq!(code, 1);
    assert!(text.contains("invalid entry MIDDLE_BOL/n4/0"), "{text}");
}

#[test]
fn dump_catalog_round_trips() {
    let (code, text) = loopkit(&["dump-catalog"]);
    assert_eq!(code, 0);
    let parsed = loopkit::properties::Catalog::from_text(&text).unwrap();
    // procedural entries are printed as comments
    let builtin = loopkit::properties::Catalog::builtin();
    let defined: Vec<&str> = builtin.entries().iter().filter(|d| !d.identities().is_empty()).map(|d| d.name.as_str()).collect();
    assert_eq!(parsed.names().collect::<Vec<_>>(), defined);
    assert!(text.contains("# POWER_ASSOCIATIVE: procedural"));
}
