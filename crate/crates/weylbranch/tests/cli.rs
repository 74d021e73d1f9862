use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

use weylbranch::cli::table::{TableFile, BUILTIN_TABLES};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylbranch"))
        .args(args)
        .output()
        .unwrap()
}

fn lines(o: &Output) -> Vec<Value> {
    String::from_utf8(o.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn one(args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    let mut v = lines(&o);
    assert_eq!(v.len(), 1);
    v.remove(0)
}

fn temp_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("weylbranch-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn dim_examples() {
    assert_eq!(one(&["dim", "B", "2", "2,0", "--p", "5"])["dim"], "13");
    assert_eq!(one(&["dim", "D", "4", "0,0,0,2", "--p", "0"])["dim"], "35");
    assert_eq!(one(&["dim", "A", "3", "1,0,0"])["dim"], "4");
}

#[test]
fn branch_examples() {
    for (args, conservation) in [
        (["branch", "B", "3", "0,0,1", "c1:Dn"], "8 = 4 + 4"),
        (["branch", "C", "2", "1,0", "c2:l=1,t=2"], "4 = 2 + 2"),
        (["branch", "A", "5", "0,0,1,0,0", "c6"], "20 = 10 + 10"),
    ] {
        let v = one(&args);
        assert_eq!(v["conservation"], conservation, "{args:?}");
        assert_eq!(v["verdict"], "PASS");
    }
    let v = one(&["branch", "B", "3", "0,0,1", "c1:Dn"]);
    let coords: BTreeSet<String> = v["factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["coords"].to_string())
        .collect();
    assert_eq!(coords, BTreeSet::from(["[0,0,1]".to_string(), "[0,1,0]".to_string()]));
}

fn scan_set(args: &[&str]) -> (BTreeSet<String>, Value, Option<i32>) {
    let o = run(args);
    let v = lines(&o);
    let set = v
        .iter()
        .filter(|r| r["verdict"] == "IRREDUCIBLE")
        .map(|r| r["lambda"].to_string())
        .collect();
    (set, v.last().unwrap().clone(), o.status.code())
}

#[test]
fn scan_examples() {
    let (set, summary, code) = scan_set(&["scan", "B", "3", "c1:Dn", "--bound", "2", "--assert"]);
    assert_eq!(set, BTreeSet::from(["[0,0,1]".to_string()]));
    assert_eq!(summary["summary"]["assert"], "pass");
    assert_eq!(code, Some(0));

    let (set, _, code) = scan_set(&["scan", "D", "4", "c2:Dl,l=2,t=2", "--bound", "1", "--assert"]);
    let want: BTreeSet<String> = ["[1,0,0,0]", "[0,0,1,0]", "[0,0,0,1]"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    assert_eq!(set, want);
    assert_eq!(code, Some(0));

    let (set, _, _) = scan_set(&["scan", "A", "3", "c2:l=1,t=2", "--bound", "1"]);
    assert_eq!(set, BTreeSet::from(["[1,0,0]".to_string(), "[0,0,1]".to_string()]));
}

#[test]
fn shipped_tables_round_trip() {
    for (name, text) in BUILTIN_TABLES {
        let t = TableFile::parse(text).unwrap();
        assert_eq!(t.serialize(), text, "{name}");
        assert!(t.records().count() > 0, "{name}");
    }
}

#[test]
fn verify_shipped_tables_has_no_fail() {
    let o = run(&[
        "verify",
        "builtin:c136",
        "builtin:c2",
        "builtin:c4i",
        "builtin:c4ii",
        "--p",
        "0,3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = lines(&o);
    assert!(v.iter().all(|r| r["verdict"] != "FAIL"));
    let summary = &v.last().unwrap()["summary"];
    assert_eq!(summary["fail"], 0);
}

#[test]
fn verify_empty_file() {
    let p = temp_file("empty.tsv", "");
    let o = run(&["verify", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = lines(&o);
    assert_eq!(v.len(), 1);
    assert!(v[0].get("summary").is_some());
}

#[test]
fn verify_exit_code_reflects_fail() {
    let p = temp_file("wrong.tsv", "bad-kappa\tc1:Dn\tB3\ttrue\t3:1\t-\t3\t-\n");
    let o = run(&["verify", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(lines(&o).iter().any(|r| r["verdict"] == "FAIL"));
}

#[test]
fn malformed_record_names_line() {
    let p = temp_file("broken.tsv", "# header\nonly\ttwo\n");
    let o = run(&["verify", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn bad_arguments_exit_two() {
    assert_eq!(run(&["dim", "E", "6", "1,0,0,0,0,0"]).status.code(), Some(2));
    assert_eq!(run(&["dim", "A", "2", "1,0", "--p", "4"]).status.code(), Some(2));
    assert_eq!(
        run(&["orbit", "B", "6", "0,0,0,0,0,1", "--cap", "4"]).status.code(),
        Some(2)
    );
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "builtin:c2", "--p", "0,5", "--rank-cap", "6"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let mut single = args.to_vec();
    single.extend(["--jobs", "1"]);
    assert_eq!(run(&args).stdout, run(&single).stdout);
}

#[test]
fn rootsys_info_and_orbit() {
    let v = one(&["rootsys-info", "D", "4"]);
    assert_eq!(v["positive_roots"].as_array().unwrap().len(), 12);
    assert_eq!(v["weyl_order"], "192");
    let v = one(&["orbit", "A", "2", "1,0"]);
    assert_eq!(v["size"], "3");
}
