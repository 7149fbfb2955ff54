use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn mk3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mk3"))
        .args(args)
        .env_remove("MK3_CACHE_DIR")
        .output()
        .expect("run mk3")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = mk3(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

#[test]
fn points() {
    assert_eq!(ok(&["points", "-p", "7", "-k", "1"]).lines().count(), 68);
    let v: serde_json::Value = serde_json::from_str(&ok(&["points", "-p", "3", "-k", "1", "--format", "json"])).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 8);
    let csv = ok(&["points", "-p", "5", "-k", "-1", "--format", "csv"]);
    assert_eq!(csv.lines().next(), Some("x,y,z"));
}

#[test]
fn bad_input_exits_2() {
    assert_eq!(mk3(&["points", "-p", "9", "-k", "1"]).status.code(), Some(2));
    assert_eq!(mk3(&["orbits", "-p", "7", "-k", "0"]).status.code(), Some(2));
    assert_eq!(mk3(&["orbits", "-p", "7"]).status.code(), Some(2));
    assert_eq!(mk3(&["char0", "verify", "--family", "size5"]).status.code(), Some(2));
}

#[test]
fn orbits() {
    assert_eq!(ok(&["orbits", "-p", "53", "-k", "1"]).trim(), "24^2, 48, 3456");
    assert_eq!(ok(&["orbits", "-p", "47", "-k", "11"]).trim(), "64, 96, 160, 288, 1728");
    let sigma = ok(&["orbits", "-p", "71", "-k", "13", "--sigma-only"]);
    assert!(sigma.contains("24^"), "{sigma}");
    assert_eq!(ok(&["orbits", "-p", "53", "-k", "11", "--seed-point", "(38,-38,1)"]).trim(), "288");
    let all = ok(&["orbits", "-p", "7", "--all-k", "--format", "csv"]);
    assert_eq!(all.lines().count(), 7);
}

#[test]
fn fibral() {
    let table = ok(&["fibral", "-p", "17", "-k", "1", "--table"]);
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(&lines[..5], &["0: 6", "1: 2", "2: 3", "3: 2", "4: 4"]);
    assert_eq!(lines.last(), Some(&"inf: 6"));
    assert_eq!(ok(&["fibral", "-p", "5", "-k", "1", "-t", "0"]).trim(), "3");
    assert_eq!(ok(&["fibral", "-p", "19", "-k", "1", "-t", "16"]).trim(), "0");
}

#[test]
fn cage() {
    let v: serde_json::Value =
        serde_json::from_str(&ok(&["cage", "-p", "53", "-k", "1", "--format", "json"])).unwrap();
    assert_eq!(v["connected"].as_array().unwrap().len(), 14);
    assert_eq!(v["components"].as_array().unwrap().len(), 2);
    let dot = ok(&["cage", "-p", "53", "-k", "1", "--dot"]);
    assert!(dot.starts_with("graph cage {"));
    assert_eq!(dot.lines().filter(|l| l.starts_with("    \"")).count(), 14);
    ok(&["cage", "-p", "11", "-k", "1"]);
}

#[test]
fn census_single_k_and_diff() {
    assert_eq!(
        ok(&["census", "--primes", "113..113", "-k", "4"]).trim(),
        "p=113 k=4: 4, 24, 48, 6656, 7488"
    );
    let rows = ok(&["census", "--primes", "3..31", "--diff", "--format", "csv"]);
    assert!(rows.contains("7,1,\"64\""));
    let bad = mk3(&["census", "--primes", "3..13", "--with-delta", "--diff"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("expected"));
}

#[test]
fn census_p53_matches_tables() {
    let out = ok(&["census", "--primes", "53..53", "--diff"]);
    assert_eq!(out.lines().count(), 13);
}

#[test]
fn census_independent_of_jobs() {
    let a = ok(&["census", "--primes", "3..41", "--jobs", "1", "--format", "csv"]);
    let b = ok(&["census", "--primes", "3..41", "--jobs", "4", "--format", "csv"]);
    assert_eq!(a, b);
}

fn read_dir_sorted(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), fs::read(e.path()).unwrap())
        })
        .collect();
    v.sort();
    v
}

#[test]
fn census_resume_is_byte_identical() {
    let full = tempfile::tempdir().unwrap();
    let part = tempfile::tempdir().unwrap();
    let args = |d: &Path| {
        vec![
            "census".to_string(),
            "--primes".into(),
            "3..23".into(),
            "--out".into(),
            d.to_string_lossy().into_owned(),
        ]
    };
    let run = |v: Vec<String>| ok(&v.iter().map(String::as_str).collect::<Vec<_>>());
    let printed = run(args(full.path()));
    // an interrupted run: a few primes done and a stray partial write
    let mut first = args(part.path());
    first[2] = "3..11".into();
    run(first);
    fs::write(part.path().join("p013.tmp"), "p,k,sizes\n13,1").unwrap();
    let mut resumed = args(part.path());
    resumed.push("--resume".into());
    assert_eq!(run(resumed), printed);
    fs::remove_file(part.path().join("p013.tmp")).ok();
    assert_eq!(read_dir_sorted(full.path()), read_dir_sorted(part.path()));
}

#[test]
fn cache_hits_match_recomputation() {
    let dir = tempfile::tempdir().unwrap();
    let with_cache = |args: &[&str]| {
        let o = Command::new(env!("CARGO_BIN_EXE_mk3"))
            .args(args)
            .env("MK3_CACHE_DIR", dir.path())
            .output()
            .unwrap();
        assert!(o.status.success());
        stdout(&o)
    };
    let args = ["orbits", "-p", "31", "-k", "5", "--format", "json"];
    let fresh = ok(&args);
    let miss = with_cache(&args);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    let hit = with_cache(&args);
    assert_eq!(fresh, miss);
    assert_eq!(miss, hit);
    with_cache(&["orbits", "-p", "31", "-k", "5", "--with-delta"]);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 2);
    let census = ["census", "--primes", "29..31", "--format", "csv"];
    assert_eq!(ok(&census), with_cache(&census));
    assert_eq!(with_cache(&census), ok(&census));
}

#[test]
fn linkcheck() {
    let o = mk3(&["linkcheck", "-p", "101", "-k", "1", "--exhaustive", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["failures"].as_array().unwrap().len(), 0);
    assert_eq!(v["hypothesis_met"], true);

    let r = ok(&["linkcheck", "-p", "53", "-k", "1", "--restricted"]);
    let failures: usize = r
        .lines()
        .find_map(|l| l.strip_prefix("failures: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(failures > 0);

    let small = ok(&["linkcheck", "-p", "7", "-k", "1", "--exhaustive"]);
    assert!(small.contains("report only"));
    // above 100 a missing link is an error; at p = 103 pairs through fibers
    // that are singular over the closure can lack one
    let o = mk3(&["linkcheck", "-p", "103", "-k", "1", "--sample", "50", "--seed", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["pairs_tested"], 50);
    assert!(!v["report"]["failures"].as_array().unwrap().is_empty());
}

#[test]
fn char0_commands() {
    let v: serde_json::Value =
        serde_json::from_str(&ok(&["char0", "verify", "--family", "size64", "--format", "json"])).unwrap();
    assert_eq!(v[0]["size"], 64);
    assert_eq!(v[0]["seed_suborbits"], serde_json::json!([4, 12, 12, 12, 24]));
    let c = ok(&["char0", "cautionary"]);
    assert_eq!(c.lines().filter(|l| l.starts_with("ok")).count(), 7);
    let s = ok(&["char0", "specialize", "-p", "19", "-k", "9", "--alpha", "7", "--beta", "2", "--gamma", "3"]);
    assert!(s.starts_with("orbit size 144"));
    let bad = mk3(&["char0", "specialize", "-p", "47", "-k", "12", "--alpha", "3", "--beta", "6", "--gamma", "11"]);
    assert_eq!(bad.status.code(), Some(1));
}
