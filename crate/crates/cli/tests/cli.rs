use std::path::PathBuf;
use std::process::{Command, Output};

fn permrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permrank"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn last_a() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data/last_a.json")
        .display()
        .to_string()
}

#[test]
fn rank_small_passes() {
    let out = permrank(&["rank", "--k", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("k=3 rank=6 expected=6"));
}

#[test]
fn rank_json_schema() {
    let out = permrank(&[
        "rank", "--k", "5", "--method", "modp", "--seed", "42", "--json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rank"], 70);
    assert_eq!(v["expected"], "70");
    assert_eq!(v["method"], "modular-multiprime");
    assert_eq!(v["primes"].as_array().unwrap().len(), 3);
    assert_eq!(v["passed"], true);
    for key in ["k", "elapsed_ms", "lower_bound_only"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn rank_dumps_bitmap() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p2.pbm");
    let out = permrank(&["rank", "--k", "2", "--dump-pbm", path.to_str().unwrap()]);
    assert!(out.status.success());
    let bytes = std::fs::read(&path).unwrap();
    assert_eq!(bytes, b"P4\n2 2\n\x40\x80");
}

#[test]
fn rank_degree_8_needs_opt_in() {
    let out = permrank(&["rank", "--k", "8"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn exact_method_refuses_large_orders() {
    let out = permrank(&["rank", "--k", "7", "--method", "exact"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_table1() {
    let out = permrank(&["verify", "--suite", "table1", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["suite"], "table1");
    assert_eq!(v[0]["cases"], 30);
    assert_eq!(v[0]["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_hooks_to_ten() {
    let out = permrank(&["verify", "--suite", "hooks", "--n", "10"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("138 cases"));
}

#[test]
fn verify_all_quick() {
    let out = permrank(&["verify", "--suite", "all", "--quick"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).matches("PASS").count(), 8);
}

#[test]
fn verify_unknown_suite() {
    let out = permrank(&["verify", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown suite"));
}

#[test]
fn verify_is_deterministic() {
    let strip = |o: Output| {
        let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        for r in v.as_array_mut().unwrap() {
            r["elapsed_ms"] = 0.into();
        }
        v
    };
    let a = strip(permrank(&[
        "verify", "--suite", "automata", "--seed", "9", "--json",
    ]));
    let b = strip(permrank(&[
        "verify", "--suite", "automata", "--seed", "9", "--json",
    ]));
    assert_eq!(a, b);
}

#[test]
fn bound_formats() {
    let csv = stdout(&permrank(&["bound", "--max", "3", "--format", "csv"]));
    assert_eq!(csv.lines().last().unwrap(), "3,33,39,39");
    let md = stdout(&permrank(&["bound", "--max", "10", "--format", "markdown"]));
    assert!(md.contains(
        "| 10 | 5\u{2009}188\u{2009}590 | 65\u{2009}672\u{2009}850 | 589\u{2009}410\u{2009}910 |"
    ));
    let json: serde_json::Value =
        serde_json::from_slice(&permrank(&["bound", "--max", "2", "--format", "json"]).stdout)
            .unwrap();
    assert_eq!(json[1]["new_lower"], "6");
}

#[test]
fn asym_digits() {
    let out = stdout(&permrank(&["asym", "--n", "10", "--digits", "30"]));
    assert!(out.contains("r(10) = 0.911000776098356790978713282000"));
    assert!(!permrank(&["asym", "--digits", "99"]).status.success());
}

#[test]
fn char_value() {
    assert_eq!(
        stdout(&permrank(&["char", "--lambda", "2,1", "--alpha", "3"])).trim(),
        "-1"
    );
    assert_eq!(
        stdout(&permrank(&["char", "--lambda", "2,1", "--alpha", "1,1,1"])).trim(),
        "2"
    );
    let out = permrank(&["char", "--lambda", "2,1", "--alpha", "2,2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn chartable_csv() {
    let out = stdout(&permrank(&["chartable", "2"]));
    assert_eq!(out, "lambda\\mu,1 1,2\n2,1,1\n1 1,1,-1\n");
}

#[test]
fn two_dfa_run() {
    let a = last_a();
    assert_eq!(
        stdout(&permrank(&["2dfa", "run", "-a", &a, "-w", "aba"])).trim(),
        "Accept"
    );
    assert_eq!(
        stdout(&permrank(&["2dfa", "run", "-a", &a, "-w", "abab"])).trim(),
        "Reject"
    );
    let out = permrank(&["2dfa", "run", "-a", &a, "-w", "abc"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn two_dfa_conversion_and_rank() {
    let a = last_a();
    let out = stdout(&permrank(&["2dfa", "todfa", "-a", &a]));
    assert!(out.contains("minimal=2"));
    let out = permrank(&[
        "2dfa",
        "commrank",
        "-a",
        &a,
        "--prefix-len",
        "4",
        "--suffix-len",
        "4",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rank"], 2);
    assert_eq!(v["prefixes"], 31);
}

#[test]
fn thread_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_permrank"))
        .args(["rank", "--k", "4"])
        .env("PERMRANK_THREADS", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
    let bad = Command::new(env!("CARGO_BIN_EXE_permrank"))
        .args(["rank", "--k", "4"])
        .env("PERMRANK_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
