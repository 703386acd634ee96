use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quartic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn verify_exit_codes() {
    assert_eq!(code(&run(&["verify", "--n-max", "0"])), 2);
    let out = run(&["verify", "--n-max", "1"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("192"));
    assert_eq!(
        code(&run(&["verify", "--n-max", "3", "--format", "yaml"])),
        2
    );
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn verify_sqf_column() {
    let out = run(&["verify", "--n-max", "11", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    let headers = rdr.headers().unwrap().clone();
    let want = [
        "n",
        "S",
        "sqf",
        "predicted",
        "pass",
        "v_2",
        "v_3",
        "v_5",
        "v_7",
        "v_11",
        "v_13",
    ];
    assert_eq!(headers.iter().collect::<Vec<_>>(), want);
    let sqf: Vec<String> = rdr.records().map(|r| r.unwrap()[2].to_string()).collect();
    assert_eq!(
        sqf,
        ["3", "1", "5", "1", "7", "1", "3", "1", "11", "1", "13"]
    );
}

#[test]
fn verify_json_reports_checks() {
    let v = json(&["verify", "--n-max", "4", "--format", "json"]);
    assert_eq!(v["pass"], true);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 4);
    assert_eq!(results[0]["content"]["S"], "192");
    assert!(results
        .iter()
        .all(|r| !r["checks"].as_array().unwrap().is_empty()));
}

#[test]
fn content_fields() {
    let v = json(&["content", "--n", "2", "--format", "json"]);
    assert_eq!(v["v_3"], 4);
    assert_eq!(v["sqf"], 1);
    assert_eq!(json(&["content", "--n", "4"])["sqf"], 1);
    let v = json(&["content", "--n", "3"]);
    assert_eq!(v["sqf"], 5);
    assert_eq!(v["theorem_holds"], true);
    assert!(v["S"].is_string());
    assert_eq!(code(&run(&["content", "--n", "0"])), 2);
    assert_eq!(code(&run(&["content"])), 2);
}

#[test]
fn witness_kinds() {
    let v = json(&["witness", "--n", "7", "--prime", "3"]);
    assert_eq!(v[0]["kind"], "deformation");
    assert_eq!(v[0]["v_p"].as_u64().unwrap() % 2, 1);
    assert_eq!(v[0]["pass"], true);

    let v = json(&["witness", "--n", "4", "--prime", "3"]);
    assert_eq!(v[0]["kind"], "p3-ternary");
    assert_ne!(v[0]["k"].as_u64().unwrap() % 3, 0);

    let v = json(&["witness", "--n", "2", "--prime", "7"]);
    assert_eq!(v[0]["kind"], "pair");
    assert_eq!(v[0]["v_p"], v[0]["expected_v_p"]);

    let v = json(&["witness", "--n", "6"]);
    let primes: Vec<u64> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|w| w["prime"].as_u64().unwrap())
        .collect();
    assert_eq!(primes, [2, 3, 5, 7, 11, 13]);
    assert_eq!(v[0]["kind"], "p2-pair");

    assert_eq!(code(&run(&["witness", "--n", "3", "--prime", "4"])), 2);
    assert_eq!(code(&run(&["witness", "--n", "1", "--prime", "2"])), 2);
}

#[test]
fn coeff_and_poly() {
    let v = json(&["coeff", "--n", "2", "--r", "2"]);
    assert_eq!(v["matches_extraction"], true);
    assert_eq!(v["monomial"], "f_1 f_2 f_3 f_4");
    assert!(v["value"].as_str().unwrap().starts_with('-'));
    assert_eq!(code(&run(&["coeff", "--n", "2", "--r", "7"])), 2);

    let out = run(&["poly", "--n", "1", "--which", "B"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "72 * f_0 f_3\n-8 * f_1 f_2\n"
    );

    let v = json(&["poly", "--n", "1", "--which", "Delta", "--format", "json"]);
    let content: u64 = v["content"].as_str().unwrap().parse().unwrap();
    assert_eq!(content % 192, 0);
    assert_eq!(code(&run(&["poly", "--n", "1", "--which", "D"])), 2);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verify", "--n-max", "6", "--format", "json"][..],
        &["witness", "--n", "9"][..],
        &["poly", "--n", "3", "--which", "Delta"][..],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("quartic-cli-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = run(&["content", "--n", "1", "--output", p]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v["S"], "192");
}
