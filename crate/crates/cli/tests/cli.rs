use std::process::{Command, Output};

use serde_json::Value;

const D_TABLE: &str = include_str!("fixtures/d_table.csv");

fn gridiv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gridiv"))
        .args(args)
        .env_remove("GRIDIV_EDGE_LIMIT")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn error_json(out: &Output) -> Value {
    let text = String::from_utf8(out.stderr.clone()).unwrap();
    serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("stderr is not JSON ({e}): {text}"))
}

#[test]
fn count_single_query() {
    let out = gridiv(&[
        "count", "--m", "2", "--n", "5", "--k", "5", "--engine", "dp",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "831\n");
    let out = gridiv(&["count", "--m", "2", "--n", "1", "--k", "1"]);
    assert_eq!(stdout(&out), "1\n");
}

#[test]
fn engines_agree_on_count() {
    let mut seen = Vec::new();
    for engine in ["dp", "brute", "recursion", "auto"] {
        let out = gridiv(&[
            "count", "--m", "2", "--n", "1..6", "--k", "1..12", "--engine", engine, "--format",
            "csv",
        ]);
        assert!(out.status.success(), "{engine}");
        seen.push(stdout(&out));
    }
    assert!(seen.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn count_output_is_ordered_by_board_and_k() {
    let out = gridiv(&[
        "count", "--m", "1..3", "--n", "1..3", "--k", "2", "--format", "csv",
    ]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().skip(1).collect();
    let keys: Vec<(usize, usize)> = lines
        .iter()
        .map(|l| {
            let f: Vec<usize> = l.split(',').map(|x| x.parse().unwrap()).collect();
            (f[0], f[1])
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(lines[4], "2,2,2,6");
}

#[test]
fn table_matches_fixture_byte_for_byte() {
    let out = gridiv(&["table", "--m", "2", "--n", "1..20", "--k", "1..10"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), D_TABLE);
    let rec = gridiv(&[
        "table",
        "--m",
        "2",
        "--n",
        "1..20",
        "--k",
        "1..10",
        "--engine",
        "recursion",
    ]);
    assert_eq!(stdout(&rec), D_TABLE);
}

#[test]
fn table_json_carries_big_integers_exactly() {
    let out = gridiv(&["table", "--n", "20", "--k", "10", "--format", "json"]);
    let text = stdout(&out);
    assert!(text.contains("2668573664500"), "{text}");
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["series"], "d");
    assert_eq!(v["rows"][0]["provenance"][0], "dp");
}

#[test]
fn separation_table() {
    let out = gridiv(&[
        "table", "--series", "s", "--n", "3..4", "--k", "2..3", "--engine", "brute",
    ]);
    assert_eq!(stdout(&out), "n,2,3\n3,5,16\n4,7,47\n");
}

#[test]
fn fit_prints_exact_coefficients() {
    let out = gridiv(&["fit", "--k", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.contains("d(n) = 2/3*n^4 - 4/3*n^3 + 11/6*n^2 - 13/6*n + 1"),
        "{text}"
    );
    assert!(text.contains("recursion identity ok, degree ok, spot values ok"));
}

#[test]
fn fit_range_json_lines_are_verified() {
    let out = gridiv(&["fit", "--k", "3..7", "--format", "json"]);
    assert!(out.status.success());
    let families: Vec<Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(families.len(), 5);
    for (f, k) in families.iter().zip(3..) {
        assert_eq!(f["k"], k);
        assert_eq!(f["degrees"]["d"], 2 * k - 2);
        assert_eq!(f["verified"]["recursion_identity"], true);
    }
}

#[test]
fn symmetry_reports() {
    let out = gridiv(&["symmetry", "--m", "2", "--n", "1..6", "--k", "2"]);
    assert!(out.status.success());
    let lines: Vec<Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 6);
    for (v, n) in lines.iter().zip(1u64..) {
        assert_eq!(v["orbits"], n * (n + 1) / 2);
        assert_eq!(v["fixed"]["e"], 2 * n * n - n);
    }
}

#[test]
fn verify_suite_passes() {
    let out = gridiv(&["verify", "--format", "json"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    for line in stdout(&out).lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["ok"], true, "{line}");
    }
}

#[test]
fn enumerate_writes_label_arrays() {
    let out = gridiv(&["enumerate", "--m", "2", "--n", "2", "--k", "3"]);
    assert_eq!(stdout(&out), "2 2 3\n0,0,1,2\n0,1,0,2\n0,1,2,1\n0,1,2,2\n");
}

#[test]
fn guard_exceeded_exits_four() {
    let out = gridiv(&["count", "--m", "9", "--n", "9", "--k", "2"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(error_json(&out)["error"]["kind"], "guard_exceeded");

    let out = Command::new(env!("CARGO_BIN_EXE_gridiv"))
        .args([
            "count", "--m", "2", "--n", "5", "--k", "2", "--engine", "brute",
        ])
        .env("GRIDIV_EDGE_LIMIT", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn input_errors_exit_two() {
    for args in [
        &[
            "count",
            "--m",
            "3",
            "--n",
            "2",
            "--k",
            "2",
            "--engine",
            "recursion",
        ][..],
        &["count", "--m", "0", "--n", "1", "--k", "1"],
        &["count", "--m", "2", "--n", "5..3", "--k", "1"],
        &["count", "--m", "2", "--n", "5"],
        &["bogus"],
    ] {
        let out = gridiv(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert_eq!(error_json(&out)["error"]["kind"], "input", "{args:?}");
    }
}

#[test]
fn output_file_is_deterministic() {
    let dir = std::env::temp_dir().join(format!("gridiv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let paths = [dir.join("a.csv"), dir.join("b.csv")];
    for p in &paths {
        let out = gridiv(&[
            "count",
            "--m",
            "2..3",
            "--n",
            "1..4",
            "--k",
            "1..6",
            "--format",
            "csv",
            "--output",
            p.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
    }
    let a = std::fs::read(&paths[0]).unwrap();
    assert_eq!(a, std::fs::read(&paths[1]).unwrap());
    std::fs::remove_dir_all(&dir).unwrap();
}
