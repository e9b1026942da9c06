use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use frechet::sampling::read_samples;
use frechet::FrechetShape;
use serde_json::Value;

fn frechet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frechet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = frechet(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    frechet(args).status.code().expect("exited normally")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn help_and_version() {
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["--version"]), 0);
    assert_eq!(code(&[]), 2);
    assert_eq!(code(&["bogus"]), 2);
    assert_eq!(code(&["moments", "--alpha", "5", "--format", "xml"]), 2);
    assert!(!stdout(&frechet(&["check", "--help"])).contains("mutate"));
}

#[test]
fn moments_table_shows_variance() {
    let out = frechet(&["moments", "--alpha", "5", "--max-order", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let row = text.lines().find(|l| l.starts_with("2 ")).unwrap();
    assert!(row.contains("0.13376"), "{row}");
}

#[test]
fn moments_mark_undefined_orders() {
    let v = json(&["moments", "--alpha", "2", "--max-order", "4", "--format", "json"]);
    assert_eq!(v["schema_version"], 1);
    let rows = v["moments"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows[0]["raw"].is_number());
    for row in &rows[1..] {
        assert_eq!(row["defined"], false);
        for field in ["raw", "centered", "normalized"] {
            assert_eq!(row[field], "undefined");
        }
    }
    assert_eq!(v["skewness"], "+inf");
    assert_eq!(v["excess_kurtosis"], "+inf");

    let text = stdout(&frechet(&["moments", "--alpha", "2", "--max-order", "4"]));
    assert_eq!(text.matches("undefined (k >= alpha)").count(), 9);
}

#[test]
fn moments_json_matches_library() {
    let v = json(&["moments", "--alpha", "8", "--max-order", "6", "--format", "json"]);
    let shape = FrechetShape::new(8.0).unwrap();
    let row = &v["moments"][5];
    assert_eq!(row["order"], 6);
    assert_eq!(row["normalized"].as_f64().unwrap(), shape.normalized_centered_moment(6).unwrap());
    assert_eq!(row["centered"].as_f64().unwrap(), shape.centered_moment(6).unwrap());
    assert_eq!(v["skewness"].as_f64().unwrap(), shape.skewness());
}

#[test]
fn moments_reject_bad_input() {
    assert_eq!(code(&["moments", "--alpha", "-1"]), 3);
    assert_eq!(code(&["moments", "--alpha", "5", "--max-order", "1"]), 2);
    assert_eq!(code(&["moments", "--alpha", "abc"]), 2);
}

#[test]
fn moments_csv() {
    let text = stdout(&frechet(&["moments", "--alpha", "5", "--format", "csv"]));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("quantity,order,value"));
    let variance = lines.find(|l| l.starts_with("centered,2,")).unwrap();
    let value: f64 = variance.rsplit(',').next().unwrap().parse().unwrap();
    assert_eq!(value, FrechetShape::new(5.0).unwrap().variance().unwrap());
}

#[test]
fn estimate_all_methods() {
    let v = json(&["estimate", "--variance", "0.0222624", "--method", "all", "--format", "json"]);
    let est = v["estimates"].as_array().unwrap();
    let alpha = |i: usize| est[i]["alpha"].as_f64().unwrap();
    assert_eq!(est[0]["method"], "order1");
    assert_eq!(format!("{:.2}", alpha(0)), "8.60");
    assert_eq!(format!("{:.2}", alpha(1)), "9.69");
    assert!((alpha(2) - 10.0).abs() < 0.005);
    assert_eq!(est[0]["iterations"], 0);
    assert!(est[2]["iterations"].as_u64().unwrap() > 0);
    assert!(est[2]["residual"].as_f64().unwrap() <= 1e-12);
    assert!(v["sample"].is_null());
}

#[test]
fn estimate_single_method_and_csv() {
    let v = json(&["estimate", "--variance", "0.133761", "--method", "order2", "--format", "json"]);
    assert_eq!(v["estimates"].as_array().unwrap().len(), 1);
    assert_eq!(v["estimates"][0]["method"], "order2");
    let text = stdout(&frechet(&["estimate", "--variance", "0.133761", "--format", "csv"]));
    assert!(text.starts_with("method,alpha,residual,iterations,variance"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn estimate_exit_codes() {
    assert_eq!(code(&["estimate", "--variance", "-1"]), 3);
    assert_eq!(code(&["estimate", "--variance", "0"]), 3);
    assert_eq!(code(&["estimate"]), 2);
    assert_eq!(code(&["estimate", "--variance", "1", "--input", "x.txt"]), 2);
    assert_eq!(code(&["estimate", "--variance", "1", "--fit"]), 2);
    assert_eq!(code(&["estimate", "--input", "/nonexistent/file.txt"]), 4);
    assert_eq!(code(&["estimate", "--variance", "0.1", "--method", "exact", "--max-iter", "2"]), 3);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "1.0\nabc\n").unwrap();
    let out = frechet(&["estimate", "--input", path_str(&bad)]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let empty = dir.path().join("empty.txt");
    fs::write(&empty, "\n\n").unwrap();
    assert_eq!(code(&["estimate", "--input", path_str(&empty)]), 4);
}

#[test]
fn estimate_from_named_column() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("data.csv");
    fs::write(&file, "id,value\n1,1.0\n2,2.0\n3,4.0\n").unwrap();
    let v = json(&[
        "estimate", "--input", path_str(&file), "--column", "value", "--method", "order1", "--format", "json",
    ]);
    assert_eq!(v["sample"]["count"], 3);
    assert!((v["variance"].as_f64().unwrap() - 7.0 / 3.0).abs() < 1e-14);
    assert_eq!(code(&["estimate", "--input", path_str(&file)]), 4);
}

#[test]
fn sample_is_deterministic_and_above_location() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for p in [&a, &b] {
        let out = frechet(&["sample", "--alpha", "5", "--count", "100", "--seed", "42", "-o", path_str(p)]);
        assert!(out.status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let values = read_samples(&a, None).unwrap();
    assert_eq!(values.len(), 100);
    assert!(values.iter().all(|&x| x > 0.0));

    let c = dir.path().join("c.txt");
    let out = frechet(&["sample", "-m", "-3", "-s", "2", "--alpha", "4", "-n", "500", "-o", path_str(&c)]);
    assert!(out.status.success());
    assert!(read_samples(&c, None).unwrap().iter().all(|&x| x > -3.0));
}

#[test]
fn sample_summary_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("s.txt");
    let v = json(&["sample", "--alpha", "10", "--count", "20000", "--seed", "7", "-o", path_str(&file), "--format", "json"]);
    assert_eq!(v["count"], 20000);
    let sample_var = v["sample"]["variance"].as_f64().unwrap();
    let analytic = v["analytic"]["variance"].as_f64().unwrap();
    assert!((sample_var - analytic).abs() / analytic < 0.1);

    let one = dir.path().join("one.txt");
    let v = json(&["sample", "--alpha", "3", "--count", "1", "-o", path_str(&one), "--format", "json"]);
    assert!(v["sample"].is_null());
    assert_eq!(v["analytic"]["skewness"], "+inf");

    assert_eq!(code(&["sample", "--alpha", "5", "--count", "10", "-o", "/nonexistent/dir/x.txt"]), 4);
    assert_eq!(code(&["sample", "--alpha", "5", "--count", "0", "-o", path_str(&file)]), 2);
    assert_eq!(code(&["sample", "--alpha", "5", "--scale", "0", "--count", "5", "-o", path_str(&file)]), 3);
}

#[test]
fn estimate_on_sampled_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("s.txt");
    assert_eq!(code(&["sample", "--alpha", "5", "--count", "1000000", "--seed", "11", "-o", path_str(&file)]), 0);
    let v = json(&["estimate", "--input", path_str(&file), "--method", "exact", "--format", "json"]);
    let alpha = v["estimates"][0]["alpha"].as_f64().unwrap();
    assert!((alpha - 5.0).abs() <= 0.2, "{alpha}");
    assert_eq!(v["sample"]["count"], 1000000);
}

#[test]
fn estimate_fit_recovers_shape() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("s.txt");
    assert_eq!(
        code(&["sample", "-m", "2", "-s", "3", "--alpha", "8", "-n", "400000", "--seed", "5", "-o", path_str(&file)]),
        0
    );
    let v = json(&["estimate", "--input", path_str(&file), "--method", "order1", "--fit", "--format", "json"]);
    let fit = &v["fit"];
    assert!((fit["alpha"].as_f64().unwrap() - 8.0).abs() < 1.0, "{fit}");
    assert!((fit["location"].as_f64().unwrap() - 2.0).abs() < 0.5, "{fit}");
}

#[test]
fn tables_reproducible_and_complete() {
    let a = frechet(&["tables", "--format", "json"]);
    let b = frechet(&["tables", "--format", "json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    let tables = v["tables"].as_array().unwrap();
    assert_eq!(tables.len(), 2);
    for t in tables {
        for row in t["rows"].as_array().unwrap() {
            assert_eq!(row["estimate"]["display"], row["estimate"]["printed"]);
            assert_eq!(row["estimate"]["matches"], true);
            assert_eq!(row["variance"]["matches"], true);
        }
    }
    let csv = stdout(&frechet(&["tables", "--format", "csv"]));
    assert_eq!(csv.lines().count(), 9);
    let text = stdout(&frechet(&["tables"]));
    assert!(text.contains("99.965") && text.contains("48.67"));
    assert!(!text.contains("NO"));
}

#[test]
fn check_runs_and_encodes_failures() {
    assert_eq!(code(&["check"]), 0);
    let v = json(&["check", "--alpha-grid", "5", "--format", "json"]);
    assert_eq!(v["passed"], true);
    let moment_rows: Vec<&Value> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["suite"] == "moments")
        .collect();
    let raw = moment_rows.iter().filter(|r| r["label"].as_str().unwrap().starts_with("raw")).count();
    assert_eq!(raw, 4);
    assert!(moment_rows.iter().all(|r| r["measured"].as_f64().unwrap() < 1e-7));

    let out = frechet(&["check", "--mutate-laurent-c2"]);
    assert_eq!(out.status.code(), Some(12));
    assert!(String::from_utf8_lossy(&out.stderr).contains("laurent"));
    assert_eq!(code(&["check", "--alpha-grid", "0"]), 3);
    assert_eq!(code(&["check", "--alpha-grid", "3,8", "--format", "csv"]), 0);
}
