use std::process::{Command, Output};

use serde_json::Value;

fn besselid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_besselid"))
        .args(args)
        .env_remove("BESSELID_WORKERS")
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    let out = besselid(args);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(!stderr.contains("panicked"), "{args:?} panicked: {stderr}");
    out.status.code().expect("exited normally")
}

fn rows(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).expect("valid JSON line"))
        .collect()
}

fn args(s: &str) -> Vec<&str> {
    s.split_whitespace().collect()
}

#[test]
fn documented_examples_pass() {
    for cmd in [
        "verify --family f --m 2..4 --n 0..8",
        "verify --family prudnikov --n 0..20",
        "numeric --identity brychkov --m 2..4 --n 0..8 --z 0.5,1,2",
        "numeric --identity fk --m 2 --n 3 --z 0.5,1.5",
        "numeric --identity k --m 5 --n 0 --z 1",
        "sample --test lemma2 --z 1,1 --count 100000 --seed 7",
        "sample --test extension --z 1,2,3 --count 100000 --seed 11",
        "inequality --turan --x -0.2,0.5,1.5,3 --y -0.2,0.5,1.5,3 --p 1.5,2,4 --z 0.5,1,5",
        "inequality --logconvex --nu 0:5:0.25 --z 1",
        "inequality --turan --x 1 --y 1 --p 2 --z 1",
    ] {
        assert_eq!(code(&args(cmd)), 0, "{cmd}");
    }
}

#[test]
fn moment_example_targets_seven() {
    let out = besselid(&args(
        "sample --test moments --z 1 --n 2 --count 1000000 --seed 3",
    ));
    assert_eq!(out.status.code(), Some(0));
    let rows = rows(&out);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["params"]["target"], 7.0);
    assert_eq!(rows[0]["seed"], 3);
}

#[test]
fn row_schema() {
    let out = besselid(&args("verify --family theta --m 2..3 --n 0..2"));
    let rows = rows(&out);
    assert_eq!(rows.len(), 6);
    for (row, (m, n)) in rows
        .iter()
        .zip([(2, 0), (2, 1), (2, 2), (3, 0), (3, 1), (3, 2)])
    {
        let keys: Vec<&str> = row
            .as_object()
            .unwrap()
            .keys()
            .map(String::as_str)
            .collect();
        assert_eq!(
            keys,
            [
                "identity",
                "metric",
                "params",
                "status",
                "tolerance",
                "witness"
            ]
        );
        assert_eq!(row["identity"], "theta");
        assert_eq!(row["status"], "pass");
        assert_eq!(row["params"]["m"], m);
        assert_eq!(row["params"]["n"], n);
        assert_eq!(row["witness"]["max_degree"], n);
    }
}

#[test]
fn configuration_errors_exit_two() {
    for cmd in [
        "verify --family general --m 1 --n 0",
        "verify --family general --m 2 --n 13",
        "verify --family general --m 6 --n 0",
        "verify --family general --n 0",
        "verify --family prudnikov --m 2 --n 0",
        "verify --family nope --n 0",
        "verify --family f --m 4..2 --n 0",
        "verify --family f --m 2 --n -1",
        "numeric --identity brychkov --m 2 --n 1 --z 0",
        "numeric --identity brychkov --m 2 --n 1 --z -1",
        "numeric --identity brychkov --n 1 --z 1",
        "numeric --identity k --m 2 --n 1 --z 1 --tol 0",
        "numeric --identity fk --m 3 --n 1 --z 1,2",
        "sample --test lemma2 --z 1,1 --count 10 --seed 1",
        "sample --test stability --z 1 --seed 1",
        "sample --test moments --z 1 --seed 1",
        "sample --test moments --z 1 --n 9 --count 1000 --seed 1",
        "sample --test lemma2 --z 1,1 --n 2 --seed 1",
        "inequality --turan --x 1 --y 1 --p 1 --z 1",
        "inequality --turan --x -1.2 --y 1 --p 2 --z 1",
        "inequality --logconvex --nu 0:1:0.3 --z 1",
        "inequality --logconvex --nu 0,1 --z 1",
        "inequality --logconvex --nu 0,1,3 --z 1",
        "inequality --z 1",
        "",
    ] {
        assert_eq!(code(&args(cmd)), 2, "{cmd}");
    }
}

#[test]
fn failed_check_exits_one() {
    let out = besselid(&args(
        "numeric --identity k --m 2..4 --n 0..8 --z 0.5,1,2 --tol 1e-300",
    ));
    assert_eq!(out.status.code(), Some(1));
    assert!(rows(&out).iter().any(|r| r["status"] == "fail"));
}

#[test]
fn output_is_byte_identical_across_runs_and_workers() {
    let cmd = args("sample --test moments --z 0.5,1 --n 0..3 --count 20000 --seed 5");
    let first = besselid(&cmd);
    let second = besselid(&cmd);
    assert_eq!(first.stdout, second.stdout);
    let parallel = Command::new(env!("CARGO_BIN_EXE_besselid"))
        .args(&cmd)
        .env("BESSELID_WORKERS", "4")
        .output()
        .unwrap();
    assert_eq!(first.stdout, parallel.stdout);

    let grid = args("verify --family general --m 2..4 --n 0..5");
    let serial = besselid(&grid);
    let parallel = Command::new(env!("CARGO_BIN_EXE_besselid"))
        .args(&grid)
        .env("BESSELID_WORKERS", "3")
        .output()
        .unwrap();
    assert_eq!(serial.stdout, parallel.stdout);
}

#[test]
fn bad_worker_count_is_a_config_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_besselid"))
        .args(args("verify --family prudnikov --n 1"))
        .env("BESSELID_WORKERS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_seed_is_printed() {
    let out = besselid(&args("sample --test stability --z 1,2 --count 2000"));
    let stderr = String::from_utf8(out.stderr.clone()).unwrap();
    let seed: u64 = stderr
        .lines()
        .find_map(|l| l.strip_prefix("seed: "))
        .expect("seed line")
        .parse()
        .unwrap();
    assert_eq!(rows(&out)[0]["seed"], seed);
}

#[test]
fn out_path_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let out = besselid(&[
        "verify",
        "--family",
        "prudnikov",
        "--n",
        "0..3",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let mut reader = csv::Reader::from_path(&path).unwrap();
    let headers = reader.headers().unwrap().clone();
    assert_eq!(
        headers.iter().collect::<Vec<_>>(),
        [
            "identity",
            "params",
            "status",
            "metric",
            "tolerance",
            "seed",
            "witness"
        ]
    );
    let records: Vec<_> = reader.records().map(Result::unwrap).collect();
    assert_eq!(records.len(), 4);
    assert!(records
        .iter()
        .all(|r| &r[0] == "prudnikov" && &r[2] == "pass"));

    let bad = dir.path().join("missing").join("report.json");
    assert_eq!(
        code(&[
            "verify",
            "--family",
            "prudnikov",
            "--n",
            "1",
            "--out",
            bad.to_str().unwrap()
        ]),
        2
    );
}

#[test]
fn text_summary_goes_to_stderr() {
    let out = besselid(&args(
        "verify --family laguerre --m 2 --n 0..2 --format text",
    ));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 3);
    assert!(stdout
        .lines()
        .all(|l| l.starts_with("PASS laguerre m=2 n=")));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("3 checks, 3 passed, 0 failed"));
}
