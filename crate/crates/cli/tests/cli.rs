use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn specbisect(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_specbisect"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn generated(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let p = dir.path().join(name);
    let mut full = vec!["generate"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path_str(&p)]);
    let out = specbisect(&full);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    p
}

#[test]
fn generate_writes_edge_lists() {
    let dir = TempDir::new().unwrap();
    let roach = std::fs::read_to_string(generated(&dir, "r.txt", &["roach", "--k", "4"])).unwrap();
    assert_eq!(roach.lines().next(), Some("16 18"));
    let cycle = std::fs::read_to_string(generated(&dir, "c.txt", &["cycle", "--n", "8"])).unwrap();
    assert_eq!(cycle.lines().next(), Some("8 8"));
    assert_eq!(cycle.lines().count(), 9);

    let a = specbisect(&["generate", "er", "--n", "50", "--p", "0.1", "--seed", "7"]);
    let b = specbisect(&["generate", "er", "--n", "50", "--p", "0.1", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let missing = specbisect(&["generate", "roach"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn bisect_roach_and_k4() {
    let dir = TempDir::new().unwrap();
    let roach = generated(&dir, "roach4.txt", &["roach", "--k", "4"]);
    let report = stdout_json(&specbisect(&[
        "bisect",
        path_str(&roach),
        "--method",
        "alg1",
    ]));
    assert_eq!(report["graph_id"], "roach4");
    assert_eq!(report["sb_cut"], 4);
    assert_eq!(report["alg1_cut"], 2);
    assert_eq!(report["improvement"], 0.5);

    let k4 = generated(&dir, "k4.txt", &["complete", "--n", "4"]);
    let report = stdout_json(&specbisect(&["bisect", path_str(&k4), "--method", "sb"]));
    assert_eq!(report["sb_cut"], 4);
    assert!(report["alg1_cut"].is_null());
}

#[test]
fn bisect_csv_columns() {
    let dir = TempDir::new().unwrap();
    let roach = generated(&dir, "roach4.txt", &["roach", "--k", "4"]);
    let out = specbisect(&["bisect", path_str(&roach), "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("graph_id,n,m,sb_cut,alg1_cut,improvement,lambda2,lambda3,runtime_ms")
    );
    assert!(lines.next().unwrap().starts_with("roach4,16,18,4,2,0.5,"));
}

#[test]
fn domain_errors_exit_3() {
    let dir = TempDir::new().unwrap();
    let split = write(&dir, "split.txt", "4 2\n0 1\n2 3\n");
    let out = specbisect(&["bisect", path_str(&split)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("disconnected"));

    let odd = generated(&dir, "p5.txt", &["path", "--n", "5"]);
    assert_eq!(
        specbisect(&["bisect", path_str(&odd)]).status.code(),
        Some(3)
    );
}

#[test]
fn refine_round_trip() {
    let dir = TempDir::new().unwrap();
    let roach = generated(&dir, "roach4.txt", &["roach", "--k", "4"]);
    let part = dir.path().join("sb.part");
    let out = specbisect(&[
        "bisect",
        path_str(&roach),
        "--method",
        "sb",
        "--out",
        path_str(&part),
    ]);
    let sb = stdout_json(&out);

    let refined_part = dir.path().join("refined.part");
    let out = specbisect(&[
        "refine",
        path_str(&roach),
        path_str(&part),
        "--out",
        path_str(&refined_part),
    ]);
    let report = stdout_json(&out);
    assert_eq!(report["input_cut"], sb["sb_cut"]);
    assert_eq!(report["refined_cut"], 2);

    // an optimal partition is left alone
    let report = stdout_json(&specbisect(&[
        "refine",
        path_str(&roach),
        path_str(&refined_part),
    ]));
    assert_eq!(report["input_cut"], 2);
    assert_eq!(report["refined_cut"], 2);
}

#[test]
fn malformed_partitions_exit_2() {
    let dir = TempDir::new().unwrap();
    let c4 = generated(&dir, "c4.txt", &["cycle", "--n", "4"]);
    for (name, body) in [
        ("unbalanced.part", "4 2\n0 A\n1 A\n2 A\n3 B\n"),
        ("garbled.part", "4 2\n0 A\n1 X\n2 B\n3 B\n"),
        ("short.part", "4 2\n0 A\n1 A\n"),
        ("wrong_order.part", "6 3\n0 A\n1 A\n2 A\n3 B\n4 B\n5 B\n"),
    ] {
        let p = write(&dir, name, body);
        let out = specbisect(&["refine", path_str(&c4), path_str(&p)]);
        assert_eq!(out.status.code(), Some(2), "{name}");
    }
    let missing = dir.path().join("absent.part");
    assert_eq!(
        specbisect(&["refine", path_str(&c4), path_str(&missing)])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn oracle_queries() {
    let dir = TempDir::new().unwrap();
    let roach2 = generated(&dir, "roach2.txt", &["roach", "--k", "2"]);
    let min = stdout_json(&specbisect(&[
        "oracle",
        path_str(&roach2),
        "--which",
        "min",
    ]));
    assert_eq!(min["min_cut"], 2);

    let c4 = generated(&dir, "c4.txt", &["cycle", "--n", "4"]);
    let adjacent = write(&dir, "adj.part", "4 2\n0 A\n1 A\n2 B\n3 B\n");
    let dc = stdout_json(&specbisect(&[
        "oracle",
        path_str(&c4),
        "--which",
        "dc",
        "--partition",
        path_str(&adjacent),
    ]));
    assert_eq!(dc["d_c"], 0);
    assert_eq!(dc["cut"], 2);

    let id = stdout_json(&specbisect(&[
        "oracle",
        path_str(&c4),
        "--which",
        "identity",
    ]));
    assert_eq!(id["holds"], true);

    let big = generated(&dir, "p30.txt", &["path", "--n", "30"]);
    let out = specbisect(&["oracle", path_str(&big), "--which", "min"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn experiment_is_reproducible() {
    let args = [
        "experiment",
        "--n",
        "30",
        "--p",
        "0.2",
        "--samples",
        "40",
        "--seed",
        "5",
    ];
    let a = stdout_json(&specbisect(&args));
    let b = stdout_json(&specbisect(&args));
    assert_eq!(a, b);
    assert_eq!(a["samples"], 40);
    assert!(a["mean_improvement"].as_f64().unwrap() >= 0.0);

    let bad = specbisect(&["experiment", "--n", "30", "--p", "1.5", "--samples", "4"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn matrix_market_input() {
    let dir = TempDir::new().unwrap();
    let mtx = write(
        &dir,
        "c4.mtx",
        "%%MatrixMarket matrix coordinate pattern symmetric\n4 4 4\n2 1\n3 2\n4 3\n4 1\n",
    );
    let report = stdout_json(&specbisect(&["bisect", path_str(&mtx)]));
    assert_eq!(report["n"], 4);
    assert_eq!(report["sb_cut"], 2);
}
