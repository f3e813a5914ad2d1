//! End-to-end runs of the binary: generate, decompose, color, verify,
//! oracle, render, bench, exit codes, and byte determinism across runs.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_spiralchain")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("binary runs")
}

fn tmpdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("spiralchain-cli-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_color_verify_round_trip() {
    let dir = tmpdir("roundtrip");
    let rot = dir.join("g.rot");
    let col = dir.join("c.json");

    let out = run(&["gen", "--kind", "maximal", "--n", "20", "--seed", "7", "--flips", "40", "--out", path_str(&rot)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    for kind in ["vertex", "edge", "total", "entire"] {
        let out = run(&["color", kind, "--input", path_str(&rot), "--out", path_str(&col)]);
        assert!(out.status.success(), "color {kind}: {}", String::from_utf8_lossy(&out.stderr));
        let out = run(&["verify", "--input", path_str(&rot), "--coloring", path_str(&col)]);
        assert_eq!(out.status.code(), Some(0), "verify {kind} should pass");
    }
}

#[test]
fn verify_rejects_tampered_coloring_with_exit_one() {
    let dir = tmpdir("tamper");
    let rot = dir.join("g.rot");
    let col = dir.join("c.json");
    run(&["gen", "--name", "k4", "--out", path_str(&rot)]);
    run(&["color", "vertex", "--input", path_str(&rot), "--out", path_str(&col)]);
    // Flatten every vertex to color 1.
    let text = fs::read_to_string(&col).unwrap();
    let tampered = text.replace("\"vertices\": [", "\"vertices\": [1, 1, 1, 1], \"was\": [");
    fs::write(&col, tampered).unwrap();
    let out = run(&["verify", "--input", path_str(&rot), "--coloring", path_str(&col)]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn input_errors_exit_three() {
    let out = run(&["gen", "--name", "petersen"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["decompose", "--input", "/nonexistent/file.rot"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn oracle_values_match_references() {
    let dir = tmpdir("oracle");
    let rot = dir.join("k4.rot");
    run(&["gen", "--name", "k4", "--out", path_str(&rot)]);
    let chi = run(&["oracle", "--input", path_str(&rot), "--kind", "vertex"]);
    assert_eq!(String::from_utf8_lossy(&chi.stdout).trim(), "4");
    let chi_p = run(&["oracle", "--input", path_str(&rot), "--kind", "edge"]);
    assert_eq!(String::from_utf8_lossy(&chi_p.stdout).trim(), "3");
    let total = run(&["oracle", "--input", path_str(&rot), "--kind", "total"]);
    assert_eq!(String::from_utf8_lossy(&total.stdout).trim(), "5");
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = tmpdir("determinism");
    let mut artifacts: Vec<(String, String)> = Vec::new();
    for round in 0..2 {
        let rot = dir.join(format!("g{round}.rot"));
        let dec = dir.join(format!("d{round}.json"));
        let col = dir.join(format!("c{round}.json"));
        let svg = dir.join(format!("g{round}.svg"));
        let rep = dir.join(format!("r{round}.json"));
        run(&["gen", "--kind", "maximal", "--n", "18", "--seed", "11", "--flips", "36", "--out", path_str(&rot)]);
        run(&["decompose", "--input", path_str(&rot), "--out", path_str(&dec)]);
        run(&["color", "vertex", "--input", path_str(&rot), "--out", path_str(&col)]);
        run(&["render", "--input", path_str(&rot), "--coloring", path_str(&col), "--out", path_str(&svg)]);
        run(&[
            "bench", "--algorithm", "vertex", "--count", "6", "--min-n", "8", "--max-n", "20",
            "--seed", "3", "--format", "json", "--out", path_str(&rep),
        ]);
        for p in [&rot, &dec, &col, &svg, &rep] {
            artifacts.push((format!("{round}:{}", p.display()), fs::read_to_string(p).unwrap()));
        }
    }
    let half = artifacts.len() / 2;
    for i in 0..half {
        assert_eq!(
            artifacts[i].1,
            artifacts[i + half].1,
            "artifact differs across runs: {}",
            artifacts[i].0
        );
    }
}

#[test]
fn bench_over_triangle_free_corpus() {
    let out = run(&[
        "bench", "--algorithm", "three", "--count", "8", "--min-n", "6", "--max-n", "30",
        "--kind", "triangle-free",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("8 instances"), "report:\n{text}");
    assert!(text.contains("8 valid (100.0%)"), "report:\n{text}");
}

#[test]
fn dimacs_export_and_rot_round_trip() {
    let dir = tmpdir("formats");
    let rot = dir.join("g.rot");
    let col_file = dir.join("g.col");
    run(&["gen", "--kind", "maximal", "--n", "12", "--seed", "7", "--flips", "24", "--out", path_str(&rot), "--dimacs-out", path_str(&col_file)]);
    let dimacs = fs::read_to_string(&col_file).unwrap();
    assert!(dimacs.starts_with("p edge 12 30"));
    assert_eq!(dimacs.lines().count(), 31);
    // Re-generating from the same spec reproduces the .rot bytes.
    let rot2 = dir.join("g2.rot");
    run(&["gen", "--kind", "maximal", "--n", "12", "--seed", "7", "--flips", "24", "--out", path_str(&rot2)]);
    assert_eq!(fs::read_to_string(&rot).unwrap(), fs::read_to_string(&rot2).unwrap());
}
