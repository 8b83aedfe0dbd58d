//! End-to-end tests of the binary: output shapes, exit codes, and the
//! determinism contract of `simulate`.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_boundary-codes"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

#[test]
fn params_prints_the_bracket_line() {
    let out = run(&["params", "rectangle", "-n", "2", "-m", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("[[18,1,3]]"));
    assert!(text.contains("generators: 17 (9 x-type, 8 z-type)"));
    assert!(text.contains("closed form min{n+1,m+1} = 3: ok"));
}

#[test]
fn family_flag_and_positional_are_equivalent() {
    let a = stdout(&run(&["params", "rectangle", "-n", "2", "-m", "3"]));
    let b = stdout(&run(&["params", "--family", "rectangle", "-n", "2", "-m", "3"]));
    assert_eq!(a, b);
}

#[test]
fn params_torus_tags_the_method() {
    let out = run(&["params", "torus", "-n", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("[[18,2,3]]"));
    assert!(text.contains("d: 3 (exhaustive)"));
}

#[test]
fn params_disk_reports_three_logical_qubits() {
    let out = run(&["params", "disk", "-k", "4", "--scale", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("k: 3"));
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["params", "banana", "-n", "2", "-m", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["params", "rectangle", "-n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("requires -m"));
    // conflicting positional and flag families
    let out = run(&["params", "torus", "--family", "rectangle", "-n", "2", "-m", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_lattice_file_is_a_usage_error() {
    let out = run(&["params", "file", "--file", "/nonexistent/lattice.txt"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cannot read"));
}

#[test]
fn distance_by_path_is_unsupported_on_the_torus() {
    let out = run(&["distance", "torus", "-n", "2", "--method", "path"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unsupported"));
}

#[test]
fn verify_passes_on_the_golden_instance() {
    let out = run(&["verify", "rectangle", "-n", "2", "-m", "3"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("ok golden-2x3"));
    assert!(text.contains("ok protection-guarantee"));
}

#[test]
fn verify_reports_parse_failures_with_line_numbers() {
    let dir = std::env::temp_dir().join("boundary-codes-badlat");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.lat");
    std::fs::write(&path, "lattice v1\nedge 0 v0 v0\n").unwrap();
    let out = run(&["verify", "file", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stdout(&out).contains("FAIL lattice-valid"));
}

#[test]
fn export_roundtrips_into_the_file_family() {
    let dir = std::env::temp_dir().join("boundary-codes-export");
    let _ = std::fs::remove_dir_all(&dir);
    let out = run(&["export", "rectangle", "-n", "2", "-m", "3", "--out", dir.to_str().unwrap()]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let checks = std::fs::read_to_string(dir.join("checks.txt")).unwrap();
    assert_eq!(checks.lines().filter(|l| l.starts_with("X ")).count(), 9);
    assert_eq!(checks.lines().filter(|l| l.starts_with("Z ")).count(), 8);
    assert!(dir.join("logicals.txt").exists());

    let lattice_file = dir.join("lattice.txt");
    let out = run(&["params", "file", "--file", lattice_file.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().next(), Some("[[18,1,3]]"));

    // dense export
    let out = run(&[
        "export", "rectangle", "-n", "2", "-m", "3", "--out", dir.to_str().unwrap(), "--format",
        "dense",
    ]);
    assert!(out.status.success());
    let mtx = std::fs::read_to_string(dir.join("hx.mtx")).unwrap();
    assert!(mtx.starts_with("%%MatrixMarket matrix array integer general\n9 18\n"));

    // exports are byte-stable across runs
    let again = std::fs::read_to_string(dir.join("checks.txt")).unwrap();
    assert_eq!(checks, again);
}

#[test]
fn simulate_is_deterministic_across_runs_and_workers() {
    let args = [
        "simulate", "rectangle", "-n", "2", "-m", "3", "--seed", "42", "--trials", "20000",
        "--px", "0.05", "--pz", "0.05",
    ];
    let a = bin().args(args).env("BOUNDARY_CODES_THREADS", "1").output().unwrap();
    let b = bin().args(args).env("BOUNDARY_CODES_THREADS", "1").output().unwrap();
    let c = bin().args(args).env("BOUNDARY_CODES_THREADS", "3").output().unwrap();
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b), "same seed, same bytes");
    assert_eq!(stdout(&a), stdout(&c), "worker count must not matter");
    let text = stdout(&a);
    assert_eq!(text.lines().next(), Some("lattice,n_qubits,k,d,p_x,p_z,trials,failures,failure_rate,seed"));
    assert!(text.lines().nth(1).unwrap().starts_with("rectangle 2x3,18,1,3,0.05,0.05,20000,"));
}

#[test]
fn simulate_without_noise_never_fails() {
    let out = run(&[
        "simulate", "rectangle", "-n", "2", "-m", "3", "--seed", "1", "--trials", "100000",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let row = text.lines().nth(1).unwrap();
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(fields[6], "100000", "trials column");
    assert_eq!(fields[7], "0", "failures column");
    assert_eq!(fields[8], "0", "failure rate column");
}

#[test]
fn verify_default_suite_covers_the_builtin_families() {
    let out = run(&["verify"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("ok [edge-count] rectangle-formula"));
    assert!(text.contains("ok [rectangle 2x3] golden-2x3"));
    assert!(text.contains("ok [torus 2] torus-dependencies"));
    assert!(text.contains("ok [disk k=4 scale=2] disk-connectivity"));
    assert!(text.lines().last().unwrap().starts_with("verify: "));
}

#[test]
fn build_prints_the_segment_layout() {
    let out = run(&["build", "disk", "-k", "2", "--scale", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("edges (qubits): 18"));
    assert!(text.contains("V1 (x, 3 members), V*1 (z, 4 members), V2 (x, 3 members), V*2 (z, 4 members)"));
}
