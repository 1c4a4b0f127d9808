use std::path::PathBuf;

use floer_algebra::cli::{dispatch, golden_cases, golden_file, run_embedded};

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("floer-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> floer_algebra::cli::Outcome {
    dispatch(std::iter::once("floer").chain(args.iter().copied()))
}

#[test]
fn golden_reports_are_reproduced() {
    for (name, args, expected) in golden_cases() {
        let out = run_embedded(args);
        assert_eq!(out.code, 0, "{name}: {}", out.stderr);
        assert_eq!(out.stdout, expected, "{name}");
    }
    assert_eq!(run(&["golden"]).code, 0);
}

#[test]
fn files_on_disk_match_embedded_runs() {
    let path = scratch("torsion.cx", golden_file("torsion.cx").unwrap());
    let out = run(&["homology", path.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("CHECK boundary_squared_zero PASS"));
    assert!(!out.stdout.contains("FAIL"));
}

#[test]
fn every_check_is_reported() {
    let path = scratch("cp1.cx", golden_file("cp1_hopf.cx").unwrap());
    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let checks: Vec<&str> = out.stdout.lines().filter(|l| l.starts_with("CHECK ")).collect();
    assert!(checks.len() >= 5);
    assert!(checks.iter().all(|l| l.ends_with(" PASS")));
}

#[test]
fn usage_and_load_errors_exit_two() {
    assert_eq!(run(&["homology", "/nonexistent/file.cx"]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&[]).code, 2);
    let path = scratch("free.cx", golden_file("free_circle.cx").unwrap());
    assert_eq!(run(&["jones", path.to_str().unwrap(), "--flavor", "hat"]).code, 2);
    let bad = scratch("bad.cx", "ring Z\ngenerators\n  a zero\n");
    let out = run(&["homology", bad.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 3"), "{}", out.stderr);
    let wrong_kind = scratch("plain.cx", golden_file("torsion.cx").unwrap());
    assert_eq!(run(&["sbundle", wrong_kind.to_str().unwrap()]).code, 2);
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run(&["--help"]).code, 0);
    assert_eq!(run(&["--version"]).code, 0);
    assert_eq!(run(&["flavors", "--help"]).code, 0);
}

#[test]
fn windows_accept_negative_bounds() {
    let path = scratch("orbit.cx", golden_file("s1xs2_sK.cx").unwrap());
    let out = run(&["flavors", path.to_str().unwrap(), "--window", "-8", "8"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(run(&["flavors", path.to_str().unwrap(), "--window", "3", "-3"]).code, 2);
}
