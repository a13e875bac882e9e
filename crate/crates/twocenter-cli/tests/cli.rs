use assert_cmd::Command;
use predicates::prelude::*;

fn bin() -> Command {
    Command::cargo_bin("twocenter").unwrap()
}

const CORNERS: &str = "planar2center v1\no: 0 0\n-1 -1\n-1 1\n1 -1\n1 1\n";

fn hexagon() -> String {
    let mut s = String::from("planar2center v1\n");
    for k in 0..6 {
        let t = std::f64::consts::PI * k as f64 / 3.0;
        s.push_str(&format!("{:.16e} {:.16e}\n", t.cos(), t.sin()));
    }
    s
}

fn stdout_of(assert: assert_cmd::assert::Assert) -> String {
    String::from_utf8(assert.get_output().stdout.clone()).unwrap()
}

fn radius_of(record: &str) -> f64 {
    let v: serde_json::Value = serde_json::from_str(record).unwrap();
    v["radius"].as_f64().unwrap()
}

#[test]
fn solve_corners_restricted() {
    let out = bin()
        .args(["solve", "-", "--mode", "restricted", "--verify"])
        .write_stdin(CORNERS)
        .assert()
        .success();
    let rec = stdout_of(out);
    assert!((radius_of(&rec) - 1.0).abs() < 1e-12, "{rec}");
}

#[test]
fn solve_hexagon_convex() {
    let out = bin()
        .args(["solve", "-", "--mode", "convex", "--verify"])
        .write_stdin(hexagon())
        .assert()
        .success();
    let rec = stdout_of(out);
    let expect = 3f64.sqrt() / 2.0;
    assert!((radius_of(&rec) - expect).abs() < 1e-9, "{rec}");
}

#[test]
fn solve_rejects_malformed_line_with_its_number() {
    bin()
        .args(["solve", "-"])
        .write_stdin("planar2center v1\n0 0\noops\n")
        .assert()
        .code(1)
        .stderr(predicate::str::contains("line 3"));
}

#[test]
fn solve_missing_pivot_in_restricted_mode_fails() {
    bin()
        .args(["solve", "-", "--mode", "restricted"])
        .write_stdin("planar2center v1\n0 0\n1 1\n")
        .assert()
        .code(1)
        .stderr(predicate::str::contains("pivot"));
}

#[test]
fn decide_corners_both_ways() {
    bin()
        .args(["decide", "-", "--r", "1.0"])
        .write_stdin(CORNERS)
        .assert()
        .success()
        .stdout(predicate::str::contains("\"feasible\": true"));
    bin()
        .args(["decide", "-", "--r", "0.9"])
        .write_stdin(CORNERS)
        .assert()
        .success()
        .stdout(predicate::str::contains("\"feasible\": false"));
    bin()
        .args(["decide", "-", "--r=-1"])
        .write_stdin(CORNERS)
        .assert()
        .code(1)
        .stderr(predicate::str::contains("positive"));
}

#[test]
fn gen_is_reproducible_and_parses() {
    for kind in ["uniform", "convex", "two-cluster"] {
        let a = stdout_of(bin().args(["gen", kind, "40", "--seed", "1"]).assert().success());
        let b = stdout_of(bin().args(["gen", kind, "40", "--seed", "1"]).assert().success());
        assert_eq!(a, b, "{kind} not byte-identical");
        assert_eq!(a.lines().next().unwrap(), "planar2center v1");
        // The generated file feeds straight back into solve.
        bin().args(["solve", "-", "--group-width", "8"]).write_stdin(a).assert().success();
    }
}

#[test]
fn gen_convex_is_convex_position() {
    let inst = stdout_of(bin().args(["gen", "convex", "6", "--seed", "0"]).assert().success());
    bin()
        .args(["solve", "-", "--mode", "convex", "--verify"])
        .write_stdin(inst)
        .assert()
        .success();
}

#[test]
fn solve_records_are_deterministic_across_runs_and_threads() {
    let inst = stdout_of(bin().args(["gen", "two-cluster", "120", "--seed", "9"]).assert().success());
    let run = |threads: &str| {
        stdout_of(
            bin()
                .args(["solve", "-", "--threads", threads])
                .write_stdin(inst.clone())
                .assert()
                .success(),
        )
    };
    let a = run("1");
    let b = run("1");
    let c = run("4");
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn oracle_subcommand_matches_solver() {
    let sol = stdout_of(bin().args(["solve", "-"]).write_stdin(CORNERS).assert().success());
    let ora = stdout_of(bin().args(["oracle", "-"]).write_stdin(CORNERS).assert().success());
    let (rs, ro) = (radius_of(&sol), radius_of(&ora));
    assert!((rs - ro).abs() <= 1e-9 * ro.max(1.0));
}

#[test]
fn bench_emits_one_row_per_size() {
    let out = stdout_of(
        bin()
            .args(["bench", "--kind", "uniform", "--sizes", "500,1000", "--reps", "1"])
            .assert()
            .success(),
    );
    let rows: Vec<&str> = out.lines().filter(|l| l.starts_with("decide")).collect();
    assert_eq!(rows.len(), 2, "{out}");
}

#[test]
fn unknown_mode_and_kind_fail_cleanly() {
    bin()
        .args(["solve", "-", "--mode", "nonesuch"])
        .write_stdin(CORNERS)
        .assert()
        .code(1)
        .stderr(predicate::str::contains("unknown mode"));
    bin()
        .args(["gen", "nonesuch", "4"])
        .assert()
        .code(1)
        .stderr(predicate::str::contains("unknown kind"));
}
