use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

const D_AB: &str = "2 3\n1 2\n2 0\n2 2\n";
const Z2: &str = "2 1  cyclic group of order two\n1\n0\n";
const LZ2: &str = "2 2\n0 0\n1 1\n";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_testability"))
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&dyn AsRef<std::ffi::OsStr>]) -> Output {
    let mut cmd = bin();
    for a in args {
        cmd.arg(a);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn d_ab_report() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "d_ab.txt", D_AB);
    let o = run(&[&"analyze-graph", &g, &"--props", &"all", &"--order"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("local_testability = yes"), "{text}");
    assert!(text.contains("order = 2"), "{text}");
    assert!(text.contains("piecewise_testability = no"), "{text}");
}

#[test]
fn k_flag_adds_oracle_verdict() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "d_ab.txt", D_AB);
    let o = run(&[&"analyze-graph", &g, &"--props", &"lt", &"--k", &"1"]);
    let text = stdout(&o);
    assert!(text.contains("k_testability(k=1) = no"), "{text}");
    assert!(!text.contains("order ="), "{text}");
}

#[test]
fn semigroup_product_header() {
    let dir = TempDir::new().unwrap();
    let z2 = file(&dir, "z2.txt", Z2);
    let out = dir.path().join("out.txt");
    let o = run(&[&"product-semigroup", &z2, &z2, &"-o", &out]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let written = fs::read_to_string(&out).unwrap();
    assert!(written.starts_with("4 3\n"), "{written}");
}

#[test]
fn graph_product_and_transition_semigroup() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "d_ab.txt", D_AB);
    let prod = dir.path().join("prod.txt");
    let sg = dir.path().join("sg.txt");
    assert!(run(&[&"product-graph", &g, &g, &"-o", &prod])
        .status
        .success());
    assert!(fs::read_to_string(&prod).unwrap().starts_with("2 9\n"));
    let o = run(&[&"transition-semigroup", &g, &"-o", &sg]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(fs::read_to_string(&sg).unwrap().starts_with("5 2\n"));
    let o = run(&[&"analyze-semigroup", &sg, &"--props", &"lt,pt", &"--order"]);
    let text = stdout(&o);
    assert!(text.contains("local_testability = yes"), "{text}");
    assert!(text.contains("order = 2"), "{text}");
}

#[test]
fn partial_graph_gets_a_sink() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "partial.txt", "1 2\n1\n-1\n");
    let o = run(&[&"analyze-graph", &g, &"--props", &"aperiodic"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("sink added"));
}

#[test]
fn malformed_input_names_the_token() {
    let dir = TempDir::new().unwrap();
    let bad = file(&dir, "malformed.txt", "2 1\n1\n0x\n");
    let o = run(&[&"analyze-semigroup", &bad]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("0x") && err.contains("line 3"), "{err}");
}

#[test]
fn invalid_table_is_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = file(&dir, "range.txt", "2 1\n1\n5\n");
    assert_eq!(run(&[&"analyze-semigroup", &bad]).status.code(), Some(2));
    let missing = dir.path().join("missing.txt");
    assert_eq!(run(&[&"analyze-graph", &missing]).status.code(), Some(2));
}

#[test]
fn usage_errors_are_exit_64() {
    assert_eq!(run(&[&"no-such-command"]).status.code(), Some(64));
    assert_eq!(
        run(&[&"analyze-graph", &"x", &"--props", &"bogus"])
            .status
            .code(),
        Some(64)
    );
    assert_eq!(run(&[]).status.code(), Some(64));
    assert_eq!(run(&[&"--help"]).status.code(), Some(0));
}

#[test]
fn strict_budget_is_exit_3() {
    let dir = TempDir::new().unwrap();
    let z2 = file(&dir, "z2.txt", Z2);
    let args: [&dyn AsRef<std::ffi::OsStr>; 6] = [
        &"analyze-semigroup",
        &z2,
        &"--order",
        &"--budget",
        &"3",
        &"--strict",
    ];
    let o = run(&args);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
    assert!(stdout(&o).contains("order = unknown"));
    // without --strict an unknown is still a completed analysis
    assert_eq!(run(&args[..5]).status.code(), Some(0));
}

#[test]
fn machine_output_is_byte_stable() {
    let dir = TempDir::new().unwrap();
    let s = file(&dir, "lz2.txt", LZ2);
    let go = || {
        run(&[
            &"analyze-semigroup",
            &s,
            &"--order",
            &"--format",
            &"machine",
        ])
        .stdout
    };
    let first = go();
    assert_eq!(first, go());
    let text = String::from_utf8(first).unwrap();
    assert!(text.trim_start().starts_with('{'), "{text}");
    assert!(text.contains("piecewise_testability"));
}

#[test]
fn round_trip_through_files() {
    let dir = TempDir::new().unwrap();
    let z2 = file(&dir, "z2.txt", Z2);
    let once = dir.path().join("once.txt");
    let twice = dir.path().join("twice.txt");
    assert!(run(&[&"product-semigroup", &z2, &z2, &"-o", &once])
        .status
        .success());
    let lz2 = file(&dir, "lz2.txt", LZ2);
    assert!(run(&[&"product-semigroup", &lz2, &lz2, &"-o", &twice])
        .status
        .success());
    for p in [&once, &twice] {
        let text = fs::read_to_string(p).unwrap();
        let o = run(&[&"analyze-semigroup", p, &"--props", &"assoc"]);
        assert!(stdout(&o).contains("associativity = yes"), "{text}");
    }
}
