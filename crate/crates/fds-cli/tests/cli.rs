//! End-to-end tests of the command-line surface: formats, exit codes and
//! round trips through files.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fds"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn fds")
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn tempdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fds-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn product_and_canon_are_deterministic() {
    let dir = tempdir("prod");
    let c2 = write(&dir, "c2.fds", "2\n1 0\n");
    let c3 = write(&dir, "c3.fds", "3\n1 2 0\n");
    let out_path = dir.join("c6.fds");
    let out = run(&[
        "prod",
        c2.to_str().unwrap(),
        c3.to_str().unwrap(),
        "-o",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    // The canonical product of C_2 and C_3 is the canonical C_6.
    let direct = run(&[
        "canon",
        write(&dir, "c6direct.fds", "6\n1 2 3 4 5 0\n")
            .to_str()
            .unwrap(),
    ]);
    let via_product = run(&["canon", out_path.to_str().unwrap()]);
    assert_eq!(stdout(&direct), stdout(&via_product));
}

#[test]
fn sum_truncate_supp_dot() {
    let dir = tempdir("ops");
    let p3 = write(&dir, "p3.fds", "# path dendron\n4\n0 0 1 2\n");
    let c2 = write(&dir, "c2.fds", "2\n1 0\n");
    let sum = dir.join("sum.fds");
    assert!(run(&[
        "sum",
        p3.to_str().unwrap(),
        c2.to_str().unwrap(),
        "-o",
        sum.to_str().unwrap()
    ])
    .status
    .success());
    let out = run(&["supp", "--lengths", "2", sum.to_str().unwrap()]);
    assert_eq!(stdout(&out), "2\n1 0\n");
    let out = run(&["truncate", "--depth", "0", p3.to_str().unwrap()]);
    assert_eq!(stdout(&out), "1\n0\n");
    let out = run(&["dot", c2.to_str().unwrap()]);
    assert!(stdout(&out).contains("0 -> 1;"));
}

#[test]
fn divide_recovers_factor_and_reports_bottom() {
    let dir = tempdir("divide");
    let p1 = write(&dir, "p1.fds", "2\n0 0\n");
    let p2 = write(&dir, "p2.fds", "3\n0 0 1\n");
    let prod = dir.join("prod.fds");
    assert!(run(&[
        "prod",
        p1.to_str().unwrap(),
        p2.to_str().unwrap(),
        "-o",
        prod.to_str().unwrap()
    ])
    .status
    .success());
    let quotient = run(&["divide", prod.to_str().unwrap(), p1.to_str().unwrap()]);
    assert!(quotient.status.success());
    let canon_p2 = run(&["canon", p2.to_str().unwrap()]);
    let canon_q = {
        let q = write(&dir, "q.fds", &stdout(&quotient));
        run(&["canon", q.to_str().unwrap()])
    };
    assert_eq!(stdout(&canon_p2), stdout(&canon_q));

    // A star of five states has no two-state divisor.
    let s5 = write(&dir, "s5.fds", "5\n0 0 0 0 0\n");
    let out = run(&["divide", s5.to_str().unwrap(), p1.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no-candidate"));
}

#[test]
fn divide_tree_on_code_files() {
    let dir = tempdir("tree");
    let star6 = write(&dir, "star6.tree", "6,0,0,0,0,0,0\n");
    let star2 = write(&dir, "star2.tree", "2,0,0\n");
    let out = run(&[
        "divide-tree",
        star6.to_str().unwrap(),
        star2.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "3,0,0,0");
    let star5 = write(&dir, "star5.tree", "5,0,0,0,0,0\n");
    let out = run(&[
        "divide-tree",
        star5.to_str().unwrap(),
        star2.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn divide_cancel_exit_codes() {
    let dir = tempdir("cancel");
    let divisor = write(&dir, "a.fds", "3\n0 2 1\n"); // C_1 + C_2
    let b = write(&dir, "b.fds", "2\n1 0\n");
    let prod = dir.join("ab.fds");
    assert!(run(&[
        "prod",
        divisor.to_str().unwrap(),
        b.to_str().unwrap(),
        "-o",
        prod.to_str().unwrap()
    ])
    .status
    .success());
    let out = run(&[
        "divide-cancel",
        prod.to_str().unwrap(),
        divisor.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    // Divisor without a fixpoint is a usage error.
    let c2 = write(&dir, "c2.fds", "2\n1 0\n");
    let out = run(&[
        "divide-cancel",
        prod.to_str().unwrap(),
        c2.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn root_and_failure() {
    let dir = tempdir("root");
    let two_c2 = write(&dir, "2c2.fds", "4\n1 0 3 2\n");
    let out = run(&["root", "-k", "2", two_c2.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "2\n1 0\n");
    let c2 = write(&dir, "c2.fds", "2\n1 0\n");
    let out = run(&["root", "-k", "2", c2.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn witness_emits_verified_pair() {
    let dir = tempdir("witness");
    let prefix = dir.join("w");
    let out = run(&["witness", "--cycles", "2", "-o", prefix.to_str().unwrap()]);
    assert!(out.status.success());
    let x = std::fs::read_to_string(dir.join("w.x.fds")).unwrap();
    let xp = std::fs::read_to_string(dir.join("w.xprime.fds")).unwrap();
    assert_ne!(x, xp);
    // X = 2C_1 + 2C_2 has 6 states.
    assert!(x.starts_with("6\n"));
    assert!(dir.join("w.prod-c2.fds").exists());
}

#[test]
fn factor_ldk_output_and_failure() {
    let dir = tempdir("ldk");
    let p1 = write(&dir, "p1.fds", "2\n0 0\n");
    let p2 = write(&dir, "p2.fds", "3\n0 0 1\n");
    let prod = dir.join("prod.fds");
    assert!(run(&[
        "prod",
        p1.to_str().unwrap(),
        p2.to_str().unwrap(),
        "-o",
        prod.to_str().unwrap()
    ])
    .status
    .success());
    let out = run(&["factor-ldk", "-k", "1", prod.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("linear[1]"));
    assert!(text.contains("linear[2]"));
    // Auto-discovery finds the same K.
    let out = run(&["factor-ldk", prod.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("K = 1"));
    // A bare cycle is not a dendron: algebraic failure.
    let c2 = write(&dir, "c2.fds", "2\n1 0\n");
    let out = run(&["factor-ldk", "-k", "1", c2.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn enumeration_counts_and_tree_listing() {
    let out = run(&["enum", "--kind", "fds", "--size", "4", "--count-only"]);
    assert_eq!(stdout(&out).trim(), "19");
    let out = run(&["enum", "--kind", "tree", "--size", "3"]);
    assert_eq!(stdout(&out), "1,1,0\n2,0,0\n");
    let out = run(&["enum", "--kind", "bogus", "--size", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fixtures_all_pass() {
    let out = run(&["fixtures"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("PASS c2-squared-is-2c2"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn unroll_prints_forest() {
    let dir = tempdir("unroll");
    let c1 = write(&dir, "c1.fds", "1\n0\n");
    let out = run(&["unroll", "--depth", "3", c1.to_str().unwrap()]);
    assert_eq!(stdout(&out), "1,1,1,0\n");
}

#[test]
fn parse_errors_are_usage_errors() {
    let dir = tempdir("bad");
    let bad = write(&dir, "bad.fds", "2\n0 7\n");
    let out = run(&["canon", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let missing = dir.join("missing.fds");
    let out = run(&["canon", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}
