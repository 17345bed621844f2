//! End-to-end tests of the command-line interface: subcommands, output
//! formats, exit codes, guards and determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_matchrank")
}

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("..")
        .join("..")
        .join("corpus")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(bin())
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).to_string()
}

#[test]
fn verify_c4_reports_rank_zero() {
    let path = corpus().join("c4.graph");
    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("rho=0"), "{text}");
    assert!(text.contains("verification: PASS"), "{text}");
}

#[test]
fn verify_c5_reports_rank_one_with_certificate() {
    let path = corpus().join("c5.graph");
    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("rho=1"), "{text}");
    assert!(text.contains("ridge with x(delta(0)) <= 1"), "{text}");
    assert!(text.contains("fallbacks=0"), "{text}");
}

#[test]
fn facets_on_k3_lists_four() {
    let path = corpus().join("k3.graph");
    let out = run(&["--format", "json", "facets", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["facets"].as_array().unwrap().len(), 4);
    assert_eq!(v["counts"]["oddset"], 1);
}

#[test]
fn inline_graphs_and_stdin_work() {
    let out = run(&["dim", "--inline", "n 3; e 0 1; e 1 2; e 0 2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("dimension = 3"));

    use std::io::Write;
    let mut child = Command::new(bin())
        .args(["matchings", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(b"n 2\ne 0 1\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("matchings: 2"));
}

#[test]
fn matchings_on_c5_counts_eleven() {
    let path = corpus().join("c5.graph");
    let out = run(&["matchings", path.to_str().unwrap()]);
    assert!(stdout(&out).contains("matchings: 11"));
}

#[test]
fn eardecomp_on_c7_is_the_bare_cycle() {
    let path = corpus().join("c7.graph");
    let out = run(&["eardecomp", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("kind = proper"), "{text}");
    assert!(text.contains("ears: 0"), "{text}");
}

#[test]
fn parse_errors_carry_line_numbers_and_exit_2() {
    let dir = tempdir();
    let bad = dir.join("bad.graph");
    std::fs::write(&bad, "n 3\ne 0 1\ne 0 9\n").unwrap();
    let out = run(&["facets", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
}

#[test]
fn guards_exit_3() {
    let out = run(&["facets", "--inline", "n 20", "--max-nodes", "16"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("max-nodes"), "{}", stderr(&out));

    let path = corpus().join("petersen.graph");
    let out = run(&["verify", path.to_str().unwrap(), "--max-edges", "10"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn exhaustive_mode_respects_facet_cap() {
    let path = corpus().join("k5.graph");
    let out = run(&["rank", path.to_str().unwrap(), "--f0", "exhaustive"]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));

    let path = corpus().join("c4.graph");
    let out = run(&["rank", path.to_str().unwrap(), "--f0", "exhaustive"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("rho=0"));
    assert!(stdout(&out).contains("f0 mode: exhaustive"));
}

#[test]
fn witness_subcommand_accepts_an_odd_set() {
    let path = corpus().join("k4.graph");
    let out = run(&["witness", path.to_str().unwrap(), "--odd-set", "0,1,2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("oddset {0,1,2}"), "{text}");
    assert!(text.contains("fallbacks=0"), "{text}");

    // No positive-rank blossom facets on C4.
    let path = corpus().join("c4.graph");
    let out = run(&["witness", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("no blossom facets of positive rank"));

    // A rank-0 triangle has no anchor: input error.
    let path = corpus().join("paw.graph");
    let out = run(&["witness", path.to_str().unwrap(), "--odd-set", "0,1,2"]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
}

#[test]
fn ridges_on_k3() {
    let path = corpus().join("k3.graph");
    let out = run(&["--format", "json", "ridges", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // Every facet pair of the K3 system meets in a ridge.
    assert_eq!(v["count"], 6);
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let path = corpus().join("k5.graph");
    let a = run(&["--format", "json", "verify", path.to_str().unwrap()]);
    let b = run(&["--format", "json", "verify", path.to_str().unwrap()]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn env_vars_mirror_flags() {
    let path = corpus().join("k3.graph");
    let out = Command::new(bin())
        .args(["facets", path.to_str().unwrap()])
        .env("MATCHRANK_FORMAT", "json")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(serde_json::from_slice::<serde_json::Value>(&out.stdout).is_ok());
}

#[test]
fn out_flag_writes_the_report_file() {
    let dir = tempdir();
    let target = dir.join("report.json");
    let path = corpus().join("c4.graph");
    let out = run(&[
        "--format",
        "json",
        "--out",
        target.to_str().unwrap(),
        "verify",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(v["rho"], 0);
    assert_eq!(v["ok"], true);
}

#[test]
fn corpus_run_passes_and_isolates_bad_files() {
    let out = run_in(&corpus(), &["corpus", "."]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("9 graphs, 0 failed"), "{text}");

    // A malformed file errors its own row; the others still verify.
    let dir = tempdir();
    std::fs::copy(corpus().join("k3.graph"), dir.join("k3.graph")).unwrap();
    std::fs::write(dir.join("broken.graph"), "e 0 1\n").unwrap();
    let out = run(&["corpus", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("broken.graph"), "{text}");
    assert!(text.contains("error"), "{text}");
    assert!(text.contains("2 graphs, 1 failed"), "{text}");

    // An empty directory is an empty table and success.
    let dir = tempdir();
    let out = run(&["corpus", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("0 graphs, 0 failed"));
}

fn tempdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!(
        "matchrank-cli-test-{}-{:?}",
        std::process::id(),
        std::thread::current().id()
    ));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
