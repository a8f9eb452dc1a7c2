mod common;

use std::path::Path;
use std::process::{Command, Output};

use cyclehopf::cli::RunReport;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TRIANGLE: &str = "0 1\n1 0\n1 2\n2 1\n0 2\n2 0\n";

fn cyclehopf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclehopf")).args(args).env_remove("CYCLEHOPF_SIZE_CAP").output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn census_of_triangle_for_every_method() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "tri.txt", TRIANGLE);
    for method in ["conv", "brute", "hopf-log", "hopf-dynkin"] {
        let out = cyclehopf(&["census", &file, "--method", method, "--hamiltonian", "--verify"]);
        assert_eq!(out.status.code(), Some(0), "{method}: {}", String::from_utf8_lossy(&out.stderr));
        let report = RunReport::from_json(stdout(&out).trim()).unwrap();
        assert_eq!(report.method.name(), method);
        let json = report.to_json();
        assert!(json.contains(r#""counts":{"2":"3","3":"2"},"hamiltonian":"2""#), "{json}");
        assert_eq!(report.verified, Some(true));
    }
}

#[test]
fn json_output_round_trips_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "k.txt", &cyclehopf::digraph::Digraph::complete(6).to_edge_list());
    let out = cyclehopf(&["census", &file, "--hamiltonian"]);
    let text = stdout(&out);
    let report = RunReport::from_json(text.trim()).unwrap();
    assert_eq!(format!("{}\n", report.to_json()), text);
    assert_eq!(report.hamiltonian.as_deref(), Some("120"));
}

#[test]
fn empty_file_has_no_cycles() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "empty.txt", "");
    let out = cyclehopf(&["census", &file]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains(r#""counts":{}"#));
}

#[test]
fn exit_code_per_error_class() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "0 1\n1 -2\n");
    assert_eq!(cyclehopf(&["census", &bad]).status.code(), Some(1));
    assert_eq!(cyclehopf(&["check", &bad]).status.code(), Some(1));
    assert_eq!(cyclehopf(&["census", "/nonexistent/graph.txt"]).status.code(), Some(1));
    assert_eq!(cyclehopf(&["census"]).status.code(), Some(1));
    assert_eq!(cyclehopf(&["census", &bad, "--method", "magic"]).status.code(), Some(1));
    assert_eq!(cyclehopf(&["--help"]).status.code(), Some(0));

    let big = write(dir.path(), "big.txt", &cyclehopf::digraph::Digraph::complete(21).to_edge_list());
    let out = cyclehopf(&["census", &big]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("size cap"));

    let tri = write(dir.path(), "tri.txt", TRIANGLE);
    let capped = Command::new(env!("CARGO_BIN_EXE_cyclehopf"))
        .args(["census", &tri])
        .env("CYCLEHOPF_SIZE_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
    let garbage = Command::new(env!("CARGO_BIN_EXE_cyclehopf"))
        .args(["census", &tri])
        .env("CYCLEHOPF_SIZE_CAP", "lots")
        .output()
        .unwrap();
    assert_eq!(garbage.status.code(), Some(1));
}

#[test]
fn hopf_budget_is_a_cap_error() {
    let dir = tempfile::tempdir().unwrap();
    let g = common::complete_with_loops(12);
    let file = write(dir.path(), "dense.txt", &g.to_edge_list());
    let out = cyclehopf(&["census", &file, "--method", "hopf-log"]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn check_reports_and_degrades() {
    let dir = tempfile::tempdir().unwrap();
    let tri = write(dir.path(), "tri.txt", TRIANGLE);
    let out = cyclehopf(&["check", &tri]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("ok    log-zeta"));

    let g = common::random_digraph(12, 0.5, &mut ChaCha8Rng::seed_from_u64(12));
    let big = write(dir.path(), "n12.txt", &g.to_edge_list());
    let out = cyclehopf(&["check", &big, "--threads", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("hopf suite skipped"), "{text}");
    assert!(text.contains("ok    det-perm-inverse-sum"));
}

#[test]
fn thread_count_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let g = common::random_digraph(12, 0.5, &mut ChaCha8Rng::seed_from_u64(99));
    let file = write(dir.path(), "n12.txt", &g.to_edge_list());
    let strip = |out: Output| {
        let mut r = RunReport::from_json(stdout(&out).trim()).unwrap();
        r.elapsed_ms = 0;
        r.to_json()
    };
    let one = strip(cyclehopf(&["census", &file, "--hamiltonian", "--threads", "1"]));
    for threads in ["2", "8"] {
        assert_eq!(strip(cyclehopf(&["census", &file, "--hamiltonian", "--threads", threads])), one);
    }
    assert_eq!(cyclehopf(&["census", &file, "--threads", "0"]).status.code(), Some(1));
}

#[test]
fn max_length_and_tsv() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "k5.txt", &cyclehopf::digraph::Digraph::complete(5).to_edge_list());
    let out = cyclehopf(&["census", &file, "--max-length", "3", "--format", "tsv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("count_2\t10\ncount_3\t20\nhamiltonian\t-\n"), "{text}");
    assert!(!text.contains("count_4"));
}

#[test]
fn bench_rows_and_skips() {
    let empty = tempfile::tempdir().unwrap();
    let out = cyclehopf(&["bench", empty.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "file\tn\tedges\tconv_ms\tbrute_ms\thopf-log_ms\thopf-dynkin_ms\tagree\n");

    let dir = tempfile::tempdir().unwrap();
    let corpus = common::random_corpus([10], &[0.25], 10, 2024);
    for (i, g) in corpus.iter().enumerate() {
        write(dir.path(), &format!("g{i:02}.txt"), &g.to_edge_list());
    }
    let out = cyclehopf(&["bench", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r.ends_with("\tyes")), "{text}");

    write(dir.path(), "huge.txt", &cyclehopf::digraph::Digraph::complete(22).to_edge_list());
    let out = cyclehopf(&["bench", dir.path().to_str().unwrap(), "--methods", "conv"]);
    let text = stdout(&out);
    let huge = text.lines().find(|l| l.starts_with("huge.txt")).unwrap();
    assert_eq!(huge, "huge.txt\t22\t462\tskipped(cap)\t-");
}
