use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const SQUARE: &str = "m 4\nfacet 1 2\nfacet 2 3\nfacet 3 4\nfacet 1 4\n";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_buchstaber")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn analyze_square() {
    let dir = TempDir::new().unwrap();
    let square = write(&dir, "square.cplx", SQUARE);
    let out = run(&["analyze", p(&square)]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.trim_end().ends_with("s(K) = 2 (exact)"), "{text}");
    assert!(text.contains("|N(K)| = 2"));
}

#[test]
fn analyze_json_matches_text() {
    let dir = TempDir::new().unwrap();
    let square = write(&dir, "square.cplx", SQUARE);
    let out = run(&["analyze", p(&square), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["m"], 4);
    assert_eq!(report["dim"], 1);
    assert_eq!(report["upper_bound"], 2);
    assert_eq!(report["s_interval"]["lower"], 2);
    assert_eq!(report["s_interval"]["exact"], true);
    assert_eq!(report["s_real"]["lower"], 2);
}

#[test]
fn generated_cyclic_polytope() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("c36.cplx");
    let out = run(&["gen", "cyclic", "3", "6", "-o", p(&path)]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["analyze", p(&path)]);
    let text = stdout(&out);
    assert!(text.starts_with("m = 6\ndim K = 2\n"), "{text}");
}

#[test]
fn generated_json_roundtrip() {
    let dir = TempDir::new().unwrap();
    let text_path = dir.path().join("r.cplx");
    let json_path = dir.path().join("r.json");
    let spec = ["random", "9", "seed=5", "p=1/2"];
    let mut args = vec!["gen"];
    args.extend(spec);
    let mut text_args = args.clone();
    text_args.extend(["-o", p(&text_path)]);
    let mut json_args = args.clone();
    json_args.extend(["--json", "-o", p(&json_path)]);
    assert_eq!(run(&text_args).status.code(), Some(0));
    assert_eq!(run(&json_args).status.code(), Some(0));
    let a = stdout(&run(&["analyze", p(&text_path), "--json"]));
    let b = stdout(&run(&["analyze", p(&json_path), "--json"]));
    assert_eq!(a, b);
}

#[test]
fn stdin_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_buchstaber"))
        .args(["criteria", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child.stdin.take().unwrap().write_all(SQUARE.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("level = 2"));
}

#[test]
fn lemma23_line() {
    let out = run(&["lemma23"]);
    assert_eq!(out.status.code(), Some(0));
    let first = stdout(&out).lines().next().unwrap().to_string();
    assert_eq!(
        first,
        "n=2: no counterexample; n=3: no counterexample; n=4: counterexample found, det = -3"
    );
}

#[test]
fn verify_both_outcomes() {
    let dir = TempDir::new().unwrap();
    let square = write(&dir, "square.cplx", SQUARE);
    let good = write(&dir, "good.txt", "0 1\n1 0\n0 1\n1 0\n");
    let bad = write(&dir, "bad.txt", "1 0\n1 0\n0 1\n0 1\n");
    let out = run(&["verify", p(&square), p(&good)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("over gf2: true"));
    let out = run(&["verify", p(&square), p(&bad), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["holds"], false);
    assert_eq!(v["failing_simplex"], serde_json::json!([1, 2]));
    let int = write(&dir, "int.txt", "0 1\n1 0\n0 1\n1 0\n");
    let out = run(&["verify", p(&square), p(&int), "--ring", "int"]);
    assert!(stdout(&out).contains("true"));
}

#[test]
fn oracle_agrees() {
    let dir = TempDir::new().unwrap();
    let square = write(&dir, "square.cplx", SQUARE);
    let out = run(&["oracle", p(&square)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("agreement: yes"));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let broken = write(&dir, "broken.cplx", "m 3\nfacet 1 7\n");
    let out = run(&["analyze", p(&broken)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(run(&["analyze", "/definitely/not/here"]).status.code(), Some(1));
    assert_eq!(run(&["nonsense"]).status.code(), Some(1));
    assert_eq!(run(&["gen", "cycle", "2"]).status.code(), Some(1));

    let points = dir.path().join("p7.cplx");
    run(&["gen", "points", "7", "-o", p(&points)]);
    let out = run(&["sreal", p(&points)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("in [4, 6]"));
    assert_eq!(run(&["sreal", p(&points), "--max-k", "6"]).status.code(), Some(0));
}

#[test]
fn thread_count_does_not_change_output() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("r.cplx");
    run(&["gen", "random", "10", "seed=11", "-o", p(&path)]);
    let one = stdout(&run(&["analyze", p(&path), "--json", "--threads", "1"]));
    let many = stdout(&run(&["analyze", p(&path), "--json", "--threads", "4"]));
    assert_eq!(one, many);
}
