use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn stallings(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stallings"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn field<'a>(line: &'a str, key: &str) -> &'a str {
    line.split_whitespace()
        .find_map(|kv| kv.strip_prefix(key).and_then(|v| v.strip_prefix('=')))
        .unwrap_or_else(|| panic!("no {key} in {line:?}"))
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_reduce_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let word = dir.path().join("w.txt");
    let trace = dir.path().join("w.trace");
    for mode in ["conjugates", "nested_pinches", "commutator_heavy"] {
        let w = stdout(&stallings(&["gen", "--mode", mode, "--n", "128", "--seed", "3"]));
        fs::write(&word, &w).unwrap();
        let reduced = stdout(&stallings(&["reduce", "--in", path_str(&word), "--trace", path_str(&trace)]));
        let verified = stdout(&stallings(&["verify", "--trace", path_str(&trace)]));
        assert_eq!(field(&verified, "empty"), "true");
        assert_eq!(field(&verified, "cost"), field(&reduced, "cost"));
        let cost: u64 = field(&reduced, "cost").parse().unwrap();
        let bound: u64 = field(&reduced, "bound").parse().unwrap();
        assert!(cost <= bound);
        assert_eq!(fs::read_to_string(&trace).unwrap().lines().next().unwrap(), w.trim());
    }
}

#[test]
fn traces_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let word = dir.path().join("w.txt");
    fs::write(&word, stdout(&stallings(&["gen", "--mode", "nested_pinches", "--n", "200", "--seed", "9"]))).unwrap();
    let first = dir.path().join("1.trace");
    let second = dir.path().join("2.trace");
    for t in [&first, &second] {
        stdout(&stallings(&["reduce", "--in", path_str(&word), "--trace", path_str(t)]));
    }
    assert_eq!(fs::read(&first).unwrap(), fs::read(&second).unwrap());
}

#[test]
fn gen_is_deterministic() {
    let args = ["gen", "--mode", "conjugates", "--n", "64", "--seed", "1"];
    assert_eq!(stdout(&stallings(&args)), stdout(&stallings(&args)));
}

#[test]
fn decide_prints_a_boolean() {
    assert_eq!(stdout(&stallings(&["decide", "--word", "ACac"])).trim(), "true");
    assert_eq!(stdout(&stallings(&["decide", "--word", "AsaBSb"])).trim(), "true");
    assert_eq!(stdout(&stallings(&["decide", "--word", "ab"])).trim(), "false");
    assert_eq!(stdout(&stallings(&["decide", "--word", "asAS"])).trim(), "false");
    assert_eq!(stdout(&stallings(&["decide", "--word", ""])).trim(), "true");
}

#[test]
fn bench_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let out = stdout(&stallings(&["bench", "--lengths", "8,16,32", "--seeds", "2", "--csv", path_str(&csv)]));
    assert!(out.contains("slope="));
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,seed,cost,bound,max_len,wall_time_ms"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 6);
    let keys: Vec<(&str, &str)> = rows.iter().map(|r| (r[0], r[1])).collect();
    assert_eq!(keys, [("8", "0"), ("8", "1"), ("16", "0"), ("16", "1"), ("32", "0"), ("32", "1")]);
    for r in &rows {
        assert!(r[2].parse::<u64>().unwrap() <= r[3].parse::<u64>().unwrap());
    }
}

#[test]
fn errors_exit_nonzero_with_a_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let word = dir.path().join("w.txt");
    let trace = dir.path().join("w.trace");

    let odd = stallings(&["gen", "--mode", "conjugates", "--n", "5", "--seed", "0"]);
    assert!(!odd.status.success());
    assert!(String::from_utf8_lossy(&odd.stderr).starts_with("error:"));

    fs::write(&word, "ab\n").unwrap();
    let refused = stallings(&["reduce", "--in", path_str(&word), "--trace", path_str(&trace)]);
    assert!(!refused.status.success());

    assert!(!stallings(&["decide", "--word", "axq"]).status.success());
    assert!(!stallings(&["verify", "--trace", path_str(&dir.path().join("missing"))]).status.success());

    fs::write(&trace, "ab\nR 0 ab ba\n").unwrap();
    assert!(!stallings(&["verify", "--trace", path_str(&trace)]).status.success());

    assert!(!stallings(&["bench", "--lengths", "3", "--seeds", "1", "--csv", path_str(&dir.path().join("x.csv"))])
        .status
        .success());
}
