use std::fs;
use std::process::{Command, Output};

fn dynparam(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dynparam"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn run_prints_one_line_per_query() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tri.script");
    fs::write(
        &path,
        "problem vcover\ndomain 3\nkmax 2\n# triangle\nins 1 2\nins 2 3\nquery\nins 1 3\nk-\nquery\n",
    )
    .unwrap();
    let o = dynparam(&["run", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "q1 yes\nq2 no\n");
}

#[test]
fn input_errors_exit_1() {
    assert_eq!(dynparam(&["run", "/definitely/not/here"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.script");
    fs::write(&path, "problem vcover\ndomain 3\nkmax 1\nins 1 9\nquery\n").unwrap();
    let o = dynparam(&["run", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));
    assert_eq!(dynparam(&["verify", "nonsense"]).status.code(), Some(1));
}

#[test]
fn verify_passes_and_vacuous_run() {
    let o = dynparam(&["verify", "vcover", "--seed", "7", "--trials", "100", "--len", "50"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "pass 100/100\n");
    let o = dynparam(&["verify", "knapsack", "--trials", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "pass 0/0\n");
}

#[test]
fn injected_fault_writes_a_replayable_reproducer() {
    let dir = tempfile::tempdir().unwrap();
    let repro = dir.path().join("repro.script");
    let o = dynparam(&[
        "verify",
        "fvs",
        "--seed",
        "3",
        "--trials",
        "4",
        "--len",
        "10",
        "--inject-fault",
        "2:3",
        "--reproducer",
        repro.to_str().unwrap(),
    ]);
    assert_ne!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("pass 3/4\nfirst failure: trial 2"), "{out}");
    let replay = dynparam(&["run", repro.to_str().unwrap()]);
    assert_eq!(replay.status.code(), Some(0));
    assert_eq!(stdout(&replay).lines().count(), 3);
}

#[test]
fn bench_answers_match_run() {
    let dir = tempfile::tempdir().unwrap();
    let script = dir.path().join("bench.script");
    let o = dynparam(&["bench", "vcover", "--seed", "4", "--len", "30", "--emit-script", script.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("idx,kind,maint_ns,recompute_ns,answer"));
    let bench_answers: Vec<String> = lines.map(|l| l.rsplit(',').next().unwrap().to_string()).collect();
    assert_eq!(bench_answers.len(), 30);
    let run = dynparam(&["run", script.to_str().unwrap()]);
    let run_answers: Vec<String> = stdout(&run)
        .lines()
        .map(|l| l.split(' ').nth(1).unwrap().to_string())
        .collect();
    assert_eq!(bench_answers, run_answers);
}

#[test]
fn bench_of_length_zero_is_header_only() {
    let o = dynparam(&["bench", "plc", "--len", "0"]);
    assert_eq!(stdout(&o), "idx,kind,maint_ns,recompute_ns,answer\n");
}

#[test]
fn run_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let script = dir.path().join("lp.script");
    dynparam(&["bench", "longpath", "--seed", "11", "--len", "20", "--emit-script", script.to_str().unwrap()]);
    let a = dynparam(&["run", script.to_str().unwrap()]);
    let b = dynparam(&["run", script.to_str().unwrap()]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn colouring_check_reports_universality_and_size() {
    let o = dynparam(&["colouring", "check", "--n", "8", "--k", "2", "--c", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("universal: yes\ncardinality: "), "{out}");
    let o = dynparam(&["colouring", "check", "--n", "0", "--k", "2", "--c", "2"]);
    assert_eq!(o.status.code(), Some(1));
}
