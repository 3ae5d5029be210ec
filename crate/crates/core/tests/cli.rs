use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use atomcode::io::{parse_code, parse_subspace};
use tempfile::TempDir;

const S1: &str = "257 4\n1 0 0 0\n0 1 0 0\n";
const S2: &str = "257 4\n1 0 0 0\n0 1 0 0\n0 0 1 0\n";
const U: &str = "257 4\n1 0 0 0\n0 0 1 0\n";
const CODE: &str = "257 4 2\n2\n1 0 0 0\n0 1 0 0\n\n3\n1 0 0 0\n0 1 0 0\n0 0 1 0\n";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_atomcode"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn put(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn nvalue_examples() {
    for (q, d, want) in [("257", "2", "33153"), ("257", "3", "48397976536193"), ("2", "0", "1")] {
        let o = run(&["nvalue", "--q", q, "--dim", d]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), format!("{want}\n"));
    }
    assert_eq!(run(&["nvalue", "--q", "1", "--dim", "2"]).status.code(), Some(1));
    assert_eq!(run(&["nvalue", "--q", "2"]).status.code(), Some(1));
}

#[test]
fn dist_examples() {
    let dir = TempDir::new().unwrap();
    let (s1, s2, u) = (put(&dir, "s1.sub", S1), put(&dir, "s2.sub", S2), put(&dir, "u.sub", U));
    assert_eq!(stdout(&run(&["dist", "--metric", "atomic", s(&u), s(&s1)])), "66304\n");
    assert_eq!(stdout(&run(&["dist", "--metric", "subspace", s(&u), s(&s2)])), "1\n");
    assert_eq!(stdout(&run(&["dist", "--metric", "atomic", s(&u), s(&s2)])), "48397976503040\n");
    assert_eq!(stdout(&run(&["dist", "--metric", "atomic", s(&u), s(&u)])), "0\n");

    let other = put(&dir, "o.sub", "2 4\n1 0 0 0\n");
    assert_eq!(run(&["dist", "--metric", "atomic", s(&u), s(&other)]).status.code(), Some(1));
    let bad = put(&dir, "bad.sub", "257 4\n1 0 0\n");
    assert_eq!(run(&["dist", "--metric", "atomic", s(&u), s(&bad)]).status.code(), Some(1));
    assert_eq!(run(&["dist", "--metric", "nope", s(&u), s(&u)]).status.code(), Some(1));
}

#[test]
fn channel_worked_example() {
    let dir = TempDir::new().unwrap();
    let s1 = put(&dir, "s1.sub", S1);
    let tr = dir.path().join("t.txt");
    let o = run(&[
        "channel",
        s(&s1),
        "--erase-atoms",
        "0 1 0 0",
        "--insert-atoms",
        "0 0 1 0",
        "--dump-transcript",
        s(&tr),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), U);
    let t = fs::read_to_string(&tr).unwrap();
    assert_eq!(
        t,
        "q 257\nN 4\ninput 2\n1 0 0 0\n0 1 0 0\nerased 1\n0 1 0 0\ninserted 1\n0 0 1 0\noutput 2\n1 0 0 0\n0 0 1 0\n"
    );
}

#[test]
fn channel_trivial_cases() {
    let dir = TempDir::new().unwrap();
    let s1 = put(&dir, "s1.sub", "257 4\n0 1 0 0\n1 0 0 0\n1 1 0 0\n");
    let o = run(&["channel", s(&s1), "--seed", "9"]);
    assert_eq!(stdout(&o), S1);
    let o = run(&["channel", s(&s1), "--redundancy", "4", "--erasures", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "257 4\n");
    let o = run(&["channel", s(&s1), "--redundancy", "3", "--erasures", "4"]);
    assert_eq!(o.status.code(), Some(3));
    let full = put(&dir, "full.sub", "2 2\n1 0\n0 1\n");
    assert_eq!(run(&["channel", s(&full), "--insertions", "1"]).status.code(), Some(3));
}

#[test]
fn channel_is_deterministic_and_round_trips() {
    let dir = TempDir::new().unwrap();
    let s2 = put(&dir, "s2.sub", "3 6\n1 2 0 0 1 0\n0 0 1 0 2 1\n0 1 0 1 0 0\n");
    let args = ["channel", s(&s2), "--redundancy", "5", "--erasures", "2", "--insertions", "2", "--seed", "41"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let parsed = parse_subspace(&text).unwrap();
    assert_eq!(atomcode::io::format_subspace(&parsed), text);
}

#[test]
fn decode_examples_and_exit_codes() {
    let dir = TempDir::new().unwrap();
    let code = put(&dir, "c.code", CODE);
    let u = put(&dir, "u.sub", U);
    let o = run(&["decode", "--metric", "subspace", "--code", s(&code), "--received", s(&u)]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "1 1\n".to_string()));
    let o = run(&["decode", "--metric", "atomic", "--code", s(&code), "--received", s(&u)]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "0 66304\n".to_string()));
    let s1 = put(&dir, "s1.sub", S1);
    let o = run(&["decode", "--metric", "atomic", "--code", s(&code), "--received", s(&s1)]);
    assert_eq!(stdout(&o), "0 0\n");

    // both coordinate lines of F_2^2 are at subspace distance 1 from <e1 + e2>
    let tie = put(&dir, "tie.code", "2 2 2\n1\n1 0\n\n1\n0 1\n");
    let r = put(&dir, "r.sub", "2 2\n1 1\n");
    let o = run(&["decode", "--metric", "subspace", "--code", s(&tie), "--received", s(&r)]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(2), "AMBIGUOUS 0 1\n".to_string()));

    let broken = put(&dir, "broken.code", "257 4 3\n1\n1 0 0 0\n");
    assert_eq!(run(&["decode", "--metric", "atomic", "--code", s(&broken), "--received", s(&u)]).status.code(), Some(1));
    assert!(parse_code(CODE).is_ok());
}

#[test]
fn bound_examples() {
    let o = run(&["bound", "--q", "2", "--N", "2", "--k", "2", "--D", "2"]);
    assert_eq!(stdout(&o), "2,2,2,2,1,1,1\n");
    let o = run(&["bound", "--q", "2", "--N", "5", "--k", "3", "--D", "1"]);
    assert_eq!(stdout(&o), "2,5,3,1,2,1,155\n");
    let o = run(&["bound", "--q", "2", "--N", "4", "--k", "2", "--D", "4"]);
    assert_eq!(stdout(&o), "2,4,2,4,1,1,35\n");
    let o = run(&["bound", "--q", "2", "--N", "4", "--k", "2", "--D", "5"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!o.stderr.is_empty());
    assert_eq!(run(&["bound", "--q", "2", "--N", "4", "--k", "5", "--D", "1"]).status.code(), Some(1));
}

#[test]
fn verify_examples() {
    for (q, d, line) in [("2", "2", "oracle=3 formula=3 PASS\n"), ("3", "3", "oracle=234 formula=234 PASS\n"), ("5", "1", "oracle=1 formula=1 PASS\n")] {
        let o = run(&["verify", "--q", q, "--dim", d]);
        assert_eq!((o.status.code(), stdout(&o)), (Some(0), line.to_string()));
    }
    assert_eq!(run(&["verify", "--q", "257", "--dim", "3"]).status.code(), Some(1));
}

#[test]
fn experiment_runs_and_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let cfg = put(&dir, "e.cfg", "q=2\nN=6\nk=3\ncode_size=6\nerasures=1\ninsertions=1\ntrials=40\nmaster_seed=7\n");
    let par = run(&["experiment", s(&cfg)]);
    let ser = run(&["experiment", s(&cfg), "--serial"]);
    assert_eq!(par.status.code(), Some(0));
    assert_eq!(par.stdout, ser.stdout);
    let out = dir.path().join("out.csv");
    run(&["experiment", s(&cfg), "--output", s(&out)]);
    assert_eq!(fs::read(&out).unwrap(), par.stdout);

    let text = stdout(&par);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], atomcode::experiment::CSV_HEADER);
    assert_eq!(lines.len(), 1 + 40 + 2);
    assert!(lines.last().unwrap().ends_with(",0"));

    let trivial = put(&dir, "t.cfg", "trials=1\nerasures=0\ninsertions=0\n");
    let o = stdout(&run(&["experiment", s(&trivial)]));
    let row: Vec<&str> = o.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(&row[4..8], &["0", "0", "correct", "correct"]);

    let bad = put(&dir, "bad.cfg", "q=2\nN=3\nk=4\n");
    assert_eq!(run(&["experiment", s(&bad)]).status.code(), Some(3));
    let junk = put(&dir, "junk.cfg", "colour=blue\n");
    assert_eq!(run(&["experiment", s(&junk)]).status.code(), Some(1));
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&[]).status.code(), Some(1));
}
