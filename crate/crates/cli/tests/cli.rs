use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn corpus(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/corpus")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dynmono"))
        .args(args)
        .output()
        .unwrap()
}

fn run_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_dynmono"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn solve_p4() {
    let o = run(&["solve", &corpus("p4.ivl")]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "dyn 3\nmonopoly a b d\n");
    assert_eq!(
        stdout(&run(&["oracle", &corpus("p4.ivl")])),
        "dyn 3\nmonopoly a b d\n"
    );
}

#[test]
fn verify_exit_codes() {
    let yes = run(&["verify", &corpus("p4.ivl"), "--set", "a,b,c,d"]);
    assert_eq!(
        (stdout(&yes).as_str(), yes.status.code()),
        ("yes\n", Some(0))
    );
    let no = run(&["verify", &corpus("p4.ivl"), "--set", "a,b"]);
    assert_eq!((stdout(&no).as_str(), no.status.code()), ("no\n", Some(1)));
    let unknown = run(&["verify", &corpus("p4.ivl"), "--set", "zz"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn reduce_then_oracle_through_stdin() {
    let reduced = run(&["reduce", &corpus("k4.grf")]);
    assert!(reduced.status.success());
    let text = stdout(&reduced);
    assert!(text.starts_with("format graph-instance v1\n# gadget a b: g_a_b_1"));
    let o = run_stdin(&["oracle", "-"], &reduced.stdout);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("dyn 3\n"));
}

#[test]
fn reduce_rejects_non_cubic() {
    let o = run(&["reduce", &corpus("p4.ivl")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cubic"));
}

#[test]
fn parse_errors_exit_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_temp(
        &dir,
        "bad.grf",
        "format graph-instance v1\nvertex a 1\nedge a b\nvertex b 1\n",
    );
    let o = run(&["solve", &p.to_string_lossy()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3, column 8"));
    assert_eq!(
        run(&["solve", "/nonexistent/file.ivl"]).status.code(),
        Some(2)
    );
}

#[test]
fn bound_violation_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_temp(
        &dir,
        "tau.ivl",
        "format interval-instance v1\nt 1\ninterval a 1 3 2\ninterval b 2 4 1\n",
    );
    let o = run(&["solve", &p.to_string_lossy()]);
    assert_eq!(o.status.code(), Some(3));
    // the oracle has no bound
    assert!(run(&["oracle", &p.to_string_lossy()]).status.success());
}

#[test]
fn budget_refusal_exits_4() {
    let o = run(&["generate", "cubic", "--n", "16", "--seed", "1", "--t", "3"]);
    let dir = tempfile::tempdir().unwrap();
    let p = write_temp(&dir, "c16.grf", &stdout(&o));
    let o = run(&["oracle", &p.to_string_lossy(), "--budget", "10"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn zero_dyn_prints_bare_monopoly_line() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_temp(
        &dir,
        "z.ivl",
        "format interval-instance v1\ninterval a 0 1 0\ninterval b 1 2 1\n",
    );
    assert_eq!(
        stdout(&run(&["solve", &p.to_string_lossy()])),
        "dyn 0\nmonopoly\n"
    );
    assert_eq!(
        run(&["verify", &p.to_string_lossy(), "--set", ""])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn hull_lists_members_and_order() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_temp(
        &dir,
        "p3.ivl",
        "format interval-instance v1\ninterval a 0 1 1\ninterval b 1 2 1\ninterval c 2 3 1\n",
    );
    let o = run(&["hull", &p.to_string_lossy(), "--seed", "b"]);
    assert_eq!(stdout(&o), "hull 3\na\nb\nc\norder\nb\na\nc\n");
    let o = run(&["hull", &corpus("p4.ivl"), "--seed", "a,b"]);
    assert_eq!(stdout(&o), "hull 2\na\nb\norder\na\nb\n");
}

#[test]
fn generate_round_trips_and_matches_oracle() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..5 {
        let g = run(&[
            "generate",
            "interval",
            "--n",
            "12",
            "--seed",
            &seed.to_string(),
            "--t",
            "3",
        ]);
        assert!(g.status.success());
        let p = write_temp(&dir, "g.ivl", &stdout(&g));
        let solve = run(&["solve", &p.to_string_lossy()]);
        let oracle = run(&["oracle", &p.to_string_lossy()]);
        let (s, o) = (stdout(&solve), stdout(&oracle));
        assert_eq!(s.lines().next(), o.lines().next());
        // both witnesses are monopolies, though not necessarily the same one
        for text in [&s, &o] {
            let set = text
                .lines()
                .nth(1)
                .unwrap()
                .trim_start_matches("monopoly")
                .trim()
                .replace(' ', ",");
            let v = run(&["verify", &p.to_string_lossy(), "--set", &set]);
            assert_eq!(v.status.code(), Some(0), "{text}");
        }
    }
    let c = run(&["generate", "cubic", "--n", "5", "--seed", "1"]);
    assert_eq!(c.status.code(), Some(2));
}

#[test]
fn decompose_p4() {
    let o = run(&["decompose", &corpus("p4.ivl")]);
    let text = stdout(&o);
    assert!(text.contains("counts 1 2 1 2 1 2 1\n"));
    assert!(text.contains("ends 3 5 7\n"));
    let o = run(&["decompose", &corpus("p4.ivl"), "--t", "1"]);
    assert!(stdout(&o).contains("ends 7\n"));
    assert_eq!(
        run(&["decompose", &corpus("k4.grf")]).status.code(),
        Some(3)
    );
}
