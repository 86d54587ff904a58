use std::io::Write;
use std::process::{Command, Stdio};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_groupoidify"))
}

fn run_stdin(args: &[&str], program: &str) -> (i32, String, String) {
    let mut child = binary()
        .args(args)
        .arg("-")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(program.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

const GOOD: &str = "group S3 = perm 3 gens (0 1), (0 1 2)\ngset X = points 3 on S3 act (0 1)->[1,0,2], (0 1 2)->[1,2,0]\ncheck cardinality X//S3\n";

#[test]
fn passing_program_exits_zero() {
    let (code, out, _) = run_stdin(&[], GOOD);
    assert_eq!(code, 0);
    assert!(out.contains("1/2"));
}

#[test]
fn json_output() {
    let (code, out, _) = run_stdin(&["--json"], GOOD);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["results"][0]["summary"], "1/2");
    assert_eq!(v["results"][0]["line"], 3);
}

#[test]
fn parse_error_exits_two() {
    let (code, _, err) = run_stdin(&[], "group G = perm 3 gens (0 1\n");
    assert_eq!(code, 2);
    assert!(err.contains("error at 1:27"));
}

#[test]
fn failed_check_exits_one() {
    let (code, out, _) = run_stdin(&[], "hecke verify A1 q=2\n");
    assert_eq!(code, 1);
    assert!(out.contains("FAIL"));
}

#[test]
fn runtime_error_exits_one() {
    let (code, _, _) = run_stdin(&["--max-flags", "10"], "main-claim A2 q=2\n");
    assert_eq!(code, 1);
}

#[test]
fn missing_file_exits_two() {
    let out = binary().arg("/nonexistent/program.gfy").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flag_exits_two() {
    let out = binary().args(["--bogus", "x"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pretty_flag_prints_canonical_form() {
    let (code, out, _) = run_stdin(&["--pretty"], "group   S3=perm 3 gens(0 1),(0 1 2)\n");
    assert_eq!(code, 0);
    assert_eq!(out, "group S3 = perm 3 gens (0 1), (0 1 2)\n");
}

#[test]
fn out_file_receives_report() {
    let path = std::env::temp_dir().join(format!("groupoidify-out-{}.json", std::process::id()));
    let (code, out, _) = run_stdin(&["--json", "--out", path.to_str().unwrap()], GOOD);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(text.contains("\"pass\""));
}
