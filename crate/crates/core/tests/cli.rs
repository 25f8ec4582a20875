//! The `hsk` front end, driven through `cli::run` and the built binary.

use std::io::Cursor;
use std::process::Command;

use hsk_core::cli::{parse_instance, run, write_instance, EXIT_INTERNAL, EXIT_KERNEL, EXIT_NO, EXIT_USAGE, EXIT_YES};
use hsk_core::samples::{small_crown, small_crown_instance};
use hsk_core::{apply_hs_crown, Oracle};

const SMALL_CROWN: &str = "p hs 5 4 3 1\n1 2 4\n1 2 5\n2 3 4\n2 3 5\n";
const TWO_BLOCKS: &str = "p hs 8 8 3 1\n1 2 3\n1 2 4\n1 3 4\n2 3 4\n5 6 7\n5 6 8\n5 7 8\n6 7 8\n";

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn hsk(args: &[&str], stdin: &str) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("hsk").chain(args.iter().copied());
    let code = run(argv, &mut Cursor::new(stdin.as_bytes()), &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

#[test]
fn kernelize_small_crown_decides_yes() {
    let r = hsk(&["kernelize", "-"], SMALL_CROWN);
    assert_eq!(r.code, EXIT_YES, "{}", r.stderr);
    assert!(r.stdout.is_empty());
    assert!(r.stderr.contains("verdict: yes"));
}

#[test]
fn kernelize_override_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let r = hsk(
        &["kernelize", "-", "--k", "0", "--report-json", path.to_str().unwrap()],
        SMALL_CROWN,
    );
    assert_eq!(r.code, EXIT_NO);
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(json["verdict"], "no");
    assert_eq!(json["original_k"], 1);
    assert_eq!(json["k_override"], 0);
    for key in [
        "final_n",
        "final_m",
        "final_k",
        "bound",
        "rule1",
        "rule6",
        "wall_time_ms",
        "steps",
    ] {
        assert!(json.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn kernel_text_appears_only_on_exit_zero() {
    // Two disjoint blocks holding every triple of four vertices. No rule
    // fires and 8 vertices are within the bound for k = 4.
    let text = TWO_BLOCKS.replace("3 1\n", "3 4\n");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let r = hsk(
        &["kernelize", "-", "--trace", "--report-json", path.to_str().unwrap()],
        &text,
    );
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r.code, EXIT_KERNEL, "{}", r.stderr);
    let kernel = parse_instance(&r.stdout).unwrap();
    assert_eq!(kernel.edges(), parse_instance(&text).unwrap().edges());
    assert_eq!(json["verdict"], "kernel");
    assert_eq!(json["bound"], 68);
    assert_eq!(json["final_n"], 8);
    assert_eq!(json["kernel_labels"].as_array().unwrap().len(), 8);

    // k = 2 is also within the bound, so the answer comes as a kernel.
    let r = hsk(&["kernelize", "-", "--k", "2"], &text);
    assert_eq!(r.code, EXIT_KERNEL);
    let kernel = parse_instance(&r.stdout).unwrap();
    assert_eq!(kernel.k(), 2);
    assert!(!Oracle::default().decide(&kernel).unwrap());
}

#[test]
fn trace_and_lp_dump() {
    // With k = 1 the 8 vertices exceed the bound of 5; the LP puts 2/3
    // everywhere, so there is no crown and the answer is no.
    let r = hsk(&["kernelize", "--trace", "--dump-lp"], TWO_BLOCKS);
    assert_eq!(r.code, EXIT_NO);
    assert!(r.stderr.contains("rule 6 (LP crown): n 8->8"), "{}", r.stderr);
    assert!(r.stderr.contains("c0: x0 + x1 + x2 >= 2"), "{}", r.stderr);
    assert!(r.stderr.contains("optimum 16/3"), "{}", r.stderr);
    assert!(r.stderr.contains("x7=2/3"), "{}", r.stderr);
}

#[test]
fn small_crown_kernel_text() {
    let kernel = apply_hs_crown(&small_crown_instance(1), &small_crown()).unwrap();
    assert_eq!(write_instance(&kernel), "p hs 3 2 3 1\n1 2\n2 3\n");
}

#[test]
fn solve_reports_witness() {
    let r = hsk(&["solve"], SMALL_CROWN);
    assert_eq!(r.code, EXIT_YES);
    assert_eq!(r.stdout, "answer: yes\nminimum: 1\nwitness: 2\n");
    let r = hsk(&["solve", "--k", "0"], SMALL_CROWN);
    assert_eq!(r.code, EXIT_NO);
    assert!(r.stdout.starts_with("answer: no\n"));
}

#[test]
fn gen_then_solve_is_deterministic() {
    let args = ["gen", "--seed", "1", "--n", "12", "--m", "20", "--d", "3", "--k", "3"];
    let a = hsk(&args, "");
    let b = hsk(&args, "");
    assert_eq!(a.code, EXIT_KERNEL);
    assert_eq!(a.stdout, b.stdout);
    let s1 = hsk(&["solve"], &a.stdout);
    let s2 = hsk(&["solve"], &b.stdout);
    assert_eq!((s1.code, &s1.stdout), (s2.code, &s2.stdout));
    let inst = parse_instance(&a.stdout).unwrap();
    assert_eq!(s1.code == EXIT_YES, Oracle::default().decide(&inst).unwrap());
}

#[test]
fn verify_reference_run() {
    let r = hsk(
        &[
            "verify", "--trials", "500", "--seed", "7", "--n", "16", "--d", "3", "--kmax", "4",
        ],
        "",
    );
    assert_eq!(r.code, EXIT_KERNEL, "{}", r.stderr);
    assert!(r.stdout.starts_with("500/500 agree\n"), "{}", r.stdout);
    let crowns: usize = r
        .stdout
        .lines()
        .nth(1)
        .unwrap()
        .trim_start_matches("LP crowns applied: ")
        .parse()
        .unwrap();
    assert!(crowns > 0);
}

#[test]
fn format_errors_exit_one_with_line_numbers() {
    let r = hsk(&["kernelize"], "p hs 2 1 3 1\n1 3\n");
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.stderr.contains("line 2"), "{}", r.stderr);
    let r = hsk(&["kernelize"], "p hs 2 1 2 1\n1 2\n");
    assert_eq!(r.code, EXIT_USAGE);
    let r = hsk(&["frobnicate"], "");
    assert_eq!(r.code, EXIT_USAGE);
    assert_ne!(EXIT_USAGE, EXIT_INTERNAL);
}

#[test]
fn binary_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("small.hs");
    std::fs::write(&file, SMALL_CROWN).unwrap();
    let bin = env!("CARGO_BIN_EXE_hsk");
    let yes = Command::new(bin)
        .args(["kernelize", file.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(yes.status.code(), Some(EXIT_YES));
    let no = Command::new(bin)
        .args(["kernelize", file.to_str().unwrap(), "--k", "0"])
        .output()
        .unwrap();
    assert_eq!(no.status.code(), Some(EXIT_NO));
    let missing = Command::new(bin).args(["solve", "/nonexistent/file"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(EXIT_USAGE));
}

#[test]
fn oracle_ceiling_env_var() {
    let text = "p hs 30 1 3 1\n1 30\n";
    let bin = env!("CARGO_BIN_EXE_hsk");
    let mut child = Command::new(bin);
    child.arg("solve").env("HSK_ORACLE_CEILING", "10");
    let out = run_with_stdin(child, text);
    assert_eq!(out.0, Some(EXIT_USAGE));
    let mut child = Command::new(bin);
    child.arg("solve").env("HSK_ORACLE_CEILING", "40");
    assert_eq!(run_with_stdin(child, text).0, Some(EXIT_YES));
}

fn run_with_stdin(mut cmd: Command, input: &str) -> (Option<i32>, String) {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = cmd
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code(), String::from_utf8_lossy(&out.stdout).into_owned())
}
