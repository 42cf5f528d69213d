//! End-to-end checks of the command surface: formats, exit codes, and
//! report determinism.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_outerpath"))
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

const K3: &str = "3 3\n0 1\n1 2\n0 2\n";
const K4: &str = "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";
const CLAW: &str = "4 3\n0 1\n0 2\n0 3\n";
const TRIFORCE_MOP: &str = "mop 6\n0 2\n2 4\n0 4\n";

#[test]
fn pw_of_k3_is_two() {
    let out = run_with_stdin(&["pw", "--input", "-"], K3);
    assert!(out.status.success());
    assert!(stdout(&out).contains("pathwidth 2"));
}

#[test]
fn pw_anchored_claw_center() {
    let out = run_with_stdin(&["pw", "--input", "-", "--anchor", "0"], CLAW);
    assert!(out.status.success());
    assert!(stdout(&out).contains("anchored(0) 1"));
}

#[test]
fn pw_both_engines_on_triforce() {
    let out = run_with_stdin(
        &["pw", "--input", "-", "--format", "mop", "--engine", "both"],
        TRIFORCE_MOP,
    );
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("pathwidth 3"));
    assert!(text.contains("agree"));
}

#[test]
fn extract_rejects_k4_with_exit_2() {
    let out = run_with_stdin(&["extract", "--input", "-", "-k", "2"], K4);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn extract_on_witness_meets_the_bound() {
    let w = run_with_stdin(&["witness", "-k", "1"], "");
    assert!(w.status.success());
    let g6 = stdout(&w).trim().to_string();
    let out = run_with_stdin(
        &[
            "extract", "--input", "-", "--format", "g6", "-k", "1", "-M", "2", "--json", "-",
        ],
        &g6,
    );
    assert!(out.status.success());
    let text = stdout(&out);
    let json_start = text.find('{').unwrap();
    let report: serde_json::Value = serde_json::from_str(&text[json_start..]).unwrap();
    let selected = report["results"]["selected"].as_array().unwrap();
    assert!(selected.len() >= 4);
    assert_eq!(report["results"]["bound"]["num"], 4);
    assert_eq!(report["results"]["bound"]["den"], 1);
    assert_eq!(report["assertions"][0]["status"], "pass");
}

#[test]
fn enum_counts_classes() {
    let out = run_with_stdin(&["enum", "-n", "6", "--iso"], "");
    assert!(out.status.success());
    assert!(stdout(&out).contains("3 classes (14 labeled)"));
}

#[test]
fn mk_k2_is_exact_five() {
    let out = run_with_stdin(&["mk", "-k", "2", "--cap", "8"], "");
    assert!(out.status.success());
    assert!(stdout(&out).contains("M_2 exact 5"));
}

#[test]
fn witness_k2_is_a_19_vertex_graph() {
    let out = run_with_stdin(&["witness", "-k", "2"], "");
    assert!(out.status.success());
    let g6 = stdout(&out).trim().to_string();
    let decoded = outerpath_decode_len(&g6);
    assert_eq!(decoded, 19);
}

fn outerpath_decode_len(g6: &str) -> u32 {
    // graph6 size byte
    (g6.as_bytes()[0] - 63) as u32
}

#[test]
fn witness_k3_exits_2() {
    let out = run_with_stdin(&["witness", "-k", "3"], "");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_table_row_one_passes() {
    let out = run_with_stdin(&["verify-paper-table", "--kmax", "1"], "");
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("row k=1"));
}

#[test]
fn search_remark_scope() {
    let out = run_with_stdin(&["search-remark", "--nmax", "6"], "");
    assert!(out.status.success());
    assert!(stdout(&out).contains("none found") || stdout(&out).contains("hit"));

    let out = run_with_stdin(&["search-remark", "--nmax", "13"], "");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn convert_k3_to_graph6() {
    let out = run_with_stdin(&["convert", "--input", "-", "--to", "g6"], K3);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "Bw");
}

#[test]
fn convert_mop_roundtrip() {
    let out = run_with_stdin(
        &["convert", "--input", "-", "--format", "mop", "--to", "mop"],
        TRIFORCE_MOP,
    );
    assert!(out.status.success());
    // chords come back normalized and sorted
    assert_eq!(stdout(&out), "mop 6\n0 2\n0 4\n2 4\n");
}

#[test]
fn reports_are_deterministic_modulo_wall_time() {
    let run = || {
        let out = run_with_stdin(
            &["pw", "--input", "-", "--engine", "both", "--json", "-"],
            K3,
        );
        assert!(out.status.success());
        let text = stdout(&out);
        let json_start = text.find('{').unwrap();
        let mut v: serde_json::Value = serde_json::from_str(&text[json_start..]).unwrap();
        v.as_object_mut().unwrap().remove("wall_time");
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(run(), run());
}

#[test]
fn threads_flag_does_not_change_results() {
    let with = run_with_stdin(
        &["mk", "-k", "2", "--cap", "8", "--threads", "1", "--json", "-"],
        "",
    );
    let without = run_with_stdin(&["mk", "-k", "2", "--cap", "8", "--json", "-"], "");
    let strip = |o: &Output| {
        let text = stdout(o);
        let json_start = text.find('{').unwrap();
        let mut v: serde_json::Value = serde_json::from_str(&text[json_start..]).unwrap();
        v.as_object_mut().unwrap().remove("wall_time");
        let inputs = v["inputs"].as_object_mut().unwrap();
        inputs.remove("threads");
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(strip(&with), strip(&without));
}

#[test]
fn missing_input_is_a_usage_error() {
    let out = run_with_stdin(&["pw"], "");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn engine_scope_violations_exit_2() {
    // a 30-vertex path exceeds the subset-DP scope
    let mut text = String::from("30 29\n");
    for v in 1..30 {
        text.push_str(&format!("{} {v}\n", v - 1));
    }
    let out = run_with_stdin(&["pw", "--input", "-"], &text);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("supports n <="));
}

#[test]
fn parse_error_names_the_line() {
    let out = run_with_stdin(&["pw", "--input", "-"], "3 1\n0 7\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}
