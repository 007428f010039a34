use std::io::Write;
use std::process::Command;

use critical_ideals::cli::{self, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};
use critical_ideals::critical::Classification;
use critical_ideals::digraph;
use critical_ideals::lambda::{self, LambdaParams};

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(std::iter::once("critideal").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn gamma_of_a_single_arc() {
    let (code, out, _) = run(&["gamma", "&AG"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "&AG\tgamma=1\nI1\ttrivial\nI2\tproper\n");
}

#[test]
fn gamma_json_and_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p2.json");
    std::fs::write(&path, r#"{"n": 2, "arcs": [[0, 1]]}"#).unwrap();
    let (code, out, err) = run(&["gamma", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code, EXIT_OK, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["gamma"], 1);
}

#[test]
fn census_n3() {
    let (code, out, _) = run(&["census", "--n", "3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "3\t2\t7\n");
}

#[test]
fn census_members_match_counts() {
    let (code, out, _) = run(&["census", "--n", "4", "--emit-members", "--jobs", "2"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(&lines[..2], &["4\t2\t10", "4\t3\t61"]);
    let members = &lines[2..];
    assert_eq!(members.len(), 71);
    assert_eq!(members.iter().filter(|l| l.ends_with("\t2")).count(), 10);
}

#[test]
fn census_is_deterministic_across_job_counts() {
    let a = run(&["census", "--n", "4", "--emit-members", "--jobs", "1"]);
    let b = run(&["census", "--n", "4", "--emit-members", "--jobs", "4"]);
    assert_eq!(a, b);
}

#[test]
fn census_resumes_from_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let ckpt = dir.path().join("n4.ckpt");
    let ckpt_arg = ckpt.to_str().unwrap();
    let first = run(&["census", "--n", "4", "--resume", ckpt_arg]);
    assert_eq!(first.0, EXIT_OK);
    let written = std::fs::read_to_string(&ckpt).unwrap();
    assert_eq!(written.lines().count(), 199);
    assert!(written.lines().all(|l| Classification::parse_line(l).is_some()));

    // a second run reads everything back and appends nothing
    let second = run(&["census", "--n", "4", "--resume", ckpt_arg]);
    assert_eq!(first, second);
    assert_eq!(std::fs::read_to_string(&ckpt).unwrap(), written);

    // a truncated checkpoint is completed
    let half: String = written.lines().take(100).map(|l| format!("{l}\n")).collect();
    std::fs::write(&ckpt, half).unwrap();
    let third = run(&["census", "--n", "4", "--resume", ckpt_arg]);
    assert_eq!(first, third);
    assert_eq!(std::fs::read_to_string(&ckpt).unwrap().lines().count(), 199);
}

#[test]
fn verify_lemma2_reports_all_fixtures() {
    let (code, out, _) = run(&["verify-lemma2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 17);
    assert!(out.lines().all(|l| l.ends_with("gamma=2 forbidden")));
}

#[test]
fn verify_lemma3_flags_the_complete_case() {
    let (code, out, err) = run(&["verify-lemma3", "--max-total", "3"]);
    assert_eq!(code, EXIT_CHECK_FAILED);
    let failed: Vec<&str> = out.lines().filter(|l| l.contains("FAILED")).collect();
    assert_eq!(failed.len(), 1);
    assert!(failed[0].starts_with("Lambda(0,3,0)\tcase 8"));
    assert!(err.contains("Lambda(0,3,0)"));
}

#[test]
fn verify_theorem5_and_corollaries_pass() {
    assert_eq!(run(&["verify-theorem5", "--n", "4"]).0, EXIT_OK);
    assert_eq!(run(&["verify-corollaries", "--max-total", "5"]).0, EXIT_OK);
}

#[test]
fn classify_agrees_with_recognition() {
    let p = LambdaParams::new(1, 2, 1);
    let d6 = lambda::build_lambda(p).unwrap().to_digraph6();
    let (code, out, _) = run(&["classify", &d6]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("gamma<=1\ttrue"));
    assert!(out.contains("f-free\ttrue"));
    assert!(out.contains("lambda\tLambda(1,2,1)"));

    // directed 3-cycle
    let (code, out, _) = run(&["classify", "{\"n\":3,\"arcs\":[[0,1],[1,2],[2,0]]}", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["gamma"], 2);
    assert_eq!(v["f_free"], false);
    assert!(v["lambda"].is_null());
    assert_eq!(v["consistent"], true);
}

#[test]
fn groups_of_a_two_cycle() {
    let d6 = lambda::build_lambda(LambdaParams::new(0, 2, 0)).unwrap().to_digraph6();
    let (code, out, _) = run(&["groups", &d6, "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["smith"]["unit_count"], 2);
    assert_eq!(v["critical"]["unit_count"], 1);
}

#[test]
fn snf_reads_text_and_json_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let text = dir.path().join("m.txt");
    let mut f = std::fs::File::create(&text).unwrap();
    writeln!(f, "# a 2x3 matrix\n2 4 4\n-6, 6, 12").unwrap();
    let json = dir.path().join("m.json");
    std::fs::write(&json, "[[2, 4, 4], [-6, 6, 12]]").unwrap();

    let (code, a, _) = run(&["snf", text.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(a.trim(), "factors=[2,6] rank=2 zeros=0");
    let (_, b, _) = run(&["snf", json.to_str().unwrap()]);
    assert_eq!(a, b);

    let (code, out, _) = run(&["snf", text.to_str().unwrap(), "--transforms", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["u"].as_array().unwrap().len(), 2);
    assert_eq!(v["v"].as_array().unwrap().len(), 3);
}

#[test]
fn convert_round_trips() {
    let d = lambda::build_lambda(LambdaParams::new(2, 1, 2)).unwrap();
    let d6 = d.to_digraph6();
    let (code, json, _) = run(&["convert", &d6]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(digraph::parse_json(json.trim()).unwrap(), d);
    let (code, back, _) = run(&["convert", json.trim(), "--to", "digraph6"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(back.trim(), d6);
}

#[test]
fn usage_errors() {
    assert_eq!(run(&[]).0, EXIT_USAGE);
    assert_eq!(run(&["census"]).0, EXIT_USAGE);
    assert_eq!(run(&["census", "--n", "9"]).0, EXIT_USAGE);
    assert_eq!(run(&["census", "--n", "3", "--jobs", "0"]).0, EXIT_USAGE);
    assert_eq!(run(&["gamma", "not-a-digraph"]).0, EXIT_USAGE);
    assert_eq!(run(&["gamma", "&"]).0, EXIT_USAGE);
    assert_eq!(run(&["snf", "/nonexistent/matrix"]).0, EXIT_USAGE);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("census"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_critideal");
    let ok = Command::new(bin).args(["gamma", "&AG"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8_lossy(&ok.stdout).lines().next(), Some("&AG\tgamma=1"));
    let bad = Command::new(bin).args(["census", "--n", "1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    assert!(!bad.stderr.is_empty());
}
