use std::process::{Command, Output};

use serde_json::Value;

fn reesmon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reesmon")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn x3_x4_holds_in_aabb() {
    let out = reesmon(&["check", "--monoid", "rees:aabb", "--identity", "x^3=x^4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "HOLDS");
}

#[test]
fn failing_identity_exits_one_with_witness() {
    let out = reesmon(&["--format", "json", "check", "--monoid", "rees:aabb", "--identity", "xy=yx", "--method", "both"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["identity"], "xy = yx");
    assert_eq!(v["agree"], true);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 2);
    for r in results {
        assert_eq!(r["status"], "FAILS");
        assert!(r["evaluations"].is_u64());
    }
    assert_eq!(results[1]["witness"]["x"], "a");
    assert_eq!(results[1]["witness"]["y"], "b");
}

#[test]
fn presets_use_the_table_checker() {
    let out = reesmon(&["check", "--monoid", "preset:M_SCRIPT", "--identity", "xyzxty=yxzxty"]);
    assert_eq!(out.status.code(), Some(0));
    let out = reesmon(&["check", "--monoid", "preset:M_SCRIPT", "--identity", "x=x", "--method", "rees"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn wn_prints_dotted_form() {
    let out = reesmon(&["wn", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "z_1.t_1.x.z_1.y_1^1.x.y_1^0.y_1^1");
}

#[test]
fn rees_reports_order() {
    let out = reesmon(&["--format", "json", "rees", "abab"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["elements"].as_array().unwrap().len(), 9);
    assert_eq!(v["table"].as_array().unwrap().len(), 9);
    assert!(stdout(&reesmon(&["rees", "aabb"])).starts_with("order 10\n"));
}

#[test]
fn depth_and_match() {
    let out = reesmon(&["--format", "json", "depth", "aaca"]);
    let v = json(&out);
    assert_eq!(v["a"], "inf");
    assert_eq!(v["c"], 0);
    let out = reesmon(&["match", "xy", "ab"]);
    assert!(stdout(&out).ends_with("8 substitutions\n"));
}

#[test]
fn enumerate_finds_three_words() {
    let out = reesmon(&["enumerate"]);
    let text = stdout(&out);
    let words: Vec<&str> = text.lines().map(|l| l.split('\t').next().unwrap()).collect();
    assert_eq!(words, ["aabb", "abab", "abba"]);
}

#[test]
fn parse_errors_exit_two() {
    assert_eq!(reesmon(&["check", "--monoid", "rees:aabb", "--identity", "x = y = z"]).status.code(), Some(2));
    assert_eq!(reesmon(&["check", "--monoid", "nope", "--identity", "x=x"]).status.code(), Some(2));
    assert_eq!(reesmon(&["depth", "a._"]).status.code(), Some(2));
    assert_eq!(reesmon(&["wn", "0"]).status.code(), Some(2));
}

#[test]
fn small_budget_exits_three() {
    let out = reesmon(&["check", "--monoid", "rees:aabb", "--identity", "xyzxty=yxzxty", "--budget", "3"]);
    assert_eq!(out.status.code(), Some(3));
    let out = reesmon(&["check", "--monoid", "rees:aabb", "--identity", "xyz=zyx", "--method", "table", "--budget", "3"]);
    assert_eq!(out.status.code(), Some(3));
}

fn without_millis(mut v: Value) -> Value {
    for claim in v["claims"].as_array_mut().unwrap() {
        claim.as_object_mut().unwrap().remove("millis");
    }
    v
}

#[test]
fn verify_paper_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = reesmon(&["verify-paper", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let first: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(first["config"]["max_n"], 2);
    assert_eq!(first["config"]["seed"], 42);
    let claims = first["claims"].as_array().unwrap();
    assert_eq!(claims.len(), 14);
    for c in claims {
        assert_eq!(c["status"], "PASS", "{c}");
        for key in ["id", "title", "millis"] {
            assert!(c.get(key).is_some(), "{key} missing in {c}");
        }
    }
    assert_eq!(first["summary"]["pass"], 14);
    assert_eq!(first["summary"]["fail"], 0);

    let again = json(&reesmon(&["--format", "json", "verify-paper"]));
    assert_eq!(without_millis(first), without_millis(again));
}

#[test]
fn verify_paper_budget_exit() {
    let out = reesmon(&["verify-paper", "--matcher-budget", "10"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("BUDGET"));
    assert_eq!(reesmon(&["verify-paper", "--max-n", "0"]).status.code(), Some(2));
}
