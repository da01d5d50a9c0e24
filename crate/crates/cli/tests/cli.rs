use std::path::PathBuf;
use std::process::{Command, Output};

use adequacy_cli::{execute, exit, render, Cli};
use clap::Parser;
use serde_json::Value;

fn adequacy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adequacy")).args(args).env_remove("ADEQUACY_CAP").output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("adequacy-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn pj_cubic_example() {
    let out = adequacy(&["pj", "--poly", "1,-6,11,-6", "--n2", "2", "--j", "2", "--q", "1"]);
    assert_eq!(out.status.code(), Some(exit::OK));
    let v = json(&out);
    assert_eq!(v["payload"]["coefficients"], serde_json::json!([[-36], [36], [-11], [1]]));
    assert_eq!(v["payload"]["degree"], 3);
}

#[test]
fn pj_over_local_ring_matches_split_mode() {
    let base = ["pj", "--poly", "1,-6,11,-6", "--n2", "2", "--j", "2", "--q", "8", "--l", "7", "--N", "2"];
    let generic = json(&adequacy(&base));
    let mut with_roots = base.to_vec();
    with_roots.extend(["--roots", "1,2,3"]);
    let split = json(&adequacy(&with_roots));
    assert_eq!(generic["payload"]["coefficients"], split["payload"]["coefficients"]);
    assert_eq!(split["payload"]["mode"], "split");
}

#[test]
fn cosets_lists_three_representatives() {
    let v = json(&adequacy(&["cosets", "--n", "4", "--Q", "2,2", "--P", "2,2"]));
    let reps = v["payload"]["representatives"].as_array().unwrap();
    let refinements: Vec<&Value> = reps.iter().map(|r| &r["refinement"]).collect();
    assert_eq!(
        refinements,
        [
            &serde_json::json!([[2, 0], [0, 2]]),
            &serde_json::json!([[1, 1], [1, 1]]),
            &serde_json::json!([[0, 2], [2, 0]])
        ]
    );
}

#[test]
fn validation_errors_exit_2() {
    assert_eq!(adequacy(&["cosets", "--n", "4", "--Q", "2,1", "--P", "2,2"]).status.code(), Some(exit::INVALID));
    assert_eq!(adequacy(&["adequacy", "no_such_group"]).status.code(), Some(exit::INVALID));
    assert_eq!(adequacy(&["pj", "--poly", "2,1", "--n2", "1", "--j", "1"]).status.code(), Some(exit::INVALID));
    let out = adequacy(&["levelmod", "--n", "2", "--sigma", "2", "--q", "5", "--field", "5", "--samples", "4"]);
    assert_eq!(out.status.code(), Some(exit::INVALID));
    assert!(out.stdout.is_empty());
    let singular = temp_file("singular.json", r#"{"field": {"l": 5}, "n": 2, "generators": [[1, 2, 2, 4]]}"#);
    let out = adequacy(&["adequacy", singular.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(exit::INVALID));
    assert!(String::from_utf8_lossy(&out.stderr).contains("generator 0"));
}

#[test]
fn closure_overflow_exits_3() {
    let out = Command::new(env!("CARGO_BIN_EXE_adequacy"))
        .args(["adequacy", "sl2_f7"])
        .env("ADEQUACY_CAP", "50")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(exit::CLOSURE_OVERFLOW));
    assert_eq!(adequacy(&["--cap", "50", "adequacy", "sl2_f7"]).status.code(), Some(exit::CLOSURE_OVERFLOW));
}

#[test]
fn sweep_mismatch_exits_1() {
    let corpus = r#"[
        {"name": "borel", "group": {"field": {"l": 7}, "n": 2, "generators": [[3, 0, 0, 1], [1, 1, 0, 1]]},
         "expected_adequate": true},
        {"name": "sl2", "group": {"field": {"l": 7}, "n": 2, "generators": [[1, 1, 0, 1], [0, 6, 1, 0]]},
         "expected_big": true, "expected_adequate": true}
    ]"#;
    let path = temp_file("corpus.json", corpus);
    let out = adequacy(&["sweep", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(exit::CHECK_FAILED));
    let v = json(&out);
    assert_eq!(v["payload"]["mismatches"], 1);
    assert_eq!(v["payload"]["entries"][0]["mismatch"], true);
    assert_eq!(v["payload"]["entries"][1]["mismatch"], false);
}

#[test]
fn builtin_sweeps_pass() {
    for corpus in ["builtin", "appendix"] {
        let out = adequacy(&["sweep", corpus]);
        assert_eq!(out.status.code(), Some(exit::OK), "{corpus}");
        assert_eq!(json(&out)["payload"]["passed"], true);
    }
}

#[test]
fn timing_is_opt_in() {
    let plain = json(&adequacy(&["cosets", "--n", "3", "--Q", "1,2", "--P", "1,2"]));
    assert!(plain.get("wall_time_ms").is_none());
    let timed = json(&adequacy(&["--timing", "cosets", "--n", "3", "--Q", "1,2", "--P", "1,2"]));
    assert!(timed["wall_time_ms"].is_number());
    assert_eq!(plain["payload"], timed["payload"]);
}

#[test]
fn report_is_stable_across_thread_counts() {
    let a = adequacy(&[
        "--threads",
        "1",
        "levelmod",
        "--n",
        "3",
        "--sigma",
        "2,1",
        "--q",
        "4",
        "--field",
        "7",
        "--samples",
        "50",
    ]);
    let b = adequacy(&[
        "--threads",
        "3",
        "levelmod",
        "--n",
        "3",
        "--sigma",
        "2,1",
        "--q",
        "4",
        "--field",
        "7",
        "--samples",
        "50",
    ]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["payload"]["all_passed"], true);
    let c = adequacy(&[
        "--seed",
        "2",
        "levelmod",
        "--n",
        "3",
        "--sigma",
        "2,1",
        "--q",
        "4",
        "--field",
        "7",
        "--samples",
        "50",
    ]);
    assert_ne!(json(&a)["input_digest"], json(&c)["input_digest"]);
}

#[test]
fn in_process_run_matches_binary() {
    let args = ["adequacy", "adequacy", "borel2_f7", "--mode", "big"];
    let cli = Cli::try_parse_from(args).unwrap();
    let outcome = execute(&cli).unwrap();
    assert_eq!(outcome.status, exit::OK);
    assert_eq!(outcome.report.payload["verdict"], false);
    assert_eq!(render(&outcome.report).as_bytes(), adequacy(&args[1..]).stdout.as_slice());
}

#[test]
fn scenario_commands() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../scenarios");
    let v = json(&adequacy(&["project", &format!("{dir}/unramified_n4.json")]));
    assert_eq!(v["payload"]["surviving"], serde_json::json!([1]));
    assert_eq!(v["payload"]["lines"][1]["subset"], serde_json::json!([1, 3]));
    for f in ["steinberg_congruent.json", "steinberg_noncongruent.json"] {
        let v = json(&adequacy(&["project", &format!("{dir}/{f}")]));
        assert_eq!(v["payload"]["surviving_count"], 0, "{f}");
    }
    let v = json(&adequacy(&["eigs", &format!("{dir}/unramified_n4.json")]));
    assert_eq!(v["payload"]["line_count"], 6);
}
