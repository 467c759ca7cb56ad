use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn cai(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cai"))
        .args(args)
        .env_remove("CAI_MAX_RETRIES")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is JSON")
}

/// Compares stdout with `tests/golden/<name>`; set `UPDATE_GOLDEN=1` to
/// rewrite the file instead.
fn golden(name: &str, args: &[&str]) {
    let out = cai(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &out.stdout).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), want, "{name}");
}

#[test]
fn golden_invariants() {
    golden("invariants_intro.json", &["invariants", "--chain", "[[2,3],[5,2]]"]);
}

#[test]
fn golden_recognize_example() {
    golden(
        "recognize_example.json",
        &["recognize", "--x", "t^12 + t", "--y", "t^8 + t^2", "--emit-defining", "--emit-tower", "--expand", "20"],
    );
}

#[test]
fn golden_semigroup() {
    golden(
        "semigroup_example.json",
        &["semigroup", "--chain", r#"{"pairs": [[2,3],[9,2],[31,2]]}"#, "--gaps", "--normal-form", "62"],
    );
}

#[test]
fn golden_approx_roots() {
    golden("approx_roots_example.json", &["approx-roots", "--x", "t^12 + t", "--y", "t^8 + t^2"]);
}

#[test]
fn golden_solve() {
    golden("solve_example.json", &["solve", "--chain", "[[2,3],[9,2],[31,2]]", "--y", "t^8+t^2"]);
}

#[test]
fn golden_build() {
    golden("build_two_pair.json", &["build", "--chain", "[[2,3],[11,2]]", "--seed", "4"]);
}

#[test]
fn golden_enumerate_table() {
    golden("enumerate_6.txt", &["enumerate", "--degree", "6", "--format", "table"]);
}

#[test]
fn golden_validate_table() {
    golden("validate_example.txt", &["validate", "--chain", "[[2,3],[9,2],[31,2]]", "--format", "table"]);
}

#[test]
fn output_is_deterministic() {
    let args = ["solve", "--chain", "[[2,3],[5,2]]", "--free", "random", "--seed", "9"];
    assert_eq!(cai(&args).stdout, cai(&args).stdout);
}

#[test]
fn intro_chain_flags() {
    let out = cai(&["invariants", "--chain", "[[2,3],[5,2]]"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["positive_braid"], false);
    assert_eq!(v["suff_negative"], true);
}

#[test]
fn non_birational_is_a_domain_error() {
    let out = cai(&["recognize", "--x", "t^4", "--y", "t^6"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"]["code"], "NON_BIRATIONAL");
    assert!(out.stdout.is_empty());
}

#[test]
fn invalid_chain_reports_failed_condition() {
    let out = cai(&["validate", "--chain", "[[3,2]]"]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["valid"], false);
    assert_eq!(v["conditions"][1]["condition"], "negative_determinant");
    assert_eq!(v["conditions"][1]["passed"], false);
    assert_eq!(stderr_json(&out)["error"]["code"], "INVALID_CHAIN");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(cai(&["enumerate"]).status.code(), Some(2));
    let conflicting = cai(&["enumerate", "--degree", "6", "--include-positive-braids", "--exclude-positive-braids"]);
    assert_eq!(conflicting.status.code(), Some(2));
    let bad_poly = cai(&["recognize", "--x", "t^^2", "--y", "t"]);
    assert_eq!(bad_poly.status.code(), Some(2));
    assert_eq!(stderr_json(&bad_poly)["error"]["code"], "PARSE_ERROR");
    let bad_chain = cai(&["invariants", "--chain", "[[2,3"]);
    assert_eq!(bad_chain.status.code(), Some(2));
    assert_eq!(stderr_json(&bad_chain)["error"]["code"], "MALFORMED_CHAIN");
}

#[test]
fn moduli_domain_errors() {
    let out = cai(&["solve", "--chain", "[[2,3],[3,2]]", "--y", "t^4"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"]["code"], "NOT_SUFFICIENTLY_NEGATIVE");
    let out = cai(&["build", "--chain", "[[2,3],[5,2]]"]);
    assert_eq!(stderr_json(&out)["error"]["code"], "NOT_POSITIVE_BRAID");
}

#[test]
fn random_solve_echoes_seed() {
    let out = cai(&["solve", "--chain", "[[2,3],[5,2]]", "--seed", "17"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert!(v["seed"].as_u64().is_some());
    assert_eq!(v["degenerate"], false);
    assert_eq!(v["expected_dimension"], 6);
}

#[test]
fn retry_budget_from_environment() {
    // A zero budget still allows the first attempt.
    let out = Command::new(env!("CARGO_BIN_EXE_cai"))
        .args(["solve", "--chain", "[[2,3]]", "--y", "t^2"])
        .env("CAI_MAX_RETRIES", "0")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["x"], "t^3");
}

#[test]
fn enumerate_filters_positive_braids() {
    let all = stdout_json(&cai(&["enumerate", "--degree", "6"]));
    let filtered = stdout_json(&cai(&["enumerate", "--degree", "6", "--exclude-positive-braids"]));
    assert_eq!(all["count"], 6);
    assert_eq!(filtered["count"], 2);
}

#[test]
fn rationals_render_as_strings() {
    let v = stdout_json(&cai(&["recognize", "--x", "2*t^3", "--y", "t^2", "--emit-defining"]));
    let terms = v["defining"].as_array().unwrap();
    assert!(terms.iter().all(|t| t[2].is_string()));
    assert!(terms.iter().any(|t| t[2].as_str().unwrap().contains('/')));
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("cai-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("inv.json");
    let out = cai(&["invariants", "--chain", "[[2,3]]", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["genus"], 1);
    let bad = cai(&["invariants", "--chain", "[[2,3]]", "--output", "/nonexistent/dir/x.json"]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(stderr_json(&bad)["error"]["code"], "IO_ERROR");
    std::fs::remove_dir_all(dir).ok();
}
