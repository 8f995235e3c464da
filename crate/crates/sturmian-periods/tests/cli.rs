//! End-to-end checks of the command-line surface: exit codes, report
//! determinism, and worker-count independence.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sturmian-periods"))
}

fn stable_json(path: &std::path::Path) -> serde_json::Value {
    let mut value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    value["ms"] = serde_json::json!(0.0);
    value
}

#[test]
fn verify_scenario_exits_zero_on_pass() {
    let status = bin().args(["verify", "fib-m9"]).status().unwrap();
    assert_eq!(status.code(), Some(0));
}

#[test]
fn parse_errors_exit_two() {
    let status = bin().args(["slope-info", "--slope", "0;x"]).status().unwrap();
    assert_eq!(status.code(), Some(2));
    let status = bin().args(["slope-info", "--slope", "0;1,2,(1)"]).status().unwrap();
    assert_eq!(status.code(), Some(2));
    let status = bin().args(["min-period", "--word", "0102"]).status().unwrap();
    assert_eq!(status.code(), Some(2));
    let status = bin().args(["verify", "no-such-scenario"]).status().unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn precision_exhaustion_exits_three() {
    // A finite expansion cannot certify denominators past its last term.
    let status = bin()
        .args(["slope-info", "--slope", "0;2,3", "--length", "1000"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(3));
}

#[test]
fn identical_invocations_give_identical_reports() {
    let dir = std::env::temp_dir();
    let a = dir.join("sturmian-cli-a.json");
    let b = dir.join("sturmian-cli-b.json");
    for path in [&a, &b] {
        let status = bin()
            .args(["sweep", "--slope", "0;2,(1)", "--length", "30", "--json"])
            .arg(path)
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0));
    }
    assert_eq!(stable_json(&a), stable_json(&b));
}

#[test]
fn worker_count_does_not_change_the_report() {
    let dir = std::env::temp_dir();
    let mut outputs = Vec::new();
    for workers in ["1", "2", "8"] {
        let path = dir.join(format!("sturmian-cli-w{workers}.json"));
        let status = bin()
            .args(["sweep", "--slope", "0;2,1,2,3,(1)", "--length", "34", "--workers", workers, "--json"])
            .arg(&path)
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0));
        outputs.push(stable_json(&path));
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
}

#[test]
fn generation_and_queries_print_expected_text() {
    let out = bin()
        .args(["gen", "--slope", "0;2,(1)", "--length", "20"])
        .output()
        .unwrap();
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "01001010010010100101");

    let out = bin()
        .args(["min-period", "--word", "01001010"])
        .output()
        .unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("minimum abelian period: 2"), "{text}");
    assert!(text.contains("minimum period: 5"), "{text}");

    let out = bin()
        .args(["kab", "--word", "0100110", "--k", "2", "--sense", "1"])
        .output()
        .unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("(sense 1): 6"), "{text}");
}

#[test]
fn csv_reports_are_written() {
    let path = std::env::temp_dir().join("sturmian-cli.csv");
    let status = bin()
        .args(["verify", "conv-fib", "--csv"])
        .arg(&path)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("scenario,slope,status,"));
    assert!(text.contains("conv-fib"));
}
