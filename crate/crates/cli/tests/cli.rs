//! Exit-code contract and report-shape checks against the built binary.

use std::process::{Command, Output};

fn plucker(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plucker"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn exit_code(args: &[&str]) -> i32 {
    plucker(args).status.code().expect("no signal")
}

#[test]
fn passing_commands_exit_zero() {
    assert_eq!(
        exit_code(&[
            "straighten",
            "--k",
            "2",
            "--n",
            "4",
            "--monomial",
            "1,4|2,3"
        ]),
        0
    );
    assert_eq!(exit_code(&["sl3"]), 0);
    assert_eq!(
        exit_code(&[
            "verify-model",
            "--family",
            "B",
            "--rank",
            "3",
            "--checks",
            "mod3,h5,wseq"
        ]),
        0
    );
    assert_eq!(
        exit_code(&[
            "verify-sph",
            "--n",
            "4",
            "--p",
            "2",
            "--checks",
            "sph2,sph3"
        ]),
        0
    );
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(exit_code(&[]), 2);
    assert_eq!(exit_code(&["no-such-command"]), 2);
    assert_eq!(
        exit_code(&[
            "straighten",
            "--k",
            "2",
            "--n",
            "4",
            "--monomial",
            "1,x|2,3"
        ]),
        2
    );
    assert_eq!(
        exit_code(&[
            "straighten",
            "--k",
            "3",
            "--n",
            "4",
            "--monomial",
            "1,4|2,3"
        ]),
        2
    );
    assert_eq!(
        exit_code(&[
            "verify-model",
            "--family",
            "A",
            "--rank",
            "3",
            "--checks",
            "bogus"
        ]),
        2
    );
    assert_eq!(
        exit_code(&[
            "verify-model",
            "--family",
            "D",
            "--rank",
            "4",
            "--checks",
            "mod3"
        ]),
        2
    );
    assert_eq!(
        exit_code(&["invariants", "--family", "sph", "--rank", "5"]),
        2
    );
}

#[test]
fn bound_errors_exit_four() {
    assert_eq!(
        exit_code(&[
            "verify-model",
            "--family",
            "B",
            "--rank",
            "6",
            "--checks",
            "mod1"
        ]),
        4
    );
    assert_eq!(
        exit_code(&["invariants", "--family", "sph", "--rank", "6", "--p", "2"]),
        4
    );
    assert_eq!(
        exit_code(&[
            "enumerate",
            "--k",
            "3",
            "--n",
            "6",
            "--degree",
            "3",
            "--max-size",
            "100"
        ]),
        4
    );
}

#[test]
fn json_report_shape() {
    let output = plucker(&["sl3", "--json"]);
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    let value: serde_json::Value = serde_json::from_str(text.trim()).expect("one JSON line");
    assert_eq!(value["command"], "sl3");
    assert_eq!(value["status"], "pass");
    assert_eq!(value["params"]["seed"], "0");
    assert!(value["checks"].as_array().is_some_and(|c| !c.is_empty()));
    assert_eq!(value["report"]["claim"], "remark-nonstability");
    assert_eq!(value["report"]["spanDim"], 5);
    assert!(value["report"]["witnesses"]
        .as_array()
        .is_some_and(|w| !w.is_empty()));
    assert!(value.get("duration").is_none());
}

#[test]
fn empty_check_list_passes_vacuously() {
    let output = plucker(&["verify-model", "--family", "A", "--rank", "3", "--json"]);
    assert!(output.status.success());
    let value: serde_json::Value =
        serde_json::from_str(String::from_utf8(output.stdout).unwrap().trim()).unwrap();
    assert_eq!(value["status"], "pass");
    assert_eq!(value["checks"].as_array().map(Vec::len), Some(0));
}

#[test]
fn check_names_are_case_insensitive() {
    assert_eq!(
        exit_code(&[
            "verify-model",
            "--family",
            "b",
            "--rank",
            "3",
            "--checks",
            "MOD3,H5"
        ]),
        0
    );
}
