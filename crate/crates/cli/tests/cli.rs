use std::process::{Command, Output};

use serde_json::Value;

fn twoweight(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twoweight"))
        .args(args)
        .env_remove("TWOWEIGHT_MAX_FIELD_SIZE")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.push("--json");
    let out = twoweight(&full);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), v)
}

#[test]
fn construct_smallest_trace_zero_code() {
    let (code, v) = json(&[
        "construct",
        "-p",
        "2",
        "-t",
        "1",
        "--m1",
        "2",
        "--m2",
        "4",
        "-m",
        "4",
        "-a",
        "0",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["artifacts"]["enumerator"], "1 + 2z^4 + z^6");
    assert_eq!(v["artifacts"]["case"], "trace_zero_even_gcd");
    assert_eq!(
        (v["artifacts"]["n"].as_u64(), v["artifacts"]["k"].as_u64()),
        (Some(7), Some(2))
    );
    assert_eq!(v["artifacts"]["griesmer"]["optimal"], true);
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn construct_shortened_code() {
    let (code, v) = json(&[
        "construct",
        "-p",
        "3",
        "--m1",
        "2",
        "--m2",
        "4",
        "-m",
        "4",
        "-a",
        "0",
        "--shorten",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["artifacts"]["enumerator"], "1 + 6z^9 + 2z^12");
    assert_eq!(v["artifacts"]["case"], "shortened_even_gcd");
}

#[test]
fn invalid_parameters_exit_two() {
    for args in [
        &[
            "construct",
            "-p",
            "2",
            "--m1",
            "3",
            "--m2",
            "4",
            "-m",
            "4",
            "-a",
            "0",
        ][..],
        &[
            "construct",
            "-p",
            "4",
            "--m1",
            "2",
            "--m2",
            "4",
            "-m",
            "4",
            "-a",
            "0",
        ],
        &[
            "construct",
            "-p",
            "2",
            "--m1",
            "4",
            "--m2",
            "1",
            "-m",
            "4",
            "-a",
            "0",
        ],
        &[
            "construct",
            "-p",
            "2",
            "--m1",
            "2",
            "--m2",
            "4",
            "-m",
            "4",
            "-a",
            "2",
        ],
        &["construct", "-p", "two"],
        &["verify", "--q", "6"],
        &[
            "verify", "-p", "2", "--m1", "2", "--m2", "2", "-m", "4", "-a", "0",
        ],
        &["gauss", "-p", "2", "--quadratic"],
        &["gauss", "-p", "5"],
        &["srg", "-p", "2", "-m", "3", "--family", "trace-one"],
        &[
            "omega", "-p", "2", "--m1", "2", "--m2", "4", "-m", "4", "--kind", "sigma",
        ],
    ] {
        let out = twoweight(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn prime_power_scalars_render_as_generator_powers() {
    let (code, v) = json(&[
        "construct",
        "-p",
        "2",
        "-t",
        "2",
        "--m1",
        "2",
        "--m2",
        "4",
        "-m",
        "4",
        "-a",
        "1",
        "--codewords",
        "2",
    ]);
    assert_eq!(code, 0);
    let words = v["artifacts"]["codewords"].as_array().unwrap();
    assert_eq!(words.len(), 2);
    for w in words {
        for token in w["word"].as_str().unwrap().split(' ') {
            assert!(
                token == "0" || ["g^0", "g^1", "g^2"].contains(&token),
                "{token}"
            );
        }
    }
    let (_, v) = json(&[
        "construct",
        "-p",
        "3",
        "--m1",
        "2",
        "--m2",
        "4",
        "-m",
        "4",
        "-a",
        "1",
        "--codewords",
        "1",
    ]);
    let word = v["artifacts"]["codewords"][0]["word"].as_str().unwrap();
    assert!(word.split(' ').all(|t| ["0", "1", "2"].contains(&t)));
}

#[test]
fn verify_single_spec_reports_enumerator() {
    let (code, v) = json(&[
        "verify", "-p", "2", "--m1", "4", "--m2", "6", "-m", "12", "-a", "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["artifacts"]["enumerator"], "1 + 5z^1040 + 10z^1144");
    assert_eq!(v["checks"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_small_sweep_passes() {
    let (code, v) = json(&["verify", "--q", "2,3", "--max-size", "256"]);
    assert_eq!(code, 0);
    assert!(v["artifacts"]["codes"].as_u64().unwrap() > 10);
    assert_eq!(v["artifacts"]["first_mismatch"], Value::Null);
}

#[test]
fn sweep_bound_above_cap_is_rejected() {
    let out = Command::new(env!("CARGO_BIN_EXE_twoweight"))
        .args(["verify", "--q", "2", "--max-size", "1024"])
        .env("TWOWEIGHT_MAX_FIELD_SIZE", "512")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_twoweight"))
        .args([
            "construct",
            "-p",
            "2",
            "--m1",
            "2",
            "--m2",
            "4",
            "-m",
            "4",
            "-a",
            "0",
        ])
        .env("TWOWEIGHT_MAX_FIELD_SIZE", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn gauss_and_omega_examples() {
    let (code, v) = json(&["gauss", "-p", "3", "-t", "2", "--quadratic"]);
    assert_eq!(code, 0);
    assert_eq!(v["artifacts"]["direct"]["re"], 3.0);
    assert_eq!(v["artifacts"]["closed_form"]["re"], 3.0);

    let (code, v) = json(&[
        "gauss", "-p", "2", "-t", "4", "--order", "5", "--power", "2",
    ]);
    assert_eq!(code, 0, "{v}");

    let (code, v) = json(&["omega", "-p", "2", "--m1", "2", "--m2", "4", "-m", "4"]);
    assert_eq!(code, 0);
    assert_eq!(
        v["artifacts"]["distribution"],
        serde_json::json!({"-3": 2, "5": 1})
    );

    let (code, v) = json(&[
        "omega", "-p", "3", "--m1", "2", "--m2", "4", "-m", "4", "--kind", "delta",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"][0]["verdict"], "pass");
}

#[test]
fn srg_example() {
    let (code, v) = json(&[
        "srg",
        "-p",
        "2",
        "-m",
        "4",
        "--family",
        "shortened-trace-zero",
    ]);
    assert_eq!(code, 0);
    let w = &v["artifacts"]["witness"];
    assert_eq!(
        w["observed"],
        serde_json::json!({"N": 16, "K": 5, "lambda": 0, "mu": 2})
    );
    assert_eq!(w["method"], "pairwise");
    let (code, v) = json(&["srg", "-p", "2", "-m", "4", "--family", "trace-one"]);
    assert_eq!(code, 0);
    assert_eq!(
        v["artifacts"]["closed_form"],
        serde_json::json!({"N": 16, "K": 10, "lambda": 6, "mu": 6})
    );
}

#[test]
fn reports_are_byte_identical() {
    for args in [
        &["verify", "--q", "2,4", "--max-size", "256", "--json"][..],
        &[
            "construct",
            "-p",
            "3",
            "--m1",
            "2",
            "--m2",
            "3",
            "-m",
            "6",
            "-a",
            "1",
        ],
        &[
            "srg",
            "-p",
            "3",
            "-m",
            "4",
            "--family",
            "shortened-trace-zero",
            "--json",
        ],
    ] {
        let a = twoweight(args);
        let b = twoweight(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn seeded_fixtures_match_checked_in_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("seeded.json");
    let out = twoweight(&["verify", "--seed-fixtures", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let seeded = std::fs::read_to_string(&path).unwrap();
    let checked_in = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/fixtures/reference_codes.json"
    ))
    .unwrap();
    assert_eq!(seeded, checked_in);
    let out = twoweight(&["verify", "--fixtures", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn corrupted_fixture_fails_and_names_the_case() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/fixtures/reference_codes.json"
    ))
    .unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["cases"][2]["distribution"]["1040"] = 11.into();
    std::fs::write(&path, v.to_string()).unwrap();
    let (code, report) = json(&["verify", "--fixtures", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    let first = report["artifacts"]["first_mismatch"].as_str().unwrap();
    assert!(first.starts_with("q=2 m1=4 m2=6 m=12 a=0"), "{first}");

    v["schema_version"] = 99.into();
    std::fs::write(&path, v.to_string()).unwrap();
    assert_eq!(
        twoweight(&["verify", "--fixtures", path.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}
