use std::process::{Command, Output};

use serde_json::Value;

fn orthoqkd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orthoqkd"))
        .args(args)
        .output()
        .expect("spawn orthoqkd")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn without_elapsed(json: &str) -> String {
    json.lines()
        .filter(|l| !l.trim_start().starts_with("\"elapsed_ms\""))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn simulate_is_reproducible_byte_for_byte() {
    let args = [
        "simulate",
        "--rounds",
        "3000",
        "--seed",
        "11",
        "--attack",
        "intercept-resend",
    ];
    let a = stdout(&orthoqkd(&args));
    let b = stdout(&orthoqkd(&args));
    assert_eq!(without_elapsed(&a), without_elapsed(&b));
    let c = stdout(&orthoqkd(&[
        "simulate",
        "--rounds",
        "3000",
        "--seed",
        "12",
        "--attack",
        "intercept-resend",
    ]));
    assert_ne!(without_elapsed(&a), without_elapsed(&c));
}

#[test]
fn csv_and_json_carry_the_same_values() {
    let base = ["simulate", "--rounds", "2000", "--seed", "5"];
    let json: Value = serde_json::from_str(&stdout(&orthoqkd(
        &[&base[..], &["--format", "json"]].concat(),
    )))
    .unwrap();
    let csv_text = stdout(&orthoqkd(&[&base[..], &["--format", "csv"]].concat()));
    let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
    let header = reader.headers().unwrap().clone();
    let records: Vec<_> = reader.records().collect::<Result<_, _>>().unwrap();
    assert_eq!(records.len(), 1);
    let row = &records[0];
    for (name, field) in header.iter().zip(row.iter()) {
        if name == "elapsed_ms" {
            continue;
        }
        let value = json
            .get(name)
            .or_else(|| json["config"].get(name))
            .unwrap_or_else(|| panic!("json lacks {name}"));
        match value {
            Value::Number(n) if n.is_f64() => {
                assert_eq!(field.parse::<f64>().unwrap(), n.as_f64().unwrap(), "{name}")
            }
            Value::Number(n) => assert_eq!(field, n.to_string(), "{name}"),
            Value::String(s) => assert_eq!(field, s, "{name}"),
            Value::Null => assert_eq!(field, "", "{name}"),
            Value::Array(items) => {
                let joined: Vec<String> = items.iter().map(Value::to_string).collect();
                assert_eq!(field, joined.join(";"), "{name}");
            }
            other => panic!("{name}: unexpected {other}"),
        }
    }
}

#[test]
fn json_reals_round_trip() {
    let out = stdout(&orthoqkd(&[
        "mor-check",
        "--alpha",
        "0.5235987755982988",
        "--beta",
        "1.0471975511965976",
    ]));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["alpha"].as_f64().unwrap(), std::f64::consts::PI / 6.0);
    assert_eq!(v["criterion_satisfied"], Value::Bool(true));
    assert_eq!(v["attack_distinguishes"], Value::Bool(true));
    assert!((v["tr_rho1_product"].as_f64().unwrap() - 0.375).abs() < 1e-10);
    assert!((v["tr_rho2_product"].as_f64().unwrap() - 0.625).abs() < 1e-10);
}

#[test]
fn out_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let out = orthoqkd(&[
        "simulate",
        "--rounds",
        "100",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(stdout(&out).is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("rounds,seed,attack,"), "{written}");
}

#[test]
fn attack_demo_shows_each_step() {
    let text = stdout(&orthoqkd(&["attack-demo", "--symbol", "1"]));
    for step in [
        "encode",
        "cnot qubit1 -> eve-ancilla",
        "cnot qubit2 -> eve-ancilla",
        "measure eve-ancilla",
    ] {
        assert!(text.contains(step), "missing {step}:\n{text}");
    }
    assert!(text.contains("partition{1,2}"), "{text}");
    let json: Value = serde_json::from_str(&stdout(&orthoqkd(&[
        "attack-demo",
        "--symbol",
        "3",
        "--format",
        "json",
    ])))
    .unwrap();
    assert_eq!(json["eve_knowledge"], "exact(3)");
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| orthoqkd(args).status.code();
    assert_eq!(
        code(&[
            "mor-check",
            "--alpha",
            "0.7853981633974483",
            "--beta",
            "1.0"
        ]),
        Some(2)
    );
    assert_eq!(
        code(&["mor-check", "--alpha", "0.4", "--beta", "0.4"]),
        Some(2)
    );
    assert_eq!(code(&["simulate", "--rounds", "0"]), Some(2));
    assert_eq!(code(&["simulate", "--attack", "beam-splitter"]), Some(2));
    assert_eq!(
        code(&["simulate", "--ensemble", "nonmax", "--alpha", "0.3"]),
        Some(2)
    );
    assert_eq!(
        code(&[
            "simulate",
            "--ensemble",
            "nonmax",
            "--alpha",
            "0.3",
            "--beta",
            "1.2",
            "--attack",
            "intercept-resend"
        ]),
        Some(2)
    );
    assert_eq!(code(&["attack-demo", "--symbol", "4"]), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("no-such-dir").join("out.json");
    assert_eq!(
        code(&[
            "simulate",
            "--rounds",
            "10",
            "--out",
            missing.to_str().unwrap()
        ]),
        Some(3)
    );
    assert_eq!(code(&["simulate", "--rounds", "10"]), Some(0));
}

#[test]
fn domain_errors_name_the_inequality() {
    let out = orthoqkd(&[
        "mor-check",
        "--alpha",
        "0.7853981633974483",
        "--beta",
        "1.0",
    ]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("pi/4"), "{err}");
}
