use asphere_cli::{run, ConvertOutput, ErrorOutput, EXIT_INPUT, EXIT_NOT_CERTIFIED, EXIT_OK};
use asphere_core::{Certificate, ShiftResult, SubsystemReport, SweepReport, TypeAVerdict};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

const SCHEMA: &str = include_str!("../schema/asphere-output.v1.schema.json");

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["asphere"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn assert_valid(doc: &str) -> Value {
    let schema: Value = serde_json::from_str(SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let value: Value = serde_json::from_str(doc).unwrap();
    let errors: Vec<String> = validator.iter_errors(&value).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}\n{doc}");
    value
}

/// Parses `doc` as `T` and checks that rendering it again reproduces `doc`.
fn assert_round_trip<T: Serialize + DeserializeOwned>(doc: &str) -> T {
    let parsed: T = serde_json::from_str(doc).unwrap();
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap(), doc.trim_end());
    parsed
}

#[test]
fn typea_example() {
    let (code, out, _) = invoke(&["typea", "--n", "4", "--c", "-1/2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("totally aspherical"));
    let (code, out, _) = invoke(&["typea", "--n", "4", "--c", "1/2", "--json"]);
    assert_eq!(code, EXIT_NOT_CERTIFIED);
    assert_valid(&out);
    let v: TypeAVerdict = assert_round_trip(&out);
    assert!(!v.totally_aspherical);
}

#[test]
fn check_example_reports_violator() {
    let (code, out, _) = invoke(&["check", "--ell", "2", "--n", "3", "--lambda", "3/2,0", "--json"]);
    assert_eq!(code, EXIT_NOT_CERTIFIED);
    let value = assert_valid(&out);
    assert_eq!(value["condition1"]["violator"], serde_json::json!([1, 0]));
    assert_eq!(value["verdict"], "not_certified");
    assert_round_trip::<Certificate>(&out);
}

#[test]
fn shift_example() {
    let (code, out, _) = invoke(&["shift", "--ell", "2", "--n", "3", "--lambda", "3/2,0"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("m = (-1, 0)"), "{out}");
    assert!(out.contains("λ′ = (1/2, 0)"), "{out}");
    let (code, out, _) = invoke(&["shift", "--ell", "2", "--n", "3", "--lambda", "3/2,0", "--json"]);
    assert_eq!(code, EXIT_OK);
    assert_valid(&out);
    let r: ShiftResult = assert_round_trip(&out);
    assert_eq!(r.m, vec![-1, 0]);
}

#[test]
fn every_document_validates_and_round_trips() {
    let (_, out, _) = invoke(&["subsystem", "--lambda", "1/2,1/2,1/3", "--json"]);
    assert_valid(&out);
    let r: SubsystemReport = assert_round_trip(&out);
    assert_eq!(r.period, 6);

    for args in [
        &["convert", "--kappa", "1/3", "--c", "1/2,-1/4", "--json"][..],
        &["convert", "--kappa", "1/3", "--c", "1/2,-1/4", "--as-printed", "--json"],
        &["convert", "--lambda", "1/2,1/2,1/3", "--n", "3", "--json"],
        &["convert", "--lambda", "1/2,0", "--n", "1", "--json"],
    ] {
        let (code, out, _) = invoke(args);
        assert_eq!(code, EXIT_OK, "{args:?}");
        assert_valid(&out);
        assert_round_trip::<ConvertOutput>(&out);
    }

    let (code, out, _) =
        invoke(&["check", "--ell", "3", "--n", "2", "--lambda", "1/2,1/2,1/3", "--window", "13", "--json"]);
    assert_eq!(code, EXIT_NOT_CERTIFIED);
    assert_valid(&out);
    assert_round_trip::<Certificate>(&out);

    let (code, out, _) = invoke(&["sweep", "--ell", "2", "--n", "2", "--grid", "0:1/3:3,-1/2", "--json"]);
    assert_eq!(code, EXIT_OK);
    assert_valid(&out);
    assert_round_trip::<SweepReport>(&out);
}

#[test]
fn conversion_between_inputs_agrees() {
    let (_, a, _) = invoke(&["convert", "--kappa", "1/3", "--c", "1/4", "--json"]);
    let a: ConvertOutput = serde_json::from_str(&a).unwrap();
    let lambda = a.lambda.unwrap().to_string();
    let lambda = lambda.trim_matches(|c| c == '(' || c == ')').replace(' ', "");
    let (_, b, _) = invoke(&["convert", "--lambda", &lambda, "--json"]);
    let b: ConvertOutput = serde_json::from_str(&b).unwrap();
    assert_eq!(b.kappa, a.kappa);
    assert_eq!(b.c, a.c);
    assert_eq!(b.h, a.h);
}

#[test]
fn check_accepts_cherednik_coordinates() {
    let (code_a, a, _) = invoke(&["check", "--n", "3", "--kappa", "0", "--c", "1/4", "--json"]);
    let (_, conv, _) = invoke(&["convert", "--kappa", "0", "--c", "1/4", "--json"]);
    let conv: ConvertOutput = serde_json::from_str(&conv).unwrap();
    let lambda = conv.lambda.unwrap().to_string();
    let lambda = lambda.trim_matches(|c| c == '(' || c == ')').replace(' ', "");
    let (code_b, b, _) = invoke(&["check", "--n", "3", "--lambda", &lambda, "--json"]);
    assert_eq!(code_a, code_b);
    assert_eq!(a, b);
}

#[test]
fn check_with_single_vertex_is_type_a() {
    let (code, out, _) = invoke(&["check", "--ell", "1", "--n", "4", "--kappa", "-1/3", "--json"]);
    assert_eq!(code, EXIT_OK);
    assert_valid(&out);
    let v: TypeAVerdict = assert_round_trip(&out);
    assert!(v.totally_aspherical);
}

#[test]
fn sweep_records_equal_check_output() {
    let (code, out, _) = invoke(&["sweep", "--ell", "2", "--n", "3", "--grid", "0:1/2:3,0:1/2:2", "--json"]);
    assert_eq!(code, EXIT_OK);
    let report: Value = serde_json::from_str(&out).unwrap();
    let records = report["records"].as_array().unwrap();
    assert_eq!(records.len(), 6);
    let mut i = 0;
    for l0 in ["0", "1/2", "1"] {
        for l1 in ["0", "1/2"] {
            let (_, single, _) =
                invoke(&["check", "--ell", "2", "--n", "3", "--lambda", &format!("{l0},{l1}"), "--json"]);
            let single: Value = serde_json::from_str(&single).unwrap();
            assert_eq!(records[i], single, "point ({l0}, {l1})");
            i += 1;
        }
    }
    assert_eq!(report["summary"]["total"], 6);
}

#[test]
fn singleton_sweep_and_output_file() {
    let dir = std::env::temp_dir().join(format!("asphere-sweep-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let (code, out, _) =
        invoke(&["sweep", "--ell", "2", "--n", "3", "--grid", "3/2,0", "--json", "--output", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let (_, single, _) = invoke(&["check", "--ell", "2", "--n", "3", "--lambda", "3/2,0", "--json"]);
    assert_eq!(report["records"].as_array().unwrap().len(), 1);
    assert_eq!(report["records"][0], serde_json::from_str::<Value>(&single).unwrap());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn input_errors_are_machine_readable() {
    let cases: &[(&[&str], &str)] = &[
        (&["check", "--n", "3", "--lambda", "1/0,0", "--json"], "parse"),
        (&["check", "--n", "3", "--lambda", "1/2", "--json"], "ell_too_small"),
        (&["check", "--ell", "3", "--n", "3", "--lambda", "1/2,0", "--json"], "length_mismatch"),
        (&["check", "--n", "3", "--kappa", "0", "--c", "1/2,1/3", "--json"], "non_rational"),
        (&["convert", "--lambda", "1/2,0", "--as-printed", "--json"], "usage"),
        (&["typea", "--n", "1", "--c", "1/2", "--json"], "n_too_small"),
        (
            &["sweep", "--ell", "2", "--n", "2", "--grid", "0:1:1000,0:1:1001", "--cap", "1000000", "--json"],
            "cap_exceeded",
        ),
        (&["sweep", "--ell", "2", "--n", "2", "--grid", "0:1:0,0", "--json"], "parse"),
        (&["check", "--n", "three", "--lambda", "0,0", "--json"], "usage"),
        (&["frobnicate", "--json"], "usage"),
    ];
    for (args, kind) in cases {
        let (code, out, _) = invoke(args);
        assert_eq!(code, EXIT_INPUT, "{args:?}");
        assert_valid(&out);
        let e: ErrorOutput = assert_round_trip(&out);
        assert_eq!(e.error.kind, *kind, "{args:?}");
    }
    let (code, out, err) = invoke(&["check", "--n", "3", "--lambda", "x,0"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(out.is_empty());
    assert!(err.contains("parse"));
}

#[test]
fn schema_rejects_non_canonical_rationals() {
    let (_, out, _) = invoke(&["check", "--ell", "2", "--n", "3", "--lambda", "3/2,0", "--json"]);
    let schema: Value = serde_json::from_str(SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let mut value: Value = serde_json::from_str(&out).unwrap();
    value["condition2"]["kappa"] = serde_json::json!(1.0);
    assert!(!validator.is_valid(&value));
    for bad in ["1/1", "0.5", "1/-2", "+1"] {
        value["condition2"]["kappa"] = serde_json::json!(bad);
        assert!(!validator.is_valid(&value), "{bad}");
    }
}
