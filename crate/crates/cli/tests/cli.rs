use burnside_cli::json::{BurnsideJson, CyclotomicJson};
use burnside_cli::run;
use burnside_core::burnside::{conlon_idempotents, BurnsideContext};
use burnside_core::families;
use serde_json::Value;
use std::sync::Arc;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("burnside").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn invoke_json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.push("--json");
    let (code, out, _) = invoke(&full);
    (code, serde_json::from_str(&out).expect("stdout is one JSON document"))
}

#[test]
fn idem_s3_with_oracle() {
    let (code, out, _) = invoke(&["idem", "S3", "--oracle"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.starts_with("u_")).count(), 4);
    assert!(out.contains("u_0 = 1/6*<0>"));
    assert!(out.contains("ghost oracle: match"));
}

#[test]
fn verify_trivial_group() {
    let (code, out, _) = invoke(&["verify", "C1", "--suite", "all"]);
    assert_eq!(code, 0);
    assert!(out.lines().all(|l| !l.starts_with("FAIL")));
    assert!(out.lines().last().unwrap().contains("all"));
}

#[test]
fn repring_a4_part_dims() {
    let (code, doc) = invoke_json(&["repring", "A4"]);
    assert_eq!(code, 0);
    let dims: Vec<u64> = doc["parts"].as_array().unwrap().iter().map(|p| p["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![1, 1, 2, 0, 0]);
    assert_eq!(doc["passed"], Value::Bool(true));
}

#[test]
fn exit_codes() {
    assert_eq!(invoke(&["frobnicate"]).0, 2);
    assert_eq!(invoke(&["marks", "X3"]).0, 2);
    assert_eq!(invoke(&["bprod", "S3", "0", "7"]).0, 2);
    assert_eq!(invoke(&["ktheory", "S3", "--gset", "cosets:9"]).0, 2);
    assert_eq!(invoke(&["--max-order", "10", "marks", "S4"]).0, 2);
    let (code, out, err) = invoke(&["--help"]);
    assert_eq!(code, 0);
    assert!(err.is_empty());
    assert!(out.contains("dihedral of order 2n"));
}

#[test]
fn parse_errors_report_offsets() {
    let (_, _, err) = invoke(&["group", "info", "C2xx"]);
    assert!(err.contains("byte 3"), "{err}");
}

#[test]
fn group_info_counts() {
    let (code, doc) = invoke_json(&["group", "info", "perm:4:[(0 1 2 3);(0 2)]"]);
    assert_eq!(code, 0);
    assert_eq!(doc["order"], 8);
    assert_eq!(doc["subgroups"], 10);
    assert_eq!(doc["subgroup_classes"].as_array().unwrap().len(), 8);
}

#[test]
fn marks_json_rows() {
    let (_, doc) = invoke_json(&["marks", "S3"]);
    assert_eq!(doc["rows"], serde_json::json!([[6, 0, 0, 0], [3, 1, 0, 0], [2, 0, 2, 0], [1, 1, 1, 1]]));
}

#[test]
fn ktheory_and_inertia_reports() {
    let (code, doc) = invoke_json(&["ktheory", "S3", "--gset", "regular"]);
    assert_eq!(code, 0);
    assert_eq!(doc["dim"], 1);
    assert_eq!(doc["source_total"], 1);
    let (code, doc) = invoke_json(&["ktheory", "S3", "--gset", "point", "--h", "2"]);
    assert_eq!(code, 0);
    assert_eq!(doc["parts"].as_array().unwrap().len(), 1);
    assert_eq!(doc["parts"][0]["dim_source"], 1);
    let (code, doc) = invoke_json(&["inertia", "S3", "--gset", "point", "--h", "1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["definitional_match"], true);
}

#[test]
fn burnside_json_round_trip() {
    let (_, doc) = invoke_json(&["idem", "S3"]);
    let ctx = BurnsideContext::new();
    let algebra = ctx.algebra(&Arc::new(families::symmetric(3).unwrap()));
    let family = conlon_idempotents(&ctx, &algebra);
    for (entry, u) in doc["idempotents"].as_array().unwrap().iter().zip(family.idempotents()) {
        let parsed: BurnsideJson = serde_json::from_value(entry.clone()).unwrap();
        assert_eq!(parsed.to_element(&algebra).unwrap(), *u);
        assert_eq!(serde_json::to_value(&parsed).unwrap(), *entry);
    }
}

#[test]
fn cyclotomic_json_round_trip() {
    let (_, doc) = invoke_json(&["repring", "C3"]);
    for part in doc["parts"].as_array().unwrap() {
        for value in part["image"].as_array().unwrap() {
            let parsed: CyclotomicJson = serde_json::from_value(value.clone()).unwrap();
            let number = parsed.to_number().unwrap();
            assert_eq!(CyclotomicJson::new(&number), parsed);
        }
    }
}

#[test]
fn verify_json_document() {
    let (code, doc) = invoke_json(&["verify", "C2", "--suite", "conlon", "--samples", "3", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(doc["suite"], "conlon");
    assert_eq!(doc["samples"], 3);
    assert_eq!(doc["seed"], 7);
    assert!(doc["checks"].as_array().unwrap().iter().all(|c| c["suite"] == "conlon"));
}
