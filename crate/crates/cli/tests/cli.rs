mod common;

use common::{dim, glchain, glchain_with, strip_timing, witness, W4};
use glchain_cli::REPORT_SCHEMA;
use serde_json::Value;

fn schema() -> jsonschema::JSONSchema {
    let schema: Value = serde_json::from_str(REPORT_SCHEMA).unwrap();
    jsonschema::JSONSchema::compile(&schema).unwrap()
}

fn assert_valid(report: &Value) {
    let compiled = schema();
    let msgs: Vec<String> = match compiled.validate(report) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    panic!("schema violations: {msgs:#?}");
}

#[test]
fn dkk_reports_non_membership() {
    let r = glchain(&["verify", "dkk", "--n", "4"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let report = r.json();
    assert_valid(&report);
    assert_eq!(report["verdict"], "pass");
    let w = witness(&report, "w_5 in I_4");
    assert_eq!((w["observed"].as_bool(), w["certified"].as_bool()), (Some(false), Some(true)));
    assert_eq!(dim(&report, "dim_R"), 12);
}

#[test]
fn every_suite_output_matches_the_schema() {
    let runs: &[&[&str]] = &[
        &["verify", "all", "--n-max", "3", "--certificate"],
        &["verify", "stability", "--n", "3"],
        &["verify", "square", "--n", "2"],
        &["verify", "lemma"],
        &["verify", "phi"],
        &["verify", "tail", "--n", "2", "--certificate"],
    ];
    for args in runs {
        let r = glchain(args);
        assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
        assert_valid(&r.json());
    }
}

#[test]
fn schema_rejects_a_failure_without_counterexample() {
    let mut report = glchain(&["verify", "tail", "--n", "2"]).json();
    report["verdict"] = "fail".into();
    assert!(!schema().is_valid(&report));
    report["witnesses"][0]["ok"] = false.into();
    assert!(schema().is_valid(&report));
}

#[test]
fn member_command() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w4.json");
    std::fs::write(&path, W4).unwrap();
    let r = glchain(&["member", "--ideal", "3", "--vertices", "4", "--poly", path.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = r.json();
    assert_eq!(v["member"], false);
    assert_eq!(v["certified"], true);
    assert_eq!(v["components"][0]["rank"], 2);

    let r = glchain(&["member", "--ideal", "4", "--poly", path.to_str().unwrap(), "--certificate"]);
    let v = r.json();
    assert_eq!((v["member"].as_bool(), v["certificate_checked"].as_bool()), (Some(true), Some(true)));
}

#[test]
fn member_reads_stdin_and_reports_parse_locations() {
    let r = glchain_with(&["member", "--ideal", "2", "--poly", "-"], &[], Some(W4));
    assert_eq!(r.code, 0);
    let bad = r#"{"alphabet": "edge", "N": 4, "terms": [[[1, 2], [1, 2]]]}"#;
    let r = glchain_with(&["member", "--ideal", "2", "--poly", "-"], &[], Some(bad));
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("terms[0][1]"), "{}", r.stderr);
    let r = glchain_with(&["member", "--ideal", "2", "--poly", "-"], &[], Some("{\"alphabet\": \"edge\",\n \"N\": 4,"));
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 2"), "{}", r.stderr);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(glchain(&["verify", "dkk"]).code, 2);
    assert_eq!(glchain(&["verify", "bogus"]).code, 2);
    assert_eq!(glchain(&["verify", "dkk", "--n", "1"]).code, 2);
    assert_eq!(glchain(&["verify", "dkk", "--n", "3", "--format", "csv"]).code, 2);
    assert_eq!(glchain(&["verify", "tail", "--n", "3", "--vertices", "5"]).code, 2);
    assert_eq!(glchain(&["verify", "dkk", "--n", "3", "--budget", "0"]).code, 2);
    assert_eq!(glchain(&["member", "--ideal", "3", "--poly", "/nonexistent/file.json"]).code, 2);
    assert_eq!(glchain(&["--help"]).code, 0);
}

#[test]
fn budget_refusal_exits_three_unless_forced() {
    let r = glchain(&["verify", "dkk", "--n", "5", "--budget", "100"]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("budget exceeded"), "{}", r.stderr);
    assert_eq!(glchain(&["verify", "dkk", "--n", "5", "--budget", "100", "--force"]).code, 0);
    assert_eq!(glchain(&["verify", "square", "--n", "4"]).code, 3);
}

#[test]
fn lemma_cofactor_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    std::fs::write(&good, "[[], [[1, 2]], [[6, 7], [7, 8]], [[9, 10]]]").unwrap();
    let r = glchain(&["verify", "lemma", "--cofactors", good.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(dim(&r.json(), "cofactors"), 4);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "[[[4, 6]]]").unwrap();
    assert_eq!(glchain(&["verify", "lemma", "--cofactors", bad.to_str().unwrap()]).code, 2);
}

#[test]
fn stats_csv_and_json() {
    let r = glchain(&["stats", "--n", "2,3", "--degree", "2^4", "--degree", "(1,1)", "--format", "csv"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(lines[0], "n,degree,dim_R,dim_I,dim_quotient");
    assert_eq!(lines[3], "3,\"(2,2,2,2)\",3,2,1");
    assert_eq!(lines[4], "3,\"(1,1)\",1,0,1");
    let v = glchain(&["stats", "--n", "3", "--degree", "2^6"]).json();
    assert_eq!(v[0]["dim_R"], 70);
}

#[test]
fn dump_basis_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("basis.json");
    let r = glchain(&["dump-basis", "--ideal", "3", "--degree", "2,2,2,2", "--out", out.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["rank"], 2);
    assert_eq!(v["columns"].as_array().unwrap().len(), 3);
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    let dump: glchain::ideal::BasisDump = serde_json::from_value(v).unwrap();
    assert!(dump.into_basis().is_ok());
}

#[test]
fn disk_cache_is_reused_and_survives_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let env = [("GLCHAIN_CACHE_DIR", cache)];
    let mut first = glchain_with(&["verify", "dkk", "--n", "4"], &env, None).json();
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert!(!files.is_empty());
    let mut second = glchain_with(&["verify", "dkk", "--n", "4"], &env, None).json();
    for f in &files {
        std::fs::write(f, "{\"format_version\": 1, \"garbage\": true}").unwrap();
    }
    let mut third = glchain(&["verify", "dkk", "--n", "4", "--cache-dir", cache]).json();
    for v in [&mut first, &mut second, &mut third] {
        strip_timing(v);
    }
    assert_eq!(first, second);
    assert_eq!(first, third);
}

#[test]
fn text_format_is_a_table() {
    let r = glchain(&["verify", "all", "--n-max", "2", "--format", "text"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("suite"));
    assert!(r.stdout.lines().any(|l| l.starts_with("all") && l.contains("PASS")));
}
