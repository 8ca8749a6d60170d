#![allow(dead_code)]

use std::process::Command;

use serde_json::Value;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    pub fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", self.stdout))
    }
}

pub fn glchain(args: &[&str]) -> Run {
    glchain_with(args, &[], None)
}

pub fn glchain_with(args: &[&str], env: &[(&str, &str)], stdin: Option<&str>) -> Run {
    use std::io::Write;
    use std::process::Stdio;
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_glchain"));
    cmd.args(args).env_remove("GLCHAIN_CACHE_DIR");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("spawn glchain");
    if let Some(input) = stdin {
        child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

/// Removes every `elapsed_ms` key, at any depth.
pub fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("elapsed_ms");
            map.values_mut().for_each(strip_timing);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

pub fn witness<'a>(report: &'a Value, label: &str) -> &'a Value {
    report["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .find(|w| w["label"] == label)
        .unwrap_or_else(|| panic!("no witness {label:?} in {report}"))
}

pub fn dim(report: &Value, key: &str) -> u64 {
    report["dims"][key].as_u64().unwrap_or_else(|| panic!("no dim {key:?}"))
}

pub const W4: &str = r#"{"alphabet": "edge", "N": 4, "terms": [[[1, 2], [2, 3], [3, 4], [1, 4]]]}"#;
