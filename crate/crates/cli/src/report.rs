//! JSON reports and their schema check.
//!
//! Keys are emitted in sorted order (serde_json's default map), so a report
//! is byte-identical across runs unless `--timing` is given.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub const STATUSES: [&str; 6] = ["pass", "fail", "error", "SIMPLE", "NOT_SIMPLE", "INCONCLUSIVE"];

pub struct ReportBuilder {
    command: Vec<String>,
    fingerprints: Vec<String>,
    status: String,
    result: Map<String, Value>,
    trail: Vec<Value>,
}

pub fn fingerprint(canonical: &str) -> String {
    format!("sha256:{:x}", Sha256::digest(canonical.as_bytes()))
}

impl ReportBuilder {
    pub fn new(command: &[String]) -> Self {
        ReportBuilder {
            command: command.to_vec(),
            fingerprints: Vec::new(),
            status: "pass".into(),
            result: Map::new(),
            trail: Vec::new(),
        }
    }

    /// Records an input by the hash of its canonical text.
    pub fn input(&mut self, canonical: &str) {
        self.fingerprints.push(fingerprint(canonical));
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.result.insert(key.to_string(), value);
    }

    pub fn status(&mut self, status: &str) {
        debug_assert!(STATUSES.contains(&status));
        self.status = status.to_string();
    }

    pub fn current_status(&self) -> &str {
        &self.status
    }

    pub fn step(&mut self, check: &str, result: &str, detail: &str) {
        self.trail.push(json!({ "check": check, "result": result, "detail": detail }));
    }

    /// Adds every check of a core report, prefixing names, and marks the
    /// report failed if any check failed.
    pub fn checks(&mut self, prefix: &str, report: &bralg::Report) {
        for c in &report.checks {
            let name = if prefix.is_empty() { c.name.clone() } else { format!("{prefix}{}", c.name) };
            self.step(&name, if c.passed { "pass" } else { "fail" }, &c.detail);
        }
        if !report.ok() {
            self.status("fail");
        }
    }

    pub fn finish(self, timing_ms: Option<u128>) -> Value {
        let mut v = json!({
            "command": self.command,
            "fingerprints": self.fingerprints,
            "status": self.status,
            "result": Value::Object(self.result),
            "trail": self.trail,
            "version": env!("CARGO_PKG_VERSION"),
        });
        if let Some(ms) = timing_ms {
            v["timing_ms"] = json!(ms as u64);
        }
        v
    }
}

pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports are plain JSON");
    s.push('\n');
    s
}

/// Checks the common shape of every report; returns the list of problems.
pub fn check_schema(v: &Value) -> Vec<String> {
    let mut problems = Vec::new();
    let Some(obj) = v.as_object() else {
        return vec!["report is not an object".into()];
    };
    let allowed = ["command", "fingerprints", "status", "result", "trail", "version", "timing_ms", "error"];
    for k in obj.keys() {
        if !allowed.contains(&k.as_str()) {
            problems.push(format!("unexpected key `{k}`"));
        }
    }
    match obj.get("command").and_then(Value::as_array) {
        Some(a) if !a.is_empty() && a.iter().all(Value::is_string) => {}
        _ => problems.push("`command` must be a nonempty array of strings".into()),
    }
    match obj.get("fingerprints").and_then(Value::as_array) {
        Some(a) => {
            for f in a {
                let ok = f.as_str().and_then(|s| s.strip_prefix("sha256:")).is_some_and(|h| {
                    h.len() == 64 && h.chars().all(|c| c.is_ascii_hexdigit() && !c.is_ascii_uppercase())
                });
                if !ok {
                    problems.push(format!("malformed fingerprint {f}"));
                }
            }
        }
        None => problems.push("`fingerprints` must be an array".into()),
    }
    match obj.get("status").and_then(Value::as_str) {
        Some(s) if STATUSES.contains(&s) => {}
        _ => problems.push(format!("`status` must be one of {STATUSES:?}")),
    }
    if !obj.get("result").is_some_and(Value::is_object) {
        problems.push("`result` must be an object".into());
    }
    match obj.get("trail").and_then(Value::as_array) {
        Some(a) => {
            for (i, step) in a.iter().enumerate() {
                let ok = step.as_object().is_some_and(|s| {
                    s.len() == 3 && ["check", "result", "detail"].iter().all(|k| s.get(*k).is_some_and(Value::is_string))
                });
                if !ok {
                    problems.push(format!("trail entry {i} must have string fields check, result, detail"));
                }
            }
        }
        None => problems.push("`trail` must be an array".into()),
    }
    if !obj.get("version").is_some_and(Value::is_string) {
        problems.push("`version` must be a string".into());
    }
    if obj.get("timing_ms").is_some_and(|t| !t.is_u64()) {
        problems.push("`timing_ms` must be a nonnegative integer".into());
    }
    if obj.get("status").and_then(Value::as_str) == Some("error") && !obj.get("error").is_some_and(Value::is_string) {
        problems.push("error reports need an `error` message".into());
    }
    problems
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn built_reports_pass_the_schema() {
        let mut b = ReportBuilder::new(&["validate".into(), "x.br".into()]);
        b.input("vars: z\n");
        b.set("rank", json!(1));
        b.step("p multiplicatively antisymmetric", "pass", "ok");
        let v = b.finish(None);
        assert!(check_schema(&v).is_empty(), "{:?}", check_schema(&v));
        assert_eq!(render(&v), render(&v.clone()));
    }

    #[test]
    fn schema_rejects_bad_reports() {
        let v = json!({ "command": [], "status": "maybe", "trail": [{ "check": 1 }] });
        let problems = check_schema(&v);
        assert!(problems.len() >= 5, "{problems:?}");
    }
}
