use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub input_digest: Option<String>,
    pub result: Value,
    pub checks: Vec<Check>,
}

fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

impl Report {
    pub fn new(command: impl Into<String>, input: Option<&[u8]>) -> Self {
        Report {
            command: command.into(),
            input_digest: input.map(digest),
            result: Value::Object(Default::default()),
            checks: Vec::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("serializable");
        self.result
            .as_object_mut()
            .expect("object")
            .insert(key.to_string(), v);
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        if let Some(d) = &self.input_digest {
            out.push_str(&format!("input: {d}\n"));
        }
        out.push_str("result:\n");
        render(&self.result, 1, &mut out);
        out.push_str("checks:\n");
        if self.checks.is_empty() {
            out.push_str("  (none)\n");
        }
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                out.push_str(&format!("  [{tag}] {}\n", c.name));
            } else {
                out.push_str(&format!("  [{tag}] {}: {}\n", c.name, c.detail));
            }
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(inline_item) => Some(format!(
            "[{}]",
            a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")
        )),
        _ => None,
    }
}

fn inline_item(v: &Value) -> bool {
    match v {
        Value::String(s) => !s.contains([',', ';']),
        Value::Object(_) | Value::Array(_) => false,
        _ => true,
    }
}

/// One-line form of an object whose values are all scalars.
fn flat_object(v: &Value) -> Option<String> {
    let map = v.as_object()?;
    let parts: Option<Vec<String>> = map
        .iter()
        .map(|(k, x)| scalar(x).filter(|_| !x.is_array()).map(|s| format!("{k}: {s}")))
        .collect();
    parts.map(|p| p.join(", "))
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match scalar(x).or_else(|| flat_object(x)) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
