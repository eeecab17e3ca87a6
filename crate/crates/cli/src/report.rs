use serde_json::{json, Map, Value};

/// The outcome of one command. The JSON and text renderings are generated
/// from the same fields.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub ok: bool,
    pub result: Map<String, Value>,
    pub witnesses: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            ok: true,
            result: Map::new(),
            witnesses: Vec::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.result.insert(key.to_string(), value.into());
        self
    }

    pub fn fail(&mut self, witness: impl Into<String>) -> &mut Self {
        self.ok = false;
        self.witnesses.push(witness.into());
        self
    }

    pub fn exit_code(&self) -> i32 {
        if self.ok {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "status": if self.ok { "ok" } else { "failed" },
            "exit": self.exit_code(),
            "result": self.result,
            "witnesses": self.witnesses,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.command, if self.ok { "ok" } else { "failed" });
        for (key, value) in &self.result {
            match value {
                Value::Array(items) if !items.is_empty() && items.iter().all(|v| v.as_str().is_some_and(|s| s.contains('\n'))) => {
                    out.push_str(&format!("  {key}:\n"));
                    for item in items {
                        out.push_str(item.as_str().expect("string"));
                    }
                }
                Value::Array(items) if items.iter().any(|v| v.is_object() || v.is_array()) => {
                    out.push_str(&format!("  {key}:\n"));
                    for item in items {
                        out.push_str(&format!("    - {}\n", inline(item)));
                    }
                }
                _ => out.push_str(&format!("  {key}: {}\n", inline(value))),
            }
        }
        for w in &self.witnesses {
            out.push_str(&format!("  witness: {w}\n"));
        }
        out
    }
}

fn inline(value: &Value) -> String {
    match value {
        Value::Null => "none".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| format!("{k}={}", inline(v)))
            .collect::<Vec<_>>()
            .join(", "),
        other => other.to_string(),
    }
}

pub fn error_json(command: &str, message: &str) -> Value {
    json!({
        "command": command,
        "status": "error",
        "exit": 2,
        "error": message,
    })
}
