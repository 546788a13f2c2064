use serde_json::{Map, Value};

/// Everything a subcommand prints. Text and JSON are two renderings of the
/// same fields.
pub struct Report {
    command: String,
    seed: Option<u64>,
    fields: Map<String, Value>,
    checks: Vec<(String, bool)>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            command: command.to_string(),
            seed: None,
            fields: Map::new(),
            checks: Vec::new(),
        }
    }

    pub fn seed(&mut self, seed: u64) {
        self.seed = Some(seed);
    }

    pub fn field(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.insert(key.to_string(), value.into());
    }

    pub fn check(&mut self, name: &str, passed: bool) {
        self.checks.push((name.to_string(), passed));
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.1)
    }

    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        out.insert("command".into(), self.command.clone().into());
        if let Some(s) = self.seed {
            out.insert("seed".into(), s.into());
        }
        out.insert("result".into(), Value::Object(self.fields.clone()));
        let checks = self
            .checks
            .iter()
            .map(|(name, passed)| serde_json::json!({ "name": name, "passed": passed }))
            .collect();
        out.insert("checks".into(), Value::Array(checks));
        Value::Object(out)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        if let Some(s) = self.seed {
            out.push_str(&format!("seed: {s}\n"));
        }
        for (key, value) in &self.fields {
            write_value(&mut out, key, value, 0);
        }
        for (name, passed) in &self.checks {
            out.push_str(&format!(
                "check {name}: {}\n",
                if *passed { "ok" } else { "FAILED" }
            ));
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!(
                "[{}]",
                items
                    .iter()
                    .map(|x| scalar(x).unwrap())
                    .collect::<Vec<_>>()
                    .join(", ")
            ))
        }
        Value::Array(_) | Value::Object(_) => None,
        other => Some(other.to_string()),
    }
}

fn write_value(out: &mut String, key: &str, value: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(value) {
        if s.contains('\n') {
            out.push_str(&format!("{pad}{key}:\n"));
            for line in s.lines() {
                out.push_str(&format!("{pad}  {line}\n"));
            }
        } else {
            out.push_str(&format!("{pad}{key}: {s}\n"));
        }
        return;
    }
    out.push_str(&format!("{pad}{key}:\n"));
    match value {
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                write_value(out, &i.to_string(), item, depth + 1);
            }
        }
        Value::Object(map) => {
            for (k, v) in map {
                write_value(out, k, v, depth + 1);
            }
        }
        _ => unreachable!(),
    }
}
