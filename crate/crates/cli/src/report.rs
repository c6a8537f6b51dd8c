//! Structured command output, rendered as `key = value` text or JSON.

use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Fail,
    Error,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommandReport {
    pub command: String,
    pub line: usize,
    pub status: Status,
    pub error: Option<String>,
    pub fields: Vec<(String, Value)>,
}

impl CommandReport {
    pub fn new(command: impl Into<String>, line: usize) -> Self {
        CommandReport {
            command: command.into(),
            line,
            status: Status::Ok,
            error: None,
            fields: Vec::new(),
        }
    }

    pub fn push(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.push((key.to_string(), value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    /// The field rendered exactly as in text output.
    pub fn get_text(&self, key: &str) -> Option<String> {
        self.get(key).map(render)
    }

    pub fn fail_with(&mut self, msg: impl Into<String>) {
        self.status = Status::Error;
        self.error = Some(msg.into());
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub field: String,
    pub ring: String,
    pub commands: Vec<CommandReport>,
}

fn render(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(render).collect::<Vec<_>>().join(", "),
        other => other.to_string(),
    }
}

impl Report {
    /// 1 on any error, else 2 on any failed check, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.commands.iter().any(|c| c.status == Status::Error) {
            1
        } else if self.commands.iter().any(|c| c.status == Status::Fail) {
            2
        } else {
            0
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("ring {}\nfield = {}\n", self.ring, self.field);
        for c in &self.commands {
            out.push_str(&format!("\n> {}\n", c.command));
            for (k, v) in &c.fields {
                out.push_str(&format!("{k} = {}\n", render(v)));
            }
            if let Some(e) = &c.error {
                out.push_str(&format!("error = {e}\n"));
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let commands: Vec<Value> = self
            .commands
            .iter()
            .map(|c| {
                let mut result = Map::new();
                for (k, v) in &c.fields {
                    result.insert(k.clone(), v.clone());
                }
                let mut obj = json!({
                    "command": c.command,
                    "line": c.line,
                    "status": c.status.as_str(),
                    "result": Value::Object(result),
                });
                if let Some(e) = &c.error {
                    obj["error"] = Value::String(e.clone());
                }
                obj
            })
            .collect();
        json!({
            "ring": self.ring,
            "field": self.field,
            "commands": commands,
        })
    }
}
