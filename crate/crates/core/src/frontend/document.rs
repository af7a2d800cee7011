//! Result documents: ordered key/value lines with a text and a JSON rendering
//! that carry the same content.

use serde_json::{json, Value};

use super::{FrontendError, FORMAT_VERSION};

#[derive(Debug, Clone, PartialEq)]
pub struct ResultDocument {
    pub command: String,
    pub entries: Vec<(String, String)>,
    pub error: Option<FrontendError>,
}

impl ResultDocument {
    pub fn new(command: &str) -> Self {
        ResultDocument {
            command: command.to_string(),
            entries: Vec::new(),
            error: None,
        }
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.entries.push((key.into(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn fail(mut self, error: FrontendError) -> Self {
        self.error = Some(error);
        self
    }

    pub fn is_ok(&self) -> bool {
        self.error.is_none()
    }

    pub fn exit_code(&self) -> i32 {
        self.error.as_ref().map_or(0, FrontendError::exit_code)
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("format {FORMAT_VERSION} result\ncommand {}\n", self.command);
        for (k, v) in &self.entries {
            // multi-line values (check tables) are indented under their key
            if v.contains('\n') {
                out.push_str(&format!("{k}:\n"));
                for line in v.lines() {
                    out.push_str(&format!("  {line}\n"));
                }
            } else {
                out.push_str(&format!("{k} = {v}\n"));
            }
        }
        match &self.error {
            None => out.push_str("status ok\n"),
            Some(e) => {
                out.push_str(&format!("status error\nerror_code {}\nerror {}\n", e.code(), e));
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|(k, v)| json!({ "key": k, "value": v }))
            .collect();
        let mut doc = json!({
            "format": FORMAT_VERSION,
            "command": self.command,
            "entries": entries,
            "status": if self.is_ok() { "ok" } else { "error" },
        });
        if let Some(e) = &self.error {
            doc["error_code"] = json!(e.code());
            doc["error"] = json!(e.to_string());
        }
        doc
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable") + "\n"
    }
}
