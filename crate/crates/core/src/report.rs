//! Structured reports with a stable field order.
//!
//! Every command renders the same value tree in two modes: line-oriented
//! "key: value" text and a schema-versioned JSON document. Field order is
//! insertion order, so identical runs emit byte-identical output.

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Bool(bool),
    UInt(u64),
    Int(i64),
    Str(String),
    List(Vec<Value>),
    Map(Vec<(String, Value)>),
}

impl Value {
    pub fn map() -> Value {
        Value::Map(Vec::new())
    }

    pub fn push(&mut self, key: &str, value: Value) {
        match self {
            Value::Map(fields) => fields.push((key.to_string(), value)),
            _ => panic!("push on a non-map value"),
        }
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Value {
        Value::Bool(v)
    }
}
impl From<u64> for Value {
    fn from(v: u64) -> Value {
        Value::UInt(v)
    }
}
impl From<usize> for Value {
    fn from(v: usize) -> Value {
        Value::UInt(v as u64)
    }
}
impl From<i64> for Value {
    fn from(v: i64) -> Value {
        Value::Int(v)
    }
}
impl From<&str> for Value {
    fn from(v: &str) -> Value {
        Value::Str(v.to_string())
    }
}
impl From<String> for Value {
    fn from(v: String) -> Value {
        Value::Str(v)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub fields: Vec<(String, Value)>,
}

impl Report {
    pub fn new() -> Report {
        Report { fields: Vec::new() }
    }

    pub fn push(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.push((key.to_string(), value.into()));
    }

    /// Line-oriented mode: nested keys joined with dots, lists bracketed.
    pub fn human(&self) -> String {
        let mut out = String::new();
        for (key, value) in &self.fields {
            render_human(&mut out, key, value);
        }
        out
    }

    /// Structured mode with a schema marker, stable field order.
    pub fn json(&self) -> String {
        let mut out = String::from("{\"schema\":1");
        for (key, value) in &self.fields {
            out.push(',');
            out.push_str(&json_string(key));
            out.push(':');
            render_json(&mut out, value);
        }
        out.push('}');
        out
    }
}

fn render_human(out: &mut String, key: &str, value: &Value) {
    match value {
        Value::Map(fields) => {
            for (sub, v) in fields {
                render_human(out, &format!("{key}.{sub}"), v);
            }
        }
        other => {
            out.push_str(key);
            out.push_str(": ");
            out.push_str(&scalar_human(other));
            out.push('\n');
        }
    }
}

fn scalar_human(value: &Value) -> String {
    match value {
        Value::Bool(b) => b.to_string(),
        Value::UInt(v) => v.to_string(),
        Value::Int(v) => v.to_string(),
        Value::Str(s) => s.clone(),
        Value::List(items) => {
            let parts: Vec<String> = items.iter().map(scalar_human).collect();
            format!("[{}]", parts.join(", "))
        }
        Value::Map(fields) => {
            let parts: Vec<String> = fields
                .iter()
                .map(|(k, v)| format!("{k}={}", scalar_human(v)))
                .collect();
            format!("{{{}}}", parts.join(", "))
        }
    }
}

fn render_json(out: &mut String, value: &Value) {
    match value {
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::UInt(v) => out.push_str(&v.to_string()),
        Value::Int(v) => out.push_str(&v.to_string()),
        Value::Str(s) => out.push_str(&json_string(s)),
        Value::List(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                render_json(out, item);
            }
            out.push(']');
        }
        Value::Map(fields) => {
            out.push('{');
            for (i, (k, v)) in fields.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&json_string(k));
                out.push(':');
                render_json(out, v);
            }
            out.push('}');
        }
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn human_and_json_modes_agree_on_values() {
        let mut r = Report::new();
        r.push("ring", "Zn(12)");
        r.push("clean", true);
        r.push("jacobson_index", 2u64);
        let mut nested = Value::map();
        nested.push("verdict", Value::from("PASS"));
        r.fields.push(("suite".into(), nested));
        let human = r.human();
        assert!(human.contains("ring: Zn(12)\n"));
        assert!(human.contains("clean: true\n"));
        assert!(human.contains("suite.verdict: PASS\n"));
        let json = r.json();
        assert_eq!(
            json,
            "{\"schema\":1,\"ring\":\"Zn(12)\",\"clean\":true,\
             \"jacobson_index\":2,\"suite\":{\"verdict\":\"PASS\"}}"
        );
    }

    #[test]
    fn json_escapes_control_characters() {
        let mut r = Report::new();
        r.push("text", "a\"b\\c\nd");
        assert_eq!(r.json(), "{\"schema\":1,\"text\":\"a\\\"b\\\\c\\nd\"}");
    }
}
