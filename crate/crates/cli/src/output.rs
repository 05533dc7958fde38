//! Output assembly: a JSON envelope with a fixed schema tag, and a plain
//! text rendering of the same facts for terminals.

use serde_json::{json, Map, Value};
use ybx_core::report::RelationCheck;

/// Everything a command produces: the overall outcome (drives the exit
/// code), the JSON document, and the human-readable text.
pub struct Emitted {
    pub pass: bool,
    pub json: Value,
    pub table: String,
}

impl Emitted {
    /// A computation result that cannot fail (elements, tables).
    pub fn value(json: Value, table: String) -> Self {
        Self { pass: true, json, table }
    }
}

/// Wraps `body` into the versioned envelope for a verification command:
/// `schema`, `command`, `identity` (what equality was checked), and `pass`.
pub fn verify_json(command: &str, identity: &str, pass: bool, body: Value) -> Value {
    let mut map = Map::new();
    map.insert("schema".into(), json!("ybx/1"));
    map.insert("command".into(), json!(command));
    map.insert("identity".into(), json!(identity));
    map.insert("pass".into(), json!(pass));
    merge(&mut map, body);
    Value::Object(map)
}

/// Wraps `body` into the versioned envelope for a pure computation.
pub fn value_json(command: &str, body: Value) -> Value {
    let mut map = Map::new();
    map.insert("schema".into(), json!("ybx/1"));
    map.insert("command".into(), json!(command));
    merge(&mut map, body);
    Value::Object(map)
}

fn merge(map: &mut Map<String, Value>, body: Value) {
    if let Value::Object(extra) = body {
        for (k, v) in extra {
            map.insert(k, v);
        }
    }
}

pub fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Header lines shared by every verification rendering.
pub fn verify_header(identity: &str) -> String {
    format!("identity: {identity}\n")
}

/// One line per relation check: name, case count, outcome.
pub fn render_checks(checks: &[RelationCheck]) -> String {
    let mut out = String::new();
    for c in checks {
        if c.pass {
            out.push_str(&format!("  ok    {} ({} cases)\n", c.name, c.cases));
        } else {
            let detail = c.first_failure.as_deref().unwrap_or("");
            out.push_str(&format!("  FAIL  {} ({} cases): {detail}\n", c.name, c.cases));
        }
    }
    out
}

/// Bullet list of failure descriptions (already capped by the core).
pub fn render_failures(failures: &[String]) -> String {
    let mut out = String::new();
    for f in failures {
        out.push_str(&format!("  mismatch: {f}\n"));
    }
    out
}

/// Renders a six-leg occupation state as `a,b,c,i,j,k`.
pub fn render_state(state: &[u32]) -> String {
    let parts: Vec<String> = state.iter().map(u32::to_string).collect();
    parts.join(",")
}

/// Renders a chain of six-leg states as an arrow sequence.
pub fn render_chain(states: &[[u32; 6]]) -> String {
    let parts: Vec<String> = states.iter().map(|s| render_state(s)).collect();
    parts.join(" -> ")
}
