//! Command reports and their text and JSON renderings.

use std::fmt::Write as _;
use std::time::Duration;

use alexpoly::alexmod::Delta;
use alexpoly::checks::PropertyReport;
use alexpoly::linalg::IntMatrix;
use alexpoly::poly::IntPoly;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A theorem-backed refusal or a failed precondition.
    Refused,
    /// An internal consistency check failed.
    VerificationFailed,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Refused => 3,
            Status::VerificationFailed => 4,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Refused => "refused",
            Status::VerificationFailed => "verification_failed",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: &'static str,
    pub status: Status,
    pub headline: String,
    pub body: Map<String, Value>,
    pub elapsed: Option<Duration>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            status: Status::Ok,
            headline: String::new(),
            body: Map::new(),
            elapsed: None,
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.body.insert(key.to_string(), value.into());
    }

    pub fn refuse(&mut self, reason: impl Into<String>) {
        let reason = reason.into();
        self.status = Status::Refused;
        self.headline = format!("refused: {reason}");
        self.set("refusal", reason);
    }

    pub fn to_json(&self, timing: bool) -> Value {
        let mut top = Map::new();
        top.insert("command".into(), self.command.into());
        top.insert("status".into(), self.status.as_str().into());
        top.insert("summary".into(), self.headline.clone().into());
        for (k, v) in &self.body {
            top.insert(k.clone(), v.clone());
        }
        if let (true, Some(dt)) = (timing, self.elapsed) {
            top.insert("elapsed_ms".into(), json!(dt.as_secs_f64() * 1000.0));
        }
        Value::Object(top)
    }

    pub fn to_text(&self, timing: bool) -> String {
        let mut out = String::new();
        writeln!(out, "{}", self.headline).unwrap();
        for (k, v) in &self.body {
            render(&mut out, k, v, 0);
        }
        if let (true, Some(dt)) = (timing, self.elapsed) {
            writeln!(out, "elapsed: {:.3} ms", dt.as_secs_f64() * 1000.0).unwrap();
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(if *b { "yes".into() } else { "no".into() }),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) if !s.contains('\n') => Some(s.clone()),
        _ => None,
    }
}

fn render(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        writeln!(out, "{pad}{key}: {s}").unwrap();
        return;
    }
    match v {
        Value::String(s) => {
            writeln!(out, "{pad}{key}:").unwrap();
            for line in s.lines() {
                writeln!(out, "{pad}  | {line}").unwrap();
            }
        }
        Value::Array(items) if items.iter().all(|i| scalar(i).is_some()) => {
            let parts: Vec<String> = items.iter().filter_map(scalar).collect();
            writeln!(out, "{pad}{key}: [{}]", parts.join(", ")).unwrap();
        }
        Value::Array(items) if items.iter().all(|i| matches!(i, Value::Array(_))) => {
            writeln!(out, "{pad}{key}:").unwrap();
            for row in items {
                let cells: Vec<String> = row
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|c| scalar(c).unwrap_or_default())
                    .collect();
                writeln!(out, "{pad}  [{}]", cells.join(", ")).unwrap();
            }
        }
        Value::Array(items) => {
            writeln!(out, "{pad}{key}:").unwrap();
            for (i, item) in items.iter().enumerate() {
                render(out, &format!("[{i}]"), item, depth + 1);
            }
        }
        Value::Object(map) => {
            writeln!(out, "{pad}{key}:").unwrap();
            for (k, v) in map {
                render(out, k, v, depth + 1);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}

/// Integers as JSON numbers when they fit in i64, otherwise as strings.
pub fn int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => v.into(),
        None => x.to_string().into(),
    }
}

pub fn poly(p: &IntPoly) -> Value {
    json!({
        "text": p.to_string(),
        "coefficients": p.coeffs().iter().map(int).collect::<Vec<_>>(),
    })
}

pub fn delta(d: &Delta) -> Value {
    match d {
        Delta::Zero => json!({ "kind": "zero", "text": d.to_string() }),
        Delta::Poly(p) => {
            let mut v = poly(p);
            v.as_object_mut()
                .unwrap()
                .insert("kind".into(), "polynomial".into());
            v
        }
        Delta::NonIntegral(p) => json!({ "kind": "non-integral", "text": p.to_string() }),
    }
}

pub fn matrix(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(int).collect()))
            .collect(),
    )
}

pub fn properties(r: &PropertyReport) -> Value {
    let mut map = Map::new();
    map.insert("degree".into(), r.degree.into());
    map.insert("components".into(), r.components.into());
    map.insert("all_pass".into(), r.all_pass().into());
    for c in &r.checks {
        map.insert(
            format!("({})", c.id),
            json!({ "property": c.name, "verdict": c.verdict.to_string(), "witness": c.witness }),
        );
    }
    Value::Object(map)
}
