use flatlab_core::doctrine::Verdict;
use serde::Serialize;
use serde_json::{Map, Value};
use thiserror::Error;

use crate::load::InputDigest;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}{}: {message}", line.map(|l| format!(":{l}")).unwrap_or_default())]
    Input {
        path: String,
        line: Option<usize>,
        message: String,
    },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn input(path: &str, line: Option<usize>, message: String) -> Self {
        CliError::Input {
            path: path.to_string(),
            line,
            message,
        }
    }

    pub fn failed(e: impl std::fmt::Display) -> Self {
        CliError::Failed(e.to_string())
    }
}

/// Overall answer of a command, which fixes the exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    Refuted,
    ConsistentUpTo,
    InputError,
    UnknownCommand,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Verified => 0,
            Status::Refuted => 1,
            Status::InputError => 2,
            Status::ConsistentUpTo => 3,
            Status::UnknownCommand => 64,
        }
    }

    pub fn of_verdict(v: &Verdict) -> Status {
        match v {
            Verdict::Decided { value: true, .. } => Status::Verified,
            Verdict::Decided { value: false, .. } | Verdict::Refuted { .. } => Status::Refuted,
            Verdict::ConsistentUpTo { .. } => Status::ConsistentUpTo,
        }
    }

    pub fn of_bool(ok: bool) -> Status {
        if ok {
            Status::Verified
        } else {
            Status::Refuted
        }
    }
}

/// What a subcommand hands back before it is wrapped into a [`Report`].
#[derive(Clone, Debug, Default)]
pub struct Output {
    pub verdicts: Vec<Value>,
    pub witnesses: Vec<Value>,
    pub result: Value,
    pub bounds: Value,
    pub status: Option<Status>,
}

/// The single document written to standard output.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub status: Status,
    pub exit_status: i32,
    pub verdicts: Vec<Value>,
    pub witnesses: Vec<Value>,
    pub result: Value,
    pub bounds: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<Value>,
    pub wall_clock_ms: u64,
}

impl Report {
    pub fn status_label(&self) -> String {
        serde_json::to_value(self.status).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Removes every field whose key ends in `_ms`, at any depth.
pub fn strip_timing(v: &Value) -> Value {
    match v {
        Value::Object(m) => Value::Object(
            m.iter()
                .filter(|(k, _)| !k.ends_with("_ms"))
                .map(|(k, v)| (k.clone(), strip_timing(v)))
                .collect::<Map<_, _>>(),
        ),
        Value::Array(a) => Value::Array(a.iter().map(strip_timing).collect()),
        other => other.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn timing_is_stripped_everywhere() {
        let v = json!({"a": 1, "wall_clock_ms": 5, "rows": [{"elapsed_ms": 3, "b": 2}]});
        assert_eq!(strip_timing(&v), json!({"a": 1, "rows": [{"b": 2}]}));
    }
}
