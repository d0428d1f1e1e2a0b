//! Versioned JSON documents: a flat object whose first key is
//! `"schema": "glens/v1/<kind>"`.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::comonoid::{RawComonoid, RawSmc};

pub const PREFIX: &str = "glens/v1/";

pub fn schema_name(kind: &str) -> String {
    format!("{PREFIX}{kind}")
}

/// Reads `path` as a document of the given kind. Errors are human-readable
/// diagnostics naming the line or the field at fault.
pub fn load<T: DeserializeOwned>(path: &Path, kind: &str) -> Result<T, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse(&text, kind).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn parse<T: DeserializeOwned>(text: &str, kind: &str) -> Result<T, String> {
    let value: Value = serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
    let Value::Object(mut map) = value else {
        return Err("a document must be a JSON object".into());
    };
    let expected = schema_name(kind);
    match map.shift_remove("schema") {
        Some(Value::String(s)) if s == expected => {}
        Some(Value::String(s)) => return Err(format!("expected schema \"{expected}\", found \"{s}\"")),
        Some(_) => return Err("field `schema` must be a string".into()),
        None => return Err(format!("missing field `schema` (expected \"{expected}\")")),
    }
    serde_path_to_error::deserialize(Value::Object(map)).map_err(|e| {
        let path = e.path().to_string();
        if path == "." {
            e.into_inner().to_string()
        } else {
            format!("at field `{path}`: {}", e.into_inner())
        }
    })
}

/// Canonical text of a document: pretty JSON with the schema first and a
/// trailing newline.
pub fn render<T: Serialize>(body: &T, kind: &str) -> String {
    let value = serde_json::to_value(body).expect("documents serialize");
    let mut map = Map::new();
    map.insert("schema".into(), Value::String(schema_name(kind)));
    match value {
        Value::Object(fields) => map.extend(fields),
        other => {
            map.insert("value".into(), other);
        }
    }
    let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("documents serialize");
    s.push('\n');
    s
}

/// A named built-in symmetric monoidal category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum BuiltinSmc {
    /// Finite sets with cartesian product.
    FinsetCartesian,
    /// The opposite of finite sets with disjoint union.
    FinsetCocartesianOp,
}

impl BuiltinSmc {
    pub fn name(self) -> &'static str {
        match self {
            Self::FinsetCartesian => "finset-cartesian",
            Self::FinsetCocartesianOp => "finset-cocartesian-op",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum SmcSpec {
    Builtin(BuiltinSmc),
    Table(RawSmc),
}

/// `glens/v1/smc`: a monoidal category, the objects to scan, and optionally
/// comonoids on it. Without comonoids they are found by enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SmcDoc {
    pub smc: SmcSpec,
    pub objects: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comonoids: Option<Vec<RawComonoid>>,
}
