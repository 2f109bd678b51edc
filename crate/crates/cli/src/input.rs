use std::fmt;
use std::path::Path;

use lochar_core::algebra::ScalarAlgebra;
use serde_json::{json, Value};

/// Bad input: the flag or field at fault and what was wrong.
#[derive(Debug)]
pub struct InputError {
    pub location: String,
    pub message: String,
}

impl InputError {
    pub fn new(location: impl Into<String>, message: impl fmt::Display) -> Self {
        Self { location: location.into(), message: message.to_string() }
    }

    pub fn to_json(&self, command: &str) -> Value {
        json!({"command": command, "error": {"location": self.location, "message": self.message}})
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

/// Inline JSON, `@path`, or a path to an existing file.
pub fn read_json(location: &str, raw: &str) -> Result<Value, InputError> {
    let path = raw.strip_prefix('@').or_else(|| Path::new(raw).is_file().then_some(raw));
    let text = match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| InputError::new(location, format!("{p}: {e}")))?,
        None => raw.to_string(),
    };
    serde_json::from_str(&text).map_err(|e| InputError::new(location, format!("invalid JSON: {e}")))
}

/// A kind name (`boolean`, `integers-mod-4`, `z4`), a descriptor, or `@file`.
pub fn parse_algebra(location: &str, raw: &str) -> Result<ScalarAlgebra, InputError> {
    let named = match raw {
        "boolean" | "bool" => Some(ScalarAlgebra::boolean()),
        "naturals" => Some(ScalarAlgebra::naturals()),
        "integers" => Some(ScalarAlgebra::integers()),
        "tropical" => Some(ScalarAlgebra::tropical()),
        "rational-goedel" => Some(ScalarAlgebra::rational_goedel()),
        "rational-viterbi" => Some(ScalarAlgebra::rational_viterbi()),
        _ => None,
    };
    if let Some(a) = named {
        return Ok(a);
    }
    let modulus = raw.strip_prefix("integers-mod-").or_else(|| raw.strip_prefix('z'));
    if let Some(n) = modulus.and_then(|m| m.parse::<u64>().ok()) {
        return ScalarAlgebra::integers_mod(n).map_err(|e| InputError::new(location, e));
    }
    let v = read_json(location, raw)?;
    ScalarAlgebra::from_descriptor(&v).map_err(|e| InputError::new(location, e))
}
