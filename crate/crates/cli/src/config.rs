//! Algebra configuration files.
//!
//! ```toml
//! field = "Q"        # or "Fp", together with p = 7
//! r = 2
//! a = [-1, -1]
//! n = 3
//! b = [1, 1, -3]
//! ```
//!
//! Scalars are integers or strings such as `"-3/4"`.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use jordan_motive::jordan::JordanSpec;
use jordan_motive::scalars::{FieldSpec, Scalar};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {reason}")]
    Read { path: String, reason: String },
    #[error("malformed config: {0}")]
    Parse(String),
    /// `key` names the offending entry.
    #[error("{message}")]
    Validation { key: &'static str, message: String },
}

impl ConfigError {
    fn invalid(key: &'static str, message: impl Into<String>) -> Self {
        ConfigError::Validation { key, message: message.into() }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum ScalarLit {
    Int(i64),
    Text(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default = "default_field")]
    field: String,
    p: Option<u64>,
    r: u32,
    #[serde(default)]
    a: Vec<ScalarLit>,
    n: u32,
    b: Vec<ScalarLit>,
}

fn default_field() -> String {
    "Q".to_string()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraConfig {
    pub field: FieldSpec,
    pub r: u32,
    pub a: Vec<Scalar>,
    pub n: u32,
    pub b: Vec<Scalar>,
}

impl AlgebraConfig {
    pub fn spec(&self) -> Result<Arc<JordanSpec>, String> {
        let cd = jordan_motive::cayley_dickson::CdAlgebra::new(self.field, self.a.clone()).map_err(|e| e.to_string())?;
        JordanSpec::new(cd, self.b.clone()).map_err(|e| e.to_string())
    }
}

pub fn load_config(path: &Path) -> Result<AlgebraConfig, ConfigError> {
    let text = fs::read_to_string(path)
        .map_err(|e| ConfigError::Read { path: path.display().to_string(), reason: e.to_string() })?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<AlgebraConfig, ConfigError> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| ConfigError::Parse(e.message().to_string()))?;
    let field = match (raw.field.as_str(), raw.p) {
        ("Q", None) => FieldSpec::Rationals,
        ("Q", Some(_)) => return Err(ConfigError::invalid("p", "p is only allowed when field = \"Fp\"")),
        ("Fp", None) => return Err(ConfigError::invalid("p", "p is required when field = \"Fp\"")),
        ("Fp", Some(p)) => FieldSpec::prime(p).map_err(|e| ConfigError::invalid("p", format!("p: {e}")))?,
        (other, _) => return Err(ConfigError::invalid("field", format!("field must be \"Q\" or \"Fp\" (got {other:?})"))),
    };
    if raw.r > 3 {
        return Err(ConfigError::invalid("r", format!("r must be at most 3 (got {})", raw.r)));
    }
    if raw.a.len() != raw.r as usize {
        return Err(ConfigError::invalid("a", format!("a must list r = {} scalars (got {})", raw.r, raw.a.len())));
    }
    if raw.n < 3 {
        return Err(ConfigError::invalid("n", format!("n must be at least 3 (got {})", raw.n)));
    }
    if raw.r == 3 && raw.n != 3 {
        return Err(ConfigError::invalid("n", "n must be 3 when r=3"));
    }
    if raw.b.len() != raw.n as usize {
        return Err(ConfigError::invalid("b", format!("b must list n = {} scalars (got {})", raw.n, raw.b.len())));
    }
    let a = scalars(field, "a", &raw.a)?;
    let b = scalars(field, "b", &raw.b)?;
    Ok(AlgebraConfig { field, r: raw.r, a, n: raw.n, b })
}

fn scalars(field: FieldSpec, key: &'static str, lits: &[ScalarLit]) -> Result<Vec<Scalar>, ConfigError> {
    lits.iter()
        .enumerate()
        .map(|(i, lit)| {
            let s = match lit {
                ScalarLit::Int(v) => field.from_i64(*v),
                ScalarLit::Text(t) => field.parse(t).map_err(|e| ConfigError::invalid(key, format!("{key}[{i}]: {e}")))?,
            };
            if s.is_zero() {
                return Err(ConfigError::invalid(key, format!("{key}[{i}] must be nonzero in {field}")));
            }
            Ok(s)
        })
        .collect()
}
