//! Field spec files in JSON or TOML.

use std::path::Path;

use serde::{Deserialize, Serialize};
use tcss_core::localfield::{parse_field, FieldSpec, LocalField, DEFAULT_PRECISION};

use crate::error::Error;

/// On-disk form of a field spec.
///
/// `eisenstein_mid` may be omitted, in which case `c_1 = … = c_{e−1} = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldFile {
    pub p: u64,
    pub f: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
    pub e: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eisenstein_mid: Option<Vec<Vec<i64>>>,
    pub mu: Vec<i64>,
}

impl FieldFile {
    pub fn to_spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.p,
            f: self.f,
            modulus: self.modulus.clone(),
            e: self.e,
            precision: self.precision.unwrap_or(DEFAULT_PRECISION),
            eisenstein_mid: self.eisenstein_mid.clone().unwrap_or_else(|| vec![vec![0]; self.e.saturating_sub(1)]),
            mu: self.mu.clone(),
        }
    }

    pub fn from_spec(spec: &FieldSpec) -> FieldFile {
        FieldFile {
            p: spec.p,
            f: spec.f,
            modulus: spec.modulus.clone(),
            e: spec.e,
            precision: Some(spec.precision),
            eisenstein_mid: Some(spec.eisenstein_mid.clone()),
            mu: spec.mu.clone(),
        }
    }
}

/// Parse JSON if the text starts with `{`, TOML otherwise.
pub fn parse_field_text(text: &str) -> Result<FieldFile, Error> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str(text).map_err(|e| Error::Spec(e.to_string()))
    } else {
        toml::from_str(text).map_err(|e| Error::Spec(e.to_string()))
    }
}

pub fn load_field(path: &Path, precision: Option<u32>) -> Result<LocalField, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let file = parse_field_text(&text)?;
    let mut spec = file.to_spec();
    if let Some(n) = precision {
        spec.precision = n;
    }
    Ok(parse_field(&spec)?)
}

/// Fields exercised by `verify` when no spec file is given.
pub fn default_grid() -> Vec<FieldSpec> {
    [(2, 1, 1, 1), (2, 3, 1, 1), (2, 5, 1, 1), (3, 1, 1, 1), (3, 2, 1, 1), (3, 2, 2, 1), (5, 4, 1, 1), (5, 4, 1, 2)]
        .into_iter()
        .map(|(p, e, f, mu)| FieldSpec::standard(p, e, f, mu))
        .collect()
}
