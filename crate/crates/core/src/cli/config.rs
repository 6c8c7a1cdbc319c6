use serde::Deserialize;
use std::path::Path;

use crate::error::Result;

/// Keys accepted in a --config JSON file. Each mirrors a flag of the same
/// name (dashes become underscores); flags take precedence.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub format: Option<String>,
    pub output: Option<String>,
    pub timing: Option<bool>,
    pub family: Option<String>,
    pub params: Option<Vec<f64>>,
    pub set: Option<std::collections::BTreeMap<String, f64>>,
    pub gauge: Option<String>,
    pub povm: Option<String>,
    pub l: Option<Vec<u32>>,
    pub n_tot: Option<Vec<u64>>,
    pub r: Option<Vec<f64>>,
    pub trials: Option<u64>,
    pub eps: Option<f64>,
    pub n: Option<usize>,
    pub d: Option<usize>,
    pub slopes: Option<Vec<f64>>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}
