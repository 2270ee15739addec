//! Reproducible experiment configuration: the subcommand plus its full
//! parameter map, the seed, tolerance scaling, and output path.  The
//! serialized form round-trips losslessly and rejects unknown keys.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::PathBuf;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub subcommand: String,
    pub params: BTreeMap<String, ParamValue>,
    pub seed: u64,
    pub tolerance_scale: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Int(i64),
    Real(f64),
    Text(String),
}

impl ExperimentConfig {
    pub fn new(subcommand: &str, seed: u64, tolerance_scale: f64, output: Option<PathBuf>) -> Self {
        ExperimentConfig {
            subcommand: subcommand.to_string(),
            params: BTreeMap::new(),
            seed,
            tolerance_scale,
            output,
        }
    }

    pub fn with_int(mut self, key: &str, v: i64) -> Self {
        self.params.insert(key.into(), ParamValue::Int(v));
        self
    }

    pub fn with_real(mut self, key: &str, v: f64) -> Self {
        self.params.insert(key.into(), ParamValue::Real(v));
        self
    }

    pub fn with_text(mut self, key: &str, v: &str) -> Self {
        self.params.insert(key.into(), ParamValue::Text(v.into()));
        self
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("config serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lossless_roundtrip() {
        let cfg = ExperimentConfig::new("kernel", 7, 1.0, Some(PathBuf::from("/tmp/x.csv")))
            .with_int("q", 15)
            .with_real("delta", 4.0)
            .with_text("kind", "bplus");
        let json = serde_json::to_string(&cfg).unwrap();
        let back: ExperimentConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn unknown_keys_rejected() {
        let json = r#"{"subcommand":"x","params":{},"seed":1,"tolerance_scale":1.0,"bogus":3}"#;
        assert!(serde_json::from_str::<ExperimentConfig>(json).is_err());
    }
}
