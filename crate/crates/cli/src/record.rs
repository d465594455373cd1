use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;
pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// One machine-readable result, as printed by `--json`. Object keys are
/// sorted, so identical inputs give byte-identical output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultRecord {
    pub schema_version: u32,
    pub artifact_version: String,
    pub subcommand: String,
    pub input: Value,
    pub output: Value,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

impl ResultRecord {
    pub fn new(subcommand: &str, input: Value, output: Value, ok: bool) -> Self {
        ResultRecord {
            schema_version: SCHEMA_VERSION,
            artifact_version: ARTIFACT_VERSION.to_string(),
            subcommand: subcommand.to_string(),
            input,
            output,
            ok,
            wall_time_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}
