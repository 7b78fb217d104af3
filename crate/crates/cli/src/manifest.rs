use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

/// Provenance attached to every output: enough to re-run the command and
/// get the same bytes back (apart from `timestamp`).
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub tool_version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rng_name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// UTC, RFC 3339.
    pub timestamp: String,
}

impl RunManifest {
    /// `parameters` must serialize to a JSON object; null entries (flags
    /// left unset) are dropped.
    pub fn new(command: &str, parameters: &impl Serialize, degrees: bool) -> Self {
        let mut map: BTreeMap<String, Value> = match serde_json::to_value(parameters) {
            Ok(Value::Object(fields)) => fields.into_iter().filter(|(_, v)| !v.is_null()).collect(),
            _ => BTreeMap::new(),
        };
        map.insert("degrees".into(), Value::Bool(degrees));
        Self {
            command: command.to_string(),
            parameters: map,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            rng_name: None,
            seed: None,
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true),
        }
    }

    pub fn with_rng(mut self, rng_name: &str, seed: u64) -> Self {
        self.rng_name = Some(rng_name.to_string());
        self.seed = Some(seed);
        self
    }
}
