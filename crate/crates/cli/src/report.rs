use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// One line of a run report per input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    /// SHA-256 of the input after canonical re-serialization, so that
    /// whitespace and line endings do not matter.
    pub input_digest: Option<String>,
    pub outcome: Outcome,
    pub exit_code: i32,
    pub sizes: BTreeMap<String, u64>,
    pub guaranteed: Option<bool>,
    pub elapsed_ms: f64,
    pub version: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Ok,
    Negative,
    Error,
}

impl Outcome {
    pub fn from_code(code: i32) -> Self {
        match code {
            0 => Outcome::Ok,
            1 => Outcome::Negative,
            _ => Outcome::Error,
        }
    }
}

/// Hex SHA-256 of compact JSON. `serde_json` keeps object keys sorted
/// (no `preserve_order`), so equal values give equal digests.
pub fn digest(value: &serde_json::Value) -> String {
    let bytes = serde_json::to_vec(value).expect("json value");
    hex::encode(Sha256::digest(&bytes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_ignores_layout() {
        let a: serde_json::Value = serde_json::from_str("{\"n\": 3,\n \"b\": [1, 2]}").unwrap();
        let b: serde_json::Value = serde_json::from_str("{\"b\":[1,2],\"n\":3}\r\n").unwrap();
        assert_eq!(digest(&a), digest(&b));
        assert_eq!(digest(&a).len(), 64);
        // digest of the empty object
        assert_eq!(
            digest(&serde_json::json!({})),
            "44136fa355b3678a1146ad16f7e8649e94fb4fc21fe77e8310c060f61caaff8a"
        );
    }
}
