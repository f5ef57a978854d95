use std::collections::BTreeMap;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const FILE_NAME: &str = "manifest.toml";

/// Provenance record written next to every run's outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// SHA-256 of the resolved configuration text (after overrides).
    pub config_digest: String,
    pub timestamp_unix: u64,
    /// Output key to file name, relative to the output directory.
    pub outputs: BTreeMap<String, String>,
}

impl Manifest {
    pub fn new(command: &str, config_digest: String) -> Self {
        let timestamp_unix = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        Self {
            tool: "nanocontour".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            config_digest,
            timestamp_unix,
            outputs: BTreeMap::new(),
        }
    }

    pub fn with_outputs(mut self, outputs: impl IntoIterator<Item = (String, String)>) -> Self {
        self.outputs.extend(outputs);
        self
    }
}

/// Digest over one or more serialized configs, length-prefixed so that
/// moving text between parts changes the hash.
pub fn digest(parts: &[&str]) -> String {
    let mut hasher = Sha256::new();
    for part in parts {
        hasher.update((part.len() as u64).to_le_bytes());
        hasher.update(part.as_bytes());
    }
    hex::encode(hasher.finalize())
}

#[cfg(test)]
mod tests {
    use nanocontour::SimConfig;

    use super::*;
    use crate::config::to_toml;

    #[test]
    fn digest_tracks_every_field() {
        let base = SimConfig::default();
        let d0 = digest(&[&to_toml(&base)]);
        assert_eq!(d0, digest(&[&to_toml(&base.clone())]));

        let mut variants = Vec::new();
        let mut c = base.clone();
        c.dt = 5e-5;
        variants.push(c);
        let mut c = base.clone();
        c.gains.k_dy += 1e-9;
        variants.push(c);
        let mut c = base.clone();
        c.path.circle.center.y = 1.0;
        variants.push(c);
        let mut c = base.clone();
        c.plant_y.damping_ratio = 0.61;
        variants.push(c);
        let mut c = base.clone();
        c.coupling_enabled = false;
        variants.push(c);
        let mut c = base.clone();
        c.saturation = Some(10.0);
        variants.push(c);
        for v in variants {
            assert_ne!(digest(&[&to_toml(&v)]), d0, "{v:?}");
        }
    }

    #[test]
    fn digest_separates_parts() {
        assert_ne!(digest(&["ab", "c"]), digest(&["a", "bc"]));
    }
}
