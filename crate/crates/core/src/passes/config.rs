use std::collections::BTreeSet;
use std::path::Path;

use serde::Deserialize;

use super::PassError;

/// Tunables shared by the simplification passes.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PassConfig {
    /// Merged rotations with |θ| below this are deleted.
    pub angle_merge_tolerance: f64,
    pub max_fixpoint_iterations: usize,
    /// Rule names allowed to fire. `None` enables every registered rule.
    pub enabled_rules: Option<BTreeSet<String>>,
}

impl Default for PassConfig {
    fn default() -> Self {
        PassConfig {
            angle_merge_tolerance: 1e-10,
            max_fixpoint_iterations: 64,
            enabled_rules: None,
        }
    }
}

impl PassConfig {
    pub fn from_json(bytes: &[u8]) -> Result<PassConfig, PassError> {
        let cfg: PassConfig =
            serde_json::from_slice(bytes).map_err(|e| PassError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<PassConfig, PassError> {
        let bytes = std::fs::read(path)
            .map_err(|e| PassError::Config(format!("{}: {e}", path.display())))?;
        PassConfig::from_json(&bytes)
    }

    pub fn validate(&self) -> Result<(), PassError> {
        if !(self.angle_merge_tolerance >= 0.0) {
            return Err(PassError::Config(format!(
                "angle_merge_tolerance must be >= 0, got {}",
                self.angle_merge_tolerance
            )));
        }
        if self.max_fixpoint_iterations == 0 {
            return Err(PassError::Config(
                "max_fixpoint_iterations must be >= 1".into(),
            ));
        }
        if let Some(names) = &self.enabled_rules {
            let known: Vec<String> = super::rules::all_rules()?
                .iter()
                .map(|r| r.name().to_string())
                .collect();
            if let Some(bad) = names.iter().find(|n| !known.contains(n)) {
                return Err(PassError::Config(format!("unknown rule `{bad}`")));
            }
        }
        Ok(())
    }

    pub fn rule_enabled(&self, name: &str) -> bool {
        self.enabled_rules.as_ref().is_none_or(|s| s.contains(name))
    }
}
