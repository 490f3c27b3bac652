use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use difem::ClassifierConfig;
use serde::Serialize;

use crate::failure::{CmdResult, Context};

#[derive(Debug, Clone, Serialize)]
pub struct FeatureSettings {
    pub velocity: bool,
    pub overlap: bool,
    /// Frame `(width, height)` used to normalize velocities.
    pub normalize: Option<(f64, f64)>,
    pub confidence_floor: f64,
    pub per_frame_pooling: bool,
}

/// Fully resolved parameters of one run, written next to its outputs.
/// Contains no timestamps so identical runs write identical sidecars.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub tool_version: &'static str,
    pub inputs: BTreeMap<&'static str, PathBuf>,
    pub outputs: BTreeMap<&'static str, PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub features: Option<FeatureSettings>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classifier: Option<ClassifierConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<&'static str, serde_json::Value>,
}

impl RunConfig {
    pub fn new(command: &'static str) -> Self {
        RunConfig {
            command,
            tool_version: env!("CARGO_PKG_VERSION"),
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
            features: None,
            classifier: None,
            seed: None,
            k: None,
            jobs: None,
            extra: BTreeMap::new(),
        }
    }

    pub fn input(mut self, name: &'static str, path: &Path) -> Self {
        self.inputs.insert(name, path.to_path_buf());
        self
    }

    pub fn output(mut self, name: &'static str, path: &Path) -> Self {
        self.outputs.insert(name, path.to_path_buf());
        self
    }

    /// Writes the sidecar to `path`.
    pub fn write(&self, path: &Path) -> CmdResult<()> {
        let mut json = serde_json::to_string_pretty(self)?;
        json.push('\n');
        std::fs::write(path, json).ctx(format!("writing {}", path.display()))
    }
}

/// Sidecar path for a single output file: `<file>.run.json`.
pub fn sidecar_for(output: &Path) -> PathBuf {
    let mut name = output.file_name().unwrap_or_default().to_os_string();
    name.push(".run.json");
    output.with_file_name(name)
}
