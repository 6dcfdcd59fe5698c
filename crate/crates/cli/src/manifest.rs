use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::commands::Params;
use crate::error::{CliError, CliResult};

/// Record written next to every output file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub params: Params,
    pub seed: Option<u64>,
    pub version: String,
    /// Input observations, verbatim, for the subcommands that read a file.
    pub input: Option<String>,
    pub input_path: Option<String>,
    pub outputs: OutputPaths,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct OutputPaths {
    pub out: Option<String>,
    pub svg: Option<String>,
}

impl RunManifest {
    pub fn new(params: Params, input: Option<String>, input_path: Option<String>, outputs: OutputPaths) -> Self {
        RunManifest {
            subcommand: params.name().to_string(),
            seed: params.seed(),
            params,
            version: env!("CARGO_PKG_VERSION").to_string(),
            input,
            input_path,
            outputs,
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> CliResult<Self> {
        let manifest: RunManifest =
            serde_json::from_str(text).map_err(|e| CliError::Config(format!("invalid manifest: {e}")))?;
        if manifest.subcommand != manifest.params.name() {
            return Err(CliError::Config(format!(
                "manifest subcommand '{}' does not match its parameters ('{}')",
                manifest.subcommand,
                manifest.params.name()
            )));
        }
        if manifest.params.needs_input() && manifest.input.is_none() {
            return Err(CliError::Config("manifest lacks the input data".into()));
        }
        Ok(manifest)
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Where the manifest for a given output file lives.
    pub fn path_for(output: &Path) -> PathBuf {
        let mut name = output.as_os_str().to_owned();
        name.push(".manifest.json");
        PathBuf::from(name)
    }
}
