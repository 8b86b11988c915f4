//! Flat key=value configuration files.
//!
//! Lookup order for every option: command-line flag, then config file,
//! then built-in default. The config path itself comes from `--config`,
//! else the `PODOLSKY_AB_CONFIG` environment variable, else
//! `podolsky-ab.conf` in the working directory (silently skipped when
//! absent; an explicitly named file must exist).

use crate::CliError;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

pub const ENV_CONFIG: &str = "PODOLSKY_AB_CONFIG";
pub const DEFAULT_CONFIG: &str = "podolsky-ab.conf";

#[derive(Debug, Default)]
pub struct FileConfig {
    entries: BTreeMap<String, (String, usize)>,
    path: PathBuf,
}

impl FileConfig {
    pub fn load(explicit: Option<&Path>) -> Result<FileConfig, CliError> {
        let (path, required) = match explicit {
            Some(p) => (p.to_path_buf(), true),
            None => match std::env::var_os(ENV_CONFIG) {
                Some(p) => (PathBuf::from(p), true),
                None => (PathBuf::from(DEFAULT_CONFIG), false),
            },
        };
        if !path.exists() {
            if required {
                return Err(CliError::Usage(format!(
                    "config file {} does not exist",
                    path.display()
                )));
            }
            return Ok(FileConfig::default());
        }
        let text = std::fs::read_to_string(&path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!(
                    "{}:{}: expected key=value, got {:?}",
                    path.display(),
                    lineno + 1,
                    raw
                ))
            })?;
            entries.insert(
                key.trim().to_string(),
                (value.trim().to_string(), lineno + 1),
            );
        }
        Ok(FileConfig { entries, path })
    }

    pub fn get_str(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|(v, _)| v.as_str())
    }

    pub fn get_f64(&self, key: &str) -> Result<Option<f64>, CliError> {
        match self.entries.get(key) {
            None => Ok(None),
            Some((v, line)) => v.parse::<f64>().map(Some).map_err(|_| {
                CliError::Usage(format!(
                    "{}:{}: field {key}: {v:?} is not a number",
                    self.path.display(),
                    line
                ))
            }),
        }
    }

    pub fn get_usize(&self, key: &str) -> Result<Option<usize>, CliError> {
        match self.entries.get(key) {
            None => Ok(None),
            Some((v, line)) => v.parse::<usize>().map(Some).map_err(|_| {
                CliError::Usage(format!(
                    "{}:{}: field {key}: {v:?} is not a count",
                    self.path.display(),
                    line
                ))
            }),
        }
    }

    pub fn parse_enum<T: clap::ValueEnum>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.entries.get(key) {
            None => Ok(None),
            Some((v, line)) => T::from_str(v, true).map(Some).map_err(|e| {
                CliError::Usage(format!(
                    "{}:{}: field {key}: {e}",
                    self.path.display(),
                    line
                ))
            }),
        }
    }
}
