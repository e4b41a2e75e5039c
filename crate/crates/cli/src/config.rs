//! Run settings resolved from defaults, environment, an optional TOML file
//! and command-line flags, in increasing order of precedence.

use std::path::{Path, PathBuf};

use ectk_core::matrixtree::DEFAULT_DET_CAP;
use ectk_core::oracle::DEFAULT_ENUMERATION_CAP;
use ectk_core::{Error, Result, Shape};
use serde::Deserialize;

pub const ENV_ENUM_CAP: &str = "ECTK_ENUM_CAP";
pub const ENV_DET_CAP: &str = "ECTK_DET_CAP";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub shape: Option<Shape>,
    pub enumeration_cap: u64,
    pub det_cap: usize,
    pub seed: u64,
    pub workers: usize,
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            shape: None,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            det_cap: DEFAULT_DET_CAP,
            seed: 0,
            workers: default_workers(),
            output: None,
            format: Format::Json,
        }
    }
}

pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Flat keys accepted in a config file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub shape: Option<String>,
    pub enum_cap: Option<u64>,
    pub det_cap: Option<usize>,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(format!("config file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read config file {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

/// Values given on the command line; `None` means not given.
#[derive(Clone, Debug, Default)]
pub struct FlagOverrides {
    pub shape: Option<String>,
    pub enumeration_cap: Option<u64>,
    pub det_cap: Option<usize>,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
}

fn env_cap<T: std::str::FromStr>(
    env: &dyn Fn(&str) -> Option<String>,
    name: &str,
) -> Result<Option<T>> {
    match env(name) {
        None => Ok(None),
        Some(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::Parse(format!("{name}={v:?} is not a non-negative integer"))),
    }
}

impl RunConfig {
    /// Resolves `defaults < env < file < flags`. `env` looks up a variable.
    pub fn resolve(
        env: &dyn Fn(&str) -> Option<String>,
        file: Option<FileConfig>,
        flags: FlagOverrides,
    ) -> Result<Self> {
        let mut cfg = RunConfig::default();
        if let Some(cap) = env_cap(env, ENV_ENUM_CAP)? {
            cfg.enumeration_cap = cap;
        }
        if let Some(cap) = env_cap(env, ENV_DET_CAP)? {
            cfg.det_cap = cap;
        }
        let file = file.unwrap_or_default();
        let shape = flags.shape.or(file.shape);
        cfg.shape = shape.map(|s| s.parse()).transpose()?;
        cfg.enumeration_cap = flags.enumeration_cap.or(file.enum_cap).unwrap_or(cfg.enumeration_cap);
        cfg.det_cap = flags.det_cap.or(file.det_cap).unwrap_or(cfg.det_cap);
        cfg.seed = flags.seed.or(file.seed).unwrap_or(cfg.seed);
        cfg.workers = flags.workers.or(file.workers).unwrap_or(cfg.workers);
        cfg.output = flags.output.or(file.output);
        cfg.format = flags.format.or(file.format).unwrap_or(cfg.format);
        if cfg.enumeration_cap == 0 || cfg.det_cap == 0 || cfg.workers == 0 {
            return Err(Error::Parse("caps and worker count must be positive".into()));
        }
        Ok(cfg)
    }

    pub fn require_shape(&self) -> Result<&Shape> {
        self.shape
            .as_ref()
            .ok_or_else(|| Error::Parse("a shape is required (--shape 2,3 or `shape` in the config file)".into()))
    }
}
