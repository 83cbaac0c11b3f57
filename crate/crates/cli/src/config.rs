//! Runtime configuration: degree guard, default output format, seed.
//!
//! Precedence: command-line flag, then the `GSN_MAX_DEGREE` environment
//! variable, then the config file (simple `key=value` lines), then the
//! built-in defaults.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use anyhow::{bail, Context, Result};

pub const DEFAULT_MAX_DEGREE: usize = 64;
pub const ENV_MAX_DEGREE: &str = "GSN_MAX_DEGREE";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
    Markdown,
    Bfile,
}

impl FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            "markdown" | "md" => Ok(OutputFormat::Markdown),
            "bfile" => Ok(OutputFormat::Bfile),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
            OutputFormat::Markdown => "markdown",
            OutputFormat::Bfile => "bfile",
        };
        write!(f, "{s}")
    }
}

/// Effective configuration after merging flags, environment and file.
#[derive(Clone, Debug)]
pub struct CliConfig {
    /// Maximum admissible `rp + sigma`; computations above it are refused.
    pub max_degree: usize,
    /// Default output format for table-producing commands.
    pub format: OutputFormat,
    /// Seed for the randomized grid extension.
    pub seed: Option<u64>,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig {
            max_degree: DEFAULT_MAX_DEGREE,
            format: OutputFormat::Csv,
            seed: None,
        }
    }
}

impl CliConfig {
    /// Build the effective config. `flag_*` values come from the command
    /// line and win over everything.
    pub fn resolve(
        config_path: Option<&Path>,
        flag_max_degree: Option<usize>,
        flag_seed: Option<u64>,
    ) -> Result<Self> {
        let mut cfg = CliConfig::default();
        if let Some(path) = config_path {
            cfg.apply_file(path)
                .with_context(|| format!("reading config file {}", path.display()))?;
        }
        if let Ok(v) = std::env::var(ENV_MAX_DEGREE) {
            let parsed: usize = v
                .trim()
                .parse()
                .with_context(|| format!("{ENV_MAX_DEGREE} must be a non-negative integer, got `{v}`"))?;
            cfg.max_degree = parsed;
        }
        if let Some(v) = flag_max_degree {
            cfg.max_degree = v;
        }
        if let Some(s) = flag_seed {
            cfg.seed = Some(s);
        }
        Ok(cfg)
    }

    fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)?;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("line {}: expected key=value, got `{line}`", lineno + 1);
            };
            let (key, value) = (key.trim(), value.trim());
            match key {
                "max_degree" => {
                    self.max_degree = value
                        .parse()
                        .with_context(|| format!("line {}: bad max_degree", lineno + 1))?;
                }
                "format" => {
                    self.format = value
                        .parse()
                        .map_err(|e: String| anyhow::anyhow!("line {}: {e}", lineno + 1))?;
                }
                "seed" => {
                    self.seed = Some(
                        value
                            .parse()
                            .with_context(|| format!("line {}: bad seed", lineno + 1))?,
                    );
                }
                other => bail!("line {}: unknown key `{other}`", lineno + 1),
            }
        }
        Ok(())
    }

    /// Enforce the degree guard before dispatching a computation.
    pub fn check_degree(&self, degree: usize) -> Result<(), usize> {
        if degree > self.max_degree {
            Err(degree)
        } else {
            Ok(())
        }
    }
}
