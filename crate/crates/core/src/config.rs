//! Resource bounds shared by the library and the command line.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::parallel::Execution;
use crate::perm::MAX_RANK;

pub const MAX_N_ENV: &str = "CONDORCET_MAX_N";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("{field} must be positive")]
    NotPositive { field: &'static str },
    #[error("max_n {value} exceeds the supported maximum {max}")]
    MaxNTooLarge { value: usize, max: usize },
    #[error("cannot parse {var}={value}")]
    BadEnv { var: &'static str, value: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub max_n: usize,
    /// Worker threads for ideal streams and sweeps; `None` uses every core.
    pub ideal_stream_workers: Option<usize>,
    pub class_bfs_limit: usize,
    pub bruhat_node_budget: usize,
    pub fold_search_bound: usize,
    pub format: OutputFormat,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_n: MAX_RANK,
            ideal_stream_workers: None,
            class_bfs_limit: 1_000_000,
            bruhat_node_budget: 100_000,
            fold_search_bound: 40,
            format: OutputFormat::Text,
        }
    }
}

impl Config {
    /// Defaults with `CONDORCET_MAX_N` applied when set.
    pub fn from_env() -> Result<Self, ConfigError> {
        let mut config = Config::default();
        if let Ok(value) = std::env::var(MAX_N_ENV) {
            config.max_n = value.trim().parse().map_err(|_| ConfigError::BadEnv {
                var: MAX_N_ENV,
                value: value.clone(),
            })?;
        }
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let positive = [
            ("max_n", self.max_n),
            ("ideal_stream_workers", self.ideal_stream_workers.unwrap_or(1)),
            ("class_bfs_limit", self.class_bfs_limit),
            ("bruhat_node_budget", self.bruhat_node_budget),
            ("fold_search_bound", self.fold_search_bound),
        ];
        if let Some((field, _)) = positive.iter().find(|(_, v)| *v == 0) {
            return Err(ConfigError::NotPositive { field });
        }
        if self.max_n > MAX_RANK {
            return Err(ConfigError::MaxNTooLarge {
                value: self.max_n,
                max: MAX_RANK,
            });
        }
        Ok(())
    }

    pub fn execution(&self) -> Execution {
        match self.ideal_stream_workers {
            Some(1) => Execution::Sequential,
            _ => Execution::Parallel,
        }
    }
}
