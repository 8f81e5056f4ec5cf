//! Line-oriented `key=value` run configuration.

use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::learners::LearnerConfig;
use crate::oracles::{OracleConfig, Universe};
use crate::problems::Context;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("line {line}: expected key=value")]
    Syntax { line: usize },
    #[error("line {line}: unknown key {key:?}")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: {key} must be a non-negative integer")]
    Value { line: usize, key: String },
}

/// Every knob of a run. Unset optional knobs follow the oracle settings.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub oracle: OracleConfig,
    pub stability_window: Option<u64>,
    pub max_steps: Option<u64>,
    pub ceiling: Option<u64>,
    pub components: Option<u64>,
}

impl RunConfig {
    pub const KEYS: [&'static str; 7] = [
        "cap",
        "window",
        "index_bound",
        "stability_window",
        "max_steps",
        "ceiling",
        "components",
    ];

    pub fn set(&mut self, key: &str, value: u64) -> bool {
        match key {
            "cap" => self.oracle.cap = value,
            "window" => self.oracle.window = value,
            "index_bound" => self.oracle.index_bound = value,
            "stability_window" => self.stability_window = Some(value),
            "max_steps" => self.max_steps = Some(value),
            "ceiling" => self.ceiling = Some(value),
            "components" => self.components = Some(value),
            _ => return false,
        }
        true
    }

    pub fn learner(&self) -> LearnerConfig {
        let base = LearnerConfig::for_oracle(&self.oracle);
        LearnerConfig {
            stability_window: self.stability_window.unwrap_or(base.stability_window),
            max_steps: self.max_steps.unwrap_or(base.max_steps),
        }
    }

    pub fn context(&self) -> Context {
        self.context_with(Arc::new(Universe::build(self.oracle)))
    }

    pub fn context_with(&self, universe: Arc<Universe>) -> Context {
        let mut cx = Context::with_universe(universe);
        if let Some(c) = self.ceiling {
            cx.ceiling = c;
        }
        if let Some(c) = self.components {
            cx.components = c;
        }
        cx
    }

    /// The effective value of every key, in [`RunConfig::KEYS`] order.
    pub fn effective(&self) -> Vec<(&'static str, u64)> {
        let l = self.learner();
        let values = [
            self.oracle.cap,
            self.oracle.window,
            self.oracle.index_bound,
            l.stability_window,
            l.max_steps,
            self.ceiling.unwrap_or(self.oracle.index_bound + 64),
            self.components.unwrap_or(4),
        ];
        Self::KEYS.into_iter().zip(values).collect()
    }

    /// The effective settings as `key=value` lines.
    pub fn echo(&self) -> String {
        self.effective()
            .into_iter()
            .map(|(k, v)| format!("{k}={v}\n"))
            .collect()
    }
}

impl FromStr for RunConfig {
    type Err = ConfigError;

    /// Blank lines and `#` comments are ignored.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut cfg = RunConfig::default();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (key, value) = body.split_once('=').ok_or(ConfigError::Syntax { line })?;
            let key = key.trim();
            let value: u64 = value.trim().parse().map_err(|_| ConfigError::Value {
                line,
                key: key.to_string(),
            })?;
            if !cfg.set(key, value) {
                return Err(ConfigError::UnknownKey {
                    line,
                    key: key.to_string(),
                });
            }
        }
        Ok(cfg)
    }
}
