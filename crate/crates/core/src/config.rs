//! Run settings from a `key=value` file and the environment.

use std::path::Path;

use crate::error::{Error, Result};

/// Environment variable that overrides the configured thread count.
pub const THREADS_ENV: &str = "BMZS_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    pub threads: usize,
    /// `None` means `ceil(k / 2)` for each weight.
    pub memo_max_degree: Option<u32>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            threads: 1,
            memo_max_degree: None,
        }
    }
}

impl Config {
    /// Parses `threads=N` and `memo_max_degree=D` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Config::default();
        for (pos, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(pos + 1, "expected key=value"))?;
            let value = value.trim();
            let number = || {
                value.parse::<u32>().ok().filter(|&v| v > 0).ok_or_else(|| {
                    Error::parse(pos + 1, format!("`{value}` is not a positive integer"))
                })
            };
            match key.trim() {
                "threads" => cfg.threads = number()? as usize,
                "memo_max_degree" => cfg.memo_max_degree = Some(number()?),
                other => return Err(Error::parse(pos + 1, format!("unknown key `{other}`"))),
            }
        }
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Config::parse(&std::fs::read_to_string(path)?)
    }

    /// Applies the thread override from [`THREADS_ENV`] when set.
    pub fn with_env(mut self) -> Result<Self> {
        if let Ok(v) = std::env::var(THREADS_ENV) {
            self.threads = v
                .trim()
                .parse()
                .ok()
                .filter(|&t: &usize| t > 0)
                .ok_or_else(|| {
                    Error::Precondition(format!("{THREADS_ENV}=`{v}` is not a positive integer"))
                })?;
        }
        Ok(self)
    }
}
