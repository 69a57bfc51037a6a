//! Run configuration: a TOML file, command-line flags on top, documented
//! defaults underneath.
//!
//! ```toml
//! suite = "corollary1"
//! n = 6
//! trials = 20
//! samples = 200000
//! seed = 7
//! confidence = 0.99
//! output = "corollary1.csv"
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use gcorr::Suite;

use crate::CliError;

pub const DEFAULT_SUITE: &str = "all";
pub const DEFAULT_N: usize = 4;
pub const DEFAULT_TRIALS: usize = 50;
pub const DEFAULT_SAMPLES: usize = 1_000_000;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_CONFIDENCE: f64 = 0.99;
pub const MIN_SAMPLES: usize = 100;

/// Every field optional; also the shape of the flag overrides.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    pub suite: Option<String>,
    pub n: Option<usize>,
    pub trials: Option<usize>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub confidence: Option<f64>,
    pub output: Option<PathBuf>,
}

impl PartialConfig {
    pub fn from_toml(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml(&text).map_err(|e| CliError::Config {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }

    /// Fields set in `self` win over those in `below`.
    pub fn over(self, below: PartialConfig) -> PartialConfig {
        PartialConfig {
            suite: self.suite.or(below.suite),
            n: self.n.or(below.n),
            trials: self.trials.or(below.trials),
            samples: self.samples.or(below.samples),
            seed: self.seed.or(below.seed),
            confidence: self.confidence.or(below.confidence),
            output: self.output.or(below.output),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub suite: String,
    pub n: usize,
    pub trials: usize,
    pub samples: usize,
    pub seed: u64,
    pub confidence: f64,
    /// `None` writes CSV to standard output.
    pub output: Option<PathBuf>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            suite: DEFAULT_SUITE.into(),
            n: DEFAULT_N,
            trials: DEFAULT_TRIALS,
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            confidence: DEFAULT_CONFIDENCE,
            output: None,
        }
    }
}

impl SuiteConfig {
    pub fn from_partial(p: PartialConfig) -> Result<Self, CliError> {
        let d = SuiteConfig::default();
        let cfg = SuiteConfig {
            suite: p.suite.unwrap_or(d.suite),
            n: p.n.unwrap_or(d.n),
            trials: p.trials.unwrap_or(d.trials),
            samples: p.samples.unwrap_or(d.samples),
            seed: p.seed.unwrap_or(d.seed),
            confidence: p.confidence.unwrap_or(d.confidence),
            output: p.output.or(d.output),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Invalid(m));
        if self.n < 1 {
            return bad("n must be >= 1".into());
        }
        if self.trials < 1 {
            return bad("trials must be >= 1".into());
        }
        if self.samples < MIN_SAMPLES {
            return bad(format!("samples must be >= {MIN_SAMPLES} (got {})", self.samples));
        }
        if !(self.confidence > 0.0 && self.confidence < 1.0) {
            return bad(format!("confidence must lie in (0, 1) (got {})", self.confidence));
        }
        Suite::select(&self.suite)?;
        Ok(())
    }

    pub fn suites(&self) -> Result<Vec<Suite>, CliError> {
        Ok(Suite::select(&self.suite)?)
    }
}

/// Flags over the optional file over the defaults.
pub fn parse_config(path: Option<&Path>, flags: PartialConfig) -> Result<SuiteConfig, CliError> {
    let file = match path {
        Some(p) => PartialConfig::load(p)?,
        None => PartialConfig::default(),
    };
    SuiteConfig::from_partial(flags.over(file))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_flags_give_defaults() {
        let cfg = parse_config(None, PartialConfig::default()).unwrap();
        assert_eq!(cfg, SuiteConfig::default());
        assert_eq!((cfg.n, cfg.trials, cfg.samples, cfg.seed), (4, 50, 1_000_000, 42));
        assert_eq!(cfg.confidence, 0.99);
    }

    #[test]
    fn flags_win_over_file() {
        let file = PartialConfig::from_toml("n = 6\ntrials = 3\n").unwrap();
        let flags = PartialConfig {
            n: Some(2),
            ..Default::default()
        };
        let cfg = SuiteConfig::from_partial(flags.over(file)).unwrap();
        assert_eq!((cfg.n, cfg.trials), (2, 3));
    }

    #[test]
    fn out_of_range_values_are_rejected() {
        for p in [
            PartialConfig {
                confidence: Some(1.5),
                ..Default::default()
            },
            PartialConfig {
                confidence: Some(0.0),
                ..Default::default()
            },
            PartialConfig {
                n: Some(0),
                ..Default::default()
            },
            PartialConfig {
                trials: Some(0),
                ..Default::default()
            },
            PartialConfig {
                samples: Some(99),
                ..Default::default()
            },
            PartialConfig {
                suite: Some("pitt".into()),
                ..Default::default()
            },
        ] {
            assert!(SuiteConfig::from_partial(p).is_err());
        }
    }

    #[test]
    fn unknown_keys_are_malformed() {
        assert!(PartialConfig::from_toml("dimension = 3\n").is_err());
        assert!(PartialConfig::from_toml("n = \"four\"\n").is_err());
    }
}
