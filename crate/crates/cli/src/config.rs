use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Clifford,
    PropMain,
    Epsilon,
    Serre,
    Ptb,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Clifford, Suite::PropMain, Suite::Epsilon, Suite::Serre, Suite::Ptb];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Clifford => "clifford",
            Suite::PropMain => "prop-main",
            Suite::Epsilon => "epsilon",
            Suite::Serre => "serre",
            Suite::Ptb => "ptb",
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("bad config: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("{0} is not an odd prime")]
    Prime(i64),
    #[error("level {0} is outside 1..=3")]
    Level(u32),
    #[error("no primes selected")]
    NoPrimes,
}

/// Everything a run depends on. Missing keys in a config file take the
/// defaults below.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub suites: Vec<Suite>,
    pub primes: Vec<i64>,
    /// Primes for the trace-zero checks; those not in `primes` are skipped.
    pub ggp_primes: Vec<i64>,
    pub level: u32,
    pub seed: u64,
    pub serre_corpus: usize,
    pub ptb_corpus: usize,
    pub direct_sums: usize,
    pub groups: Vec<PathBuf>,
    /// Run the group suites with a second coset representative as well.
    pub alt_s: bool,
    /// Skip the built-in battery and use only `groups`.
    pub no_battery: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suites: Suite::ALL.to_vec(),
            primes: vec![3, 5, 7],
            ggp_primes: vec![3, 5],
            level: 2,
            seed: 20240611,
            serre_corpus: 200,
            ptb_corpus: 100,
            direct_sums: 50,
            groups: vec![],
            alt_s: false,
            no_battery: false,
        }
    }
}

fn is_odd_prime(p: i64) -> bool {
    p > 2 && p % 2 == 1 && (3..).step_by(2).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl SuiteConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let cfg: SuiteConfig = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.into(), source })?;
        Self::from_toml(&text)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let needs_primes = self.suites.iter().any(|s| matches!(s, Suite::Epsilon | Suite::Serre | Suite::Ptb));
        if needs_primes && self.primes.is_empty() {
            return Err(ConfigError::NoPrimes);
        }
        if let Some(&p) = self.primes.iter().chain(&self.ggp_primes).find(|&&p| !is_odd_prime(p)) {
            return Err(ConfigError::Prime(p));
        }
        if !(1..=3).contains(&self.level) {
            return Err(ConfigError::Level(self.level));
        }
        Ok(())
    }

    pub fn runs(&self, s: Suite) -> bool {
        self.suites.contains(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip() {
        let cfg = SuiteConfig::default();
        let text = toml::to_string(&cfg).unwrap();
        assert_eq!(SuiteConfig::from_toml(&text).unwrap(), cfg);
        assert_eq!(SuiteConfig::from_toml("").unwrap(), cfg);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(matches!(SuiteConfig::from_toml("primes = [3, 9]"), Err(ConfigError::Prime(9))));
        assert!(matches!(SuiteConfig::from_toml("primes = [2]"), Err(ConfigError::Prime(2))));
        assert!(matches!(SuiteConfig::from_toml("level = 4"), Err(ConfigError::Level(4))));
        assert!(matches!(SuiteConfig::from_toml("colour = 1"), Err(ConfigError::Toml(_))));
        assert!(matches!(SuiteConfig::from_toml("primes = []"), Err(ConfigError::NoPrimes)));
        let only = SuiteConfig::from_toml("suites = [\"clifford\"]\nprimes = []").unwrap();
        assert!(only.runs(Suite::Clifford) && !only.runs(Suite::Serre));
    }
}
