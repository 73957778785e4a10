//! Run configuration: defaults, optional TOML config file, and flag
//! overrides (flags win over file values).

use crate::{AppError, AppResult};
use serde::Deserialize;
use std::path::{Path, PathBuf};

/// Optional config file contents. Field names match the long flags.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub reviews: Option<PathBuf>,
    pub reviews_format: Option<String>,
    pub apps: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub dict: Option<PathBuf>,
    pub frequencies: Option<PathBuf>,
    pub stoplist: Option<PathBuf>,
    pub sentiment_lexicon: Option<PathBuf>,
    pub boosters: Option<PathBuf>,
    pub negations: Option<PathBuf>,
    pub tag_lexicon: Option<PathBuf>,
    pub patterns: Option<PathBuf>,
    pub allowlist: Option<PathBuf>,
    pub p_threshold: Option<f64>,
    pub sentiment_boundary: Option<f64>,
    pub min_tokens: Option<usize>,
    pub workers: Option<usize>,
    pub format: Option<String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> AppResult<FileConfig> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| AppError::Io(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| AppError::Data(format!("config {}: {e}", path.display())))
    }
}

/// Fully resolved thresholds for a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    pub p_threshold: f64,
    pub sentiment_boundary: f64,
    pub min_tokens: usize,
    pub workers: usize,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            p_threshold: 0.05,
            sentiment_boundary: 0.05,
            min_tokens: 3,
            workers: 1,
        }
    }
}

impl Thresholds {
    pub fn validate(&self) -> AppResult<()> {
        if !(self.p_threshold > 0.0 && self.p_threshold <= 1.0) {
            return Err(AppError::Usage(format!(
                "--p-threshold must be in (0, 1], got {}",
                self.p_threshold
            )));
        }
        if !(self.sentiment_boundary > 0.0 && self.sentiment_boundary <= 1.0) {
            return Err(AppError::Usage(format!(
                "--sentiment-boundary must be in (0, 1], got {}",
                self.sentiment_boundary
            )));
        }
        if self.min_tokens < 1 {
            return Err(AppError::Usage(
                "--min-tokens must be at least 1".to_string(),
            ));
        }
        if self.workers < 1 {
            return Err(AppError::Usage("--workers must be at least 1".to_string()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn file_config_parses() {
        let mut f = tempfile::Builder::new().suffix(".toml").tempfile().unwrap();
        writeln!(
            f,
            "reviews = \"r.jsonl\"\np_threshold = 0.1\nworkers = 4\nformat = \"md\""
        )
        .unwrap();
        let cfg = FileConfig::load(f.path()).unwrap();
        assert_eq!(cfg.reviews.as_deref(), Some(Path::new("r.jsonl")));
        assert_eq!(cfg.p_threshold, Some(0.1));
        assert_eq!(cfg.workers, Some(4));
        assert_eq!(cfg.format.as_deref(), Some("md"));
    }

    #[test]
    fn unknown_config_key_rejected() {
        let mut f = tempfile::Builder::new().suffix(".toml").tempfile().unwrap();
        writeln!(f, "no_such_key = 1").unwrap();
        assert!(FileConfig::load(f.path()).is_err());
    }

    #[test]
    fn threshold_validation() {
        let mut t = Thresholds::default();
        assert!(t.validate().is_ok());
        t.p_threshold = 0.0;
        assert!(t.validate().is_err());
        t.p_threshold = 1.0;
        assert!(t.validate().is_ok());
        t.min_tokens = 0;
        assert!(t.validate().is_err());
    }
}
