//! Engine configuration, read from TOML. Every field has a default.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scoring::{AggregationMode, GuestType};

/// Optional replacements for the bundled lexicons.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ResourcePaths {
    pub tag_lexicon: Option<PathBuf>,
    pub frequency_lexicon: Option<PathBuf>,
    pub stopwords: Option<PathBuf>,
    pub synonyms: Option<PathBuf>,
    pub sentiment_lexicon: Option<PathBuf>,
    pub guest_profiles: Option<PathBuf>,
}

impl ResourcePaths {
    fn resolve(&mut self, base: &Path) {
        for p in [
            &mut self.tag_lexicon,
            &mut self.frequency_lexicon,
            &mut self.stopwords,
            &mut self.synonyms,
            &mut self.sentiment_lexicon,
            &mut self.guest_profiles,
        ]
        .into_iter()
        .flatten()
        {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EngineConfig {
    pub resources: ResourcePaths,
    /// Neighbors used when predicting missing feature polarities.
    pub neighbors: usize,
    /// Corpus words seen at least this often join the spelling dictionary.
    pub min_corpus_frequency: u64,
    pub aggregation: AggregationMode,
    pub seed: u64,
    /// Size of the recommended list in evaluation.
    pub top_n: usize,
    /// Normalized overall rating at or above which a hotel is relevant.
    pub relevance_threshold: f64,
    pub eval_guest_type: GuestType,
    pub port: u16,
    pub result_limit: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            resources: ResourcePaths::default(),
            neighbors: 5,
            min_corpus_frequency: 2,
            aggregation: AggregationMode::MeanThenViews,
            seed: 0,
            top_n: 3,
            relevance_threshold: 4.0,
            eval_guest_type: GuestType::Family,
            port: 8080,
            result_limit: 50,
        }
    }
}

impl EngineConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.check()?;
        Ok(cfg)
    }

    /// Relative resource paths are taken relative to the file's directory.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut cfg = Self::parse(&std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?)?;
        if let Some(dir) = path.parent() {
            cfg.resources.resolve(dir);
        }
        Ok(cfg)
    }

    fn check(&self) -> Result<()> {
        if self.neighbors == 0 {
            return Err(Error::Config("neighbors must be at least 1".into()));
        }
        if self.top_n == 0 {
            return Err(Error::Config("top_n must be at least 1".into()));
        }
        if self.result_limit == 0 {
            return Err(Error::Config("result_limit must be at least 1".into()));
        }
        Ok(())
    }
}
