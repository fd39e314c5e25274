//! Bundled default lexicons and configuration. Each can be replaced by a file
//! of the same layout through [`crate::config::EngineConfig`].

pub const TAG_LEXICON: &str = include_str!("../resources/tag_lexicon.tsv");
pub const STOPWORDS: &str = include_str!("../resources/stopwords.txt");
pub const FREQUENCY_SEED: &str = include_str!("../resources/frequency_seed.tsv");
pub const SYNONYMS: &str = include_str!("../resources/synonyms.tsv");
pub const SENTIMENT_SEED: &str = include_str!("../resources/sentiment_seed.tsv");
pub const GUEST_PROFILES: &str = include_str!("../resources/guest_profiles.conf");
