//! Hotel recommendation from heterogeneous review sources.
//!
//! Reviews from several sites are tokenized, spell-corrected, tagged and
//! mined for feature/opinion pairs; TF-IDF weighted lexicon sentiment gives
//! review polarity, which is aggregated with source ranks, votes and video
//! views into a normalized final score and a fuzzy recommendation class.
//! Guest-type profiles order hotels within a class, item-based collaborative
//! filtering fills gaps in feature polarity, and an evaluation harness
//! measures precision, recall and F-measure under incremental updates.

pub mod config;
pub mod engine;
pub mod error;
pub mod fixtures;
pub mod ingest;
pub mod recommend;
pub mod resources;
pub mod scoring;
pub mod semantics;
pub mod sentiment;
pub mod service;
pub mod textpipe;

pub use config::EngineConfig;
pub use engine::{AnalyzedReview, Engine, LabelCounts, ScoredCorpus};
pub use error::{Error, Result};
pub use ingest::{CorpusSnapshot, DataSourceDescriptor, HotelRecord, ReviewRecord, SourceListing};
pub use recommend::{EvalCounts, HotelFilter, RecommendQuery, RecommendationEntry, TimingReport};
pub use scoring::{FuzzyClass, GuestProfile, GuestProfiles, GuestType, HotelAggregate, SourceAggregate};
pub use service::{ApiError, QueryService, ServiceState};
