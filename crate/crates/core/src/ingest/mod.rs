//! Multi-source review datasets: parsing, rank normalization and snapshot
//! persistence.

pub mod metadata;
pub mod model;
pub mod normalize;
pub mod parse;
pub mod storage;

pub use metadata::{load_hotels, load_sources, parse_hotels, parse_sources};
pub use model::{
    CorpusSnapshot, DataSourceDescriptor, HotelRecord, RatingVector, ReviewRecord, SourceListing, SCHEMA_VERSION,
};
pub use normalize::normalize_rank;
pub use parse::{parse_review_file, parse_reviews_str, ParsedReviews};
pub use storage::{FileStore, SnapshotStore};
