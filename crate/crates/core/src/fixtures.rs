//! A bundled five-hotel, two-source sample corpus.

use crate::error::{Error, Result};
use crate::ingest::{parse_hotels, parse_reviews_str, parse_sources, CorpusSnapshot};

pub const SOURCES_CSV: &str = include_str!("../fixtures/sources.csv");
pub const HOTELS_CSV: &str = include_str!("../fixtures/hotels.csv");
pub const REVIEWS_D1: &str = include_str!("../fixtures/reviews_d1.json");
pub const REVIEWS_D2: &str = include_str!("../fixtures/reviews_d2.json");

/// The sample review whose sentences cover a plain adjective, a compound
/// noun and a negated feature.
pub const SAMPLE_REVIEW_ID: &str = "D1-R000";

pub fn sample_snapshot() -> Result<CorpusSnapshot> {
    let sources = parse_sources(SOURCES_CSV)?;
    let hotels = parse_hotels(HOTELS_CSV)?;
    let mut reviews = Vec::new();
    for (source_id, text) in [("D1", REVIEWS_D1), ("D2", REVIEWS_D2)] {
        let source = sources
            .iter()
            .find(|s| s.source_id == source_id)
            .ok_or_else(|| Error::Config(format!("sample source {source_id} missing")))?;
        reviews.extend(parse_reviews_str(text, source)?.records);
    }
    let snapshot = CorpusSnapshot::new(sources, hotels, reviews);
    snapshot.validate()?;
    Ok(snapshot)
}
