use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// A review site together with the native scale of its rank and rating values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DataSourceDescriptor {
    pub source_id: String,
    pub display_name: String,
    pub rank_scale_min: f64,
    pub rank_scale_max: f64,
}

impl DataSourceDescriptor {
    pub fn new(source_id: &str, display_name: &str, min: f64, max: f64) -> Self {
        Self {
            source_id: source_id.to_string(),
            display_name: display_name.to_string(),
            rank_scale_min: min,
            rank_scale_max: max,
        }
    }

    pub fn contains(&self, value: f64) -> bool {
        value >= self.rank_scale_min && value <= self.rank_scale_max
    }
}

/// Criterion name (service, cleanliness, overall, ...) to native-scale rating.
pub type RatingVector = BTreeMap<String, f64>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReviewRecord {
    pub review_id: String,
    pub hotel_id: String,
    pub source_id: String,
    pub title: String,
    pub text: String,
    pub ratings: RatingVector,
    pub author_username: String,
    pub date: String,
    pub helpful_votes: u64,
}

/// Rank and vote count a hotel holds on one source.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SourceListing {
    pub rank: f64,
    pub votes: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HotelRecord {
    pub hotel_id: String,
    pub name: String,
    pub city: String,
    pub region: String,
    /// Keyed by source id; ranks are on the source's native scale.
    pub listings: BTreeMap<String, SourceListing>,
    pub engagement_views: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusSnapshot {
    pub schema_version: u32,
    pub sources: Vec<DataSourceDescriptor>,
    pub hotels: Vec<HotelRecord>,
    pub reviews: Vec<ReviewRecord>,
}

impl Default for CorpusSnapshot {
    fn default() -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            sources: Vec::new(),
            hotels: Vec::new(),
            reviews: Vec::new(),
        }
    }
}

impl CorpusSnapshot {
    pub fn new(sources: Vec<DataSourceDescriptor>, hotels: Vec<HotelRecord>, reviews: Vec<ReviewRecord>) -> Self {
        let mut snapshot = Self {
            schema_version: SCHEMA_VERSION,
            sources,
            hotels,
            reviews,
        };
        snapshot.sort();
        snapshot
    }

    /// Sorts every collection by id so serialization is deterministic.
    pub fn sort(&mut self) {
        self.sources.sort_by(|a, b| a.source_id.cmp(&b.source_id));
        self.hotels.sort_by(|a, b| a.hotel_id.cmp(&b.hotel_id));
        self.reviews.sort_by(|a, b| a.review_id.cmp(&b.review_id));
    }

    pub fn source(&self, source_id: &str) -> Option<&DataSourceDescriptor> {
        self.sources.iter().find(|s| s.source_id == source_id)
    }

    pub fn hotel(&self, hotel_id: &str) -> Option<&HotelRecord> {
        self.hotels.iter().find(|h| h.hotel_id == hotel_id)
    }

    /// Copy of this snapshot holding only the given reviews.
    pub fn with_reviews(&self, reviews: Vec<ReviewRecord>) -> Self {
        let mut s = Self {
            schema_version: self.schema_version,
            sources: self.sources.clone(),
            hotels: self.hotels.clone(),
            reviews,
        };
        s.sort();
        s
    }

    /// Checks referential integrity and value ranges. The error lists every
    /// offending id.
    pub fn validate(&self) -> Result<()> {
        let mut bad: BTreeSet<String> = BTreeSet::new();

        let mut sources = BTreeMap::new();
        for s in &self.sources {
            if s.rank_scale_min.partial_cmp(&s.rank_scale_max) != Some(std::cmp::Ordering::Less) {
                bad.insert(format!("source:{} (scale)", s.source_id));
            }
            if sources.insert(s.source_id.as_str(), s).is_some() {
                bad.insert(format!("source:{} (duplicate)", s.source_id));
            }
        }

        let mut hotels = BTreeSet::new();
        for h in &self.hotels {
            if !hotels.insert(h.hotel_id.as_str()) {
                bad.insert(format!("hotel:{} (duplicate)", h.hotel_id));
            }
            for (source_id, listing) in &h.listings {
                match sources.get(source_id.as_str()) {
                    None => {
                        bad.insert(format!("source:{source_id}"));
                    }
                    Some(src) if !src.contains(listing.rank) => {
                        bad.insert(format!("hotel:{} (rank out of scale)", h.hotel_id));
                    }
                    Some(_) => {}
                }
            }
        }

        let mut reviews = BTreeSet::new();
        for r in &self.reviews {
            if !reviews.insert(r.review_id.as_str()) {
                bad.insert(format!("review:{} (duplicate)", r.review_id));
            }
            if r.text.trim().is_empty() {
                bad.insert(format!("review:{} (empty text)", r.review_id));
            }
            if !hotels.contains(r.hotel_id.as_str()) {
                bad.insert(format!("hotel:{}", r.hotel_id));
            }
            match sources.get(r.source_id.as_str()) {
                None => {
                    bad.insert(format!("source:{}", r.source_id));
                }
                Some(src) => {
                    if r.ratings.values().any(|v| !src.contains(*v)) {
                        bad.insert(format!("review:{} (rating out of scale)", r.review_id));
                    }
                }
            }
        }

        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation {
                ids: bad.into_iter().collect(),
            })
        }
    }
}
