use serde::{Deserialize, Serialize};

use crate::engine::ScoredCorpus;
use crate::error::Result;
use crate::ingest::{normalize_rank, CorpusSnapshot, HotelRecord};
use crate::scoring::{classify, final_score, rank_order, FuzzyClass, GuestType, RankKey};

/// Hotel predicates; unset fields match everything.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct HotelFilter {
    /// Case-insensitive substring of the hotel name.
    pub name_contains: Option<String>,
    pub city: Option<String>,
    pub region: Option<String>,
    /// Normalized rank reached by at least one source.
    pub min_rating: Option<f64>,
}

fn same_text(a: &str, b: &str) -> bool {
    a.trim().eq_ignore_ascii_case(b.trim())
}

/// Highest normalized rank across the hotel's listings.
pub fn max_normalized_rank(hotel: &HotelRecord, snapshot: &CorpusSnapshot) -> Option<f64> {
    hotel
        .listings
        .iter()
        .filter_map(|(s, l)| normalize_rank(l.rank, snapshot.source(s)?).ok())
        .reduce(f64::max)
}

impl HotelFilter {
    pub fn is_empty(&self) -> bool {
        self.name_contains.is_none() && self.city.is_none() && self.region.is_none() && self.min_rating.is_none()
    }

    pub fn matches(&self, hotel: &HotelRecord, snapshot: &CorpusSnapshot) -> bool {
        if let Some(n) = &self.name_contains {
            if !hotel.name.to_lowercase().contains(&n.trim().to_lowercase()) {
                return false;
            }
        }
        if self.city.as_ref().is_some_and(|c| !same_text(c, &hotel.city)) {
            return false;
        }
        if self.region.as_ref().is_some_and(|r| !same_text(r, &hotel.region)) {
            return false;
        }
        if let Some(min) = self.min_rating {
            return max_normalized_rank(hotel, snapshot).is_some_and(|r| r >= min);
        }
        true
    }
}

pub fn search<'a>(filter: &HotelFilter, snapshot: &'a CorpusSnapshot) -> Vec<&'a HotelRecord> {
    snapshot.hotels.iter().filter(|h| filter.matches(h, snapshot)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecommendQuery {
    pub guest_type: GuestType,
    #[serde(default)]
    pub filter: HotelFilter,
}

impl RecommendQuery {
    pub fn new(guest_type: GuestType) -> Self {
        Self {
            guest_type,
            filter: HotelFilter::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecommendationEntry {
    pub hotel_id: String,
    pub name: String,
    pub city: String,
    pub region: String,
    pub fuzzy_class: FuzzyClass,
    pub final_score: f64,
    pub guest_fit: f64,
    pub cross_source_score: f64,
    pub rank_position: usize,
}

/// Filters scored hotels, normalizes their scores over the filtered pool,
/// classifies and ranks them for the guest type.
pub fn recommend(
    query: &RecommendQuery,
    snapshot: &CorpusSnapshot,
    scores: &ScoredCorpus,
) -> Result<Vec<RecommendationEntry>> {
    let candidates: Vec<(&HotelRecord, f64)> = snapshot
        .hotels
        .iter()
        .filter(|h| query.filter.matches(h, snapshot))
        .filter_map(|h| scores.aggregates.get(&h.hotel_id).map(|a| (h, a.cross_source_score)))
        .collect();
    let pool: Vec<f64> = candidates.iter().map(|(_, d)| *d).collect();
    let mut entries = Vec::with_capacity(candidates.len());
    for (h, d) in &candidates {
        let f = final_score(*d, &pool)?;
        entries.push(RecommendationEntry {
            hotel_id: h.hotel_id.clone(),
            name: h.name.clone(),
            city: h.city.clone(),
            region: h.region.clone(),
            fuzzy_class: classify(f)?,
            final_score: f,
            guest_fit: scores.guest_fit(&h.hotel_id, query.guest_type),
            cross_source_score: *d,
            rank_position: 0,
        });
    }
    entries.sort_by(|a, b| rank_order(&key(a), &key(b)));
    for (i, e) in entries.iter_mut().enumerate() {
        e.rank_position = i + 1;
    }
    Ok(entries)
}

fn key(e: &RecommendationEntry) -> RankKey<'_> {
    RankKey {
        hotel_id: &e.hotel_id,
        fuzzy_class: e.fuzzy_class,
        guest_fit: e.guest_fit,
        cross_source_score: e.cross_source_score,
    }
}
