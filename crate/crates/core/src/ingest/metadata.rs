//! Source and hotel metadata tables (CSV with a header row, or a JSON array of
//! row objects with the same field names).

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::ingest::model::{DataSourceDescriptor, HotelRecord, SourceListing};

/// One `hotel_id,name,city,region,source_id,rank,votes,views` row.
#[derive(Debug, Clone, Deserialize)]
pub struct HotelRow {
    pub hotel_id: String,
    pub name: String,
    pub city: String,
    pub region: String,
    #[serde(default)]
    pub source_id: Option<String>,
    #[serde(default)]
    pub rank: Option<f64>,
    #[serde(default)]
    pub votes: Option<u64>,
    #[serde(default)]
    pub views: Option<u64>,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn is_json(text: &str) -> bool {
    text.trim_start().starts_with('[')
}

fn rows<T: for<'de> Deserialize<'de>>(text: &str) -> Result<Vec<T>> {
    if is_json(text) {
        Ok(serde_json::from_str(text)?)
    } else {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        reader
            .deserialize()
            .collect::<std::result::Result<Vec<T>, _>>()
            .map_err(Error::from)
    }
}

pub fn load_sources(path: impl AsRef<Path>) -> Result<Vec<DataSourceDescriptor>> {
    parse_sources(&read(path.as_ref())?)
}

/// `source_id,display_name,rank_scale_min,rank_scale_max`
pub fn parse_sources(text: &str) -> Result<Vec<DataSourceDescriptor>> {
    let sources: Vec<DataSourceDescriptor> = rows(text)?;
    let mut bad = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for s in &sources {
        if s.rank_scale_min.partial_cmp(&s.rank_scale_max) != Some(std::cmp::Ordering::Less)
            || !seen.insert(s.source_id.clone())
        {
            bad.push(format!("source:{}", s.source_id));
        }
    }
    if !bad.is_empty() {
        return Err(Error::Validation { ids: bad });
    }
    Ok(sources)
}

pub fn load_hotels(path: impl AsRef<Path>) -> Result<Vec<HotelRecord>> {
    parse_hotels(&read(path.as_ref())?)
}

/// Folds per-(hotel, source) rows into hotel records. Rows for the same hotel
/// must agree on name, city, region and views.
pub fn parse_hotels(text: &str) -> Result<Vec<HotelRecord>> {
    let rows: Vec<HotelRow> = rows(text)?;
    let mut hotels: BTreeMap<String, HotelRecord> = BTreeMap::new();
    let mut bad = Vec::new();

    for row in rows {
        let hotel = hotels.entry(row.hotel_id.clone()).or_insert_with(|| HotelRecord {
            hotel_id: row.hotel_id.clone(),
            name: row.name.clone(),
            city: row.city.clone(),
            region: row.region.clone(),
            listings: BTreeMap::new(),
            engagement_views: row.views.unwrap_or(0),
        });
        if hotel.name != row.name
            || hotel.city != row.city
            || hotel.region != row.region
            || row.views.is_some_and(|v| v != hotel.engagement_views)
        {
            bad.push(format!("hotel:{} (conflicting rows)", row.hotel_id));
            continue;
        }
        match (row.source_id.filter(|s| !s.is_empty()), row.rank) {
            (Some(source), Some(rank)) => {
                let listing = SourceListing {
                    rank,
                    votes: row.votes.unwrap_or(0),
                };
                if hotel.listings.insert(source.clone(), listing).is_some() {
                    bad.push(format!("hotel:{} (duplicate source {source})", row.hotel_id));
                }
            }
            (Some(source), None) => bad.push(format!("hotel:{} (no rank for {source})", row.hotel_id)),
            (None, _) => {}
        }
    }

    if bad.is_empty() {
        Ok(hotels.into_values().collect())
    } else {
        Err(Error::Validation { ids: bad })
    }
}
