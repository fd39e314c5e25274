//! Review file parsing.
//!
//! Review objects follow the crawled TripAdvisor layout: a `ratings` object,
//! `title`, `text`, an `author` object carrying `username`, plus `date` and
//! `num_helpful_votes` either at the top level or inside `author`. Keys are
//! matched with spaces and underscores treated alike, so both
//! `"num helpful votes"` and `"num_helpful_votes"` are accepted.

use std::path::Path;

use chrono::NaiveDate;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::ingest::model::{DataSourceDescriptor, RatingVector, ReviewRecord};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParsedReviews {
    pub records: Vec<ReviewRecord>,
    /// Objects (or lines) that were present but rejected.
    pub skipped: usize,
}

impl ParsedReviews {
    pub fn total(&self) -> usize {
        self.records.len() + self.skipped
    }
}

pub fn parse_review_file(path: impl AsRef<Path>, source: &DataSourceDescriptor) -> Result<ParsedReviews> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let parsed = parse_reviews_str(&text, source)?;
    if parsed.records.is_empty() && parsed.skipped > 0 {
        return Err(Error::EmptyCorpus {
            what: path.display().to_string(),
            skipped: parsed.skipped,
        });
    }
    Ok(parsed)
}

/// Parses a JSON array of review objects or newline-delimited JSON objects.
pub fn parse_reviews_str(text: &str, source: &DataSourceDescriptor) -> Result<ParsedReviews> {
    let trimmed = text.trim_start();
    let values: Vec<Option<Value>> = if trimmed.starts_with('[') {
        let items: Vec<Value> = serde_json::from_str(trimmed)?;
        items.into_iter().map(Some).collect()
    } else {
        trimmed
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| serde_json::from_str::<Value>(l).ok())
            .collect()
    };

    let mut out = ParsedReviews::default();
    for (index, value) in values.into_iter().enumerate() {
        match value.as_ref().and_then(|v| review_from_value(v, source, index)) {
            Some(r) => out.records.push(r),
            None => out.skipped += 1,
        }
    }
    if out.skipped > 0 {
        log::warn!(
            "source {}: skipped {} malformed review objects",
            source.source_id,
            out.skipped
        );
    }
    Ok(out)
}

fn norm_key(key: &str) -> String {
    key.trim().to_lowercase().replace([' ', '-'], "_")
}

fn field<'a>(obj: &'a Map<String, Value>, name: &str) -> Option<&'a Value> {
    obj.iter().find(|(k, _)| norm_key(k) == name).map(|(_, v)| v)
}

fn id_string(v: &Value) -> Option<String> {
    match v {
        Value::String(s) if !s.trim().is_empty() => Some(s.trim().to_string()),
        Value::Number(n) => Some(n.to_string()),
        _ => None,
    }
}

/// Reads `name` at the top level first, then inside `author`.
fn lookup<'a>(obj: &'a Map<String, Value>, author: Option<&'a Map<String, Value>>, name: &str) -> Option<&'a Value> {
    field(obj, name).or_else(|| author.and_then(|a| field(a, name)))
}

fn review_from_value(value: &Value, source: &DataSourceDescriptor, index: usize) -> Option<ReviewRecord> {
    let obj = value.as_object()?;
    let author = field(obj, "author").and_then(Value::as_object);

    let text = field(obj, "text")?.as_str()?.to_string();
    if text.trim().is_empty() {
        return None;
    }
    let hotel_id = lookup(obj, None, "hotel_id")
        .or_else(|| lookup(obj, author, "offering_id"))
        .and_then(id_string)?;

    let review_id = field(obj, "review_id")
        .or_else(|| field(obj, "id"))
        .and_then(id_string)
        .unwrap_or_else(|| format!("{}-{}-{}", source.source_id, hotel_id, index));

    let title = match field(obj, "title") {
        None | Some(Value::Null) => String::new(),
        Some(v) => v.as_str()?.to_string(),
    };

    let mut ratings = RatingVector::new();
    if let Some(r) = field(obj, "ratings") {
        for (k, v) in r.as_object()? {
            let v = v.as_f64()?;
            if !source.contains(v) {
                return None;
            }
            ratings.insert(norm_key(k), v);
        }
    }

    let author_username = author
        .and_then(|a| field(a, "username"))
        .and_then(Value::as_str)
        .map(|s| s.trim().to_string())
        .unwrap_or_default();

    let date = lookup(obj, author, "date")
        .and_then(Value::as_str)
        .map(normalize_date)
        .unwrap_or_default();

    let helpful_votes = match lookup(obj, author, "num_helpful_votes") {
        None | Some(Value::Null) => 0,
        Some(v) => v.as_u64()?,
    };

    Some(ReviewRecord {
        review_id,
        hotel_id,
        source_id: source.source_id.clone(),
        title,
        text,
        ratings,
        author_username,
        date,
        helpful_votes,
    })
}

/// ISO-8601 when the input is a recognizable date, the raw string otherwise.
fn normalize_date(raw: &str) -> String {
    let raw = raw.trim();
    for fmt in ["%Y-%m-%d", "%B %d, %Y", "%b %d, %Y", "%d %B %Y", "%m/%d/%Y"] {
        if let Ok(d) = NaiveDate::parse_from_str(raw, fmt) {
            return d.format("%Y-%m-%d").to_string();
        }
    }
    raw.to_string()
}
