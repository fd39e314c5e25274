//! Read-only JSON query service over a scored snapshot. Transport-agnostic:
//! [`QueryService::handle`] maps a route and query parameters to a status
//! code and a JSON envelope.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, RwLock};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::engine::ScoredCorpus;
use crate::ingest::{normalize_rank, CorpusSnapshot, HotelRecord};
use crate::recommend::{max_normalized_rank, measure_timings, recommend, HotelFilter, RecommendQuery, TimingReport};
use crate::scoring::{FuzzyClass, GuestType, HotelAggregate};

pub const ROUTES: [&str; 5] = [
    "/search",
    "/getratings",
    "/dispratings",
    "/hotelrecommendation",
    "/hoteldetail",
];

pub type Params = BTreeMap<String, String>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApiError {
    pub status_code: u16,
    pub code: String,
    pub message: String,
}

impl ApiError {
    fn new(status_code: u16, code: &str, message: impl Into<String>) -> Self {
        Self {
            status_code,
            code: code.to_string(),
            message: message.into(),
        }
    }

    fn bad_request(message: impl Into<String>) -> Self {
        Self::new(400, "bad_request", message)
    }

    fn not_found(message: impl Into<String>) -> Self {
        Self::new(404, "not_found", message)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Response {
    pub status: u16,
    pub body: Value,
}

impl Response {
    fn ok(data: Value) -> Self {
        Self {
            status: 200,
            body: json!({ "data": data, "error": null }),
        }
    }

    fn error(e: ApiError) -> Self {
        Self {
            status: e.status_code,
            body: json!({ "data": null, "error": e }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryLogEntry {
    pub timestamp: String,
    pub method: String,
    pub parameters: Params,
    pub result_count: usize,
    pub timing: TimingReport,
}

/// Immutable data served to requests.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ServiceState {
    pub snapshot: CorpusSnapshot,
    pub scores: ScoredCorpus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HotelSummary {
    pub hotel_id: String,
    pub name: String,
    pub city: String,
    pub region: String,
    pub rating: Option<f64>,
    pub fuzzy_class: Option<FuzzyClass>,
    pub final_score: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SourceRatings {
    pub source_id: String,
    pub display_name: String,
    pub normalized_rank: Option<f64>,
    pub votes: Option<u64>,
    pub review_count: u64,
    pub positive_pct: f64,
    pub negative_pct: f64,
    pub neutral_pct: f64,
}

#[derive(Debug)]
pub struct QueryService {
    state: RwLock<Arc<ServiceState>>,
    log: Mutex<Vec<QueryLogEntry>>,
    default_limit: usize,
}

fn summary(hotel: &HotelRecord, state: &ServiceState) -> HotelSummary {
    let agg = state.scores.aggregates.get(&hotel.hotel_id);
    HotelSummary {
        hotel_id: hotel.hotel_id.clone(),
        name: hotel.name.clone(),
        city: hotel.city.clone(),
        region: hotel.region.clone(),
        rating: max_normalized_rank(hotel, &state.snapshot),
        fuzzy_class: agg.map(|a| a.fuzzy_class),
        final_score: agg.map(|a| a.final_score),
    }
}

fn non_empty<'a>(params: &'a Params, key: &str) -> Option<&'a str> {
    params.get(key).map(|v| v.trim()).filter(|v| !v.is_empty())
}

fn required<'a>(params: &'a Params, key: &str) -> Result<&'a str, ApiError> {
    non_empty(params, key).ok_or_else(|| ApiError::bad_request(format!("missing parameter {key}")))
}

fn filter_from(params: &Params) -> Result<HotelFilter, ApiError> {
    let min_rating = match non_empty(params, "minrating") {
        None => None,
        Some(v) => Some(
            v.parse::<f64>()
                .ok()
                .filter(|r| r.is_finite())
                .ok_or_else(|| ApiError::bad_request(format!("minrating must be a number, got {v:?}")))?,
        ),
    };
    Ok(HotelFilter {
        name_contains: non_empty(params, "searchtitle").map(str::to_string),
        city: non_empty(params, "city").map(str::to_string),
        region: non_empty(params, "region").map(str::to_string),
        min_rating,
    })
}

impl QueryService {
    pub fn new(state: ServiceState, default_limit: usize) -> Self {
        Self {
            state: RwLock::new(Arc::new(state)),
            log: Mutex::new(Vec::new()),
            default_limit: default_limit.max(1),
        }
    }

    /// Current state; requests keep the `Arc` they started with.
    pub fn state(&self) -> Arc<ServiceState> {
        self.state.read().unwrap_or_else(|e| e.into_inner()).clone()
    }

    /// Atomically replaces the served state.
    pub fn replace_state(&self, state: ServiceState) {
        *self.state.write().unwrap_or_else(|e| e.into_inner()) = Arc::new(state);
    }

    pub fn query_log(&self) -> Vec<QueryLogEntry> {
        self.log.lock().unwrap_or_else(|e| e.into_inner()).clone()
    }

    pub fn handle(&self, route: &str, params: &Params) -> Response {
        let (timing, result) = measure_timings(|| self.state(), |state| self.dispatch(route, params, &state));
        let (response, count) = match result {
            Ok((data, count)) => (Response::ok(data), count),
            Err(e) => (Response::error(e), 0),
        };
        if ROUTES.contains(&route) {
            self.log.lock().unwrap_or_else(|e| e.into_inner()).push(QueryLogEntry {
                timestamp: chrono::Utc::now().to_rfc3339(),
                method: route.trim_start_matches('/').to_string(),
                parameters: params.clone(),
                result_count: count,
                timing,
            });
        }
        response
    }

    fn limit(&self, params: &Params) -> Result<usize, ApiError> {
        match non_empty(params, "limit") {
            None => Ok(self.default_limit),
            Some(v) => v
                .parse::<usize>()
                .ok()
                .filter(|n| *n > 0)
                .ok_or_else(|| ApiError::bad_request(format!("limit must be a positive integer, got {v:?}"))),
        }
    }

    fn dispatch(&self, route: &str, params: &Params, state: &ServiceState) -> Result<(Value, usize), ApiError> {
        match route {
            "/search" => self.search(params, state),
            "/getratings" => self.get_ratings(params, state),
            "/dispratings" => self.disp_ratings(params, state),
            "/hotelrecommendation" => self.hotel_recommendation(params, state),
            "/hoteldetail" => self.hotel_detail(params, state),
            other => Err(ApiError::not_found(format!(
                "unknown route {other}; available: {}",
                ROUTES.join(", ")
            ))),
        }
    }

    fn search(&self, params: &Params, state: &ServiceState) -> Result<(Value, usize), ApiError> {
        let filter = filter_from(params)?;
        if filter.is_empty() {
            return Err(ApiError::bad_request(
                "at least one of searchtitle, city, region, minrating is required",
            ));
        }
        let limit = self.limit(params)?;
        let hits: Vec<HotelSummary> = crate::recommend::search(&filter, &state.snapshot)
            .into_iter()
            .take(limit)
            .map(|h| summary(h, state))
            .collect();
        let n = hits.len();
        Ok((json!(hits), n))
    }

    fn hotel<'a>(&self, state: &'a ServiceState, id: &str) -> Result<&'a HotelRecord, ApiError> {
        state
            .snapshot
            .hotel(id)
            .ok_or_else(|| ApiError::not_found(format!("no hotel with id {id:?}")))
    }

    fn get_ratings(&self, params: &Params, state: &ServiceState) -> Result<(Value, usize), ApiError> {
        let hotel = self.hotel(state, required(params, "hotelid")?)?;
        let labels = state.scores.labels.get(&hotel.hotel_id);
        let mut source_ids: Vec<&String> = hotel.listings.keys().collect();
        if let Some(l) = labels {
            source_ids.extend(l.keys().filter(|s| !hotel.listings.contains_key(*s)));
        }
        let mut total = crate::engine::LabelCounts::default();
        let mut sources = Vec::new();
        for sid in source_ids {
            let counts = labels.and_then(|l| l.get(sid)).copied().unwrap_or_default();
            total.positive += counts.positive;
            total.negative += counts.negative;
            total.neutral += counts.neutral;
            let listing = hotel.listings.get(sid);
            let source = state.snapshot.source(sid);
            let (pos, neg, neu) = counts.percentages();
            sources.push(SourceRatings {
                source_id: sid.clone(),
                display_name: source.map(|s| s.display_name.clone()).unwrap_or_default(),
                normalized_rank: listing.zip(source).and_then(|(l, s)| normalize_rank(l.rank, s).ok()),
                votes: listing.map(|l| l.votes),
                review_count: counts.total(),
                positive_pct: pos,
                negative_pct: neg,
                neutral_pct: neu,
            });
        }
        let (pos, neg, neu) = total.percentages();
        let n = sources.len();
        Ok((
            json!({
                "hotel_id": hotel.hotel_id,
                "name": hotel.name,
                "sources": sources,
                "review_count": total.total(),
                "positive_pct": pos,
                "negative_pct": neg,
                "neutral_pct": neu,
            }),
            n,
        ))
    }

    fn disp_ratings(&self, params: &Params, state: &ServiceState) -> Result<(Value, usize), ApiError> {
        let raw = required(params, "ratingstars")?;
        let stars: u8 =
            raw.parse().ok().filter(|s| (1..=5).contains(s)).ok_or_else(|| {
                ApiError::bad_request(format!("ratingstars must be an integer from 1 to 5, got {raw:?}"))
            })?;
        let limit = self.limit(params)?;
        let hits: Vec<HotelSummary> = state
            .snapshot
            .hotels
            .iter()
            .filter(|h| max_normalized_rank(h, &state.snapshot).is_some_and(|r| r.round() == f64::from(stars)))
            .take(limit)
            .map(|h| summary(h, state))
            .collect();
        let n = hits.len();
        Ok((json!(hits), n))
    }

    fn hotel_recommendation(&self, params: &Params, state: &ServiceState) -> Result<(Value, usize), ApiError> {
        let raw = required(params, "guesttype").map_err(|_| {
            ApiError::bad_request(format!(
                "missing parameter guesttype; valid values: {}",
                GuestType::valid_values()
            ))
        })?;
        let guest_type: GuestType = raw.parse().map_err(|_| {
            ApiError::bad_request(format!(
                "unknown guesttype {raw:?}; valid values: {}",
                GuestType::valid_values()
            ))
        })?;
        let query = RecommendQuery {
            guest_type,
            filter: filter_from(params)?,
        };
        let limit = self.limit(params)?;
        let mut entries = recommend(&query, &state.snapshot, &state.scores)
            .map_err(|e| ApiError::new(500, "internal", e.to_string()))?;
        entries.truncate(limit);
        let n = entries.len();
        Ok((json!(entries), n))
    }

    fn hotel_detail(&self, params: &Params, state: &ServiceState) -> Result<(Value, usize), ApiError> {
        let hotel = self.hotel(state, required(params, "id")?)?;
        let aggregate: Option<&HotelAggregate> = state.scores.aggregates.get(&hotel.hotel_id);
        let features = state
            .scores
            .feature_polarity
            .get(&hotel.hotel_id)
            .cloned()
            .unwrap_or_default();
        let mut top: Vec<(&String, &f64)> = features.iter().collect();
        top.sort_by(|a, b| b.1.total_cmp(a.1).then_with(|| a.0.cmp(b.0)));
        let top: Vec<Value> = top
            .into_iter()
            .take(5)
            .map(|(f, p)| json!({ "feature": f, "polarity": p }))
            .collect();
        Ok((
            json!({
                "hotel": hotel,
                "aggregate": aggregate,
                "fuzzy_class": aggregate.map(|a| a.fuzzy_class),
                "feature_polarity": features,
                "top_features": top,
            }),
            1,
        ))
    }
}
