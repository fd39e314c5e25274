use std::collections::BTreeMap;
use std::sync::Arc;

use hotelrec_core::fixtures::sample_snapshot;
use hotelrec_core::recommend::{recommend, RecommendQuery};
use hotelrec_core::service::{Params, QueryService, ServiceState};
use hotelrec_core::{Engine, GuestType};
use serde_json::Value;

fn service() -> QueryService {
    let snapshot = sample_snapshot().unwrap();
    let scores = Engine::default().score(&snapshot).unwrap();
    QueryService::new(ServiceState { snapshot, scores }, 50)
}

fn params(pairs: &[(&str, &str)]) -> Params {
    pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

fn ids(data: &Value) -> Vec<String> {
    data.as_array()
        .unwrap()
        .iter()
        .map(|e| e["hotel_id"].as_str().unwrap().to_string())
        .collect()
}

fn assert_error(svc: &QueryService, route: &str, p: &[(&str, &str)], status: u16) -> Value {
    let r = svc.handle(route, &params(p));
    assert_eq!(r.status, status, "{route} {p:?}: {}", r.body);
    assert!(r.body["data"].is_null());
    let err = &r.body["error"];
    assert_eq!(err["status_code"], status);
    assert!(err["code"].is_string());
    assert!(err["message"].is_string());
    assert_eq!(err.as_object().unwrap().len(), 3);
    err.clone()
}

#[test]
fn search_endpoint() {
    let svc = service();
    let r = svc.handle("/search", &params(&[("searchtitle", "Belnord")]));
    assert_eq!(r.status, 200);
    assert!(r.body["error"].is_null());
    assert_eq!(ids(&r.body["data"]), ["H5"]);
    let r = svc.handle("/search", &params(&[("searchtitle", "zzz")]));
    assert_eq!(r.body["data"], Value::Array(vec![]));
    let r = svc.handle("/search", &params(&[("minrating", "5")]));
    assert_eq!(ids(&r.body["data"]), ["H1", "H3", "H5"]);
    let r = svc.handle("/search", &params(&[("city", "new york"), ("limit", "2")]));
    assert_eq!(ids(&r.body["data"]).len(), 2);
    assert_error(&svc, "/search", &[("minrating", "abc")], 400);
    assert_error(&svc, "/search", &[], 400);
    assert_error(&svc, "/search", &[("city", "x"), ("limit", "0")], 400);
}

#[test]
fn getratings_endpoint() {
    let svc = service();
    let r = svc.handle("/getratings", &params(&[("hotelid", "H1")]));
    assert_eq!(r.status, 200);
    let data = &r.body["data"];
    let sources = data["sources"].as_array().unwrap();
    assert_eq!(sources.len(), 2);
    assert_eq!(sources[1]["normalized_rank"], 5.0);
    assert_eq!(sources[0]["votes"], 209301);

    let state = svc.state();
    let labels: Vec<_> = state
        .snapshot
        .reviews
        .iter()
        .filter(|r| r.hotel_id == "H1")
        .map(|r| state.scores.review_polarity[&r.review_id].label)
        .collect();
    let positive = labels
        .iter()
        .filter(|l| **l == hotelrec_core::sentiment::PolarityLabel::Positive)
        .count();
    let expected = positive as f64 * 100.0 / labels.len() as f64;
    assert!((data["positive_pct"].as_f64().unwrap() - expected).abs() < 1e-9);
    let sum: f64 = ["positive_pct", "negative_pct", "neutral_pct"]
        .iter()
        .map(|k| data[k].as_f64().unwrap())
        .sum();
    assert!((sum - 100.0).abs() < 1e-9);

    assert_error(&svc, "/getratings", &[("hotelid", "H9")], 404);
    assert_error(&svc, "/getratings", &[], 400);
}

#[test]
fn getratings_without_reviews_reports_zero_percentages() {
    let snapshot = sample_snapshot().unwrap().with_reviews(Vec::new());
    let scores = Engine::default().score(&snapshot).unwrap();
    let svc = QueryService::new(ServiceState { snapshot, scores }, 50);
    let r = svc.handle("/getratings", &params(&[("hotelid", "H2")]));
    let data = &r.body["data"];
    for k in ["positive_pct", "negative_pct", "neutral_pct"] {
        assert_eq!(data[k], 0.0);
    }
    let r = svc.handle("/hoteldetail", &params(&[("id", "H2")]));
    assert_eq!(r.body["data"]["feature_polarity"], serde_json::json!({}));
}

#[test]
fn dispratings_endpoint() {
    let svc = service();
    let r = svc.handle("/dispratings", &params(&[("ratingstars", "5")]));
    assert!(ids(&r.body["data"]).contains(&"H1".to_string()));
    let r = svc.handle("/dispratings", &params(&[("ratingstars", "1")]));
    assert_eq!(r.body["data"], Value::Array(vec![]));
    assert_error(&svc, "/dispratings", &[("ratingstars", "0")], 400);
    assert_error(&svc, "/dispratings", &[("ratingstars", "six")], 400);
}

#[test]
fn recommendation_endpoint() {
    let svc = service();
    let r = svc.handle("/hotelrecommendation", &params(&[("guesttype", "family")]));
    assert_eq!(r.status, 200);
    let data = &r.body["data"];
    assert_eq!(ids(data).len(), 5);
    assert_eq!(data[0]["hotel_id"], "H1");
    assert_eq!(data[0]["fuzzy_class"], "R");
    assert!(data[0]["final_score"].is_number());

    let err = assert_error(&svc, "/hotelrecommendation", &[("guesttype", "alien")], 400);
    assert!(err["message"]
        .as_str()
        .unwrap()
        .contains("solo, family, couple, business, friends"));
    let r = svc.handle(
        "/hotelrecommendation",
        &params(&[("guesttype", "solo"), ("city", "Nowhere")]),
    );
    assert_eq!(r.body["data"], Value::Array(vec![]));
}

#[test]
fn recommendation_matches_library_call() {
    let svc = service();
    let state = svc.state();
    let mut q = RecommendQuery::new(GuestType::Couple);
    q.filter.city = Some("New York".into());
    let direct = serde_json::to_value(recommend(&q, &state.snapshot, &state.scores).unwrap()).unwrap();
    let r = svc.handle(
        "/hotelrecommendation",
        &params(&[("guesttype", "couple"), ("city", "New York")]),
    );
    assert_eq!(r.body["data"], direct);
}

#[test]
fn detail_endpoint() {
    let svc = service();
    let r = svc.handle("/hoteldetail", &params(&[("id", "H3")]));
    assert_eq!(r.status, 200);
    let data = &r.body["data"];
    assert_eq!(data["fuzzy_class"], "BR");
    assert_eq!(data["hotel"]["name"], "Mandarin Oriental New York");
    assert!(data["aggregate"]["cross_source_score"].is_number());
    assert!(!data["top_features"].as_array().unwrap().is_empty());
    assert_error(&svc, "/hoteldetail", &[("id", "nope")], 404);
}

#[test]
fn unknown_route_is_json() {
    let svc = service();
    assert_error(&svc, "/bookings", &[], 404);
}

#[test]
fn requests_do_not_mutate_state() {
    let svc = service();
    let before = serde_json::to_string(&*svc.state()).unwrap();
    let calls: [(&str, &[(&str, &str)]); 6] = [
        ("/search", &[("searchtitle", "hotel")]),
        ("/getratings", &[("hotelid", "H1")]),
        ("/dispratings", &[("ratingstars", "4")]),
        ("/hotelrecommendation", &[("guesttype", "friends")]),
        ("/hoteldetail", &[("id", "H4")]),
        ("/search", &[("minrating", "x")]),
    ];
    for (route, p) in calls {
        svc.handle(route, &params(p));
    }
    assert_eq!(before, serde_json::to_string(&*svc.state()).unwrap());
    let log = svc.query_log();
    assert_eq!(log.len(), 6);
    assert_eq!(log[0].method, "search");
    for entry in &log {
        assert_eq!(
            entry.timing.execution_time_ms,
            entry.timing.load_time_ms + entry.timing.search_time_ms
        );
    }
}

#[test]
fn state_swap_keeps_inflight_reads() {
    let svc = Arc::new(service());
    let old = svc.state();
    svc.replace_state(ServiceState::default());
    assert_eq!(old.snapshot.hotels.len(), 5);
    let r = svc.handle("/hoteldetail", &params(&[("id", "H1")]));
    assert_eq!(r.status, 404);

    let handles: Vec<_> = (0..4)
        .map(|_| {
            let svc = Arc::clone(&svc);
            std::thread::spawn(move || {
                svc.handle("/search", &BTreeMap::from([("city".to_string(), "x".to_string())]))
                    .status
            })
        })
        .collect();
    for h in handles {
        assert_eq!(h.join().unwrap(), 200);
    }
}
