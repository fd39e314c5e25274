//! Incremental-update evaluation: a seeded train/test split, models rebuilt
//! on growing training prefixes, and precision/recall/F per prefix.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::ingest::{normalize_rank, CorpusSnapshot, ReviewRecord};
use crate::recommend::metrics::{f_measure, precision, recall, EvalCounts};
use crate::recommend::ranking::{recommend, RecommendQuery};
use crate::scoring::GuestType;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IncrementalSchedule {
    pub train_fraction: f64,
    pub test_fraction: f64,
    /// Prefix sizes as fractions of the training split.
    pub chunk_fractions: Vec<f64>,
    pub seed: u64,
}

impl Default for IncrementalSchedule {
    fn default() -> Self {
        Self {
            train_fraction: 0.6,
            test_fraction: 0.4,
            chunk_fractions: vec![0.2, 0.4, 0.6, 0.8, 1.0],
            seed: 0,
        }
    }
}

impl IncrementalSchedule {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let in_unit = |f: f64| f > 0.0 && f <= 1.0;
        if !in_unit(self.train_fraction) || !in_unit(self.test_fraction) {
            return Err(Error::Config("split fractions must lie in (0, 1]".into()));
        }
        if (self.train_fraction + self.test_fraction - 1.0).abs() > 1e-9 {
            return Err(Error::Config("train and test fractions must sum to 1".into()));
        }
        if self.chunk_fractions.is_empty() || !self.chunk_fractions.iter().all(|&f| in_unit(f)) {
            return Err(Error::Config("chunk fractions must lie in (0, 1]".into()));
        }
        if self.chunk_fractions.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Config("chunk fractions must be non-decreasing".into()));
        }
        Ok(())
    }
}

/// Shuffles reviews with the schedule's seed and cuts the training share off
/// the front.
pub fn split_reviews<'a>(
    reviews: &'a [ReviewRecord],
    schedule: &IncrementalSchedule,
) -> (Vec<&'a ReviewRecord>, Vec<&'a ReviewRecord>) {
    let mut order: Vec<&ReviewRecord> = reviews.iter().collect();
    order.sort_by(|a, b| a.review_id.cmp(&b.review_id));
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(schedule.seed));
    let n_train = (order.len() as f64 * schedule.train_fraction).round() as usize;
    let test = order.split_off(n_train.min(order.len()));
    (order, test)
}

/// Overall rating mapped onto the 1-5 scale.
pub fn overall_rating(review: &ReviewRecord, snapshot: &CorpusSnapshot) -> Option<f64> {
    let raw = *review.ratings.get("overall")?;
    normalize_rank(raw, snapshot.source(&review.source_id)?).ok()
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct UserJudgments {
    pub judged: BTreeSet<String>,
    pub relevant: BTreeSet<String>,
}

/// Per-user relevant hotels, keyed by author username.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RelevanceOracle {
    pub users: BTreeMap<String, UserJudgments>,
}

impl RelevanceOracle {
    /// A hotel is relevant when the user's mean overall rating for it is at
    /// least `threshold`. Reviews without an author or overall rating are
    /// ignored.
    pub fn from_reviews(reviews: &[&ReviewRecord], snapshot: &CorpusSnapshot, threshold: f64) -> Self {
        let mut ratings: BTreeMap<(&str, &str), Vec<f64>> = BTreeMap::new();
        for r in reviews {
            if r.author_username.is_empty() {
                continue;
            }
            if let Some(v) = overall_rating(r, snapshot) {
                ratings
                    .entry((r.author_username.as_str(), r.hotel_id.as_str()))
                    .or_default()
                    .push(v);
            }
        }
        let mut users: BTreeMap<String, UserJudgments> = BTreeMap::new();
        for ((user, hotel), vs) in ratings {
            let mean = vs.iter().sum::<f64>() / vs.len() as f64;
            let j = users.entry(user.to_string()).or_default();
            j.judged.insert(hotel.to_string());
            if mean >= threshold {
                j.relevant.insert(hotel.to_string());
            }
        }
        Self { users }
    }

    pub fn get(&self, user: &str) -> Option<&UserJudgments> {
        self.users.get(user)
    }
}

/// Authors in the test split with at least one overall rating.
pub fn test_queries(test: &[&ReviewRecord], snapshot: &CorpusSnapshot) -> BTreeSet<String> {
    test.iter()
        .filter(|r| !r.author_username.is_empty() && overall_rating(r, snapshot).is_some())
        .map(|r| r.author_username.clone())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRow {
    pub chunk: f64,
    pub counts: EvalCounts,
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
}

impl EvalRow {
    /// Undefined precision or recall (empty denominator) is reported as 0.
    pub fn from_counts(chunk: f64, counts: EvalCounts) -> Self {
        let p = precision(counts).unwrap_or(0.0);
        let r = recall(counts).unwrap_or(0.0);
        Self {
            chunk,
            counts,
            precision: p,
            recall: r,
            f_measure: f_measure(p, r),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalAverage {
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalTable {
    pub rows: Vec<EvalRow>,
}

impl EvalTable {
    /// Column means over the rows.
    pub fn average(&self) -> EvalAverage {
        let n = self.rows.len().max(1) as f64;
        let mean = |f: fn(&EvalRow) -> f64| self.rows.iter().map(f).sum::<f64>() / n;
        EvalAverage {
            precision: mean(|r| r.precision),
            recall: mean(|r| r.recall),
            f_measure: mean(|r| r.f_measure),
        }
    }

    /// `chunk,f_measure,recall,precision` with an `Avg` row.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["chunk", "f_measure", "recall", "precision"])?;
        let fmt = |v: f64| format!("{v:.3}");
        for r in &self.rows {
            w.write_record([
                format!("{}%", (r.chunk * 100.0).round()),
                fmt(r.f_measure),
                fmt(r.recall),
                fmt(r.precision),
            ])?;
        }
        let avg = self.average();
        w.write_record([
            "Avg".to_string(),
            fmt(avg.f_measure),
            fmt(avg.recall),
            fmt(avg.precision),
        ])?;
        let bytes = w.into_inner().map_err(|e| Error::Config(e.to_string()))?;
        Ok(String::from_utf8_lossy(&bytes).into_owned())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalSettings {
    pub guest_type: GuestType,
    /// Hotels at the top of the ranking that count as recommended.
    pub top_n: usize,
}

/// For every chunk, scores the training prefix, takes the top `top_n`
/// hotels of the guest-type ranking and compares them, per test user, with
/// the oracle over the hotels that user judged. Counts are summed over users.
pub fn run_incremental_eval(
    engine: &Engine,
    snapshot: &CorpusSnapshot,
    schedule: &IncrementalSchedule,
    oracle: &RelevanceOracle,
    settings: EvalSettings,
) -> Result<EvalTable> {
    schedule.validate()?;
    let (train, test) = split_reviews(&snapshot.reviews, schedule);
    let queries = test_queries(&test, snapshot);
    if let Some(gap) = queries.iter().find(|q| oracle.get(q).is_none()) {
        return Err(Error::OracleGap(gap.clone()));
    }

    let analyzed = engine.analyze(snapshot);
    let by_id: HashMap<&str, usize> = analyzed
        .iter()
        .enumerate()
        .map(|(i, a)| (a.review_id.as_str(), i))
        .collect();

    let rows: Result<Vec<EvalRow>> = schedule
        .chunk_fractions
        .par_iter()
        .map(|&chunk| {
            let take = ((train.len() as f64 * chunk).ceil() as usize).min(train.len());
            let prefix: Vec<ReviewRecord> = train[..take].iter().map(|r| (*r).clone()).collect();
            let subset: Vec<_> = prefix
                .iter()
                .map(|r| analyzed[by_id[r.review_id.as_str()]].clone())
                .collect();
            let model = snapshot.with_reviews(prefix);
            let scores = engine.score_analyzed(&model, &subset)?;
            let ranking = recommend(&RecommendQuery::new(settings.guest_type), &model, &scores)?;
            let top: BTreeSet<&str> = ranking
                .iter()
                .take(settings.top_n)
                .map(|e| e.hotel_id.as_str())
                .collect();

            let mut counts = EvalCounts::default();
            for q in &queries {
                let j = &oracle.users[q];
                for h in &j.judged {
                    let recommended = top.contains(h.as_str());
                    let relevant = j.relevant.contains(h);
                    match (recommended, relevant) {
                        (true, true) => counts.z += 1,
                        (true, false) => counts.x += 1,
                        (false, true) => counts.y += 1,
                        (false, false) => {}
                    }
                }
            }
            Ok(EvalRow::from_counts(chunk, counts))
        })
        .collect();
    Ok(EvalTable { rows: rows? })
}
