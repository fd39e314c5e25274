//! End-to-end scoring: text analysis, polarity, aggregation, feature
//! polarities and guest fit for every hotel of a snapshot.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::EngineConfig;
use crate::error::Result;
use crate::ingest::{normalize_rank, CorpusSnapshot, ReviewRecord};
use crate::recommend::cf::{complete_matrix, UtilityMatrix};
use crate::scoring::{
    aggregate_polarity, classify, cross_source_score_with, final_scores, guest_fit, FuzzyClass, GuestProfiles,
    GuestType, HotelAggregate, SourceAggregate,
};
use crate::semantics::{extract_review_mentions, FeatureMention, SynonymMap};
use crate::sentiment::{review_polarity, CorpusStats, PolarityLabel, ReviewPolarity, SentimentLexicon};
use crate::textpipe::{
    split_sentences, stem, tokenize, FrequencyLexicon, StopwordList, TagLexicon, Term, TextPipeline,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzedReview {
    pub review_id: String,
    pub hotel_id: String,
    pub source_id: String,
    pub terms: Vec<Term>,
    pub mentions: Vec<FeatureMention>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelCounts {
    pub positive: u64,
    pub negative: u64,
    pub neutral: u64,
}

impl LabelCounts {
    pub fn add(&mut self, label: PolarityLabel) {
        match label {
            PolarityLabel::Positive => self.positive += 1,
            PolarityLabel::Negative => self.negative += 1,
            PolarityLabel::Neutral => self.neutral += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.positive + self.negative + self.neutral
    }

    /// Positive, negative and neutral shares in percent; all zero when empty.
    pub fn percentages(&self) -> (f64, f64, f64) {
        let t = self.total();
        if t == 0 {
            return (0.0, 0.0, 0.0);
        }
        let pct = |n: u64| n as f64 * 100.0 / t as f64;
        (pct(self.positive), pct(self.negative), pct(self.neutral))
    }
}

/// Everything derived from a snapshot. Final scores and classes here are
/// normalized over all scored hotels.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ScoredCorpus {
    pub aggregates: BTreeMap<String, HotelAggregate>,
    pub review_polarity: BTreeMap<String, ReviewPolarity>,
    /// Observed mean polarity per hotel and feature.
    pub feature_polarity: BTreeMap<String, BTreeMap<String, f64>>,
    /// Observed values plus collaborative-filtering predictions.
    pub completed_polarity: BTreeMap<String, BTreeMap<String, f64>>,
    pub guest_fit: BTreeMap<String, BTreeMap<GuestType, f64>>,
    /// Review label counts per hotel and source.
    pub labels: BTreeMap<String, BTreeMap<String, LabelCounts>>,
    pub features: Vec<String>,
}

impl ScoredCorpus {
    pub fn guest_fit(&self, hotel_id: &str, guest: GuestType) -> f64 {
        self.guest_fit
            .get(hotel_id)
            .and_then(|m| m.get(&guest))
            .copied()
            .unwrap_or(0.0)
    }
}

#[derive(Debug, Clone)]
pub struct Engine {
    config: EngineConfig,
    frequencies: FrequencyLexicon,
    tags: TagLexicon,
    stopwords: StopwordList,
    synonyms: SynonymMap,
    sentiment: SentimentLexicon,
    profiles: GuestProfiles,
}

impl Default for Engine {
    fn default() -> Self {
        Self::new(EngineConfig::default()).expect("bundled resources load")
    }
}

impl Engine {
    pub fn new(config: EngineConfig) -> Result<Self> {
        let r = &config.resources;
        let frequencies = match &r.frequency_lexicon {
            Some(p) => FrequencyLexicon::load(p)?,
            None => FrequencyLexicon::seed(),
        };
        let tags = match &r.tag_lexicon {
            Some(p) => TagLexicon::load(p)?,
            None => TagLexicon::default(),
        };
        let stopwords = match &r.stopwords {
            Some(p) => StopwordList::load(p)?,
            None => StopwordList::default(),
        };
        let synonyms = match &r.synonyms {
            Some(p) => SynonymMap::load(p)?,
            None => SynonymMap::default(),
        };
        let sentiment = match &r.sentiment_lexicon {
            Some(p) => SentimentLexicon::load(p)?,
            None => SentimentLexicon::seed(),
        };
        let profiles = match &r.guest_profiles {
            Some(p) => GuestProfiles::load(p)?,
            None => GuestProfiles::default(),
        };
        Ok(Self {
            config,
            frequencies,
            tags,
            stopwords,
            synonyms,
            sentiment,
            profiles,
        })
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn profiles(&self) -> &GuestProfiles {
        &self.profiles
    }

    pub fn sentiment(&self) -> &SentimentLexicon {
        &self.sentiment
    }

    pub fn synonyms(&self) -> &SynonymMap {
        &self.synonyms
    }

    /// Text pipeline whose spelling dictionary also holds words that recur
    /// in the given reviews.
    pub fn pipeline_for(&self, reviews: &[ReviewRecord]) -> TextPipeline {
        let mut counts: HashMap<String, u64> = HashMap::new();
        for r in reviews {
            for s in split_sentences(&r.text) {
                for t in tokenize(&s) {
                    if t.surface.chars().all(char::is_alphabetic) {
                        *counts.entry(t.lower()).or_insert(0) += 1;
                    }
                }
            }
        }
        let mut frequencies = self.frequencies.clone();
        for (w, c) in counts {
            if c >= self.config.min_corpus_frequency {
                frequencies.add(&w, c);
            }
        }
        let mut pipeline = TextPipeline::new(frequencies, self.tags.clone(), self.stopwords.clone());
        pipeline.warm_corrections(reviews.iter().map(|r| r.text.as_str()));
        pipeline
    }

    pub fn analyze(&self, snapshot: &CorpusSnapshot) -> Vec<AnalyzedReview> {
        let pipeline = self.pipeline_for(&snapshot.reviews);
        snapshot
            .reviews
            .par_iter()
            .map(|r| {
                let analyzed = pipeline.analyze(&r.text);
                AnalyzedReview {
                    review_id: r.review_id.clone(),
                    hotel_id: r.hotel_id.clone(),
                    source_id: r.source_id.clone(),
                    mentions: extract_review_mentions(&r.review_id, &analyzed.sentences, &self.synonyms),
                    terms: analyzed.terms,
                }
            })
            .collect()
    }

    pub fn score(&self, snapshot: &CorpusSnapshot) -> Result<ScoredCorpus> {
        let analyzed = self.analyze(snapshot);
        self.score_analyzed(snapshot, &analyzed)
    }

    /// Scores pre-analyzed reviews against the snapshot's hotels and sources.
    pub fn score_analyzed(&self, snapshot: &CorpusSnapshot, analyzed: &[AnalyzedReview]) -> Result<ScoredCorpus> {
        let docs: Vec<Vec<String>> = analyzed
            .iter()
            .map(|a| a.terms.iter().map(|t| t.text.clone()).collect())
            .collect();
        let stats = CorpusStats::build(
            analyzed
                .iter()
                .zip(&docs)
                .map(|(a, d)| (a.review_id.as_str(), d.as_slice())),
        );

        let polarities: Vec<ReviewPolarity> = analyzed
            .par_iter()
            .map(|a| review_polarity(&a.review_id, &a.terms, &self.sentiment, &stats))
            .collect();

        let mut by_listing: BTreeMap<(&str, &str), Vec<f64>> = BTreeMap::new();
        let mut labels: BTreeMap<String, BTreeMap<String, LabelCounts>> = BTreeMap::new();
        for (a, p) in analyzed.iter().zip(&polarities) {
            by_listing
                .entry((a.hotel_id.as_str(), a.source_id.as_str()))
                .or_default()
                .push(p.polarity);
            labels
                .entry(a.hotel_id.clone())
                .or_default()
                .entry(a.source_id.clone())
                .or_default()
                .add(p.label);
        }

        let mut aggregates = Vec::new();
        for hotel in &snapshot.hotels {
            if hotel.listings.is_empty() {
                log::warn!("hotel {} has no source listing and is not scored", hotel.hotel_id);
                continue;
            }
            let mut sources = Vec::new();
            for (source_id, listing) in &hotel.listings {
                let Some(source) = snapshot.source(source_id) else {
                    log::warn!("hotel {}: unknown source {source_id}", hotel.hotel_id);
                    continue;
                };
                let pols = by_listing
                    .get(&(hotel.hotel_id.as_str(), source_id.as_str()))
                    .map(Vec::as_slice)
                    .unwrap_or(&[]);
                sources.push(SourceAggregate::new(
                    &hotel.hotel_id,
                    source_id,
                    aggregate_polarity(pols),
                    pols.len() as u64,
                    normalize_rank(listing.rank, source)?,
                    listing.votes,
                ));
            }
            for ((h, s), pols) in by_listing.range((hotel.hotel_id.as_str(), "")..) {
                if *h != hotel.hotel_id {
                    break;
                }
                if !hotel.listings.contains_key(*s) {
                    log::warn!(
                        "{} reviews of {h} from unlisted source {s} are not aggregated",
                        pols.len()
                    );
                }
            }
            let bs: Vec<f64> = sources.iter().map(|s| s.weighted_average_polarity).collect();
            let d = cross_source_score_with(&bs, hotel.engagement_views, self.config.aggregation)?;
            aggregates.push(HotelAggregate {
                hotel_id: hotel.hotel_id.clone(),
                sources,
                views: hotel.engagement_views,
                cross_source_score: d,
                final_score: 0.0,
                fuzzy_class: FuzzyClass::NR,
            });
        }
        let pool: Vec<f64> = aggregates.iter().map(|a| a.cross_source_score).collect();
        for (agg, f) in aggregates.iter_mut().zip(final_scores(&pool)) {
            agg.final_score = f;
            agg.fuzzy_class = classify(f)?;
        }

        let feature_polarity = self.feature_polarity(analyzed, &stats);
        let mut features: BTreeSet<String> = feature_polarity.values().flat_map(|m| m.keys().cloned()).collect();
        for p in self.profiles.iter() {
            features.extend(p.weights.keys().cloned());
        }
        let features: Vec<String> = features.into_iter().collect();
        let hotel_ids: Vec<String> = snapshot.hotels.iter().map(|h| h.hotel_id.clone()).collect();
        let matrix = UtilityMatrix::from_nested(&feature_polarity, hotel_ids.clone(), features.clone())?;
        let completed = complete_matrix(&matrix, self.config.neighbors);
        let mut completed_polarity = BTreeMap::new();
        let mut fits = BTreeMap::new();
        for h in &hotel_ids {
            let row: BTreeMap<String, f64> = features
                .iter()
                .zip(completed.row(h)?)
                .filter_map(|(f, v)| v.map(|v| (f.clone(), v)))
                .collect();
            let fit: BTreeMap<GuestType, f64> = self.profiles.iter().map(|p| (p.name, guest_fit(&row, p))).collect();
            fits.insert(h.clone(), fit);
            completed_polarity.insert(h.clone(), row);
        }

        Ok(ScoredCorpus {
            aggregates: aggregates.into_iter().map(|a| (a.hotel_id.clone(), a)).collect(),
            review_polarity: polarities.into_iter().map(|p| (p.review_id.clone(), p)).collect(),
            feature_polarity,
            completed_polarity,
            guest_fit: fits,
            labels,
            features,
        })
    }

    /// Mean signed sentiment of each feature's opinion words, weighted by the
    /// opinion term's TF-IDF in its review. Mentions without an opinion word
    /// carry no magnitude and are left out.
    fn feature_polarity(
        &self,
        analyzed: &[AnalyzedReview],
        stats: &CorpusStats,
    ) -> BTreeMap<String, BTreeMap<String, f64>> {
        let mut sums: BTreeMap<String, BTreeMap<String, (f64, usize)>> = BTreeMap::new();
        for a in analyzed {
            for m in &a.mentions {
                let Some(op) = &m.opinion_word else { continue };
                let weight = stats.tfidf_weight(&stem(op), &a.review_id).unwrap_or(0.0);
                let mut v = self.sentiment.lookup(op).score() * weight;
                if m.negated {
                    v = -v;
                }
                let e = sums
                    .entry(a.hotel_id.clone())
                    .or_default()
                    .entry(m.feature.clone())
                    .or_insert((0.0, 0));
                e.0 += v;
                e.1 += 1;
            }
        }
        sums.into_iter()
            .map(|(h, fs)| (h, fs.into_iter().map(|(f, (s, n))| (f, s / n as f64)).collect()))
            .collect()
    }
}
