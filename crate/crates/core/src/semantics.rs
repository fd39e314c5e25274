//! Feature/opinion extraction and the hotel-by-feature mention matrix.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::resources;
use crate::textpipe::{stem, Sentence, Tag, NEGATORS};

/// Adverbs that grade or connect rather than evaluate.
const NON_OPINION: &[&str] = &[
    "very",
    "too",
    "so",
    "really",
    "quite",
    "also",
    "just",
    "there",
    "here",
    "then",
    "now",
    "even",
    "still",
    "rather",
    "extremely",
    "absolutely",
    "totally",
    "completely",
    "always",
    "ever",
    "only",
    "again",
    "already",
    "almost",
    "back",
    "away",
    "however",
    "somewhat",
    "slightly",
    "fairly",
    "pretty",
    "especially",
    "truly",
    "incredibly",
    "mostly",
    "usually",
    "sometimes",
    "once",
    "twice",
    "not",
    "never",
    "n't",
    "no",
];

pub const NOT_AVAILABLE: &str = "Not available";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureMention {
    pub feature: String,
    /// Lowercased opinion word, `None` when only a negator qualifies the
    /// feature ("there is no internet").
    pub opinion_word: Option<String>,
    pub negated: bool,
    pub review_id: String,
    pub sentence_index: usize,
}

/// Variant word to canonical feature, one hop. Keys and values are stored
/// stemmed.
#[derive(Debug, Clone, PartialEq)]
pub struct SynonymMap {
    map: HashMap<String, String>,
}

impl SynonymMap {
    pub fn from_pairs<I, S>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut map = HashMap::new();
        for (variant, canonical) in pairs {
            let v = stem(variant.as_ref().trim());
            let c = stem(canonical.as_ref().trim());
            if v.is_empty() || c.is_empty() {
                continue;
            }
            map.insert(v, c);
        }
        let canonicals: BTreeSet<String> = map.values().cloned().collect();
        for c in &canonicals {
            match map.get(c) {
                Some(target) if target != c => {
                    return Err(Error::Config(format!(
                        "synonym chain: canonical {c:?} is itself mapped to {target:?}"
                    )))
                }
                _ => {
                    map.insert(c.clone(), c.clone());
                }
            }
        }
        Ok(Self { map })
    }

    /// `variant<TAB>canonical` per line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for line in text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
        {
            let (v, c) = line
                .split_once('\t')
                .ok_or_else(|| Error::Config(format!("bad synonym line {line:?}")))?;
            pairs.push((v.to_string(), c.to_string()));
        }
        Self::from_pairs(pairs)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        Self::parse(&std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?)
    }

    pub fn canonical_features(&self) -> BTreeSet<&str> {
        self.map.values().map(String::as_str).collect()
    }

    pub fn resolve_stem(&self, stemmed: &str) -> String {
        self.map.get(stemmed).cloned().unwrap_or_else(|| stemmed.to_string())
    }
}

impl Default for SynonymMap {
    fn default() -> Self {
        Self::parse(resources::SYNONYMS).expect("bundled synonyms parse")
    }
}

/// Stem, lowercase, then map through the synonyms.
pub fn group_synonyms(word: &str, synonyms: &SynonymMap) -> String {
    synonyms.resolve_stem(&stem(word))
}

fn is_negator(lower: &str) -> bool {
    NEGATORS.contains(&lower)
}

/// Nouns that are not phrase heads: the first part of a compound ("hotel
/// location") or the object of an "of" that follows another noun ("rooms of
/// the hotel").
fn is_modifier(sentence: &Sentence, i: usize) -> bool {
    let toks = &sentence.tokens;
    if toks.get(i + 1).is_some_and(|t| t.tag.is_common_noun()) {
        return true;
    }
    let mut k = i;
    while k > 0 && matches!(toks[k - 1].tag, Tag::DT | Tag::JJ | Tag::CD | Tag::NN | Tag::NNS) {
        k -= 1;
    }
    k >= 2 && toks[k - 1].tag == Tag::IN && toks[k - 1].lower() == "of" && toks[k - 2].tag.is_common_noun()
}

fn nearest_opinion(sentence: &Sentence, i: usize) -> Option<usize> {
    let mut best: Option<(usize, usize)> = None;
    for (j, t) in sentence.tokens.iter().enumerate() {
        if j == i || !t.tag.is_opinion() || NON_OPINION.contains(&t.lower().as_str()) {
            continue;
        }
        let d = j.abs_diff(i);
        // equal distance: the later candidate (after the noun) wins
        if best.is_none_or(|(bd, _)| d < bd || (d == bd && j > i)) {
            best = Some((d, j));
        }
    }
    best.map(|(_, j)| j)
}

/// Pairs every head noun with its nearest opinion word. Nouns without an
/// opinion word are kept only when negated.
pub fn extract_feature_mentions(sentence: &Sentence, synonyms: &SynonymMap) -> Vec<FeatureMention> {
    let first_negator = sentence.tokens.iter().position(|t| is_negator(&t.lower()));
    let mut out = Vec::new();
    for (i, tok) in sentence.tokens.iter().enumerate() {
        if !tok.tag.is_common_noun() || is_modifier(sentence, i) {
            continue;
        }
        let opinion = nearest_opinion(sentence, i);
        let reach = opinion.map_or(i, |j| j.max(i));
        let negated = first_negator.is_some_and(|n| n < reach);
        if opinion.is_none() && !negated {
            continue;
        }
        out.push(FeatureMention {
            feature: synonyms.resolve_stem(&tok.stem),
            opinion_word: opinion.map(|j| sentence.tokens[j].lower()),
            negated,
            review_id: String::new(),
            sentence_index: 0,
        });
    }
    out
}

/// Mentions for every sentence of one review, tagged with the review id and
/// sentence index.
pub fn extract_review_mentions(review_id: &str, sentences: &[Sentence], synonyms: &SynonymMap) -> Vec<FeatureMention> {
    sentences
        .iter()
        .enumerate()
        .flat_map(|(idx, s)| {
            extract_feature_mentions(s, synonyms).into_iter().map(move |mut m| {
                m.review_id = review_id.to_string();
                m.sentence_index = idx;
                m
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemanticRow {
    pub feature: String,
    pub value: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemanticTable {
    pub review_id: String,
    pub rows: Vec<SemanticRow>,
}

pub fn render_value(m: &FeatureMention) -> String {
    match (&m.opinion_word, m.negated) {
        (None, _) => NOT_AVAILABLE.to_string(),
        (Some(op), true) => format!("not {op}"),
        (Some(op), false) => op.clone(),
    }
}

pub fn build_semantic_table(review_id: &str, mentions: &[FeatureMention]) -> SemanticTable {
    let mut ordered: Vec<&FeatureMention> = mentions.iter().collect();
    ordered.sort_by_key(|m| m.sentence_index);
    SemanticTable {
        review_id: review_id.to_string(),
        rows: ordered
            .into_iter()
            .map(|m| SemanticRow {
                feature: m.feature.clone(),
                value: render_value(m),
            })
            .collect(),
    }
}

/// Lexicographically sorted distinct features.
pub fn canonical_features(mentions: &[FeatureMention]) -> Vec<String> {
    mentions
        .iter()
        .map(|m| m.feature.clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureRow {
    pub hotel_id: String,
    pub review_id: String,
    pub counts: Vec<u32>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HotelFeatureMatrix {
    pub features: Vec<String>,
    pub rows: Vec<FeatureRow>,
}

impl HotelFeatureMatrix {
    pub fn cell(&self, hotel_id: &str, review_id: &str, feature: &str) -> Option<u32> {
        let col = self.features.iter().position(|f| f == feature)?;
        self.rows
            .iter()
            .find(|r| r.hotel_id == hotel_id && r.review_id == review_id)
            .map(|r| r.counts[col])
    }

    pub fn total(&self) -> u64 {
        self.rows
            .iter()
            .flat_map(|r| r.counts.iter())
            .map(|&c| u64::from(c))
            .sum()
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["hotel_id".to_string(), "review_id".to_string()];
        header.extend(self.features.iter().cloned());
        w.write_record(&header)?;
        for r in &self.rows {
            let mut rec = vec![r.hotel_id.clone(), r.review_id.clone()];
            rec.extend(r.counts.iter().map(u32::to_string));
            w.write_record(&rec)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Config(e.to_string()))?;
        Ok(String::from_utf8_lossy(&bytes).into_owned())
    }
}

/// One row per `(hotel, review)` key; cells count mentions of each feature.
/// Every mentioned feature must appear in `features`.
pub fn build_feature_matrix(
    reviews: &[(String, String, Vec<FeatureMention>)],
    features: &[String],
) -> Result<HotelFeatureMatrix> {
    let columns: HashMap<&str, usize> = features.iter().enumerate().map(|(i, f)| (f.as_str(), i)).collect();
    let mut rows: BTreeMap<(String, String), Vec<u32>> = BTreeMap::new();
    for (hotel_id, review_id, mentions) in reviews {
        let row = rows
            .entry((hotel_id.clone(), review_id.clone()))
            .or_insert_with(|| vec![0; features.len()]);
        for m in mentions {
            let col = *columns
                .get(m.feature.as_str())
                .ok_or_else(|| Error::UnknownKey(m.feature.clone()))?;
            row[col] += 1;
        }
    }
    Ok(HotelFeatureMatrix {
        features: features.to_vec(),
        rows: rows
            .into_iter()
            .map(|((hotel_id, review_id), counts)| FeatureRow {
                hotel_id,
                review_id,
                counts,
            })
            .collect(),
    })
}
