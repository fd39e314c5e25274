//! TF-IDF weighting, lexicon sentiment and review polarity.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::resources;
use crate::textpipe::{stem, Term};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SentimentLexiconEntry {
    pub pos_score: f64,
    pub neg_score: f64,
}

impl SentimentLexiconEntry {
    pub const NEUTRAL: Self = Self {
        pos_score: 0.0,
        neg_score: 0.0,
    };

    pub fn score(&self) -> f64 {
        self.pos_score - self.neg_score
    }

    fn valid(&self) -> bool {
        (0.0..=1.0).contains(&self.pos_score)
            && (0.0..=1.0).contains(&self.neg_score)
            && self.pos_score + self.neg_score <= 1.0 + 1e-9
    }
}

#[derive(Debug, Clone, Default)]
pub struct SentimentLexicon {
    by_word: HashMap<String, SentimentLexiconEntry>,
    by_stem: HashMap<String, SentimentLexiconEntry>,
    /// Lines rejected while loading.
    pub skipped: usize,
}

fn mean(entries: &[SentimentLexiconEntry]) -> SentimentLexiconEntry {
    let n = entries.len() as f64;
    SentimentLexiconEntry {
        pos_score: entries.iter().map(|e| e.pos_score).sum::<f64>() / n,
        neg_score: entries.iter().map(|e| e.neg_score).sum::<f64>() / n,
    }
}

fn parse_line(line: &str) -> Option<Vec<(String, SentimentLexiconEntry)>> {
    let cols: Vec<&str> = line.split('\t').collect();
    // POS, id, PosScore, NegScore, SynsetTerms, Gloss
    if cols.len() >= 5 {
        if let (Ok(p), Ok(n)) = (cols[2].trim().parse(), cols[3].trim().parse()) {
            let entry = SentimentLexiconEntry {
                pos_score: p,
                neg_score: n,
            };
            if !entry.valid() {
                return None;
            }
            let words: Vec<(String, SentimentLexiconEntry)> = cols[4]
                .split_whitespace()
                .map(|t| t.split('#').next().unwrap_or(t).to_lowercase())
                .filter(|w| !w.is_empty())
                .map(|w| (w, entry))
                .collect();
            return (!words.is_empty()).then_some(words);
        }
    }
    let parts: Vec<&str> = line.split_whitespace().collect();
    if parts.len() != 3 {
        return None;
    }
    let entry = SentimentLexiconEntry {
        pos_score: parts[1].parse().ok()?,
        neg_score: parts[2].parse().ok()?,
    };
    entry.valid().then(|| vec![(parts[0].to_lowercase(), entry)])
}

impl SentimentLexicon {
    /// Accepts SentiWordNet-style rows or simplified `word pos neg` rows. A
    /// word listed several times gets the mean of its scores.
    pub fn parse(text: &str) -> Result<Self> {
        let mut occurrences: BTreeMap<String, Vec<SentimentLexiconEntry>> = BTreeMap::new();
        let mut skipped = 0;
        for line in text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
        {
            match parse_line(line) {
                Some(words) => {
                    for (w, e) in words {
                        occurrences.entry(w).or_default().push(e);
                    }
                }
                None => skipped += 1,
            }
        }
        if occurrences.is_empty() {
            return Err(Error::EmptyLexicon { skipped });
        }
        if skipped > 0 {
            log::warn!("sentiment lexicon: skipped {skipped} malformed lines");
        }
        let by_word: HashMap<String, SentimentLexiconEntry> =
            occurrences.iter().map(|(w, es)| (w.clone(), mean(es))).collect();
        let mut stems: BTreeMap<String, Vec<SentimentLexiconEntry>> = BTreeMap::new();
        for (w, e) in &by_word {
            stems.entry(stem(w)).or_default().push(*e);
        }
        let by_stem = stems.into_iter().map(|(s, es)| (s, mean(&es))).collect();
        Ok(Self {
            by_word,
            by_stem,
            skipped,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        Self::parse(&std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?)
    }

    pub fn seed() -> Self {
        Self::parse(resources::SENTIMENT_SEED).expect("bundled sentiment lexicon parses")
    }

    /// Exact word first, then its stem; unknown words are neutral.
    pub fn lookup(&self, word: &str) -> SentimentLexiconEntry {
        let lower = word.to_lowercase();
        self.by_word
            .get(&lower)
            .or_else(|| self.by_stem.get(&stem(&lower)))
            .copied()
            .unwrap_or(SentimentLexiconEntry::NEUTRAL)
    }

    pub fn len(&self) -> usize {
        self.by_word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_word.is_empty()
    }
}

pub fn compute_tf(term: &str, document: &[String]) -> Result<f64> {
    if document.is_empty() {
        return Err(Error::EmptyDocument);
    }
    let count = document.iter().filter(|t| *t == term).count();
    Ok(count as f64 / document.len() as f64)
}

/// Base-10 inverse document frequency.
pub fn compute_idf(term: &str, corpus: &[Vec<String>]) -> Result<f64> {
    let df = corpus.iter().filter(|d| d.iter().any(|t| t == term)).count();
    if df == 0 {
        return Err(Error::UnknownTerm(term.to_string()));
    }
    Ok((corpus.len() as f64 / df as f64).log10())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermStats {
    pub term: String,
    pub tf: BTreeMap<String, f64>,
    pub df: usize,
    pub idf: f64,
}

/// Corpus-wide term statistics, built once and then read-only.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CorpusStats {
    doc_lengths: BTreeMap<String, usize>,
    terms: HashMap<String, TermStats>,
}

impl CorpusStats {
    pub fn build<'a, I>(documents: I) -> Self
    where
        I: IntoIterator<Item = (&'a str, &'a [String])>,
    {
        let mut doc_lengths = BTreeMap::new();
        let mut counts: HashMap<String, BTreeMap<String, usize>> = HashMap::new();
        for (doc_id, terms) in documents {
            doc_lengths.insert(doc_id.to_string(), terms.len());
            for t in terms {
                *counts
                    .entry(t.clone())
                    .or_default()
                    .entry(doc_id.to_string())
                    .or_insert(0) += 1;
            }
        }
        let n = doc_lengths.len() as f64;
        let terms = counts
            .into_iter()
            .map(|(term, per_doc)| {
                let df = per_doc.len();
                let tf = per_doc
                    .into_iter()
                    .map(|(d, c)| {
                        let len = doc_lengths[&d] as f64;
                        (d, c as f64 / len)
                    })
                    .collect();
                let stats = TermStats {
                    term: term.clone(),
                    tf,
                    df,
                    idf: (n / df as f64).log10(),
                };
                (term, stats)
            })
            .collect();
        Self { doc_lengths, terms }
    }

    pub fn document_count(&self) -> usize {
        self.doc_lengths.len()
    }

    pub fn term(&self, term: &str) -> Option<&TermStats> {
        self.terms.get(term)
    }

    pub fn terms(&self) -> impl Iterator<Item = &TermStats> {
        self.terms.values()
    }

    pub fn tfidf_weight(&self, term: &str, document_id: &str) -> Result<f64> {
        if !self.doc_lengths.contains_key(document_id) {
            return Err(Error::UnknownDocument(document_id.to_string()));
        }
        let stats = self
            .terms
            .get(term)
            .ok_or_else(|| Error::UnknownTerm(term.to_string()))?;
        Ok(tfidf_weight(stats, document_id))
    }

    /// Lexicon score times TF-IDF weight; the sign carries the direction.
    pub fn term_overall_sentiment(&self, term: &str, document_id: &str, lexicon: &SentimentLexicon) -> Result<f64> {
        Ok(lexicon.lookup(term).score() * self.tfidf_weight(term, document_id)?)
    }
}

pub fn tfidf_weight(stats: &TermStats, document_id: &str) -> f64 {
    stats.tf.get(document_id).copied().unwrap_or(0.0) * stats.idf
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolarityLabel {
    Negative,
    Neutral,
    Positive,
}

impl PolarityLabel {
    pub fn from_score(score: f64) -> Self {
        if score > 0.0 {
            PolarityLabel::Positive
        } else if score < 0.0 {
            PolarityLabel::Negative
        } else {
            PolarityLabel::Neutral
        }
    }
}

impl fmt::Display for PolarityLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PolarityLabel::Positive => "Positive",
            PolarityLabel::Negative => "Negative",
            PolarityLabel::Neutral => "Neutral",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReviewPolarity {
    pub review_id: String,
    pub pos_sum: f64,
    pub neg_sum: f64,
    pub polarity: f64,
    pub label: PolarityLabel,
}

impl ReviewPolarity {
    pub fn from_sums(review_id: &str, pos_sum: f64, neg_sum: f64) -> Self {
        let polarity = pos_sum - neg_sum;
        Self {
            review_id: review_id.to_string(),
            pos_sum,
            neg_sum,
            polarity,
            label: PolarityLabel::from_score(polarity),
        }
    }
}

/// Sums the signed overall sentiment of every term occurrence, flipping the
/// sign inside a negation scope. Each occurrence carries `score * idf / len`,
/// so unnegated occurrences of a term add up to its overall sentiment.
pub fn review_polarity(
    review_id: &str,
    terms: &[Term],
    lexicon: &SentimentLexicon,
    stats: &CorpusStats,
) -> ReviewPolarity {
    let mut pos = 0.0;
    let mut neg = 0.0;
    let len = terms.len() as f64;
    for t in terms {
        let score = lexicon.lookup(&t.text).score();
        if score == 0.0 {
            continue;
        }
        let Some(ts) = stats.term(&t.text) else { continue };
        let mut v = score * ts.idf / len;
        if t.negated {
            v = -v;
        }
        if v > 0.0 {
            pos += v;
        } else {
            neg += -v;
        }
    }
    ReviewPolarity::from_sums(review_id, pos, neg)
}

/// `|Σ pos_sum| − |Σ neg_sum|` over the reviews of one hotel at one source.
pub fn review_set_polarity(reviews: &[ReviewPolarity]) -> f64 {
    let pos: f64 = reviews.iter().map(|r| r.pos_sum).sum();
    let neg: f64 = reviews.iter().map(|r| r.neg_sum).sum();
    pos.abs() - neg.abs()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolarityRow {
    pub review_id: String,
    pub counts: Vec<u32>,
    pub label: PolarityLabel,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PolarityMatrix {
    pub opinion_words: Vec<String>,
    pub rows: Vec<PolarityRow>,
}

impl PolarityMatrix {
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["review_id".to_string()];
        header.extend(self.opinion_words.iter().cloned());
        header.push("label".into());
        w.write_record(&header)?;
        for r in &self.rows {
            let mut rec = vec![r.review_id.clone()];
            rec.extend(r.counts.iter().map(u32::to_string));
            rec.push(r.label.to_string());
            w.write_record(&rec)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Config(e.to_string()))?;
        Ok(String::from_utf8_lossy(&bytes).into_owned())
    }
}

/// Per-review counts of each opinion word (compared on stems) plus the
/// review's polarity label.
pub fn build_polarity_matrix(reviews: &[(&[Term], &ReviewPolarity)], opinion_words: &[String]) -> PolarityMatrix {
    let stems: Vec<String> = opinion_words.iter().map(|w| stem(w)).collect();
    let rows = reviews
        .iter()
        .map(|(terms, pol)| PolarityRow {
            review_id: pol.review_id.clone(),
            counts: stems
                .iter()
                .map(|s| terms.iter().filter(|t| &t.text == s).count() as u32)
                .collect(),
            label: pol.label,
        })
        .collect();
    PolarityMatrix {
        opinion_words: opinion_words.to_vec(),
        rows,
    }
}

/// Distinct opinion words of a mention set, sorted.
pub fn opinion_vocabulary<'a, I: IntoIterator<Item = &'a str>>(words: I) -> Vec<String> {
    words
        .into_iter()
        .map(str::to_string)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}
