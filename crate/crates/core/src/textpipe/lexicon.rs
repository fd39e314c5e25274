use std::collections::{HashMap, HashSet};
use std::path::Path;

use crate::error::{Error, Result};
use crate::resources;
use crate::textpipe::pos::Tag;

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// Word frequencies backing exaggeration checks and spelling correction.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FrequencyLexicon {
    counts: HashMap<String, u64>,
    total: u64,
}

impl FrequencyLexicon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds from `(word, count)` pairs; zero counts are dropped and words are
    /// lowercased, summing duplicates.
    pub fn from_counts<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, u64)>,
        S: AsRef<str>,
    {
        let mut lex = Self::new();
        for (w, c) in pairs {
            lex.add(w.as_ref(), c);
        }
        lex
    }

    pub fn add(&mut self, word: &str, count: u64) {
        if count == 0 || word.is_empty() {
            return;
        }
        *self.counts.entry(word.to_lowercase()).or_insert(0) += count;
        self.total += count;
    }

    pub fn merge(&mut self, other: &FrequencyLexicon) {
        for (w, c) in &other.counts {
            self.add(w, *c);
        }
    }

    /// `word<TAB>count` per line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lex = Self::new();
        for line in content_lines(text) {
            let mut parts = line.split('\t');
            let (Some(word), Some(count)) = (parts.next(), parts.next()) else {
                return Err(Error::Config(format!("bad frequency line {line:?}")));
            };
            let count = count
                .trim()
                .parse::<u64>()
                .map_err(|_| Error::Config(format!("bad frequency count in {line:?}")))?;
            lex.add(word.trim(), count);
        }
        Ok(lex)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&read(path.as_ref())?)
    }

    pub fn seed() -> Self {
        Self::parse(resources::FREQUENCY_SEED).expect("bundled frequency list parses")
    }

    pub fn contains(&self, word: &str) -> bool {
        self.counts.contains_key(word)
    }

    pub fn frequency(&self, word: &str) -> u64 {
        self.counts.get(word).copied().unwrap_or(0)
    }

    pub fn total_count(&self) -> u64 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = (&str, u64)> {
        self.counts.iter().map(|(w, c)| (w.as_str(), *c))
    }
}

pub const NEGATORS: [&str; 4] = ["no", "not", "never", "n't"];

#[derive(Debug, Clone, PartialEq)]
pub struct StopwordList {
    stops: HashSet<String>,
    negators: HashSet<String>,
}

impl StopwordList {
    /// Negators are always preserved, even if listed in `words`.
    pub fn new<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let negators: HashSet<String> = NEGATORS.iter().map(|s| s.to_string()).collect();
        let stops = words
            .into_iter()
            .map(|w| w.as_ref().trim().to_lowercase())
            .filter(|w| !w.is_empty() && !negators.contains(w))
            .collect();
        Self { stops, negators }
    }

    pub fn parse(text: &str) -> Self {
        Self::new(content_lines(text))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Ok(Self::parse(&read(path.as_ref())?))
    }

    pub fn is_stopword(&self, lower: &str) -> bool {
        self.stops.contains(lower)
    }

    pub fn is_negator(&self, lower: &str) -> bool {
        self.negators.contains(lower)
    }
}

impl Default for StopwordList {
    fn default() -> Self {
        Self::parse(resources::STOPWORDS)
    }
}

/// Seed part-of-speech lexicon, `word<TAB>tag` per line.
#[derive(Debug, Clone, PartialEq)]
pub struct TagLexicon {
    tags: HashMap<String, Tag>,
}

impl TagLexicon {
    pub fn parse(text: &str) -> Result<Self> {
        let mut tags = HashMap::new();
        for line in content_lines(text) {
            let mut parts = line.split('\t');
            let (Some(word), Some(tag)) = (parts.next(), parts.next()) else {
                return Err(Error::Config(format!("bad tag lexicon line {line:?}")));
            };
            let tag: Tag = tag
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("unknown tag in {line:?}")))?;
            tags.insert(word.trim().to_lowercase(), tag);
        }
        Ok(Self { tags })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&read(path.as_ref())?)
    }

    pub fn insert(&mut self, word: &str, tag: Tag) {
        self.tags.insert(word.to_lowercase(), tag);
    }

    pub fn get(&self, lower: &str) -> Option<Tag> {
        self.tags.get(lower).copied()
    }

    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.tags.keys().map(String::as_str)
    }
}

impl Default for TagLexicon {
    fn default() -> Self {
        Self::parse(resources::TAG_LEXICON).expect("bundled tag lexicon parses")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frequency_total_is_sum() {
        let lex = FrequencyLexicon::parse("a\t3\nB\t2\na\t1\n").unwrap();
        assert_eq!(lex.frequency("a"), 4);
        assert_eq!(lex.frequency("b"), 2);
        assert_eq!(lex.total_count(), 6);
        assert_eq!(lex.words().map(|(_, c)| c).sum::<u64>(), lex.total_count());
    }

    #[test]
    fn negators_never_stopwords() {
        let list = StopwordList::new(["the", "no", "not"]);
        assert!(list.is_stopword("the"));
        assert!(!list.is_stopword("no"));
        assert!(list.is_negator("no"));
    }

    #[test]
    fn bundled_resources_parse() {
        assert!(TagLexicon::default().len() >= 450);
        assert!(FrequencyLexicon::seed().len() > 400);
        let stops = StopwordList::default();
        for w in ["the", "a", "also", "about", "an", "at", "to", "is"] {
            assert!(stops.is_stopword(w), "{w}");
        }
    }
}
