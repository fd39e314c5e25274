//! Lexical and syntactic analysis of review text.

pub mod lexicon;
pub mod pos;
pub mod spell;
pub mod stem;
pub mod token;

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use lexicon::{FrequencyLexicon, StopwordList, TagLexicon, NEGATORS};
pub use pos::{pos_tag, Sentence, Tag, TaggedToken};
pub use spell::{correct_spelling, shorten_exaggeration};
pub use stem::stem;
pub use token::{split_sentences, tokenize, Token};

/// Drops stopwords (case-insensitive) and keeps negators.
pub fn remove_stopwords(tokens: &[Token], stops: &StopwordList) -> Vec<Token> {
    tokens
        .iter()
        .filter(|t| {
            let lower = t.lower();
            stops.is_negator(&lower) || !stops.is_stopword(&lower)
        })
        .cloned()
        .collect()
}

/// A content term of a review document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    /// Stemmed, lowercased form.
    pub text: String,
    /// A negator occurs earlier in the same sentence.
    pub negated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzedText {
    pub sentences: Vec<Sentence>,
    /// Stopword-free terms in reading order, punctuation excluded.
    pub terms: Vec<Term>,
}

/// Sentence splitting, tokenizing, exaggeration shortening, spelling
/// correction, tagging and stopword removal bundled over fixed lexicons.
#[derive(Debug, Clone, Default)]
pub struct TextPipeline {
    pub frequencies: FrequencyLexicon,
    pub tags: TagLexicon,
    pub stopwords: StopwordList,
    corrections: HashMap<String, String>,
}

fn is_alpha_word(s: &str) -> bool {
    !s.is_empty() && s.chars().all(char::is_alphabetic)
}

impl TextPipeline {
    pub fn new(frequencies: FrequencyLexicon, tags: TagLexicon, stopwords: StopwordList) -> Self {
        Self {
            frequencies,
            tags,
            stopwords,
            corrections: HashMap::new(),
        }
    }

    /// Precomputes corrections for every unknown word form in `texts`, in
    /// parallel. Purely an optimization; results are identical without it.
    pub fn warm_corrections<'a, I: IntoIterator<Item = &'a str>>(&mut self, texts: I) {
        let mut forms = HashSet::new();
        for text in texts {
            for sentence in split_sentences(text) {
                for t in tokenize(&sentence) {
                    if is_alpha_word(&t.surface) && !self.frequencies.contains(&t.lower()) {
                        forms.insert(t.surface);
                    }
                }
            }
        }
        let forms: Vec<String> = forms.into_iter().collect();
        let fixed: Vec<(String, String)> = forms
            .par_iter()
            .map(|f| (f.clone(), self.normalize_uncached(f)))
            .collect();
        self.corrections.extend(fixed);
    }

    fn normalize_uncached(&self, surface: &str) -> String {
        let shortened = shorten_exaggeration(surface, &self.frequencies);
        if self.frequencies.contains(&shortened.to_lowercase()) {
            return shortened;
        }
        correct_spelling(&shortened, &self.frequencies)
    }

    /// Case is kept for known words so capitalization still informs tagging.
    /// Capitalized words inside a sentence are treated as names and only
    /// shortened, never spell-corrected.
    fn normalize_token(&self, token: &Token) -> String {
        let surface = &token.surface;
        if !is_alpha_word(surface) || self.frequencies.contains(&token.lower()) {
            return surface.clone();
        }
        let capitalized = surface.chars().next().is_some_and(char::is_uppercase);
        if capitalized && token.position > 0 {
            return shorten_exaggeration(surface, &self.frequencies);
        }
        if let Some(c) = self.corrections.get(surface) {
            return c.clone();
        }
        self.normalize_uncached(surface)
    }

    pub fn analyze_sentence(&self, raw: &str) -> Sentence {
        let tokens: Vec<Token> = tokenize(raw)
            .into_iter()
            .map(|t| Token::new(self.normalize_token(&t), t.position))
            .collect();
        Sentence {
            raw: raw.to_string(),
            tokens: pos_tag(&tokens, &self.tags),
        }
    }

    pub fn analyze(&self, text: &str) -> AnalyzedText {
        let sentences: Vec<Sentence> = split_sentences(text).iter().map(|s| self.analyze_sentence(s)).collect();
        let mut terms = Vec::new();
        for s in &sentences {
            let raw: Vec<Token> = s.tokens.iter().map(|t| t.token.clone()).collect();
            let kept = remove_stopwords(&raw, &self.stopwords);
            let mut negated = false;
            for t in kept.iter().filter(|t| t.is_word()) {
                let lower = t.lower();
                terms.push(Term {
                    text: stem(&lower),
                    negated,
                });
                if self.stopwords.is_negator(&lower) {
                    negated = true;
                }
            }
        }
        AnalyzedText { sentences, terms }
    }
}
