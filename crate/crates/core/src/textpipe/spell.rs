//! Exaggeration shortening and frequency-based spelling correction.

use crate::textpipe::lexicon::FrequencyLexicon;

const ALPHABET: &str = "abcdefghijklmnopqrstuvwxyz";

/// Collapses every run of more than two identical letters to a single letter,
/// unless the word is a lexicon entry.
pub fn shorten_exaggeration(word: &str, lexicon: &FrequencyLexicon) -> String {
    if lexicon.contains(&word.to_lowercase()) {
        return word.to_string();
    }
    let chars: Vec<char> = word.chars().collect();
    let mut out = String::with_capacity(word.len());
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let key = c.to_lowercase().next().unwrap_or(c);
        let mut j = i + 1;
        while j < chars.len() && chars[j].to_lowercase().next() == Some(key) {
            j += 1;
        }
        let run = j - i;
        if c.is_alphabetic() && run > 2 {
            out.push(c);
        } else {
            out.extend(&chars[i..j]);
        }
        i = j;
    }
    out
}

/// All strings one deletion, transposition, replacement or insertion away.
pub fn edits1(word: &str) -> Vec<String> {
    let chars: Vec<char> = word.chars().collect();
    let n = chars.len();
    let mut out = Vec::with_capacity(54 * n + 25);
    let join = |parts: &[&[char]]| -> String { parts.iter().flat_map(|p| p.iter()).collect() };
    for i in 0..n {
        out.push(join(&[&chars[..i], &chars[i + 1..]]));
    }
    for i in 0..n.saturating_sub(1) {
        out.push(join(&[&chars[..i], &[chars[i + 1], chars[i]], &chars[i + 2..]]));
    }
    for i in 0..n {
        for c in ALPHABET.chars() {
            out.push(join(&[&chars[..i], &[c], &chars[i + 1..]]));
        }
    }
    for i in 0..=n {
        for c in ALPHABET.chars() {
            out.push(join(&[&chars[..i], &[c], &chars[i..]]));
        }
    }
    out
}

/// Highest frequency wins; equal frequency goes to the lexicographically
/// smallest word.
fn better(candidate: (&str, u64), current: Option<(&str, u64)>) -> bool {
    match current {
        None => true,
        Some((w, f)) => candidate.1 > f || (candidate.1 == f && candidate.0 < w),
    }
}

fn best_known<'a, I: IntoIterator<Item = &'a String>>(candidates: I, lexicon: &FrequencyLexicon) -> Option<String> {
    let mut best: Option<(&str, u64)> = None;
    for c in candidates {
        let f = lexicon.frequency(c);
        if f > 0 && better((c.as_str(), f), best) {
            best = Some((c.as_str(), f));
        }
    }
    best.map(|(w, _)| w.to_string())
}

/// Returns the lowercased word when it is known, otherwise the most frequent
/// known word at edit distance 1, then 2, otherwise the input unchanged.
pub fn correct_spelling(word: &str, lexicon: &FrequencyLexicon) -> String {
    let lower = word.to_lowercase();
    if lexicon.contains(&lower) {
        return lower;
    }
    let first = edits1(&lower);
    if let Some(w) = best_known(&first, lexicon) {
        return w;
    }
    let mut best: Option<(String, u64)> = None;
    for e1 in &first {
        for e2 in edits1(e1) {
            let f = lexicon.frequency(&e2);
            if f > 0 && better((&e2, f), best.as_ref().map(|(w, f)| (w.as_str(), *f))) {
                best = Some((e2, f));
            }
        }
    }
    best.map(|(w, _)| w).unwrap_or_else(|| word.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lex(pairs: &[(&str, u64)]) -> FrequencyLexicon {
        FrequencyLexicon::from_counts(pairs.iter().copied())
    }

    #[test]
    fn shortening() {
        let l = lex(&[("cool", 5), ("no", 9)]);
        assert_eq!(shorten_exaggeration("NOOOOOO", &l), "NO");
        assert_eq!(shorten_exaggeration("cool", &l), "cool");
        assert_eq!(shorten_exaggeration("sooooo", &l), "so");
        assert_eq!(shorten_exaggeration("loooovely", &l), "lovely");
        assert_eq!(shorten_exaggeration("!!!", &l), "!!!");
    }

    #[test]
    fn shortening_keeps_lexicon_words() {
        let l = lex(&[("zzz", 1)]);
        assert_eq!(shorten_exaggeration("zzz", &l), "zzz");
    }

    #[test]
    fn known_word_is_returned() {
        assert_eq!(correct_spelling("hotel", &lex(&[("hotel", 3)])), "hotel");
        assert_eq!(correct_spelling("Hotel", &lex(&[("hotel", 3)])), "hotel");
    }

    #[test]
    fn single_deletion_candidate() {
        let l = lex(&[("location", 10), ("local", 3)]);
        assert_eq!(correct_spelling("locaton", &l), "location");
    }

    #[test]
    fn no_candidate_returns_input() {
        let l = lex(&[("location", 10), ("local", 3)]);
        assert_eq!(correct_spelling("xqzvvv", &l), "xqzvvv");
    }

    #[test]
    fn distance_one_beats_frequent_distance_two() {
        let l = lex(&[("bat", 1), ("cart", 1000)]);
        // "bart": bat by deletion, cart by replacement, both distance 1
        assert_eq!(correct_spelling("bart", &l), "cart");
        // "brtt": bat needs two edits, nothing at one
        assert_eq!(correct_spelling("batts", &lex(&[("bat", 1)])), "bat");
    }

    #[test]
    fn ties_break_lexicographically() {
        let l = lex(&[("cat", 4), ("bat", 4)]);
        assert_eq!(correct_spelling("at", &l), "bat");
    }

    #[test]
    fn edits1_size() {
        // deletions n, transpositions n-1, replacements 26n, insertions 26(n+1)
        assert_eq!(edits1("abc").len(), 3 + 2 + 78 + 104);
    }
}
