use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub position: usize,
}

impl Token {
    pub fn new(surface: impl Into<String>, position: usize) -> Self {
        Self {
            surface: surface.into(),
            position,
        }
    }

    pub fn is_word(&self) -> bool {
        self.surface.chars().any(char::is_alphanumeric)
    }

    pub fn lower(&self) -> String {
        self.surface.to_lowercase()
    }
}

fn is_terminal(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

fn is_punct(c: char) -> bool {
    !c.is_alphanumeric() && !c.is_whitespace()
}

/// Collapses runs of terminal marks to their first mark and runs of any other
/// repeated punctuation character to one occurrence.
pub fn collapse_punctuation(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut prev: Option<char> = None;
    for c in text.chars() {
        if let Some(p) = prev {
            if is_terminal(c) && is_terminal(p) {
                continue;
            }
            if is_punct(c) && c == p {
                continue;
            }
        }
        out.push(c);
        prev = Some(c);
    }
    out
}

/// Splits on `.`, `!` or `?` followed by whitespace or end of text.
pub fn split_sentences(text: &str) -> Vec<String> {
    let text = collapse_punctuation(text);
    let mut sentences = Vec::new();
    let mut start = 0;
    let mut chars = text.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        if !is_terminal(c) {
            continue;
        }
        let at_boundary = match chars.peek() {
            None => true,
            Some((_, next)) => next.is_whitespace(),
        };
        if at_boundary {
            let end = i + c.len_utf8();
            let s = text[start..end].trim();
            if !s.is_empty() {
                sentences.push(s.to_string());
            }
            start = end;
        }
    }
    let tail = text[start..].trim();
    if !tail.is_empty() {
        sentences.push(tail.to_string());
    }
    sentences
}

/// Alphanumeric runs become tokens, every other non-space character is its own
/// token. Contractions split Penn-style: `didn't` gives `did` + `n't`, `it's`
/// gives `it` + `'s`.
pub fn tokenize(sentence: &str) -> Vec<Token> {
    let chars: Vec<char> = sentence
        .chars()
        .map(|c| if c == '\u{2019}' { '\'' } else { c })
        .collect();
    let mut surfaces: Vec<String> = Vec::new();
    let mut word = String::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_alphanumeric() {
            word.push(c);
            i += 1;
            continue;
        }
        let next_alpha = chars.get(i + 1).is_some_and(|n| n.is_alphabetic());
        if c == '\'' && !word.is_empty() && next_alpha {
            let rest_len = chars[i + 1..].iter().take_while(|n| n.is_alphanumeric()).count();
            let rest: String = chars[i + 1..i + 1 + rest_len].iter().collect();
            if rest.eq_ignore_ascii_case("t") && word.len() > 1 && word.to_lowercase().ends_with('n') {
                let n = word.pop().unwrap_or('n');
                surfaces.push(std::mem::take(&mut word));
                surfaces.push(format!("{n}'{rest}"));
            } else {
                surfaces.push(std::mem::take(&mut word));
                surfaces.push(format!("'{rest}"));
            }
            i += 1 + rest_len;
            continue;
        }
        if !word.is_empty() {
            surfaces.push(std::mem::take(&mut word));
        }
        if !c.is_whitespace() {
            surfaces.push(c.to_string());
        }
        i += 1;
    }
    if !word.is_empty() {
        surfaces.push(word);
    }
    surfaces
        .into_iter()
        .filter(|s| !s.is_empty())
        .enumerate()
        .map(|(position, surface)| Token { surface, position })
        .collect()
}
