use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::textpipe::lexicon::TagLexicon;
use crate::textpipe::stem::stem;
use crate::textpipe::token::Token;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[allow(clippy::upper_case_acronyms)]
pub enum Tag {
    NN,
    NNS,
    NP,
    VB,
    VBZ,
    JJ,
    RB,
    DT,
    IN,
    EX,
    CC,
    CD,
    OTHER,
}

impl Tag {
    pub const ALL: [Tag; 13] = [
        Tag::NN,
        Tag::NNS,
        Tag::NP,
        Tag::VB,
        Tag::VBZ,
        Tag::JJ,
        Tag::RB,
        Tag::DT,
        Tag::IN,
        Tag::EX,
        Tag::CC,
        Tag::CD,
        Tag::OTHER,
    ];

    /// Common nouns. Proper nouns are deliberately excluded.
    pub fn is_common_noun(self) -> bool {
        matches!(self, Tag::NN | Tag::NNS)
    }

    pub fn is_opinion(self) -> bool {
        matches!(self, Tag::JJ | Tag::RB)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Tag::NN => "NN",
            Tag::NNS => "NNS",
            Tag::NP => "NP",
            Tag::VB => "VB",
            Tag::VBZ => "VBZ",
            Tag::JJ => "JJ",
            Tag::RB => "RB",
            Tag::DT => "DT",
            Tag::IN => "IN",
            Tag::EX => "EX",
            Tag::CC => "CC",
            Tag::CD => "CD",
            Tag::OTHER => "OTHER",
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Tag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Tag::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown tag {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaggedToken {
    pub token: Token,
    pub tag: Tag,
    pub stem: String,
}

impl TaggedToken {
    pub fn lower(&self) -> String {
        self.token.lower()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sentence {
    pub raw: String,
    pub tokens: Vec<TaggedToken>,
}

impl Sentence {
    /// `word/TAG` rendering.
    pub fn tagged_string(&self) -> String {
        self.tokens
            .iter()
            .map(|t| format!("{}/{}", t.token.surface, t.tag))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn suffix_tag(lower: &str, lexicon: &TagLexicon) -> Option<Tag> {
    if lower.len() > 3 && lower.ends_with("ly") {
        return Some(Tag::RB);
    }
    if ["ous", "ful", "less", "ive"]
        .iter()
        .any(|s| lower.len() > s.len() + 1 && lower.ends_with(s))
    {
        return Some(Tag::JJ);
    }
    if lower.ends_with('s') && !lower.ends_with("ss") {
        match lexicon.get(&stem(lower)) {
            Some(Tag::NN) => return Some(Tag::NNS),
            Some(Tag::VB) => return Some(Tag::VBZ),
            _ => {}
        }
    }
    if lower.len() > 4 && lower.ends_with("ed") {
        return Some(Tag::VB);
    }
    None
}

fn tag_one(token: &Token, lexicon: &TagLexicon) -> Tag {
    let surface = &token.surface;
    if !token.is_word() {
        return Tag::OTHER;
    }
    if surface.chars().all(|c| c.is_ascii_digit()) {
        return Tag::CD;
    }
    let lower = token.lower();
    if let Some(tag) = lexicon.get(&lower) {
        return tag;
    }
    if let Some(tag) = suffix_tag(&lower, lexicon) {
        return tag;
    }
    let capitalized = surface.chars().next().is_some_and(char::is_uppercase);
    if capitalized && token.position > 0 {
        return Tag::NP;
    }
    Tag::NN
}

/// Lexicon lookup, then suffix heuristics, then `NN`.
pub fn pos_tag(tokens: &[Token], lexicon: &TagLexicon) -> Vec<TaggedToken> {
    tokens
        .iter()
        .map(|t| TaggedToken {
            tag: tag_one(t, lexicon),
            stem: if t.is_word() {
                stem(&t.surface)
            } else {
                t.surface.clone()
            },
            token: t.clone(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textpipe::token::tokenize;

    fn tags(s: &str) -> Vec<(String, Tag)> {
        pos_tag(&tokenize(s), &TagLexicon::default())
            .into_iter()
            .map(|t| (t.token.surface, t.tag))
            .collect()
    }

    #[test]
    fn sample_sentence() {
        let got = tags("Rooms of the hotel are big.");
        let want = [
            ("Rooms", Tag::NNS),
            ("of", Tag::IN),
            ("the", Tag::DT),
            ("hotel", Tag::NN),
            ("are", Tag::VBZ),
            ("big", Tag::JJ),
            (".", Tag::OTHER),
        ];
        assert_eq!(got.len(), want.len());
        for ((s, t), (ws, wt)) in got.iter().zip(want) {
            assert_eq!((s.as_str(), *t), (ws, wt));
        }
    }

    #[test]
    fn lexicon_and_fallbacks() {
        assert_eq!(tags("delicious")[0].1, Tag::JJ);
        assert_eq!(tags("zzgrf")[0].1, Tag::NN);
        assert_eq!(tags("splendidly")[0].1, Tag::RB);
        assert_eq!(tags("marvelous")[0].1, Tag::JJ);
        assert_eq!(tags("42")[0].1, Tag::CD);
        assert_eq!(tags("near Brooklyn")[1].1, Tag::NP);
    }

    #[test]
    fn table_one_remaining_sentences() {
        let s = tags("There is no internet");
        assert_eq!(
            s.iter().map(|p| p.1).collect::<Vec<_>>(),
            vec![Tag::EX, Tag::VBZ, Tag::DT, Tag::NN]
        );
        let s = tags("Hotel location is best");
        assert_eq!(
            s.iter().map(|p| p.1).collect::<Vec<_>>(),
            vec![Tag::NN, Tag::NN, Tag::VBZ, Tag::JJ]
        );
    }

    #[test]
    fn tag_round_trip() {
        for t in Tag::ALL {
            assert_eq!(t.as_str().parse::<Tag>().unwrap(), t);
        }
    }
}
