//! Aggregation from review polarity to a normalized final score, fuzzy
//! classes, and guest-type weighting.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::resources;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SourceAggregate {
    pub hotel_id: String,
    pub source_id: String,
    pub aggregated_polarity: f64,
    pub review_count: u64,
    pub normalized_rank: f64,
    pub votes: u64,
    pub weighted_average_polarity: f64,
}

impl SourceAggregate {
    /// A source with no reviews contributes a polarity term of zero.
    pub fn new(hotel_id: &str, source_id: &str, a: f64, t: u64, normalized_rank: f64, votes: u64) -> Self {
        let polarity_term = if t == 0 { 0.0 } else { a / t as f64 };
        Self {
            hotel_id: hotel_id.to_string(),
            source_id: source_id.to_string(),
            aggregated_polarity: a,
            review_count: t,
            normalized_rank,
            votes,
            weighted_average_polarity: polarity_term + normalized_rank + votes as f64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HotelAggregate {
    pub hotel_id: String,
    pub sources: Vec<SourceAggregate>,
    pub views: u64,
    pub cross_source_score: f64,
    pub final_score: f64,
    pub fuzzy_class: FuzzyClass,
}

/// How the cross-source score combines B values and views.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AggregationMode {
    /// `mean(B) + views`, consistent with the published aggregate table.
    #[default]
    MeanThenViews,
    /// `(Σ B + views) / N`, the formula as literally stated.
    Literal,
}

pub fn aggregate_polarity(polarities: &[f64]) -> f64 {
    polarities.iter().sum()
}

pub fn weighted_average_polarity(a: f64, t: u64, normalized_rank: f64, votes: u64) -> Result<f64> {
    if t == 0 {
        return Err(Error::ZeroReviews);
    }
    Ok(a / t as f64 + normalized_rank + votes as f64)
}

pub fn cross_source_score(b_values: &[f64], views: u64) -> Result<f64> {
    cross_source_score_with(b_values, views, AggregationMode::MeanThenViews)
}

pub fn cross_source_score_with(b_values: &[f64], views: u64, mode: AggregationMode) -> Result<f64> {
    if b_values.is_empty() {
        return Err(Error::NoSources);
    }
    let n = b_values.len() as f64;
    let sum: f64 = b_values.iter().sum();
    Ok(match mode {
        AggregationMode::MeanThenViews => sum / n + views as f64,
        AggregationMode::Literal => (sum + views as f64) / n,
    })
}

/// Min-max normalization onto [0, 10]. A degenerate pool maps to 10.
pub fn final_score(d: f64, pool: &[f64]) -> Result<f64> {
    if !pool.contains(&d) {
        return Err(Error::NotInPool(d));
    }
    let min = pool.iter().copied().fold(f64::INFINITY, f64::min);
    let max = pool.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == min {
        return Ok(10.0);
    }
    Ok(((d - min) / (max - min) * 10.0).clamp(0.0, 10.0))
}

/// Normalizes every member of the pool.
pub fn final_scores(pool: &[f64]) -> Vec<f64> {
    pool.iter()
        .map(|&d| final_score(d, pool).expect("member of its own pool"))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FuzzyClass {
    NR,
    LR,
    AR,
    BR,
    R,
}

impl FuzzyClass {
    pub const ALL: [FuzzyClass; 5] = [
        FuzzyClass::NR,
        FuzzyClass::LR,
        FuzzyClass::AR,
        FuzzyClass::BR,
        FuzzyClass::R,
    ];

    pub fn code(self) -> &'static str {
        match self {
            FuzzyClass::R => "R",
            FuzzyClass::BR => "BR",
            FuzzyClass::AR => "AR",
            FuzzyClass::LR => "LR",
            FuzzyClass::NR => "NR",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            FuzzyClass::R => "Recommended",
            FuzzyClass::BR => "Best Recommended",
            FuzzyClass::AR => "Average Recommended",
            FuzzyClass::LR => "Least Recommended",
            FuzzyClass::NR => "Not Recommended",
        }
    }
}

impl fmt::Display for FuzzyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

pub fn classify(f: f64) -> Result<FuzzyClass> {
    if !(0.0..=10.0).contains(&f) {
        return Err(Error::Range {
            value: f,
            min: 0.0,
            max: 10.0,
        });
    }
    Ok(if f > 8.0 {
        FuzzyClass::R
    } else if f > 6.0 {
        FuzzyClass::BR
    } else if f > 4.0 {
        FuzzyClass::AR
    } else if f > 2.0 {
        FuzzyClass::LR
    } else {
        FuzzyClass::NR
    })
}

/// +1 per positive token, -1 per negative token.
pub fn dictionary_match_score<S: AsRef<str>>(
    tokens: &[S],
    positive: &HashSet<String>,
    negative: &HashSet<String>,
) -> i64 {
    tokens
        .iter()
        .map(|t| {
            let t = t.as_ref();
            if positive.contains(t) {
                1
            } else if negative.contains(t) {
                -1
            } else {
                0
            }
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GuestType {
    Solo,
    Family,
    Couple,
    Business,
    Friends,
}

impl GuestType {
    pub const ALL: [GuestType; 5] = [
        GuestType::Solo,
        GuestType::Family,
        GuestType::Couple,
        GuestType::Business,
        GuestType::Friends,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GuestType::Solo => "solo",
            GuestType::Family => "family",
            GuestType::Couple => "couple",
            GuestType::Business => "business",
            GuestType::Friends => "friends",
        }
    }

    pub fn valid_values() -> String {
        Self::ALL.map(GuestType::as_str).join(", ")
    }
}

impl fmt::Display for GuestType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GuestType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_lowercase();
        Self::ALL.into_iter().find(|g| g.as_str() == lower).ok_or_else(|| {
            Error::Config(format!(
                "unknown guest type {s:?}; valid values: {}",
                Self::valid_values()
            ))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GuestProfile {
    pub name: GuestType,
    pub weights: BTreeMap<String, f64>,
}

impl GuestProfile {
    /// Rescales weights to sum to one, warning when they did not already.
    pub fn new(name: GuestType, weights: BTreeMap<String, f64>) -> Result<Self> {
        if let Some((f, w)) = weights.iter().find(|(_, w)| !w.is_finite() || **w < 0.0) {
            return Err(Error::Config(format!(
                "{name}: weight for {f} must be non-negative, got {w}"
            )));
        }
        let total: f64 = weights.values().sum();
        if total <= 0.0 {
            return Err(Error::Config(format!("{name}: weights sum to zero")));
        }
        let weights = if (total - 1.0).abs() > 1e-9 {
            log::warn!("guest profile {name}: weights sum to {total}, normalizing");
            weights.into_iter().map(|(f, w)| (f, w / total)).collect()
        } else {
            weights
        };
        Ok(Self { name, weights })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GuestProfiles {
    profiles: BTreeMap<GuestType, GuestProfile>,
}

impl GuestProfiles {
    /// `name: feature=weight, ...` per line; `#` starts a comment. Feature
    /// names are stemmed to match extracted features.
    pub fn parse(text: &str) -> Result<Self> {
        let mut profiles = BTreeMap::new();
        for line in text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
        {
            let (name, rest) = line
                .split_once(':')
                .ok_or_else(|| Error::Config(format!("bad profile line {line:?}")))?;
            let guest: GuestType = name.parse()?;
            let mut weights = BTreeMap::new();
            for pair in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                let (f, w) = pair
                    .split_once('=')
                    .ok_or_else(|| Error::Config(format!("bad weight {pair:?} in profile {guest}")))?;
                let w: f64 = w
                    .trim()
                    .parse()
                    .map_err(|_| Error::Config(format!("bad weight {pair:?} in profile {guest}")))?;
                *weights.entry(crate::textpipe::stem(f.trim())).or_insert(0.0) += w;
            }
            profiles.insert(guest, GuestProfile::new(guest, weights)?);
        }
        if let Some(missing) = GuestType::ALL.into_iter().find(|g| !profiles.contains_key(g)) {
            return Err(Error::Config(format!("no profile for guest type {missing}")));
        }
        Ok(Self { profiles })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        Self::parse(&std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?)
    }

    pub fn get(&self, guest: GuestType) -> &GuestProfile {
        &self.profiles[&guest]
    }

    pub fn iter(&self) -> impl Iterator<Item = &GuestProfile> {
        self.profiles.values()
    }
}

impl Default for GuestProfiles {
    fn default() -> Self {
        Self::parse(resources::GUEST_PROFILES).expect("bundled guest profiles parse")
    }
}

/// Weighted sum of feature polarities; absent features count as zero.
pub fn guest_fit(feature_polarity: &BTreeMap<String, f64>, profile: &GuestProfile) -> f64 {
    profile
        .weights
        .iter()
        .map(|(f, w)| w * feature_polarity.get(f).copied().unwrap_or(0.0))
        .sum()
}

/// Ranking key for one candidate under a guest type.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankKey<'a> {
    pub hotel_id: &'a str,
    pub fuzzy_class: FuzzyClass,
    pub guest_fit: f64,
    pub cross_source_score: f64,
}

/// Class descending, then guest fit descending, then D descending, then
/// hotel id ascending.
pub fn rank_order(a: &RankKey<'_>, b: &RankKey<'_>) -> Ordering {
    b.fuzzy_class
        .cmp(&a.fuzzy_class)
        .then_with(|| b.guest_fit.total_cmp(&a.guest_fit))
        .then_with(|| b.cross_source_score.total_cmp(&a.cross_source_score))
        .then_with(|| a.hotel_id.cmp(b.hotel_id))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn aggregation_examples() {
        assert!((aggregate_polarity(&[2.1, -0.5, 1.4]) - 3.0).abs() < 1e-12);
        assert_eq!(aggregate_polarity(&[]), 0.0);
    }

    #[test]
    fn weighted_average_examples() {
        let b = weighted_average_polarity(31.0, 1309, 3.9, 209301).unwrap();
        assert!((b - 209304.9237).abs() < 1e-4);
        assert_eq!(weighted_average_polarity(0.0, 1, 0.0, 0).unwrap(), 0.0);
        let b = weighted_average_polarity(-4.0, 537, 2.8, 17023).unwrap();
        assert!((b - 17025.7926).abs() < 1e-4);
        assert!(matches!(
            weighted_average_polarity(1.0, 0, 1.0, 1),
            Err(Error::ZeroReviews)
        ));
    }

    #[test]
    fn source_aggregate_identity() {
        let s = SourceAggregate::new("H", "D", 31.0, 1309, 3.9, 209301);
        assert_eq!(s.weighted_average_polarity, 31.0 / 1309.0 + 3.9 + 209301.0);
        assert_eq!(
            SourceAggregate::new("H", "D", 5.0, 0, 2.0, 3).weighted_average_polarity,
            5.0
        );
    }

    #[test]
    fn cross_source_examples() {
        let d = cross_source_score(&[209304.92, 268236.01], 331025).unwrap();
        assert!((d - 569795.465).abs() < 1e-6);
        let d = cross_source_score(&[17025.80, 35625.50], 56056).unwrap();
        assert!((d - 82381.65).abs() < 1e-6);
        assert_eq!(cross_source_score(&[10.0], 0).unwrap(), 10.0);
        assert!(matches!(cross_source_score(&[], 3), Err(Error::NoSources)));
        let literal = cross_source_score_with(&[209304.92, 268236.01], 331025, AggregationMode::Literal).unwrap();
        assert!((literal - 404282.965).abs() < 1e-6);
    }

    #[test]
    fn final_score_examples() {
        let pool = [82381.65, 113518.255, 140147.21, 403555.615, 569795.465];
        assert_eq!(final_score(82381.65, &pool).unwrap(), 0.0);
        assert_eq!(final_score(569795.465, &pool).unwrap(), 10.0);
        assert!((final_score(403555.615, &pool).unwrap() - 6.5894).abs() < 1e-4);
        assert!(matches!(final_score(1.0, &pool), Err(Error::NotInPool(_))));
        assert_eq!(final_score(3.0, &[3.0, 3.0]).unwrap(), 10.0);
    }

    #[test]
    fn classify_examples() {
        let want = [
            (8.93234, FuzzyClass::R),
            (7.63217, FuzzyClass::BR),
            (3.92215, FuzzyClass::LR),
            (2.08245, FuzzyClass::LR),
            (0.0, FuzzyClass::NR),
            (8.0, FuzzyClass::BR),
            (2.0, FuzzyClass::NR),
            (10.0, FuzzyClass::R),
        ];
        for (f, c) in want {
            assert_eq!(classify(f).unwrap(), c, "{f}");
        }
        assert!(classify(-0.1).is_err());
        assert!(classify(10.5).is_err());
        assert!(classify(f64::NAN).is_err());
    }

    #[test]
    fn dictionary_examples() {
        let pos: HashSet<String> = ["great", "nice", "awesome"].map(String::from).into();
        let neg: HashSet<String> = ["shame"].map(String::from).into();
        assert_eq!(dictionary_match_score(&["great", "shame"], &pos, &neg), 0);
        assert_eq!(dictionary_match_score::<&str>(&[], &pos, &neg), 0);
        assert_eq!(dictionary_match_score(&["nice", "awesome", "great"], &pos, &neg), 3);
    }

    #[test]
    fn guest_fit_examples() {
        let one = GuestProfile::new(GuestType::Solo, [("room".to_string(), 1.0)].into()).unwrap();
        let pol: BTreeMap<String, f64> = [("room".to_string(), 0.5)].into();
        assert_eq!(guest_fit(&pol, &one), 0.5);
        let other: BTreeMap<String, f64> = [("pool".to_string(), 0.9)].into();
        assert_eq!(guest_fit(&other, &one), 0.0);

        let family = GuestProfile::new(
            GuestType::Family,
            [("room", 0.4), ("food", 0.3), ("cleanliness", 0.3)]
                .map(|(f, w)| (f.to_string(), w))
                .into(),
        )
        .unwrap();
        let pol: BTreeMap<String, f64> = [("room", 0.5), ("food", 0.2), ("cleanliness", -0.1)]
            .map(|(f, w)| (f.to_string(), w))
            .into();
        assert!((guest_fit(&pol, &family) - 0.23).abs() < 1e-12);
    }

    #[test]
    fn profiles_parse_and_normalize() {
        let p = GuestProfiles::default();
        assert_eq!(p.get(GuestType::Business).weights["internet"], 0.4);
        let text = "family: room=2, food=2\nsolo: pool=1\ncouple: room=1\nbusiness: internet=1\nfriends: price=1\n";
        let p = GuestProfiles::parse(text).unwrap();
        assert_eq!(p.get(GuestType::Family).weights["room"], 0.5);
        assert!(GuestProfiles::parse("alien: room=1").is_err());
        assert!(GuestProfiles::parse("family: room=1").is_err());
        assert!(GuestProfile::new(GuestType::Solo, [("a".to_string(), -1.0)].into()).is_err());
    }

    #[test]
    fn guest_type_parse() {
        assert_eq!("Family".parse::<GuestType>().unwrap(), GuestType::Family);
        let err = "alien".parse::<GuestType>().unwrap_err().to_string();
        assert!(err.contains("solo, family, couple, business, friends"));
    }

    #[test]
    fn ranking_order() {
        let k = |id, c, g, d| RankKey {
            hotel_id: id,
            fuzzy_class: c,
            guest_fit: g,
            cross_source_score: d,
        };
        let mut v = [
            k("b", FuzzyClass::LR, 0.9, 1.0),
            k("a", FuzzyClass::R, 0.0, 1.0),
            k("d", FuzzyClass::LR, 0.9, 1.0),
            k("c", FuzzyClass::LR, 0.9, 2.0),
            k("e", FuzzyClass::LR, 1.0, 0.0),
        ];
        v.sort_by(rank_order);
        let ids: Vec<&str> = v.iter().map(|k| k.hotel_id).collect();
        assert_eq!(ids, ["a", "e", "c", "b", "d"]);
    }

    proptest! {
        #[test]
        fn final_score_affine_invariant(
            pool in proptest::collection::vec(-1e6f64..1e6, 2..8),
            idx in 0usize..8,
            a in 0.5f64..100.0,
            b in -1e4f64..1e4,
        ) {
            let d = pool[idx % pool.len()];
            let f = final_score(d, &pool).unwrap();
            let scaled: Vec<f64> = pool.iter().map(|x| a * x + b).collect();
            let g = final_score(a * d + b, &scaled).unwrap();
            prop_assert!((f - g).abs() < 1e-6);
            prop_assert!((0.0..=10.0).contains(&f));
        }

        #[test]
        fn classify_monotone(x in 0.0f64..=10.0, y in 0.0f64..=10.0) {
            let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
            prop_assert!(classify(lo).unwrap() <= classify(hi).unwrap());
        }

        #[test]
        fn cross_source_permutation_invariant(mut bs in proptest::collection::vec(0.0f64..1e6, 1..6), views in 0u64..1_000_000) {
            let d = cross_source_score(&bs, views).unwrap();
            bs.reverse();
            let r = cross_source_score(&bs, views).unwrap();
            prop_assert!((d - r).abs() <= 1e-9 * d.abs().max(1.0));
        }

        #[test]
        fn guest_fit_bounded(vals in proptest::collection::vec(-1.0f64..1.0, 4)) {
            let p = GuestProfiles::default();
            let pol: BTreeMap<String, f64> = ["room", "food", "cleanliness", "location"]
                .iter().zip(&vals).map(|(f, v)| (f.to_string(), *v)).collect();
            let bound = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            prop_assert!(guest_fit(&pol, p.get(GuestType::Family)).abs() <= bound + 1e-12);
        }
    }
}
