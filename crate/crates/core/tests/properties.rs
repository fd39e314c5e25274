mod common;

use common::*;
use hotelrec_core::recommend::{predict_missing_cell, UtilityMatrix};
use hotelrec_core::scoring::{rank_order, FuzzyClass, RankKey};
use hotelrec_core::sentiment::{compute_idf, compute_tf, review_polarity, CorpusStats, SentimentLexicon};
use hotelrec_core::textpipe::{correct_spelling, FrequencyLexicon, Term};
use proptest::prelude::*;

fn cell() -> impl Strategy<Value = Option<f64>> {
    prop_oneof![Just(None), (1u8..=5).prop_map(|v| Some(f64::from(v)))]
}

fn matrix() -> impl Strategy<Value = (usize, usize, Vec<Vec<Option<f64>>>)> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        (
            Just(r),
            Just(c),
            proptest::collection::vec(proptest::collection::vec(cell(), c), r),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn prediction_matches_oracle((nr, nc, cells) in matrix(), k in 1usize..6) {
        let rows: Vec<String> = (0..nr).map(|i| format!("h{i}")).collect();
        let cols: Vec<String> = (0..nc).map(|i| format!("f{i}")).collect();
        let m = UtilityMatrix::from_rows(rows.clone(), cols.clone(), cells.clone()).unwrap();
        for r in 0..nr {
            for c in 0..nc {
                if cells[r][c].is_some() {
                    continue;
                }
                let got = predict_missing_cell(&m, &rows[r], &cols[c], k).ok();
                let want = predict_oracle(&rows, &cells, r, c, k);
                match (got, want) {
                    (Some(g), Some(w)) => prop_assert!((g - w).abs() < 1e-12),
                    (None, None) => {}
                    other => prop_assert!(false, "{:?}", other),
                }
                if let Some(g) = got {
                    let present: Vec<f64> = cells.iter().filter_map(|row| row[c]).collect();
                    let lo = present.iter().copied().fold(f64::INFINITY, f64::min);
                    let hi = present.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                    prop_assert!(g >= lo - 1e-12 && g <= hi + 1e-12);
                }
            }
        }
    }

    #[test]
    fn tfidf_matches_counting(
        corpus in proptest::collection::vec(proptest::collection::vec("(room|pool|bed|view)", 1..7), 1..=5)
    ) {
        let ids: Vec<String> = (0..corpus.len()).map(|i| format!("d{i}")).collect();
        let stats = CorpusStats::build(ids.iter().map(String::as_str).zip(corpus.iter().map(Vec::as_slice)));
        for term in ["room", "pool", "bed", "view"] {
            for (i, id) in ids.iter().enumerate() {
                let want = brute_tfidf(&corpus, term, i);
                match stats.tfidf_weight(term, id) {
                    Ok(w) => {
                        prop_assert!((w - want).abs() <= 1e-12);
                        let direct = compute_tf(term, &corpus[i]).unwrap() * compute_idf(term, &corpus).unwrap();
                        prop_assert!((w - direct).abs() <= 1e-12);
                    }
                    Err(_) => prop_assert_eq!(want, 0.0),
                }
            }
        }
    }

    #[test]
    fn unnegated_polarity_is_sum_of_term_sentiment(
        docs in proptest::collection::vec(proptest::collection::vec("(great|dirty|room|nice|rude)", 1..6), 2..=5)
    ) {
        let lex = SentimentLexicon::parse("great 0.75 0\ndirty 0 0.625\nnice 0.625 0\nrude 0 0.75\n").unwrap();
        let ids: Vec<String> = (0..docs.len()).map(|i| format!("d{i}")).collect();
        let stats = CorpusStats::build(ids.iter().map(String::as_str).zip(docs.iter().map(Vec::as_slice)));
        for (id, doc) in ids.iter().zip(&docs) {
            let terms: Vec<Term> = doc.iter().map(|t| Term { text: t.clone(), negated: false }).collect();
            let p = review_polarity(id, &terms, &lex, &stats);
            let mut distinct = doc.clone();
            distinct.sort();
            distinct.dedup();
            let expected: f64 = distinct.iter().map(|t| stats.term_overall_sentiment(t, id, &lex).unwrap()).sum();
            prop_assert!((p.polarity - expected).abs() < 1e-12);
            prop_assert!(p.pos_sum >= 0.0 && p.neg_sum >= 0.0);
        }
    }

    #[test]
    fn rank_order_is_total(keys in proptest::collection::vec((0usize..5, -2i32..3, 0u32..4), 1..12)) {
        let ids: Vec<String> = (0..keys.len()).map(|i| format!("h{i:02}")).collect();
        let mut entries: Vec<RankKey> = keys
            .iter()
            .zip(&ids)
            .map(|((c, g, d), id)| RankKey {
                hotel_id: id,
                fuzzy_class: FuzzyClass::ALL[*c],
                guest_fit: f64::from(*g) / 2.0,
                cross_source_score: f64::from(*d),
            })
            .collect();
        let mut reversed = entries.clone();
        reversed.reverse();
        entries.sort_by(rank_order);
        reversed.sort_by(rank_order);
        prop_assert_eq!(&entries, &reversed);
        for w in entries.windows(2) {
            prop_assert!(w[0].fuzzy_class >= w[1].fuzzy_class);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn spelling_matches_exhaustive_scan(
        dict in proptest::collection::btree_map("[a-e]{2,6}", 1u64..5, 1..25),
        word in "[a-e]{1,8}",
    ) {
        let lexicon = FrequencyLexicon::from_counts(dict.iter().map(|(w, f)| (w.as_str(), *f)));
        let entries: Vec<(String, u64)> = dict.into_iter().collect();
        prop_assert_eq!(correct_spelling(&word, &lexicon), spell_oracle(&word, &entries));
    }
}
