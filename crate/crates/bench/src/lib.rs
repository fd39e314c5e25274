//! Shared helpers for the benchmarks.

use hotelrec_core::fixtures::sample_snapshot;
use hotelrec_core::CorpusSnapshot;

/// The bundled sample with every review repeated `copies` times under fresh
/// ids and authors.
pub fn replicated_sample(copies: usize) -> CorpusSnapshot {
    let base = sample_snapshot().expect("bundled sample is valid");
    let mut reviews = Vec::with_capacity(base.reviews.len() * copies);
    for i in 0..copies {
        for r in &base.reviews {
            let mut r = r.clone();
            r.review_id = format!("{}-{i:04}", r.review_id);
            r.author_username = format!("{}-{i:04}", r.author_username);
            reviews.push(r);
        }
    }
    base.with_reviews(reviews)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn replication_scales_reviews() {
        let s = replicated_sample(3);
        assert_eq!(s.reviews.len(), 150);
        s.validate().unwrap();
    }
}
