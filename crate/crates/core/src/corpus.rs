//! Review and app-metadata domain types plus the informativeness filter.
//!
//! File ingestion lives in the companion crate; this module owns the
//! validated in-memory shapes shared across the pipeline.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// One user review.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Review {
    pub review_id: String,
    pub app_id: String,
    pub text: String,
    /// Star rating, 1–5.
    pub rating: u8,
    /// Thumbs-up count from other users.
    pub likes: u64,
    /// ISO-8601 date, when the export carried one.
    pub date: Option<String>,
}

/// Store metadata for one app.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AppRecord {
    pub app_id: String,
    pub name: String,
    pub category: String,
    pub description: String,
}

/// Validation failure while assembling a collection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorpusError {
    EmptyReviewId { index: usize },
    DuplicateReviewId { review_id: String },
    InvalidRating { review_id: String, rating: u8 },
}

impl fmt::Display for CorpusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorpusError::EmptyReviewId { index } => {
                write!(f, "review at position {index} has an empty review_id")
            }
            CorpusError::DuplicateReviewId { review_id } => {
                write!(f, "duplicate review_id {review_id:?}")
            }
            CorpusError::InvalidRating { review_id, rating } => {
                write!(f, "review {review_id:?} has rating {rating}, expected 1..=5")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for CorpusError {}

/// An ordered, id-unique set of reviews. Iteration order is input order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReviewCollection {
    reviews: Vec<Review>,
    source_counts: BTreeMap<String, usize>,
}

impl ReviewCollection {
    /// Validate invariants: non-empty unique ids and ratings in 1..=5.
    pub fn new(reviews: Vec<Review>) -> Result<Self, CorpusError> {
        let mut seen: BTreeSet<&str> = BTreeSet::new();
        for (index, review) in reviews.iter().enumerate() {
            if review.review_id.is_empty() {
                return Err(CorpusError::EmptyReviewId { index });
            }
            if !seen.insert(&review.review_id) {
                return Err(CorpusError::DuplicateReviewId {
                    review_id: review.review_id.clone(),
                });
            }
            if !(1..=5).contains(&review.rating) {
                return Err(CorpusError::InvalidRating {
                    review_id: review.review_id.clone(),
                    rating: review.rating,
                });
            }
        }
        let mut source_counts: BTreeMap<String, usize> = BTreeMap::new();
        for review in &reviews {
            *source_counts.entry(review.app_id.clone()).or_default() += 1;
        }
        Ok(ReviewCollection {
            reviews,
            source_counts,
        })
    }

    pub fn reviews(&self) -> &[Review] {
        &self.reviews
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Review> {
        self.reviews.iter()
    }

    pub fn len(&self) -> usize {
        self.reviews.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reviews.is_empty()
    }

    pub fn contains_id(&self, review_id: &str) -> bool {
        self.reviews.iter().any(|r| r.review_id == review_id)
    }

    /// Loaded review count per app id.
    pub fn source_counts(&self) -> &BTreeMap<String, usize> {
        &self.source_counts
    }
}

/// Result of the informativeness filter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterOutcome {
    pub kept: ReviewCollection,
    /// Reviews dropped for having fewer word tokens than the threshold.
    pub discarded: usize,
}

/// Keep only reviews with at least `min_tokens` word tokens (punctuation
/// excluded), preserving order. Idempotent by construction.
///
/// # Panics
/// Panics if `min_tokens` is zero; the threshold is meaningful from 1 up.
pub fn filter_informative(collection: &ReviewCollection, min_tokens: usize) -> FilterOutcome {
    assert!(min_tokens >= 1, "min_tokens must be at least 1");
    let kept: Vec<Review> = collection
        .reviews
        .iter()
        .filter(|r| crate::textprep::word_token_count(&r.text) >= min_tokens)
        .cloned()
        .collect();
    let discarded = collection.len() - kept.len();
    FilterOutcome {
        kept: ReviewCollection::new(kept).expect("filtering preserves invariants"),
        discarded,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn review(id: &str, text: &str) -> Review {
        Review {
            review_id: id.to_string(),
            app_id: "app".to_string(),
            text: text.to_string(),
            rating: 3,
            likes: 0,
            date: None,
        }
    }

    #[test]
    fn duplicate_ids_rejected() {
        let err = ReviewCollection::new(alloc::vec![review("r1", "x"), review("r1", "y")])
            .unwrap_err();
        assert!(matches!(err, CorpusError::DuplicateReviewId { .. }));
    }

    #[test]
    fn invalid_rating_rejected() {
        let mut r = review("r1", "x");
        r.rating = 6;
        let err = ReviewCollection::new(alloc::vec![r]).unwrap_err();
        assert!(matches!(err, CorpusError::InvalidRating { .. }));
    }

    #[test]
    fn filter_thresholds() {
        let c = ReviewCollection::new(alloc::vec![
            review("r1", "ok"),
            review("r2", "pretty good app"),
            review("r3", "two words"),
        ])
        .unwrap();
        let out = filter_informative(&c, 3);
        assert_eq!(out.kept.len(), 1);
        assert_eq!(out.discarded, 2);
        assert_eq!(out.kept.reviews()[0].review_id, "r2");
    }

    #[test]
    fn filter_boundary_exactly_three_tokens_kept() {
        let c = ReviewCollection::new(alloc::vec![review("r1", "three word text.")]).unwrap();
        let out = filter_informative(&c, 3);
        assert_eq!(out.kept.len(), 1);
        assert_eq!(out.discarded, 0);
    }

    #[test]
    fn filter_is_idempotent() {
        let c = ReviewCollection::new(alloc::vec![
            review("r1", "ok"),
            review("r2", "pretty good app"),
        ])
        .unwrap();
        let once = filter_informative(&c, 3);
        let twice = filter_informative(&once.kept, 3);
        assert_eq!(once.kept, twice.kept);
        assert_eq!(twice.discarded, 0);
    }

    #[test]
    fn punctuation_does_not_count_as_tokens() {
        let c = ReviewCollection::new(alloc::vec![review("r1", "bad !!! ... ---")]).unwrap();
        let out = filter_informative(&c, 3);
        assert_eq!(out.kept.len(), 0);
    }

    #[test]
    fn source_counts_track_apps() {
        let mut r1 = review("r1", "x");
        r1.app_id = "a".to_string();
        let mut r2 = review("r2", "y");
        r2.app_id = "b".to_string();
        let mut r3 = review("r3", "z");
        r3.app_id = "a".to_string();
        let c = ReviewCollection::new(alloc::vec![r1, r2, r3]).unwrap();
        assert_eq!(c.source_counts().get("a"), Some(&2));
        assert_eq!(c.source_counts().get("b"), Some(&1));
    }
}
