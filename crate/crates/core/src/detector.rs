//! The per-review violation decision rule.
//!
//! A review violates a value item when the item's keyword density among
//! the review's content stems reaches the probability threshold and the
//! review's sentiment compound falls below the positive boundary (i.e. is
//! negative or neutral). All qualifying items are recorded.

use crate::corpus::Review;
use crate::features::{match_features_in_review, AppFeature};
use crate::sentiment::{classify_with, score, Polarity, SentimentLexicon};
use crate::textprep::{preprocess, FrequencyList};
use crate::values::{match_values, Category, ValuesDictionary};
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

/// Detection thresholds; defaults follow the decision rule as published.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorConfig {
    /// Minimum keyword density `tv / tr` for an item to qualify
    /// (inclusive).
    pub probability_threshold: f64,
    /// Sentiment boundary: compounds at or above it are positive and block
    /// a violation; the negative class starts at its negation.
    pub sentiment_boundary: f64,
}

impl Default for DetectorConfig {
    fn default() -> Self {
        DetectorConfig {
            probability_threshold: 0.05,
            sentiment_boundary: 0.05,
        }
    }
}

/// One item the review violated.
#[derive(Debug, Clone, PartialEq)]
pub struct ViolatedItem {
    pub item: String,
    pub category: Category,
    pub probability: f64,
}

/// Detection output for a violating review.
#[derive(Debug, Clone, PartialEq)]
pub struct ViolationRecord {
    pub review_id: String,
    pub app_id: String,
    pub violated_items: Vec<ViolatedItem>,
    pub compound: f64,
    pub polarity: Polarity,
    pub matched_features: Vec<AppFeature>,
    pub likes: u64,
}

impl ViolationRecord {
    /// Distinct categories across the violated items.
    pub fn categories(&self) -> BTreeSet<Category> {
        self.violated_items.iter().map(|v| v.category).collect()
    }
}

/// Per-review outcome, also used for the run ledger.
#[derive(Debug, Clone, PartialEq)]
pub enum DetectionOutcome {
    Violation(ViolationRecord),
    NoViolation,
    /// Preprocessing left no content stems; never a violation.
    Degenerate,
}

impl DetectionOutcome {
    pub fn kind(&self) -> &'static str {
        match self {
            DetectionOutcome::Violation(_) => "violation",
            DetectionOutcome::NoViolation => "no-violation",
            DetectionOutcome::Degenerate => "degenerate",
        }
    }
}

/// Immutable bundle of the assets detection needs.
#[derive(Debug)]
pub struct Detector<'a> {
    pub frequencies: &'a FrequencyList,
    pub stoplist: &'a BTreeSet<String>,
    pub sentiment: &'a SentimentLexicon,
    pub dictionary: &'a ValuesDictionary,
    pub config: DetectorConfig,
}

impl<'a> Detector<'a> {
    /// Run the rule on one review. `features` are the review's app's
    /// extracted description features; matches against the review stems
    /// are attached to an emitted record.
    pub fn detect(&self, review: &Review, features: &[AppFeature]) -> DetectionOutcome {
        let prep = preprocess(&review.text, self.frequencies, self.stoplist);
        if prep.content_stems.is_empty() {
            return DetectionOutcome::Degenerate;
        }
        let sentiment = score(&prep.corrected_text, self.sentiment);
        let violated_items: Vec<ViolatedItem> = match_values(&prep.content_stems, self.dictionary)
            .into_iter()
            .filter(|m| m.probability >= self.config.probability_threshold)
            .map(|m| ViolatedItem {
                item: m.item.name.clone(),
                category: m.item.category,
                probability: m.probability,
            })
            .collect();
        let matched_features = match_features_in_review(features, &prep.content_stems);
        if violated_items.is_empty() || sentiment.compound >= self.config.sentiment_boundary {
            return DetectionOutcome::NoViolation;
        }
        DetectionOutcome::Violation(ViolationRecord {
            review_id: review.review_id.clone(),
            app_id: review.app_id.clone(),
            violated_items,
            compound: sentiment.compound,
            polarity: classify_with(sentiment.compound, self.config.sentiment_boundary),
            matched_features,
            likes: review.likes,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::values::{DictionaryEntry, ValuesDictionary};
    use alloc::collections::BTreeMap;
    use alloc::string::ToString;

    fn dictionary() -> ValuesDictionary {
        let mut entries = Vec::new();
        for (category, count) in Category::EXPECTED_ITEM_COUNTS {
            for k in 0..count {
                let (name, syns, ants): (String, Vec<&str>, Vec<&str>) =
                    if category == Category::Benevolence && k == 0 {
                        ("Helpful".to_string(), alloc::vec!["helpful", "help"], alloc::vec!["useless"])
                    } else {
                        (
                            alloc::format!("{}item{}", category.name().to_lowercase(), k),
                            alloc::vec!["placeholderkw"],
                            alloc::vec![],
                        )
                    };
                entries.push(DictionaryEntry {
                    category: category.name().to_string(),
                    item: name,
                    synonyms: syns.into_iter().map(|s| s.to_string()).collect(),
                    antonyms: ants.into_iter().map(|s| s.to_string()).collect(),
                });
            }
        }
        ValuesDictionary::from_entries(entries).unwrap()
    }

    fn sentiment_lexicon() -> SentimentLexicon {
        let valences: BTreeMap<String, f64> = [("useless", -1.8), ("love", 3.2)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        SentimentLexicon::from_parts(valences, BTreeMap::new(), BTreeSet::new())
    }

    fn review(text: &str) -> Review {
        Review {
            review_id: "r1".to_string(),
            app_id: "app".to_string(),
            text: text.to_string(),
            rating: 1,
            likes: 4,
            date: None,
        }
    }

    fn detector<'a>(
        freq: &'a FrequencyList,
        stop: &'a BTreeSet<String>,
        lex: &'a SentimentLexicon,
        dict: &'a ValuesDictionary,
    ) -> Detector<'a> {
        Detector {
            frequencies: freq,
            stoplist: stop,
            sentiment: lex,
            dictionary: dict,
            config: DetectorConfig::default(),
        }
    }

    #[test]
    fn negative_with_keyword_is_violation() {
        let freq = FrequencyList::default();
        let stop = BTreeSet::new();
        let lex = sentiment_lexicon();
        let dict = dictionary();
        let d = detector(&freq, &stop, &lex, &dict);
        // 10 stems, one of them "useless": p = 0.1, compound negative.
        let out = d.detect(
            &review("useless alpha beta gamma delta epsilon zeta eta theta iota"),
            &[],
        );
        let DetectionOutcome::Violation(rec) = out else {
            panic!("expected violation, got {out:?}");
        };
        assert_eq!(rec.violated_items.len(), 1);
        assert_eq!(rec.violated_items[0].item, "Helpful");
        assert!((rec.violated_items[0].probability - 0.1).abs() < 1e-12);
        assert_eq!(rec.polarity, Polarity::Negative);
        assert_eq!(rec.likes, 4);
    }

    #[test]
    fn positive_sentiment_blocks_violation() {
        let freq = FrequencyList::default();
        let stop = BTreeSet::new();
        let lex = sentiment_lexicon();
        let dict = dictionary();
        let d = detector(&freq, &stop, &lex, &dict);
        let out = d.detect(&review("love love love this helpful app"), &[]);
        assert!(matches!(out, DetectionOutcome::NoViolation));
    }

    #[test]
    fn neutral_compound_still_violates() {
        let freq = FrequencyList::default();
        let stop = BTreeSet::new();
        let lex = sentiment_lexicon();
        let dict = dictionary();
        let d = detector(&freq, &stop, &lex, &dict);
        // No sentiment-laden words: compound 0.0 (neutral), keyword present.
        let out = d.detect(&review("helpful timer zone chart"), &[]);
        let DetectionOutcome::Violation(rec) = out else {
            panic!("expected violation, got {out:?}");
        };
        assert_eq!(rec.polarity, Polarity::Neutral);
        assert_eq!(rec.compound, 0.0);
    }

    #[test]
    fn below_threshold_probability_is_no_violation() {
        let freq = FrequencyList::default();
        let stop = BTreeSet::new();
        let lex = sentiment_lexicon();
        let dict = dictionary();
        let d = detector(&freq, &stop, &lex, &dict);
        // 21 stems, one keyword: 1/21 < 0.05.
        let text = (0..20)
            .map(|i| alloc::format!("filler{i}"))
            .collect::<Vec<_>>()
            .join(" ")
            + " useless";
        let out = d.detect(&review(&text), &[]);
        assert!(matches!(out, DetectionOutcome::NoViolation));
    }

    #[test]
    fn all_stopwords_is_degenerate() {
        let freq = FrequencyList::default();
        let stop: BTreeSet<String> = ["it", "is", "what"].iter().map(|s| s.to_string()).collect();
        let lex = sentiment_lexicon();
        let dict = dictionary();
        let d = detector(&freq, &stop, &lex, &dict);
        let out = d.detect(&review("It is what it is."), &[]);
        assert!(matches!(out, DetectionOutcome::Degenerate));
    }

    #[test]
    fn matched_features_attach_to_record() {
        let freq = FrequencyList::default();
        let stop = BTreeSet::new();
        let lex = sentiment_lexicon();
        let dict = dictionary();
        let d = detector(&freq, &stop, &lex, &dict);
        let feature = AppFeature {
            tokens: alloc::vec!["set".to_string(), "reminders".to_string()],
            stems: alloc::vec!["set".to_string(), "remind".to_string()],
            source_app: "app".to_string(),
            source_pattern: "VERB NOUN".to_string(),
        };
        let out = d.detect(
            &review("useless set reminders chart zone timer alpha beta gamma iota"),
            &[feature],
        );
        let DetectionOutcome::Violation(rec) = out else {
            panic!("expected violation, got {out:?}");
        };
        assert_eq!(rec.matched_features.len(), 1);
        assert_eq!(rec.matched_features[0].phrase(), "set reminders");
    }
}
