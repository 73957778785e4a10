//! Corpus-level aggregation of violation records and truthset evaluation.
//!
//! Violation counts are reported at two granularities. Review-level counts
//! a review once per distinct violated category; item-level sums per-item
//! frequencies. The two coincide when every record carries a single item.

use crate::corpus::ReviewCollection;
use crate::detector::ViolationRecord;
use crate::values::Category;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Aggregation / evaluation failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnalyticsError {
    CorpusSmallerThanRecords { corpus_size: usize, distinct_reviews: usize },
    TruthsetIdMissing { review_id: String },
}

impl fmt::Display for AnalyticsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalyticsError::CorpusSmallerThanRecords {
                corpus_size,
                distinct_reviews,
            } => write!(
                f,
                "corpus size {corpus_size} is smaller than the {distinct_reviews} distinct reviews in the records"
            ),
            AnalyticsError::TruthsetIdMissing { review_id } => {
                write!(f, "truthset review_id {review_id:?} is not in the corpus")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for AnalyticsError {}

/// Category- and item-level violation counts with per-app breakdowns.
#[derive(Debug, Clone, PartialEq)]
pub struct CategoryStats {
    /// Reviews per category, counting a review once per distinct category.
    pub review_level: BTreeMap<Category, u64>,
    /// Item matches per category (sum of the item frequencies below).
    pub item_level: BTreeMap<Category, u64>,
    /// Frequency per value item.
    pub item_frequencies: BTreeMap<(Category, String), u64>,
    /// Review-level category counts per app.
    pub per_app: BTreeMap<String, BTreeMap<Category, u64>>,
    /// Mean review-level count per category across the apps present.
    pub average_per_category: BTreeMap<Category, f64>,
    /// Mean per-app total across the apps present.
    pub average_total: f64,
    /// Share of each category in the review-level total, in percent.
    pub percentages: BTreeMap<Category, f64>,
    /// Sum of review-level category counts (a multi-category review
    /// contributes once per category).
    pub total_review_level: u64,
    /// Sum of item-level counts.
    pub total_item_level: u64,
    /// Reviews carrying at least one violation.
    pub violating_reviews: u64,
    /// Corpus size the records came from.
    pub corpus_size: usize,
    /// Set when there were no records: percentages read 0 by convention.
    pub empty_total: bool,
}

/// Count violations per category and per item, with per-app breakdown and
/// cross-app averages.
pub fn aggregate_by_category(
    records: &[ViolationRecord],
    corpus_size: usize,
) -> Result<CategoryStats, AnalyticsError> {
    let distinct: BTreeSet<&str> = records.iter().map(|r| r.review_id.as_str()).collect();
    if corpus_size < distinct.len() {
        return Err(AnalyticsError::CorpusSmallerThanRecords {
            corpus_size,
            distinct_reviews: distinct.len(),
        });
    }

    let mut review_level: BTreeMap<Category, u64> = BTreeMap::new();
    let mut item_level: BTreeMap<Category, u64> = BTreeMap::new();
    let mut item_frequencies: BTreeMap<(Category, String), u64> = BTreeMap::new();
    let mut per_app: BTreeMap<String, BTreeMap<Category, u64>> = BTreeMap::new();
    for category in Category::ALL {
        review_level.insert(category, 0);
        item_level.insert(category, 0);
    }

    for record in records {
        for category in record.categories() {
            *review_level.entry(category).or_default() += 1;
            *per_app
                .entry(record.app_id.clone())
                .or_default()
                .entry(category)
                .or_default() += 1;
        }
        for item in &record.violated_items {
            *item_level.entry(item.category).or_default() += 1;
            *item_frequencies
                .entry((item.category, item.item.clone()))
                .or_default() += 1;
        }
    }

    let total_review_level: u64 = review_level.values().sum();
    let total_item_level: u64 = item_level.values().sum();
    let empty_total = total_review_level == 0;

    let mut percentages = BTreeMap::new();
    for category in Category::ALL {
        let count = review_level[&category];
        let pct = if empty_total {
            0.0
        } else {
            100.0 * count as f64 / total_review_level as f64
        };
        percentages.insert(category, pct);
    }

    let app_count = per_app.len();
    let mut average_per_category = BTreeMap::new();
    for category in Category::ALL {
        let sum: u64 = per_app
            .values()
            .map(|m| m.get(&category).copied().unwrap_or(0))
            .sum();
        let avg = if app_count == 0 {
            0.0
        } else {
            sum as f64 / app_count as f64
        };
        average_per_category.insert(category, avg);
    }
    let grand_total: u64 = per_app
        .values()
        .map(|m| m.values().sum::<u64>())
        .sum();
    let average_total = if app_count == 0 {
        0.0
    } else {
        grand_total as f64 / app_count as f64
    };

    Ok(CategoryStats {
        review_level,
        item_level,
        item_frequencies,
        per_app,
        average_per_category,
        average_total,
        percentages,
        total_review_level,
        total_item_level,
        violating_reviews: distinct.len() as u64,
        corpus_size,
        empty_total,
    })
}

/// Per-category sums of likes over violating reviews.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LikesStats {
    pub per_category: BTreeMap<Category, u64>,
}

impl LikesStats {
    /// Categories sorted by likes, descending; ties break by category
    /// order.
    pub fn ranking(&self) -> Vec<(Category, u64)> {
        let mut out: Vec<(Category, u64)> = self
            .per_category
            .iter()
            .map(|(&c, &l)| (c, l))
            .collect();
        out.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        out
    }
}

/// Sum review likes into every category the review violates.
pub fn aggregate_likes(records: &[ViolationRecord]) -> LikesStats {
    let mut per_category: BTreeMap<Category, u64> = BTreeMap::new();
    for category in Category::ALL {
        per_category.insert(category, 0);
    }
    for record in records {
        for category in record.categories() {
            *per_category.entry(category).or_default() += record.likes;
        }
    }
    LikesStats { per_category }
}

/// One (feature, app) row with the value items it co-occurred with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureValueRow {
    pub feature: String,
    pub app_id: String,
    pub items: BTreeSet<String>,
    /// Number of violation records behind the row.
    pub support: u64,
}

/// Feature-to-violated-items association table.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FeatureValueTable {
    pub rows: Vec<FeatureValueRow>,
}

/// Group records by (app, feature) and union their violated items. Rows
/// sort by support descending, then app, then feature.
pub fn associate_features(records: &[ViolationRecord]) -> FeatureValueTable {
    let mut grouped: BTreeMap<(String, String), (BTreeSet<String>, u64)> = BTreeMap::new();
    for record in records {
        for feature in &record.matched_features {
            let key = (record.app_id.clone(), feature.phrase());
            let entry = grouped.entry(key).or_default();
            for item in &record.violated_items {
                entry.0.insert(item.item.clone());
            }
            entry.1 += 1;
        }
    }
    let mut rows: Vec<FeatureValueRow> = grouped
        .into_iter()
        .map(|((app_id, feature), (items, support))| FeatureValueRow {
            feature,
            app_id,
            items,
            support,
        })
        .collect();
    rows.sort_by(|a, b| {
        b.support
            .cmp(&a.support)
            .then(a.app_id.cmp(&b.app_id))
            .then(a.feature.cmp(&b.feature))
    });
    FeatureValueTable { rows }
}

/// One truthset row: empty item list means "no violation".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthLabel {
    pub review_id: String,
    pub violated_items: Vec<String>,
    pub violated_categories: Vec<String>,
}

/// Binary review-level evaluation counts and derived metrics.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalMetrics {
    pub true_positives: u64,
    pub false_positives: u64,
    pub true_negatives: u64,
    pub false_negatives: u64,
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
    /// Flags raised when a zero denominator forced the metric to 0.
    pub precision_undefined: bool,
    pub recall_undefined: bool,
    pub f_measure_undefined: bool,
}

/// Compare predicted violations against a labeled truthset.
///
/// Predicted-positive means a violation record exists for the review;
/// actual-positive means the truthset lists at least one violated item.
/// Corpus reviews absent from the truthset count as actual-negative.
/// Undefined metrics surface as 0 with their flag set.
pub fn evaluate(
    records: &[ViolationRecord],
    truthset: &[TruthLabel],
    corpus: &ReviewCollection,
) -> Result<EvalMetrics, AnalyticsError> {
    let corpus_ids: BTreeSet<&str> = corpus.iter().map(|r| r.review_id.as_str()).collect();
    let mut actual_positive: BTreeSet<&str> = BTreeSet::new();
    for label in truthset {
        if !corpus_ids.contains(label.review_id.as_str()) {
            return Err(AnalyticsError::TruthsetIdMissing {
                review_id: label.review_id.clone(),
            });
        }
        if !label.violated_items.is_empty() {
            actual_positive.insert(&label.review_id);
        }
    }
    let predicted_positive: BTreeSet<&str> =
        records.iter().map(|r| r.review_id.as_str()).collect();

    let mut tp = 0u64;
    let mut fp = 0u64;
    let mut tn = 0u64;
    let mut fn_ = 0u64;
    for review in corpus.iter() {
        let id = review.review_id.as_str();
        match (predicted_positive.contains(id), actual_positive.contains(id)) {
            (true, true) => tp += 1,
            (true, false) => fp += 1,
            (false, true) => fn_ += 1,
            (false, false) => tn += 1,
        }
    }

    let (precision, precision_undefined) = ratio(tp, tp + fp);
    let (recall, recall_undefined) = ratio(tp, tp + fn_);
    let (f_measure, f_measure_undefined) = if precision + recall > 0.0 {
        (2.0 * precision * recall / (precision + recall), false)
    } else {
        (0.0, true)
    };

    Ok(EvalMetrics {
        true_positives: tp,
        false_positives: fp,
        true_negatives: tn,
        false_negatives: fn_,
        precision,
        recall,
        f_measure,
        precision_undefined,
        recall_undefined,
        f_measure_undefined,
    })
}

fn ratio(num: u64, denom: u64) -> (f64, bool) {
    if denom == 0 {
        (0.0, true)
    } else {
        (num as f64 / denom as f64, false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Review;
    use crate::detector::ViolatedItem;
    use crate::sentiment::Polarity;
    use alloc::string::ToString;

    fn record(id: &str, app: &str, items: &[(&str, Category)], likes: u64) -> ViolationRecord {
        ViolationRecord {
            review_id: id.to_string(),
            app_id: app.to_string(),
            violated_items: items
                .iter()
                .map(|(name, category)| ViolatedItem {
                    item: name.to_string(),
                    category: *category,
                    probability: 0.1,
                })
                .collect(),
            compound: -0.3,
            polarity: Polarity::Negative,
            matched_features: Vec::new(),
            likes,
        }
    }

    #[test]
    fn single_item_records_make_levels_agree() {
        let records = alloc::vec![
            record("r1", "a", &[("Helpful", Category::Benevolence)], 0),
            record("r2", "a", &[("Freedom", Category::SelfDirection)], 0),
            record("r3", "b", &[("Helpful", Category::Benevolence)], 0),
        ];
        let stats = aggregate_by_category(&records, 10).unwrap();
        assert_eq!(stats.review_level[&Category::Benevolence], 2);
        assert_eq!(stats.item_level[&Category::Benevolence], 2);
        assert_eq!(stats.total_review_level, 3);
        assert_eq!(
            stats.item_frequencies[&(Category::Benevolence, "Helpful".to_string())],
            2
        );
        let pct: f64 = stats.percentages.values().sum();
        assert!((pct - 100.0).abs() < 0.1);
    }

    #[test]
    fn multi_category_review_counts_once_per_category() {
        let records = alloc::vec![record(
            "r1",
            "a",
            &[
                ("Helpful", Category::Benevolence),
                ("Honest", Category::Benevolence),
                ("Freedom", Category::SelfDirection),
            ],
            0,
        )];
        let stats = aggregate_by_category(&records, 5).unwrap();
        assert_eq!(stats.review_level[&Category::Benevolence], 1);
        assert_eq!(stats.item_level[&Category::Benevolence], 2);
        assert_eq!(stats.total_review_level, 2);
        assert_eq!(stats.total_item_level, 3);
        assert!(stats.total_review_level <= stats.total_item_level);
    }

    #[test]
    fn empty_records_flagged() {
        let stats = aggregate_by_category(&[], 100).unwrap();
        assert!(stats.empty_total);
        assert!(stats.percentages.values().all(|&p| p == 0.0));
    }

    #[test]
    fn aggregation_is_permutation_invariant() {
        let records = alloc::vec![
            record("r1", "a", &[("Helpful", Category::Benevolence)], 4),
            record("r2", "b", &[("Freedom", Category::SelfDirection)], 2),
            record("r3", "a", &[("Honest", Category::Benevolence)], 1),
        ];
        let mut reversed = records.clone();
        reversed.reverse();
        assert_eq!(
            aggregate_by_category(&records, 9).unwrap(),
            aggregate_by_category(&reversed, 9).unwrap()
        );
        assert_eq!(aggregate_likes(&records), aggregate_likes(&reversed));
        assert_eq!(associate_features(&records), associate_features(&reversed));
    }

    #[test]
    fn corpus_smaller_than_records_is_error() {
        let records = alloc::vec![
            record("r1", "a", &[("Helpful", Category::Benevolence)], 0),
            record("r2", "a", &[("Helpful", Category::Benevolence)], 0),
        ];
        let err = aggregate_by_category(&records, 1).unwrap_err();
        assert!(matches!(err, AnalyticsError::CorpusSmallerThanRecords { .. }));
    }

    #[test]
    fn likes_sum_into_every_violated_category() {
        let records = alloc::vec![
            record("r1", "a", &[("Helpful", Category::Benevolence)], 7),
            record(
                "r2",
                "a",
                &[
                    ("Freedom", Category::SelfDirection),
                    ("Helpful", Category::Benevolence),
                ],
                3,
            ),
        ];
        let likes = aggregate_likes(&records);
        assert_eq!(likes.per_category[&Category::Benevolence], 10);
        assert_eq!(likes.per_category[&Category::SelfDirection], 3);
    }

    #[test]
    fn feature_rows_union_items() {
        let mut r1 = record("r1", "anydo", &[("Responsible", Category::Benevolence)], 0);
        let mut r2 = record("r2", "anydo", &[("Helpful", Category::Benevolence)], 0);
        let feature = crate::features::AppFeature {
            tokens: alloc::vec!["set".to_string(), "reminders".to_string()],
            stems: alloc::vec!["set".to_string(), "remind".to_string()],
            source_app: "anydo".to_string(),
            source_pattern: "VERB NOUN".to_string(),
        };
        r1.matched_features.push(feature.clone());
        r2.matched_features.push(feature);
        let table = associate_features(&[r1, r2]);
        assert_eq!(table.rows.len(), 1);
        let row = &table.rows[0];
        assert_eq!(row.feature, "set reminders");
        assert_eq!(row.support, 2);
        assert!(row.items.contains("Responsible") && row.items.contains("Helpful"));
    }

    #[test]
    fn no_features_empty_table() {
        let records = alloc::vec![record("r1", "a", &[("Helpful", Category::Benevolence)], 0)];
        assert!(associate_features(&records).rows.is_empty());
    }

    fn corpus(ids: &[&str]) -> ReviewCollection {
        ReviewCollection::new(
            ids.iter()
                .map(|id| Review {
                    review_id: id.to_string(),
                    app_id: "a".to_string(),
                    text: "text goes here".to_string(),
                    rating: 3,
                    likes: 0,
                    date: None,
                })
                .collect(),
        )
        .unwrap()
    }

    fn label(id: &str, items: &[&str]) -> TruthLabel {
        TruthLabel {
            review_id: id.to_string(),
            violated_items: items.iter().map(|s| s.to_string()).collect(),
            violated_categories: Vec::new(),
        }
    }

    #[test]
    fn perfect_predictions_give_unit_metrics() {
        let corpus = corpus(&["r1", "r2", "r3"]);
        let records = alloc::vec![record("r1", "a", &[("Helpful", Category::Benevolence)], 0)];
        let truth = alloc::vec![label("r1", &["Helpful"]), label("r2", &[]), label("r3", &[])];
        let m = evaluate(&records, &truth, &corpus).unwrap();
        assert_eq!((m.precision, m.recall, m.f_measure), (1.0, 1.0, 1.0));
        assert_eq!(
            m.true_positives + m.false_positives + m.true_negatives + m.false_negatives,
            3
        );
    }

    #[test]
    fn degenerate_confusion_matrix_flags() {
        let corpus = corpus(&["r1", "r2"]);
        let truth = alloc::vec![label("r1", &["Helpful"]), label("r2", &[])];
        let m = evaluate(&[], &truth, &corpus).unwrap();
        assert_eq!(m.precision, 0.0);
        assert!(m.precision_undefined);
        assert_eq!(m.recall, 0.0);
        assert!(!m.recall_undefined);
        assert!(m.f_measure_undefined);
    }

    #[test]
    fn truthset_id_must_exist() {
        let corpus = corpus(&["r1"]);
        let truth = alloc::vec![label("missing", &["Helpful"])];
        let err = evaluate(&[], &truth, &corpus).unwrap_err();
        assert!(matches!(err, AnalyticsError::TruthsetIdMissing { .. }));
    }

    #[test]
    fn paper_triple_reproduces_f_measure() {
        // P = 5727/8300 = 0.69, R = 5727/6900 = 0.83.
        let tp = 5727u64;
        let fp = 8300 - tp;
        let fn_ = 6900 - tp;
        let tn = 100u64;
        let total = (tp + fp + fn_ + tn) as usize;
        let ids: Vec<String> = (0..total).map(|i| alloc::format!("r{i}")).collect();
        let id_refs: Vec<&str> = ids.iter().map(String::as_str).collect();
        let corpus = corpus(&id_refs);
        let mut records = Vec::new();
        let mut truth = Vec::new();
        let mut idx = 0usize;
        for _ in 0..tp {
            records.push(record(&ids[idx], "a", &[("Helpful", Category::Benevolence)], 0));
            truth.push(label(&ids[idx], &["Helpful"]));
            idx += 1;
        }
        for _ in 0..fp {
            records.push(record(&ids[idx], "a", &[("Helpful", Category::Benevolence)], 0));
            truth.push(label(&ids[idx], &[]));
            idx += 1;
        }
        for _ in 0..fn_ {
            truth.push(label(&ids[idx], &["Helpful"]));
            idx += 1;
        }
        let m = evaluate(&records, &truth, &corpus).unwrap();
        assert!((m.precision - 0.69).abs() < 1e-12);
        assert!((m.recall - 0.83).abs() < 1e-12);
        assert!((m.f_measure - 0.75).abs() < 0.005);
        // Harmonic-mean identity.
        let harmonic = 2.0 * m.precision * m.recall / (m.precision + m.recall);
        assert!((m.f_measure - harmonic).abs() < 1e-9);
    }
}
