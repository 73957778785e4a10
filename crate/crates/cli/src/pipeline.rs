//! Corpus-level orchestration: extract features once per app, run the
//! detector over every review, and keep a per-review outcome ledger.
//!
//! Reviews fan out across a bounded rayon pool; results are collected in
//! input order, so output is byte-identical for any worker count.

use crate::assets::AssetSet;
use rayon::prelude::*;
use revalues_core::corpus::{AppRecord, ReviewCollection};
use revalues_core::detector::{DetectionOutcome, Detector, DetectorConfig, ViolationRecord};
use revalues_core::features::{extract_features, AppFeature};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("review {review_id:?} names app {app_id:?} which is not in the metadata")]
    UnresolvedApp { review_id: String, app_id: String },
    #[error("worker pool: {0}")]
    Pool(String),
}

/// Ledger entry: every review gets exactly one outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerEntry {
    pub review_id: String,
    pub app_id: String,
    /// "violation", "no-violation", or "degenerate".
    pub outcome: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineOutput {
    pub records: Vec<ViolationRecord>,
    pub ledger: Vec<LedgerEntry>,
    pub degenerate_count: usize,
    /// Features extracted per app, for reporting.
    pub features_by_app: BTreeMap<String, Vec<AppFeature>>,
}

/// Run detection over the whole collection.
pub fn run_pipeline(
    corpus: &ReviewCollection,
    apps: &[AppRecord],
    assets: &AssetSet,
    config: DetectorConfig,
    workers: usize,
) -> Result<PipelineOutput, PipelineError> {
    let mut features_by_app: BTreeMap<String, Vec<AppFeature>> = BTreeMap::new();
    for app in apps {
        features_by_app.insert(
            app.app_id.clone(),
            extract_features(
                &app.description,
                &app.app_id,
                &assets.tag_lexicon,
                &assets.patterns,
                assets.allowlist.as_ref(),
            ),
        );
    }
    for review in corpus.iter() {
        if !features_by_app.contains_key(&review.app_id) {
            return Err(PipelineError::UnresolvedApp {
                review_id: review.review_id.clone(),
                app_id: review.app_id.clone(),
            });
        }
    }

    let detector = Detector {
        frequencies: &assets.frequencies,
        stoplist: &assets.stoplist,
        sentiment: &assets.sentiment,
        dictionary: &assets.dictionary,
        config,
    };

    let detect_one = |review: &revalues_core::corpus::Review| {
        let features = &features_by_app[&review.app_id];
        detector.detect(review, features)
    };

    let outcomes: Vec<DetectionOutcome> = if workers <= 1 {
        corpus.iter().map(detect_one).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| PipelineError::Pool(e.to_string()))?;
        pool.install(|| corpus.reviews().par_iter().map(detect_one).collect())
    };

    let mut records = Vec::new();
    let mut ledger = Vec::with_capacity(outcomes.len());
    let mut degenerate_count = 0;
    for (review, outcome) in corpus.iter().zip(outcomes) {
        ledger.push(LedgerEntry {
            review_id: review.review_id.clone(),
            app_id: review.app_id.clone(),
            outcome: outcome.kind(),
        });
        match outcome {
            DetectionOutcome::Violation(record) => records.push(record),
            DetectionOutcome::Degenerate => degenerate_count += 1,
            DetectionOutcome::NoViolation => {}
        }
    }
    Ok(PipelineOutput {
        records,
        ledger,
        degenerate_count,
        features_by_app,
    })
}
