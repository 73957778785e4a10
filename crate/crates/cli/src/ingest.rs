//! File ingestion: reviews (JSONL or CSV), app metadata, and truthsets.
//!
//! Malformed rows are reported with their line number; duplicate ids are
//! hard errors so ingestion bugs surface instead of silently deduping.

use revalues_core::analytics::TruthLabel;
use revalues_core::corpus::{AppRecord, Review, ReviewCollection};
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    MalformedRow {
        path: String,
        line: usize,
        message: String,
    },
    #[error("{path}: duplicate review_id {review_id:?} (line {line})")]
    DuplicateReviewId {
        path: String,
        review_id: String,
        line: usize,
    },
    #[error("{path}: duplicate app_id {app_id:?}")]
    DuplicateAppId { path: String, app_id: String },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

impl IngestError {
    pub fn is_io(&self) -> bool {
        matches!(self, IngestError::Io { .. })
    }
}

/// Supported review export formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReviewFormat {
    Jsonl,
    Csv,
}

impl ReviewFormat {
    /// Infer from the file extension; JSONL when unknown.
    pub fn infer(path: &Path) -> ReviewFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some("csv") => ReviewFormat::Csv,
            _ => ReviewFormat::Jsonl,
        }
    }
}

/// Wire schema for one review row; keys are exactly these names.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ReviewRow {
    review_id: String,
    app_id: String,
    text: String,
    rating: u8,
    likes: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    date: Option<String>,
}

impl From<ReviewRow> for Review {
    fn from(row: ReviewRow) -> Review {
        Review {
            review_id: row.review_id,
            app_id: row.app_id,
            text: row.text,
            rating: row.rating,
            likes: row.likes,
            date: row.date,
        }
    }
}

fn read_to_string(path: &Path) -> Result<String, IngestError> {
    std::fs::read_to_string(path).map_err(|source| IngestError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Name the missing required field when a serde error looks like one, so
/// data errors cite the offending row precisely.
fn row_error(path: &Path, line: usize, err: impl std::fmt::Display) -> IngestError {
    IngestError::MalformedRow {
        path: path.display().to_string(),
        line,
        message: err.to_string(),
    }
}

/// Load reviews from a JSONL or CSV export.
pub fn load_reviews(path: &Path, format: ReviewFormat) -> Result<ReviewCollection, IngestError> {
    let rows: Vec<(usize, ReviewRow)> = match format {
        ReviewFormat::Jsonl => {
            let text = read_to_string(path)?;
            let mut rows = Vec::new();
            for (idx, line) in text.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                let row: ReviewRow =
                    serde_json::from_str(line).map_err(|e| row_error(path, idx + 1, e))?;
                rows.push((idx + 1, row));
            }
            rows
        }
        ReviewFormat::Csv => {
            let file = std::fs::File::open(path).map_err(|source| IngestError::Io {
                path: path.display().to_string(),
                source,
            })?;
            let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(file);
            let mut rows = Vec::new();
            for (idx, result) in reader.deserialize::<ReviewRow>().enumerate() {
                // Header occupies line 1; data starts at line 2.
                let line = idx + 2;
                let row = result.map_err(|e| row_error(path, line, e))?;
                rows.push((line, row));
            }
            rows
        }
    };

    let mut seen = std::collections::BTreeSet::new();
    for (line, row) in &rows {
        if !seen.insert(row.review_id.clone()) {
            return Err(IngestError::DuplicateReviewId {
                path: path.display().to_string(),
                review_id: row.review_id.clone(),
                line: *line,
            });
        }
    }
    let reviews: Vec<Review> = rows.into_iter().map(|(_, row)| row.into()).collect();
    ReviewCollection::new(reviews).map_err(|e| IngestError::Invalid {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Serialize a collection back to JSONL, one review per line.
pub fn write_reviews_jsonl(path: &Path, collection: &ReviewCollection) -> Result<(), IngestError> {
    let mut out = Vec::new();
    for review in collection.iter() {
        let row = ReviewRow {
            review_id: review.review_id.clone(),
            app_id: review.app_id.clone(),
            text: review.text.clone(),
            rating: review.rating,
            likes: review.likes,
            date: review.date.clone(),
        };
        serde_json::to_writer(&mut out, &row).expect("in-memory serialization");
        out.push(b'\n');
    }
    let mut file = std::fs::File::create(path).map_err(|source| IngestError::Io {
        path: path.display().to_string(),
        source,
    })?;
    file.write_all(&out).map_err(|source| IngestError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// App metadata JSONL schema.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AppRow {
    app_id: String,
    name: String,
    category: String,
    description: String,
}

/// Load app metadata; app_id uniqueness is enforced.
pub fn load_app_metadata(path: &Path) -> Result<Vec<AppRecord>, IngestError> {
    let text = read_to_string(path)?;
    let mut out: Vec<AppRecord> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row: AppRow = serde_json::from_str(line).map_err(|e| row_error(path, idx + 1, e))?;
        if !seen.insert(row.app_id.clone()) {
            return Err(IngestError::DuplicateAppId {
                path: path.display().to_string(),
                app_id: row.app_id,
            });
        }
        out.push(AppRecord {
            app_id: row.app_id,
            name: row.name,
            category: row.category,
            description: row.description,
        });
    }
    Ok(out)
}

/// Truthset JSONL schema; empty lists mean "no violation".
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TruthRow {
    review_id: String,
    violated_items: Vec<String>,
    violated_categories: Vec<String>,
}

pub fn load_truthset(path: &Path) -> Result<Vec<TruthLabel>, IngestError> {
    let text = read_to_string(path)?;
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row: TruthRow = serde_json::from_str(line).map_err(|e| row_error(path, idx + 1, e))?;
        out.push(TruthLabel {
            review_id: row.review_id,
            violated_items: row.violated_items,
            violated_categories: row.violated_categories,
        });
    }
    Ok(out)
}
