//! Deterministic output files: detection records, the per-review ledger,
//! run metadata, and the aggregate report tables in JSON, CSV, or
//! Markdown.
//!
//! Apps render as rows and categories as alphabetically ordered columns,
//! with a final Average row (counts as means to one decimal). All files
//! are UTF-8 with LF line endings and byte-identical across reruns.

use crate::pipeline::{LedgerEntry, PipelineOutput};
use revalues_core::analytics::{CategoryStats, EvalMetrics, FeatureValueTable, LikesStats};
use revalues_core::detector::{ViolatedItem, ViolationRecord};
use revalues_core::sentiment::Polarity;
use revalues_core::values::Category;
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot read {path}: {source}")]
    ReadIo {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Malformed {
        path: String,
        line: usize,
        message: String,
    },
}

/// Report serialization format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Md,
}

impl ReportFormat {
    pub fn extension(&self) -> &'static str {
        match self {
            ReportFormat::Json => "json",
            ReportFormat::Csv => "csv",
            ReportFormat::Md => "md",
        }
    }
}

/// Categories in the column order reports use (alphabetical by name).
fn column_categories() -> Vec<Category> {
    let mut cats = Category::ALL.to_vec();
    cats.sort_by_key(|c| c.name());
    cats
}

fn write_bytes(path: &Path, bytes: &[u8]) -> Result<(), ReportError> {
    let mut file = std::fs::File::create(path).map_err(|source| ReportError::Io {
        path: path.display().to_string(),
        source,
    })?;
    file.write_all(bytes).map_err(|source| ReportError::Io {
        path: path.display().to_string(),
        source,
    })
}

// ---- violations / ledger / metadata wire formats ----

#[derive(Debug, Serialize, Deserialize)]
struct ItemWire {
    item: String,
    category: String,
    probability: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct ViolationWire {
    review_id: String,
    app_id: String,
    items: Vec<ItemWire>,
    compound: f64,
    polarity: String,
    features: Vec<String>,
    likes: u64,
}

impl From<&ViolationRecord> for ViolationWire {
    fn from(r: &ViolationRecord) -> Self {
        ViolationWire {
            review_id: r.review_id.clone(),
            app_id: r.app_id.clone(),
            items: r
                .violated_items
                .iter()
                .map(|v| ItemWire {
                    item: v.item.clone(),
                    category: v.category.name().to_string(),
                    probability: v.probability,
                })
                .collect(),
            compound: r.compound,
            polarity: r.polarity.as_str().to_string(),
            features: r.matched_features.iter().map(|f| f.phrase()).collect(),
            likes: r.likes,
        }
    }
}

/// Write one `ViolationRecord` per line.
pub fn write_violations_jsonl(path: &Path, records: &[ViolationRecord]) -> Result<(), ReportError> {
    let mut out = Vec::new();
    for record in records {
        serde_json::to_writer(&mut out, &ViolationWire::from(record))
            .expect("in-memory serialization");
        out.push(b'\n');
    }
    write_bytes(path, &out)
}

/// Read violation records back; features degrade to phrase-only entries.
pub fn read_violations_jsonl(path: &Path) -> Result<Vec<ViolationRecord>, ReportError> {
    let text = std::fs::read_to_string(path).map_err(|source| ReportError::ReadIo {
        path: path.display().to_string(),
        source,
    })?;
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let wire: ViolationWire =
            serde_json::from_str(line).map_err(|e| ReportError::Malformed {
                path: path.display().to_string(),
                line: idx + 1,
                message: e.to_string(),
            })?;
        let items: Result<Vec<ViolatedItem>, ReportError> = wire
            .items
            .into_iter()
            .map(|i| {
                let category =
                    Category::parse(&i.category).ok_or_else(|| ReportError::Malformed {
                        path: path.display().to_string(),
                        line: idx + 1,
                        message: format!("unknown category {:?}", i.category),
                    })?;
                Ok(ViolatedItem {
                    item: i.item,
                    category,
                    probability: i.probability,
                })
            })
            .collect();
        let polarity = match wire.polarity.as_str() {
            "negative" => Polarity::Negative,
            "neutral" => Polarity::Neutral,
            "positive" => Polarity::Positive,
            other => {
                return Err(ReportError::Malformed {
                    path: path.display().to_string(),
                    line: idx + 1,
                    message: format!("unknown polarity {other:?}"),
                })
            }
        };
        out.push(ViolationRecord {
            review_id: wire.review_id,
            app_id: wire.app_id,
            violated_items: items?,
            compound: wire.compound,
            polarity,
            matched_features: wire
                .features
                .iter()
                .map(|phrase| revalues_core::features::AppFeature {
                    tokens: phrase.split(' ').map(String::from).collect(),
                    stems: phrase
                        .split(' ')
                        .map(revalues_core::textprep::stem)
                        .collect(),
                    source_app: String::new(),
                    source_pattern: String::new(),
                })
                .collect(),
            likes: wire.likes,
        });
    }
    Ok(out)
}

#[derive(Debug, Serialize, Deserialize)]
struct LedgerWire {
    review_id: String,
    app_id: String,
    outcome: String,
}

pub fn write_ledger_jsonl(path: &Path, ledger: &[LedgerEntry]) -> Result<(), ReportError> {
    let mut out = Vec::new();
    for entry in ledger {
        let wire = LedgerWire {
            review_id: entry.review_id.clone(),
            app_id: entry.app_id.clone(),
            outcome: entry.outcome.to_string(),
        };
        serde_json::to_writer(&mut out, &wire).expect("in-memory serialization");
        out.push(b'\n');
    }
    write_bytes(path, &out)
}

/// (review_id, app_id, outcome) triples from a saved ledger.
pub fn read_ledger_jsonl(path: &Path) -> Result<Vec<(String, String, String)>, ReportError> {
    let text = std::fs::read_to_string(path).map_err(|source| ReportError::ReadIo {
        path: path.display().to_string(),
        source,
    })?;
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let wire: LedgerWire = serde_json::from_str(line).map_err(|e| ReportError::Malformed {
            path: path.display().to_string(),
            line: idx + 1,
            message: e.to_string(),
        })?;
        out.push((wire.review_id, wire.app_id, wire.outcome));
    }
    Ok(out)
}

/// Thresholds and corpus shape of a run, for reproducibility.
#[derive(Debug, Serialize, Deserialize)]
pub struct RunMeta {
    pub corpus_size: usize,
    pub discarded_uninformative: usize,
    pub degenerate_reviews: usize,
    pub probability_threshold: f64,
    pub sentiment_boundary: f64,
    pub min_tokens: usize,
    pub workers: usize,
}

pub fn write_run_meta(path: &Path, meta: &RunMeta) -> Result<(), ReportError> {
    let mut bytes = serde_json::to_vec_pretty(meta).expect("in-memory serialization");
    bytes.push(b'\n');
    write_bytes(path, &bytes)
}

pub fn read_run_meta(path: &Path) -> Result<RunMeta, ReportError> {
    let text = std::fs::read_to_string(path).map_err(|source| ReportError::ReadIo {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| ReportError::Malformed {
        path: path.display().to_string(),
        line: 1,
        message: e.to_string(),
    })
}

// ---- aggregate report ----

fn fmt1(x: f64) -> String {
    format!("{x:.1}")
}

fn fmt2(x: f64) -> String {
    format!("{x:.2}")
}

fn category_summary_rows(stats: &CategoryStats) -> (Vec<String>, Vec<Vec<String>>) {
    let cats = column_categories();
    let mut header = vec!["app".to_string()];
    header.extend(cats.iter().map(|c| c.name().to_lowercase().replace('-', "_")));
    header.push("total".to_string());

    let mut rows = Vec::new();
    for (app, counts) in &stats.per_app {
        let mut row = vec![app.clone()];
        let mut total = 0u64;
        for c in &cats {
            let n = counts.get(c).copied().unwrap_or(0);
            total += n;
            row.push(n.to_string());
        }
        row.push(total.to_string());
        rows.push(row);
    }
    let mut avg_row = vec!["Average".to_string()];
    for c in &cats {
        avg_row.push(fmt1(stats.average_per_category[c]));
    }
    avg_row.push(fmt1(stats.average_total));
    rows.push(avg_row);
    (header, rows)
}

fn item_frequency_rows(stats: &CategoryStats) -> (Vec<String>, Vec<Vec<String>>) {
    let header = vec![
        "category".to_string(),
        "item".to_string(),
        "frequency".to_string(),
    ];
    let mut entries: Vec<(&Category, &String, u64)> = stats
        .item_frequencies
        .iter()
        .map(|((category, item), &f)| (category, item, f))
        .collect();
    entries.sort_by(|a, b| {
        a.0.cmp(b.0)
            .then(b.2.cmp(&a.2))
            .then(a.1.cmp(b.1))
    });
    let rows = entries
        .into_iter()
        .map(|(category, item, f)| {
            vec![category.name().to_string(), item.clone(), f.to_string()]
        })
        .collect();
    (header, rows)
}

fn likes_rows(likes: &LikesStats) -> (Vec<String>, Vec<Vec<String>>) {
    let header = vec!["category".to_string(), "likes".to_string()];
    let rows = column_categories()
        .iter()
        .map(|c| {
            vec![
                c.name().to_string(),
                likes.per_category.get(c).copied().unwrap_or(0).to_string(),
            ]
        })
        .collect();
    (header, rows)
}

fn feature_rows(table: &FeatureValueTable) -> (Vec<String>, Vec<Vec<String>>) {
    let header = vec![
        "feature".to_string(),
        "app".to_string(),
        "violated_items".to_string(),
        "support".to_string(),
    ];
    let rows = table
        .rows
        .iter()
        .map(|r| {
            vec![
                r.feature.clone(),
                r.app_id.clone(),
                r.items.iter().cloned().collect::<Vec<_>>().join("; "),
                r.support.to_string(),
            ]
        })
        .collect();
    (header, rows)
}

fn metrics_rows(metrics: &EvalMetrics) -> (Vec<String>, Vec<Vec<String>>) {
    let header = vec!["metric".to_string(), "value".to_string(), "flag".to_string()];
    let flag = |undefined: bool| {
        if undefined {
            "undefined->0".to_string()
        } else {
            String::new()
        }
    };
    let rows = vec![
        vec!["true_positives".into(), metrics.true_positives.to_string(), String::new()],
        vec!["false_positives".into(), metrics.false_positives.to_string(), String::new()],
        vec!["true_negatives".into(), metrics.true_negatives.to_string(), String::new()],
        vec!["false_negatives".into(), metrics.false_negatives.to_string(), String::new()],
        vec!["precision".into(), format!("{:.4}", metrics.precision), flag(metrics.precision_undefined)],
        vec!["recall".into(), format!("{:.4}", metrics.recall), flag(metrics.recall_undefined)],
        vec!["f_measure".into(), format!("{:.4}", metrics.f_measure), flag(metrics.f_measure_undefined)],
    ];
    (header, rows)
}

fn render_csv(header: &[String], rows: &[Vec<String>]) -> Vec<u8> {
    let mut writer = csv::WriterBuilder::new().from_writer(Vec::new());
    writer.write_record(header).expect("in-memory csv");
    for row in rows {
        writer.write_record(row).expect("in-memory csv");
    }
    writer.into_inner().expect("in-memory csv")
}

fn render_md(title: &str, header: &[String], rows: &[Vec<String>]) -> Vec<u8> {
    let mut out = String::new();
    out.push_str(&format!("# {title}\n\n"));
    out.push_str(&format!("| {} |\n", header.join(" | ")));
    out.push_str(&format!(
        "|{}\n",
        header.iter().map(|_| " --- |").collect::<String>()
    ));
    for row in rows {
        out.push_str(&format!("| {} |\n", row.join(" | ")));
    }
    out.into_bytes()
}

fn render_json(header: &[String], rows: &[Vec<String>]) -> Vec<u8> {
    let objects: Vec<serde_json::Value> = rows
        .iter()
        .map(|row| {
            let map: serde_json::Map<String, serde_json::Value> = header
                .iter()
                .zip(row)
                .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
                .collect();
            serde_json::Value::Object(map)
        })
        .collect();
    let mut bytes = serde_json::to_vec_pretty(&objects).expect("in-memory json");
    bytes.push(b'\n');
    bytes
}

fn emit_table(
    dir: &Path,
    name: &str,
    title: &str,
    format: ReportFormat,
    header: &[String],
    rows: &[Vec<String>],
) -> Result<PathBuf, ReportError> {
    let path = dir.join(format!("{name}.{}", format.extension()));
    let bytes = match format {
        ReportFormat::Csv => render_csv(header, rows),
        ReportFormat::Md => render_md(title, header, rows),
        ReportFormat::Json => render_json(header, rows),
    };
    write_bytes(&path, &bytes)?;
    Ok(path)
}

/// Emit one extra named table in the chosen format (used for
/// supplementary outputs such as per-item metrics).
pub fn emit_named_table(
    dir: &Path,
    name: &str,
    title: &str,
    format: ReportFormat,
    header: &[String],
    rows: &[Vec<String>],
) -> Result<PathBuf, ReportError> {
    std::fs::create_dir_all(dir).map_err(|source| ReportError::Io {
        path: dir.display().to_string(),
        source,
    })?;
    emit_table(dir, name, title, format, header, rows)
}

/// Write the aggregate report files into `dir`. Returns the paths written.
///
/// Emits `category_summary`, `item_frequencies`, `likes_summary`, and
/// `feature_value_table` in the chosen format, `metrics` when provided,
/// and always a `plot_category_percentages.csv` for external charting.
pub fn emit_report(
    dir: &Path,
    stats: &CategoryStats,
    likes: &LikesStats,
    table: &FeatureValueTable,
    metrics: Option<&EvalMetrics>,
    format: ReportFormat,
) -> Result<Vec<PathBuf>, ReportError> {
    std::fs::create_dir_all(dir).map_err(|source| ReportError::Io {
        path: dir.display().to_string(),
        source,
    })?;
    let mut written = Vec::new();

    let (header, rows) = category_summary_rows(stats);
    written.push(emit_table(
        dir,
        "category_summary",
        "Violations per app and category",
        format,
        &header,
        &rows,
    )?);

    let (header, rows) = item_frequency_rows(stats);
    written.push(emit_table(
        dir,
        "item_frequencies",
        "Violation frequency per value item",
        format,
        &header,
        &rows,
    )?);

    let (header, rows) = likes_rows(likes);
    written.push(emit_table(
        dir,
        "likes_summary",
        "Likes on violating reviews per category",
        format,
        &header,
        &rows,
    )?);

    let (header, rows) = feature_rows(table);
    written.push(emit_table(
        dir,
        "feature_value_table",
        "App features and associated violations",
        format,
        &header,
        &rows,
    )?);

    if let Some(metrics) = metrics {
        let (header, rows) = metrics_rows(metrics);
        written.push(emit_table(
            dir,
            "metrics",
            "Truthset evaluation",
            format,
            &header,
            &rows,
        )?);
    }

    // Chart data is always CSV regardless of the report format.
    let plot_header = vec!["category".to_string(), "percentage".to_string()];
    let plot_rows: Vec<Vec<String>> = column_categories()
        .iter()
        .map(|c| vec![c.name().to_string(), fmt2(stats.percentages[c])])
        .collect();
    let plot_path = dir.join("plot_category_percentages.csv");
    write_bytes(&plot_path, &render_csv(&plot_header, &plot_rows))?;
    written.push(plot_path);

    Ok(written)
}

/// Convenience: run every aggregation over pipeline output and emit.
pub fn emit_run_outputs(
    dir: &Path,
    output: &PipelineOutput,
    corpus_size: usize,
    format: ReportFormat,
) -> Result<(), ReportError> {
    std::fs::create_dir_all(dir).map_err(|source| ReportError::Io {
        path: dir.display().to_string(),
        source,
    })?;
    write_violations_jsonl(&dir.join("violations.jsonl"), &output.records)?;
    write_ledger_jsonl(&dir.join("ledger.jsonl"), &output.ledger)?;
    let stats = revalues_core::analytics::aggregate_by_category(&output.records, corpus_size)
        .expect("corpus size comes from the same run");
    let likes = revalues_core::analytics::aggregate_likes(&output.records);
    let table = revalues_core::analytics::associate_features(&output.records);
    emit_report(dir, &stats, &likes, &table, None, format)?;
    Ok(())
}
