//! Subcommand definitions and dispatch.
//!
//! Exit codes: 0 success, 1 usage error, 2 data/validation error,
//! 3 I/O error. Every failure prints a single line starting `error:` to
//! stderr; progress notes also go to stderr, data to files or stdout.

use crate::assets::{load_assets, parse_dictionary, AssetOverrides};
use crate::config::{FileConfig, Thresholds};
use crate::ingest::{load_app_metadata, load_reviews, load_truthset, IngestError, ReviewFormat};
use crate::pipeline::run_pipeline;
use crate::report::{
    emit_report, read_ledger_jsonl, read_run_meta, read_violations_jsonl, write_ledger_jsonl,
    write_run_meta, write_violations_jsonl, ReportFormat, RunMeta,
};
use crate::{AppError, AppResult};
use clap::{Args, Parser, Subcommand, ValueEnum};
use revalues_core::analytics::{
    aggregate_by_category, aggregate_likes, associate_features, evaluate,
};
use revalues_core::corpus::{filter_informative, Review, ReviewCollection};
use revalues_core::detector::DetectorConfig;
use revalues_core::features::extract_features;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(
    name = "revalues",
    version,
    about = "Detect user-perceived human-values violations in app-review corpora"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the full detection pipeline and write reports
    Analyze(AnalyzeArgs),
    /// Score saved detection output against a labeled truthset
    Evaluate(EvaluateArgs),
    /// Extract app features from descriptions and print them as JSONL
    ExtractFeatures(ExtractFeaturesArgs),
    /// Validate a values dictionary file
    DictValidate(DictValidateArgs),
    /// Re-render report tables from saved detection output
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Md,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> ReportFormat {
        match f {
            FormatArg::Json => ReportFormat::Json,
            FormatArg::Csv => ReportFormat::Csv,
            FormatArg::Md => ReportFormat::Md,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReviewFormatArg {
    Jsonl,
    Csv,
}

#[derive(Debug, Args, Default)]
struct AssetArgs {
    /// Word frequency list (word<TAB>count)
    #[arg(long)]
    frequencies: Option<PathBuf>,
    /// Stoplist, one lowercase word per line
    #[arg(long)]
    stoplist: Option<PathBuf>,
    /// Sentiment lexicon (token<TAB>valence)
    #[arg(long)]
    sentiment_lexicon: Option<PathBuf>,
    /// Booster words (token<TAB>increment)
    #[arg(long)]
    boosters: Option<PathBuf>,
    /// Negation cues, one per line
    #[arg(long)]
    negations: Option<PathBuf>,
    /// POS tag lexicon (word<TAB>TAG)
    #[arg(long)]
    tag_lexicon: Option<PathBuf>,
    /// POS pattern file, one pattern per line
    #[arg(long)]
    patterns: Option<PathBuf>,
    /// Feature allowlist, one phrase per line
    #[arg(long)]
    allowlist: Option<PathBuf>,
    /// Values dictionary JSON
    #[arg(long)]
    dict: Option<PathBuf>,
}

impl AssetArgs {
    fn merge_with(&self, file: &FileConfig) -> AssetOverrides {
        AssetOverrides {
            frequencies: self.frequencies.clone().or_else(|| file.frequencies.clone()),
            stoplist: self.stoplist.clone().or_else(|| file.stoplist.clone()),
            sentiment_lexicon: self
                .sentiment_lexicon
                .clone()
                .or_else(|| file.sentiment_lexicon.clone()),
            boosters: self.boosters.clone().or_else(|| file.boosters.clone()),
            negations: self.negations.clone().or_else(|| file.negations.clone()),
            tag_lexicon: self.tag_lexicon.clone().or_else(|| file.tag_lexicon.clone()),
            patterns: self.patterns.clone().or_else(|| file.patterns.clone()),
            allowlist: self.allowlist.clone().or_else(|| file.allowlist.clone()),
            dictionary: self.dict.clone().or_else(|| file.dict.clone()),
        }
    }
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    /// Review export to analyze
    #[arg(long)]
    reviews: Option<PathBuf>,
    /// Review file format; inferred from the extension when omitted
    #[arg(long, value_enum)]
    reviews_format: Option<ReviewFormatArg>,
    /// App metadata JSONL
    #[arg(long)]
    apps: Option<PathBuf>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    assets: AssetArgs,
    /// Minimum keyword density for a violation (default 0.05)
    #[arg(long)]
    p_threshold: Option<f64>,
    /// Sentiment class boundary (default 0.05)
    #[arg(long)]
    sentiment_boundary: Option<f64>,
    /// Informativeness filter threshold in word tokens (default 3)
    #[arg(long)]
    min_tokens: Option<usize>,
    /// Worker threads for detection (default 1)
    #[arg(long)]
    workers: Option<usize>,
    /// Report format (default csv)
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// TOML config file; flags override its values
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EvaluateArgs {
    /// Labeled truthset JSONL
    #[arg(long)]
    truthset: PathBuf,
    /// Directory holding a prior `analyze` run; metrics land there too
    #[arg(long)]
    out: PathBuf,
    /// Report format (default csv)
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
}

#[derive(Debug, Args)]
struct ExtractFeaturesArgs {
    /// App metadata JSONL
    #[arg(long)]
    apps: PathBuf,
    #[command(flatten)]
    assets: AssetArgs,
}

#[derive(Debug, Args)]
struct DictValidateArgs {
    /// Dictionary to validate; the bundled one when omitted
    #[arg(long)]
    dict: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// Directory holding a prior `analyze` run
    #[arg(long)]
    out: PathBuf,
    /// Report format
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
}

fn ingest_to_app_error(err: IngestError) -> AppError {
    if err.is_io() {
        AppError::Io(err.to_string())
    } else {
        AppError::Data(err.to_string())
    }
}

fn report_to_app_error(err: crate::report::ReportError) -> AppError {
    match &err {
        crate::report::ReportError::Io { .. } | crate::report::ReportError::ReadIo { .. } => {
            AppError::Io(err.to_string())
        }
        crate::report::ReportError::Malformed { .. } => AppError::Data(err.to_string()),
    }
}

fn required<T>(flag: Option<T>, name: &str) -> AppResult<T> {
    flag.ok_or_else(|| AppError::Usage(format!("missing required --{name} (flag or config file)")))
}

fn run_analyze(args: AnalyzeArgs) -> AppResult<()> {
    let file_cfg = match &args.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let reviews_path = required(args.reviews.or_else(|| file_cfg.reviews.clone()), "reviews")?;
    let apps_path = required(args.apps.or_else(|| file_cfg.apps.clone()), "apps")?;
    let out_dir = required(args.out.or_else(|| file_cfg.out.clone()), "out")?;
    let thresholds = Thresholds {
        p_threshold: args.p_threshold.or(file_cfg.p_threshold).unwrap_or(0.05),
        sentiment_boundary: args
            .sentiment_boundary
            .or(file_cfg.sentiment_boundary)
            .unwrap_or(0.05),
        min_tokens: args.min_tokens.or(file_cfg.min_tokens).unwrap_or(3),
        workers: args.workers.or(file_cfg.workers).unwrap_or(1),
    };
    thresholds.validate()?;
    let format: ReportFormat = match args.format {
        Some(f) => f.into(),
        None => match file_cfg.format.as_deref() {
            Some("json") => ReportFormat::Json,
            Some("md") => ReportFormat::Md,
            Some("csv") | None => ReportFormat::Csv,
            Some(other) => {
                return Err(AppError::Usage(format!("unknown format {other:?} in config")))
            }
        },
    };
    let review_format = match args.reviews_format {
        Some(ReviewFormatArg::Jsonl) => ReviewFormat::Jsonl,
        Some(ReviewFormatArg::Csv) => ReviewFormat::Csv,
        None => match file_cfg.reviews_format.as_deref() {
            Some("csv") => ReviewFormat::Csv,
            Some("jsonl") => ReviewFormat::Jsonl,
            Some(other) => {
                return Err(AppError::Usage(format!(
                    "unknown reviews format {other:?} in config"
                )))
            }
            None => ReviewFormat::infer(&reviews_path),
        },
    };

    let assets = load_assets(&args.assets.merge_with(&file_cfg))?;
    for warning in assets.dictionary.warnings() {
        eprintln!("note: {warning}");
    }

    let loaded = load_reviews(&reviews_path, review_format).map_err(ingest_to_app_error)?;
    let apps = load_app_metadata(&apps_path).map_err(ingest_to_app_error)?;
    eprintln!(
        "loaded {} reviews across {} apps",
        loaded.len(),
        loaded.source_counts().len()
    );

    let filtered = filter_informative(&loaded, thresholds.min_tokens);
    eprintln!(
        "informativeness filter kept {} reviews, discarded {}",
        filtered.kept.len(),
        filtered.discarded
    );

    let config = DetectorConfig {
        probability_threshold: thresholds.p_threshold,
        sentiment_boundary: thresholds.sentiment_boundary,
    };
    let output = run_pipeline(&filtered.kept, &apps, &assets, config, thresholds.workers)
        .map_err(|e| AppError::Data(e.to_string()))?;
    eprintln!(
        "detected {} violating reviews ({} degenerate)",
        output.records.len(),
        output.degenerate_count
    );

    std::fs::create_dir_all(&out_dir)
        .map_err(|e| AppError::Io(format!("cannot create {}: {e}", out_dir.display())))?;
    write_violations_jsonl(&out_dir.join("violations.jsonl"), &output.records)
        .map_err(report_to_app_error)?;
    write_ledger_jsonl(&out_dir.join("ledger.jsonl"), &output.ledger)
        .map_err(report_to_app_error)?;
    write_run_meta(
        &out_dir.join("run_meta.json"),
        &RunMeta {
            corpus_size: filtered.kept.len(),
            discarded_uninformative: filtered.discarded,
            degenerate_reviews: output.degenerate_count,
            probability_threshold: thresholds.p_threshold,
            sentiment_boundary: thresholds.sentiment_boundary,
            min_tokens: thresholds.min_tokens,
            workers: thresholds.workers,
        },
    )
    .map_err(report_to_app_error)?;

    let stats = aggregate_by_category(&output.records, filtered.kept.len())
        .map_err(|e| AppError::Data(e.to_string()))?;
    let likes = aggregate_likes(&output.records);
    let table = associate_features(&output.records);
    emit_report(&out_dir, &stats, &likes, &table, None, format).map_err(report_to_app_error)?;
    eprintln!("reports written to {}", out_dir.display());
    Ok(())
}

/// Rebuild a corpus skeleton from a saved ledger: ids and app ids are all
/// evaluation needs.
fn corpus_from_ledger(entries: &[(String, String, String)]) -> AppResult<ReviewCollection> {
    let reviews: Vec<Review> = entries
        .iter()
        .map(|(review_id, app_id, _)| Review {
            review_id: review_id.clone(),
            app_id: app_id.clone(),
            text: String::new(),
            rating: 3,
            likes: 0,
            date: None,
        })
        .collect();
    ReviewCollection::new(reviews).map_err(|e| AppError::Data(format!("saved ledger: {e}")))
}

fn run_evaluate(args: EvaluateArgs) -> AppResult<()> {
    let violations_path = args.out.join("violations.jsonl");
    let ledger_path = args.out.join("ledger.jsonl");
    if !violations_path.exists() || !ledger_path.exists() {
        return Err(AppError::Data(format!(
            "{} does not hold analyze output (violations.jsonl, ledger.jsonl); run analyze first",
            args.out.display()
        )));
    }
    let records = read_violations_jsonl(&violations_path).map_err(report_to_app_error)?;
    let ledger = read_ledger_jsonl(&ledger_path).map_err(report_to_app_error)?;
    let corpus = corpus_from_ledger(&ledger)?;
    let truthset = load_truthset(&args.truthset).map_err(ingest_to_app_error)?;
    let metrics = evaluate(&records, &truthset, &corpus)
        .map_err(|e| AppError::Data(e.to_string()))?;

    let format: ReportFormat = args.format.into();
    let stats = aggregate_by_category(&records, corpus.len())
        .map_err(|e| AppError::Data(e.to_string()))?;
    let likes = aggregate_likes(&records);
    let table = associate_features(&records);
    emit_report(&args.out, &stats, &likes, &table, Some(&metrics), format)
        .map_err(report_to_app_error)?;

    // Supplementary per-item breakdown next to the binary metrics.
    write_item_metrics(&args.out, &records, &truthset, format)?;

    println!(
        "precision {:.4}{}  recall {:.4}{}  f-measure {:.4}{}",
        metrics.precision,
        if metrics.precision_undefined { " (undefined->0)" } else { "" },
        metrics.recall,
        if metrics.recall_undefined { " (undefined->0)" } else { "" },
        metrics.f_measure,
        if metrics.f_measure_undefined { " (undefined->0)" } else { "" },
    );
    println!(
        "tp {} fp {} tn {} fn {}",
        metrics.true_positives,
        metrics.false_positives,
        metrics.true_negatives,
        metrics.false_negatives
    );
    Ok(())
}

/// Per-item true/false positive/negative counts over (review, item) pairs.
fn write_item_metrics(
    out_dir: &Path,
    records: &[revalues_core::detector::ViolationRecord],
    truthset: &[revalues_core::analytics::TruthLabel],
    format: ReportFormat,
) -> AppResult<()> {
    use std::collections::{BTreeMap, BTreeSet};
    let mut predicted: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    for r in records {
        for item in &r.violated_items {
            predicted
                .entry(r.review_id.as_str())
                .or_default()
                .insert(item.item.as_str());
        }
    }
    let mut actual: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    for label in truthset {
        for item in &label.violated_items {
            actual
                .entry(label.review_id.as_str())
                .or_default()
                .insert(item.as_str());
        }
    }
    let mut item_names: BTreeSet<&str> = BTreeSet::new();
    for set in predicted.values().chain(actual.values()) {
        item_names.extend(set.iter());
    }
    let header = vec![
        "item".to_string(),
        "tp".to_string(),
        "fp".to_string(),
        "fn".to_string(),
        "precision".to_string(),
        "recall".to_string(),
    ];
    let mut rows = Vec::new();
    for item in item_names {
        let mut tp = 0u64;
        let mut fp = 0u64;
        let mut fn_ = 0u64;
        let reviews: BTreeSet<&str> = predicted.keys().chain(actual.keys()).copied().collect();
        for review in reviews {
            let p = predicted.get(review).is_some_and(|s| s.contains(item));
            let a = actual.get(review).is_some_and(|s| s.contains(item));
            match (p, a) {
                (true, true) => tp += 1,
                (true, false) => fp += 1,
                (false, true) => fn_ += 1,
                (false, false) => {}
            }
        }
        let precision = if tp + fp > 0 { tp as f64 / (tp + fp) as f64 } else { 0.0 };
        let recall = if tp + fn_ > 0 { tp as f64 / (tp + fn_) as f64 } else { 0.0 };
        rows.push(vec![
            item.to_string(),
            tp.to_string(),
            fp.to_string(),
            fn_.to_string(),
            format!("{precision:.4}"),
            format!("{recall:.4}"),
        ]);
    }
    crate::report::emit_named_table(
        out_dir,
        "metrics_by_item",
        "Per-item evaluation",
        format,
        &header,
        &rows,
    )
    .map_err(report_to_app_error)?;
    Ok(())
}

fn run_extract_features(args: ExtractFeaturesArgs) -> AppResult<()> {
    let assets = load_assets(&args.assets.merge_with(&FileConfig::default()))?;
    let apps = load_app_metadata(&args.apps).map_err(ingest_to_app_error)?;
    let mut stdout = std::io::stdout().lock();
    use std::io::Write;
    for app in &apps {
        let features = extract_features(
            &app.description,
            &app.app_id,
            &assets.tag_lexicon,
            &assets.patterns,
            assets.allowlist.as_ref(),
        );
        for f in features {
            let line = serde_json::json!({
                "app_id": f.source_app,
                "feature": f.phrase(),
                "stems": f.stems,
                "pattern": f.source_pattern,
            });
            writeln!(stdout, "{line}")
                .map_err(|e| AppError::Io(format!("cannot write to stdout: {e}")))?;
        }
    }
    Ok(())
}

fn run_dict_validate(args: DictValidateArgs) -> AppResult<()> {
    let text = match &args.dict {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| AppError::Io(format!("cannot read {}: {e}", path.display())))?,
        None => include_str!("../../../assets/values_dictionary.json").to_string(),
    };
    let dictionary = parse_dictionary(&text)?;
    println!("dictionary ok: {} items across 10 categories", dictionary.len());
    for category in revalues_core::values::Category::ALL {
        println!(
            "  {:<16} {} items",
            category.name(),
            dictionary.items_in_category(category).count()
        );
    }
    for warning in dictionary.warnings() {
        println!("note: {warning}");
    }
    Ok(())
}

fn run_report(args: ReportArgs) -> AppResult<()> {
    let violations_path = args.out.join("violations.jsonl");
    let meta_path = args.out.join("run_meta.json");
    if !violations_path.exists() || !meta_path.exists() {
        return Err(AppError::Data(format!(
            "{} does not hold analyze output (violations.jsonl, run_meta.json); run analyze first",
            args.out.display()
        )));
    }
    let records = read_violations_jsonl(&violations_path).map_err(report_to_app_error)?;
    let meta = read_run_meta(&meta_path).map_err(report_to_app_error)?;
    let stats = aggregate_by_category(&records, meta.corpus_size)
        .map_err(|e| AppError::Data(e.to_string()))?;
    let likes = aggregate_likes(&records);
    let table = associate_features(&records);
    emit_report(&args.out, &stats, &likes, &table, None, args.format.into())
        .map_err(report_to_app_error)?;
    eprintln!("reports written to {}", args.out.display());
    Ok(())
}

/// Parse argv and run; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            // clap renders help/version on stdout with exit 0; real usage
            // errors already carry the `error:` prefix.
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Analyze(args) => run_analyze(args),
        Command::Evaluate(args) => run_evaluate(args),
        Command::ExtractFeatures(args) => run_extract_features(args),
        Command::DictValidate(args) => run_dict_validate(args),
        Command::Report(args) => run_report(args),
    };
    match result {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}
