//! Bundled default assets and their file-based overrides.
//!
//! Every asset can be replaced by a flag, or redirected as a set through
//! the `REVALUES_ASSET_DIR` environment variable pointing at a directory
//! holding files with the canonical names.

use crate::{AppError, AppResult};
use revalues_core::features::{PatternSet, TagLexicon};
use revalues_core::sentiment::SentimentLexicon;
use revalues_core::textprep::{parse_stoplist, FrequencyList};
use revalues_core::values::{DictionaryEntry, ValuesDictionary};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

pub const ASSET_DIR_ENV: &str = "REVALUES_ASSET_DIR";

const EMBEDDED_FREQUENCIES: &str = include_str!("../../../assets/word_frequencies.tsv");
const EMBEDDED_STOPWORDS: &str = include_str!("../../../assets/stopwords.txt");
const EMBEDDED_SENTIMENT_LEXICON: &str = include_str!("../../../assets/sentiment_lexicon.tsv");
const EMBEDDED_BOOSTERS: &str = include_str!("../../../assets/sentiment_boosters.tsv");
const EMBEDDED_NEGATIONS: &str = include_str!("../../../assets/sentiment_negations.txt");
const EMBEDDED_TAG_LEXICON: &str = include_str!("../../../assets/pos_tag_lexicon.tsv");
const EMBEDDED_PATTERNS: &str = include_str!("../../../assets/pos_patterns.txt");
const EMBEDDED_DICTIONARY: &str = include_str!("../../../assets/values_dictionary.json");

/// Canonical file names inside an asset directory.
const NAMES: [(&str, AssetKind); 8] = [
    ("word_frequencies.tsv", AssetKind::Frequencies),
    ("stopwords.txt", AssetKind::Stopwords),
    ("sentiment_lexicon.tsv", AssetKind::SentimentLexicon),
    ("sentiment_boosters.tsv", AssetKind::Boosters),
    ("sentiment_negations.txt", AssetKind::Negations),
    ("pos_tag_lexicon.tsv", AssetKind::TagLexicon),
    ("pos_patterns.txt", AssetKind::Patterns),
    ("values_dictionary.json", AssetKind::Dictionary),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum AssetKind {
    Frequencies,
    Stopwords,
    SentimentLexicon,
    Boosters,
    Negations,
    TagLexicon,
    Patterns,
    Dictionary,
}

/// Per-asset path overrides from flags.
#[derive(Debug, Clone, Default)]
pub struct AssetOverrides {
    pub frequencies: Option<PathBuf>,
    pub stoplist: Option<PathBuf>,
    pub sentiment_lexicon: Option<PathBuf>,
    pub boosters: Option<PathBuf>,
    pub negations: Option<PathBuf>,
    pub tag_lexicon: Option<PathBuf>,
    pub patterns: Option<PathBuf>,
    pub dictionary: Option<PathBuf>,
    pub allowlist: Option<PathBuf>,
}

/// Everything the pipeline consumes, loaded and validated.
pub struct AssetSet {
    pub frequencies: FrequencyList,
    pub stoplist: BTreeSet<String>,
    pub sentiment: SentimentLexicon,
    pub tag_lexicon: TagLexicon,
    pub patterns: PatternSet,
    pub dictionary: ValuesDictionary,
    pub allowlist: Option<BTreeSet<String>>,
}

fn read_file(path: &Path) -> AppResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| AppError::Io(format!("cannot read {}: {e}", path.display())))
}

/// Text for one asset: explicit flag path, else `REVALUES_ASSET_DIR`
/// file, else the embedded copy.
fn asset_text(kind: AssetKind, flag: &Option<PathBuf>) -> AppResult<String> {
    if let Some(path) = flag {
        return read_file(path);
    }
    if let Ok(dir) = std::env::var(ASSET_DIR_ENV) {
        let name = NAMES
            .iter()
            .find(|(_, k)| *k == kind)
            .map(|(n, _)| *n)
            .expect("every kind is named");
        let candidate = Path::new(&dir).join(name);
        if candidate.exists() {
            return read_file(&candidate);
        }
    }
    Ok(embedded(kind).to_string())
}

fn embedded(kind: AssetKind) -> &'static str {
    match kind {
        AssetKind::Frequencies => EMBEDDED_FREQUENCIES,
        AssetKind::Stopwords => EMBEDDED_STOPWORDS,
        AssetKind::SentimentLexicon => EMBEDDED_SENTIMENT_LEXICON,
        AssetKind::Boosters => EMBEDDED_BOOSTERS,
        AssetKind::Negations => EMBEDDED_NEGATIONS,
        AssetKind::TagLexicon => EMBEDDED_TAG_LEXICON,
        AssetKind::Patterns => EMBEDDED_PATTERNS,
        AssetKind::Dictionary => EMBEDDED_DICTIONARY,
    }
}

/// Dictionary file shape: {category: {item: {"synonyms": [...], "antonyms": [...]}}}.
#[derive(Debug, Deserialize)]
struct DictionaryItemFile {
    #[serde(default)]
    synonyms: Vec<String>,
    #[serde(default)]
    antonyms: Vec<String>,
}

pub fn parse_dictionary(text: &str) -> AppResult<ValuesDictionary> {
    let parsed: BTreeMap<String, BTreeMap<String, DictionaryItemFile>> =
        serde_json::from_str(text)
            .map_err(|e| AppError::Data(format!("values dictionary is not valid JSON: {e}")))?;
    let mut entries = Vec::new();
    for (category, items) in parsed {
        for (item, lists) in items {
            entries.push(DictionaryEntry {
                category: category.clone(),
                item,
                synonyms: lists.synonyms,
                antonyms: lists.antonyms,
            });
        }
    }
    ValuesDictionary::from_entries(entries)
        .map_err(|e| AppError::Data(format!("values dictionary failed validation: {e}")))
}

/// Load the full asset set with overrides applied.
pub fn load_assets(overrides: &AssetOverrides) -> AppResult<AssetSet> {
    let frequencies = FrequencyList::from_tsv(&asset_text(
        AssetKind::Frequencies,
        &overrides.frequencies,
    )?)
    .map_err(|e| AppError::Data(format!("word frequency list: {e}")))?;
    if frequencies.is_empty() {
        return Err(AppError::Data("word frequency list is empty".to_string()));
    }
    let stoplist = parse_stoplist(&asset_text(AssetKind::Stopwords, &overrides.stoplist)?)
        .map_err(|e| AppError::Data(format!("stoplist: {e}")))?;
    let sentiment = SentimentLexicon::from_assets(
        &asset_text(AssetKind::SentimentLexicon, &overrides.sentiment_lexicon)?,
        &asset_text(AssetKind::Boosters, &overrides.boosters)?,
        &asset_text(AssetKind::Negations, &overrides.negations)?,
    )
    .map_err(|e| AppError::Data(format!("sentiment lexicon: {e}")))?;
    let tag_lexicon = TagLexicon::from_tsv(&asset_text(AssetKind::TagLexicon, &overrides.tag_lexicon)?)
        .map_err(|e| AppError::Data(format!("tag lexicon: {e}")))?;
    let patterns = PatternSet::parse(&asset_text(AssetKind::Patterns, &overrides.patterns)?)
        .map_err(|e| AppError::Data(format!("pattern file: {e}")))?;
    let dictionary = parse_dictionary(&asset_text(AssetKind::Dictionary, &overrides.dictionary)?)?;
    let allowlist = match &overrides.allowlist {
        Some(path) => {
            let text = read_file(path)?;
            Some(
                text.lines()
                    .map(|l| l.trim().to_lowercase())
                    .filter(|l| !l.is_empty())
                    .collect(),
            )
        }
        None => None,
    };
    Ok(AssetSet {
        frequencies,
        stoplist,
        sentiment,
        tag_lexicon,
        patterns,
        dictionary,
        allowlist,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_assets_load() {
        let assets = load_assets(&AssetOverrides::default()).unwrap();
        assert!(assets.frequencies.len() > 50_000);
        assert!(assets.stoplist.contains("this"));
        assert!(assets.stoplist.contains("is"));
        assert!(assets.stoplist.contains("a"));
        assert!(assets.sentiment.len() > 7_000);
        assert!(assets.tag_lexicon.len() > 20_000);
        assert_eq!(assets.patterns.len(), 8);
        assert_eq!(assets.dictionary.len(), 50);
    }

    #[test]
    fn bundled_dictionary_counts_match() {
        use revalues_core::values::Category;
        let assets = load_assets(&AssetOverrides::default()).unwrap();
        for (category, expected) in Category::EXPECTED_ITEM_COUNTS {
            assert_eq!(
                assets.dictionary.items_in_category(category).count(),
                expected,
                "category {category}"
            );
        }
    }

    #[test]
    fn bundled_stoplist_keeps_content_words() {
        use revalues_core::textprep::{remove_stopwords, tokenize};
        let assets = load_assets(&AssetOverrides::default()).unwrap();
        let kept: Vec<String> = remove_stopwords(&tokenize("useless for me"), &assets.stoplist)
            .into_iter()
            .map(|t| t.surface)
            .collect();
        assert_eq!(kept, ["useless"]);
    }

    #[test]
    fn bundled_dictionary_honest_keywords_count_occurrences() {
        use revalues_core::textprep::stem;
        use revalues_core::values::match_values;
        let assets = load_assets(&AssetOverrides::default()).unwrap();
        // Eight fillers plus the stems of "dishonest" and "fraud": tr = 10.
        let mut stems: Vec<String> = (0..8).map(|i| format!("filler{i}")).collect();
        stems.push(stem("dishonest"));
        stems.push(stem("fraud"));
        let matches = match_values(&stems, &assets.dictionary);
        let honest = matches
            .iter()
            .find(|m| m.item.name == "Honest")
            .expect("Honest must match");
        assert_eq!(honest.tv, 2);
        assert_eq!(honest.tr, 10);
        assert_eq!(honest.probability, 0.2);
        // Brute-force recount over the item's keyword set.
        let recount = stems
            .iter()
            .filter(|s| honest.item.contains_keyword(s))
            .count();
        assert_eq!(recount, honest.tv);
    }

    #[test]
    fn bundled_tag_lexicon_lookups() {
        use revalues_core::features::PosTag;
        let assets = load_assets(&AssetOverrides::default()).unwrap();
        for (word, tag) in [
            ("parking", PosTag::Noun),
            ("payment", PosTag::Noun),
            ("save", PosTag::Verb),
            ("recipes", PosTag::Noun),
        ] {
            assert_eq!(assets.tag_lexicon.lookup(word), Some(tag), "{word}");
        }
    }

    #[test]
    fn dictionary_keywords_equal_stems_of_file_entries() {
        let parsed: BTreeMap<String, BTreeMap<String, DictionaryItemFile>> =
            serde_json::from_str(super::EMBEDDED_DICTIONARY).unwrap();
        let dict = parse_dictionary(super::EMBEDDED_DICTIONARY).unwrap();
        for (_, items) in parsed {
            for (name, lists) in items {
                let item = dict.item(&name).unwrap();
                for word in lists.synonyms.iter().chain(&lists.antonyms) {
                    let stem = revalues_core::textprep::stem(&word.to_lowercase());
                    assert!(
                        item.contains_keyword(&stem),
                        "stem {stem:?} of {word:?} missing from {name:?}"
                    );
                }
            }
        }
    }
}
