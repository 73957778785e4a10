//! The Schwartz values dictionary and keyword matching.
//!
//! A dictionary holds exactly 50 value items across the 10 Schwartz
//! categories; each item carries a set of stemmed keywords built from the
//! item term, its synonyms, and its antonyms. Matching counts how many of
//! a review's content stems fall in an item's keyword set and reports the
//! ratio over the review's total stem count.

use crate::textprep::stem;
use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// The ten Schwartz value categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Category {
    SelfDirection,
    Stimulation,
    Hedonism,
    Achievement,
    Power,
    Security,
    Conformity,
    Tradition,
    Benevolence,
    Universalism,
}

impl Category {
    pub const ALL: [Category; 10] = [
        Category::SelfDirection,
        Category::Stimulation,
        Category::Hedonism,
        Category::Achievement,
        Category::Power,
        Category::Security,
        Category::Conformity,
        Category::Tradition,
        Category::Benevolence,
        Category::Universalism,
    ];

    /// Item count each category must carry in a complete dictionary.
    pub const EXPECTED_ITEM_COUNTS: [(Category, usize); 10] = [
        (Category::SelfDirection, 7),
        (Category::Stimulation, 3),
        (Category::Hedonism, 3),
        (Category::Achievement, 5),
        (Category::Power, 4),
        (Category::Security, 6),
        (Category::Conformity, 3),
        (Category::Tradition, 5),
        (Category::Benevolence, 7),
        (Category::Universalism, 7),
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Category::SelfDirection => "Self-direction",
            Category::Stimulation => "Stimulation",
            Category::Hedonism => "Hedonism",
            Category::Achievement => "Achievement",
            Category::Power => "Power",
            Category::Security => "Security",
            Category::Conformity => "Conformity",
            Category::Tradition => "Tradition",
            Category::Benevolence => "Benevolence",
            Category::Universalism => "Universalism",
        }
    }

    /// Motivational gloss for reports.
    pub fn description(&self) -> &'static str {
        match self {
            Category::SelfDirection => "independent thought, choice, and exploration",
            Category::Stimulation => "excitement, novelty, and challenge",
            Category::Hedonism => "pleasure and personal gratification",
            Category::Achievement => "personal success through demonstrated competence",
            Category::Power => "status, prestige, and control of resources",
            Category::Security => "safety and stability of self and society",
            Category::Conformity => "restraint from upsetting or harming others",
            Category::Tradition => "respect for customs and established practice",
            Category::Benevolence => "care for the welfare of close others",
            Category::Universalism => "tolerance and protection for all people and nature",
        }
    }

    pub fn parse(name: &str) -> Option<Category> {
        let normalized = name.trim().to_lowercase();
        Category::ALL
            .into_iter()
            .find(|c| c.name().to_lowercase() == normalized)
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The eight Schwartz value items deliberately absent from the dictionary:
/// multi-word phrases with no usable single-token keyword proxies.
pub const EXCLUDED_ITEMS: [&str; 8] = [
    "social power",
    "reciprocation of favours",
    "honouring of parents and elders",
    "accepting my portion in life",
    "mature love",
    "meaning in life",
    "unity with nature",
    "protecting the environment",
];

/// Whether a keyword came from the synonym or the antonym list. Both match
/// identically during detection; the tag survives into match output for
/// analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum KeywordTag {
    Synonym,
    Antonym,
}

impl KeywordTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            KeywordTag::Synonym => "synonym",
            KeywordTag::Antonym => "antonym",
        }
    }
}

/// One named value with its stemmed keyword set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueItem {
    pub name: String,
    pub category: Category,
    keywords: BTreeMap<String, KeywordTag>,
}

impl ValueItem {
    pub fn keywords(&self) -> impl Iterator<Item = (&str, KeywordTag)> {
        self.keywords.iter().map(|(k, &t)| (k.as_str(), t))
    }

    pub fn contains_keyword(&self, stemmed: &str) -> bool {
        self.keywords.contains_key(stemmed)
    }

    pub fn keyword_count(&self) -> usize {
        self.keywords.len()
    }
}

/// Unstemmed entry for one value item, as read from the dictionary file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DictionaryEntry {
    pub category: String,
    pub item: String,
    pub synonyms: Vec<String>,
    pub antonyms: Vec<String>,
}

/// Dictionary validation failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DictionaryError {
    UnknownCategory {
        item: String,
        category: String,
    },
    ExcludedItem {
        item: String,
    },
    EmptyKeywords {
        item: String,
    },
    BadKeyword {
        item: String,
        keyword: String,
    },
    DuplicateItem {
        item: String,
    },
    WrongItemCount {
        expected: usize,
        found: usize,
    },
    WrongCategoryCount {
        category: Category,
        expected: usize,
        found: usize,
    },
}

impl fmt::Display for DictionaryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DictionaryError::UnknownCategory { item, category } => {
                write!(f, "item {item:?} names unknown category {category:?}")
            }
            DictionaryError::ExcludedItem { item } => {
                write!(
                    f,
                    "item {item:?} is one of the eight excluded value items and cannot be loaded"
                )
            }
            DictionaryError::EmptyKeywords { item } => {
                write!(f, "item {item:?} has an empty keyword set")
            }
            DictionaryError::BadKeyword { item, keyword } => {
                write!(f, "item {item:?} has a non single-token keyword {keyword:?}")
            }
            DictionaryError::DuplicateItem { item } => {
                write!(f, "item {item:?} appears more than once")
            }
            DictionaryError::WrongItemCount { expected, found } => {
                write!(f, "dictionary has {found} items, expected {expected}")
            }
            DictionaryError::WrongCategoryCount {
                category,
                expected,
                found,
            } => write!(
                f,
                "category {category} has {found} items, expected {expected}"
            ),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for DictionaryError {}

/// The validated 50-item dictionary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuesDictionary {
    items: Vec<ValueItem>,
    warnings: Vec<String>,
}

impl ValuesDictionary {
    /// Build and validate a dictionary from raw entries. Keywords are
    /// lowercased and stemmed here; the item term itself joins the keyword
    /// set when it is a single word. Entry order does not affect the
    /// result: items are sorted by category, then name.
    pub fn from_entries(entries: Vec<DictionaryEntry>) -> Result<Self, DictionaryError> {
        let mut items: Vec<ValueItem> = Vec::with_capacity(entries.len());
        let mut seen_names: BTreeSet<String> = BTreeSet::new();
        for entry in &entries {
            let category = Category::parse(&entry.category).ok_or_else(|| {
                DictionaryError::UnknownCategory {
                    item: entry.item.clone(),
                    category: entry.category.clone(),
                }
            })?;
            let item_lower = entry.item.trim().to_lowercase();
            if EXCLUDED_ITEMS.contains(&item_lower.as_str()) {
                return Err(DictionaryError::ExcludedItem {
                    item: entry.item.clone(),
                });
            }
            if !seen_names.insert(item_lower.clone()) {
                return Err(DictionaryError::DuplicateItem {
                    item: entry.item.clone(),
                });
            }
            let mut keywords: BTreeMap<String, KeywordTag> = BTreeMap::new();
            let mut add = |word: &str, tag: KeywordTag| -> Result<(), DictionaryError> {
                let word = word.trim().to_lowercase();
                if word.is_empty() || word.chars().any(char::is_whitespace) {
                    return Err(DictionaryError::BadKeyword {
                        item: entry.item.clone(),
                        keyword: word,
                    });
                }
                keywords.entry(stem(&word)).or_insert(tag);
                Ok(())
            };
            if !item_lower.contains(char::is_whitespace) && !item_lower.is_empty() {
                add(&item_lower, KeywordTag::Synonym)?;
            }
            for synonym in &entry.synonyms {
                add(synonym, KeywordTag::Synonym)?;
            }
            for antonym in &entry.antonyms {
                add(antonym, KeywordTag::Antonym)?;
            }
            if keywords.is_empty() {
                return Err(DictionaryError::EmptyKeywords {
                    item: entry.item.clone(),
                });
            }
            items.push(ValueItem {
                name: entry.item.trim().to_owned(),
                category,
                keywords,
            });
        }

        if items.len() != 50 {
            return Err(DictionaryError::WrongItemCount {
                expected: 50,
                found: items.len(),
            });
        }
        for (category, expected) in Category::EXPECTED_ITEM_COUNTS {
            let found = items.iter().filter(|i| i.category == category).count();
            if found != expected {
                return Err(DictionaryError::WrongCategoryCount {
                    category,
                    expected,
                    found,
                });
            }
        }

        items.sort_by(|a, b| a.category.cmp(&b.category).then(a.name.cmp(&b.name)));

        // Keywords shared across items are allowed; surface them as warnings.
        let mut owners: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for item in &items {
            for (kw, _) in item.keywords() {
                owners.entry(kw).or_default().push(&item.name);
            }
        }
        let warnings: Vec<String> = owners
            .into_iter()
            .filter(|(_, names)| names.len() > 1)
            .map(|(kw, names)| {
                alloc::format!("keyword {kw:?} is shared by items: {}", names.join(", "))
            })
            .collect();

        Ok(ValuesDictionary { items, warnings })
    }

    pub fn items(&self) -> &[ValueItem] {
        &self.items
    }

    pub fn item(&self, name: &str) -> Option<&ValueItem> {
        self.items.iter().find(|i| i.name == name)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Load-time warnings about keywords shared between items.
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn items_in_category(&self, category: Category) -> impl Iterator<Item = &ValueItem> {
        self.items.iter().filter(move |i| i.category == category)
    }
}

/// One item's match against a review's stems.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueMatch<'a> {
    pub item: &'a ValueItem,
    /// Stem occurrences that fall in the item's keyword set.
    pub tv: usize,
    /// Total stem occurrences in the review.
    pub tr: usize,
    /// Exactly `tv / tr`.
    pub probability: f64,
    pub matched_stems: Vec<(String, KeywordTag)>,
}

/// Match every dictionary item against a review's content stems.
///
/// `tv` counts occurrences, not unique stems; a stem keyed in several
/// items contributes to each. Empty input yields an empty result; the
/// caller treats that review as degenerate.
pub fn match_values<'a>(stems: &[String], dictionary: &'a ValuesDictionary) -> Vec<ValueMatch<'a>> {
    let tr = stems.len();
    if tr == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for item in dictionary.items() {
        let mut matched: Vec<(String, KeywordTag)> = Vec::new();
        for s in stems {
            if let Some(&tag) = item.keywords.get(s) {
                matched.push((s.clone(), tag));
            }
        }
        if matched.is_empty() {
            continue;
        }
        let tv = matched.len();
        out.push(ValueMatch {
            item,
            tv,
            tr,
            probability: tv as f64 / tr as f64,
            matched_stems: matched,
        });
    }
    out
}
