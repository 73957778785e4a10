//! App-feature extraction from descriptions and feature lookup in reviews.
//!
//! Extraction is rule based: descriptions are sentence-split, feature-cue
//! phrases ("you can ...", "allows you to ...") select the clause holding
//! the feature list, verb-led conjunctions split enumerations, and the
//! remaining clauses are POS-tagged and scanned with a configurable
//! pattern set, longest patterns first.

use crate::textprep::{stem, tokenize, AssetParseError, Token, TokenKind};
use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

/// The 12-tag universal POS set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PosTag {
    Noun,
    Verb,
    Adj,
    Adv,
    Det,
    Pron,
    Adp,
    Conj,
    Num,
    Prt,
    Punct,
    X,
}

impl PosTag {
    pub fn parse(s: &str) -> Option<PosTag> {
        Some(match s {
            "NOUN" => PosTag::Noun,
            "VERB" => PosTag::Verb,
            "ADJ" => PosTag::Adj,
            "ADV" => PosTag::Adv,
            "DET" => PosTag::Det,
            "PRON" => PosTag::Pron,
            "ADP" => PosTag::Adp,
            "CONJ" => PosTag::Conj,
            "NUM" => PosTag::Num,
            "PRT" => PosTag::Prt,
            "PUNCT" => PosTag::Punct,
            "X" => PosTag::X,
            _ => return None,
        })
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            PosTag::Noun => "NOUN",
            PosTag::Verb => "VERB",
            PosTag::Adj => "ADJ",
            PosTag::Adv => "ADV",
            PosTag::Det => "DET",
            PosTag::Pron => "PRON",
            PosTag::Adp => "ADP",
            PosTag::Conj => "CONJ",
            PosTag::Num => "NUM",
            PosTag::Prt => "PRT",
            PosTag::Punct => "PUNCT",
            PosTag::X => "X",
        }
    }
}

/// A surface word with its assigned tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosTaggedToken {
    pub surface: String,
    pub tag: PosTag,
}

/// Most-frequent-tag lookup table, `word<TAB>TAG` per line.
#[derive(Debug, Clone, Default)]
pub struct TagLexicon {
    map: BTreeMap<String, PosTag>,
}

impl TagLexicon {
    pub fn from_tsv(text: &str) -> Result<Self, AssetParseError> {
        let mut map = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            if line.is_empty() {
                continue;
            }
            let (word, tag) = line.split_once('\t').ok_or_else(|| AssetParseError {
                line: idx + 1,
                message: "expected word<TAB>TAG".to_string(),
            })?;
            let tag = PosTag::parse(tag.trim()).ok_or_else(|| AssetParseError {
                line: idx + 1,
                message: alloc::format!("unknown tag {tag:?}"),
            })?;
            map.insert(word.to_owned(), tag);
        }
        Ok(TagLexicon { map })
    }

    pub fn lookup(&self, word: &str) -> Option<PosTag> {
        self.map.get(word).copied()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

fn suffix_tag(word: &str) -> Option<PosTag> {
    if word.chars().any(|c| c.is_ascii_digit()) {
        return Some(PosTag::Num);
    }
    let n = word.chars().count();
    let rule = |suffix: &str, tag: PosTag| (n >= suffix.len() + 2 && word.ends_with(suffix)).then_some(tag);
    rule("ly", PosTag::Adv)
        .or_else(|| rule("ing", PosTag::Verb))
        .or_else(|| rule("ed", PosTag::Verb))
        .or_else(|| rule("ous", PosTag::Adj))
        .or_else(|| rule("ful", PosTag::Adj))
        .or_else(|| rule("ive", PosTag::Adj))
}

/// Tag tokens by lexicon lookup, falling back to suffix rules, then NOUN.
/// Punctuation tokens tag as PUNCT.
pub fn tag_pos(tokens: &[Token], lexicon: &TagLexicon) -> Vec<PosTaggedToken> {
    tokens
        .iter()
        .map(|t| PosTaggedToken {
            surface: t.surface.clone(),
            tag: match t.kind {
                TokenKind::Punctuation => PosTag::Punct,
                TokenKind::Word => lexicon
                    .lookup(&t.surface)
                    .or_else(|| suffix_tag(&t.surface))
                    .unwrap_or(PosTag::Noun),
            },
        })
        .collect()
}

/// Ordered POS patterns; scanning tries longer patterns first.
#[derive(Debug, Clone, Default)]
pub struct PatternSet {
    patterns: Vec<Vec<PosTag>>,
}

impl PatternSet {
    /// Parse the pattern asset: one space-separated tag sequence per line,
    /// `#` comments allowed.
    pub fn parse(text: &str) -> Result<Self, AssetParseError> {
        let mut patterns = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut pattern = Vec::new();
            for name in line.split_whitespace() {
                let tag = PosTag::parse(name).ok_or_else(|| AssetParseError {
                    line: idx + 1,
                    message: alloc::format!("unknown tag {name:?}"),
                })?;
                pattern.push(tag);
            }
            patterns.push(pattern);
        }
        patterns.sort_by_key(|p| core::cmp::Reverse(p.len()));
        Ok(PatternSet { patterns })
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }
}

/// An extracted app feature: 2–4 surface words with their stems.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AppFeature {
    pub tokens: Vec<String>,
    pub stems: Vec<String>,
    pub source_app: String,
    pub source_pattern: String,
}

impl AppFeature {
    /// The feature as a lowercase phrase, e.g. "save recipes".
    pub fn phrase(&self) -> String {
        self.tokens.join(" ")
    }
}

/// Clause-selecting cue phrases scanned ahead of pattern matching.
const CUE_PHRASES: [&str; 7] = [
    "you can ",
    "allows you to ",
    "lets you ",
    "enables you to ",
    "helps you ",
    "ability to ",
    "option to ",
];

fn split_sentences(text: &str) -> Vec<&str> {
    text.split(['.', '!', '?', ';', ':', '\n'])
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect()
}

fn clause_after_cue(sentence: &str) -> &str {
    let lower = sentence.to_lowercase();
    let mut best: Option<usize> = None;
    for cue in CUE_PHRASES {
        if let Some(pos) = lower.find(cue) {
            let start = pos + cue.len();
            best = Some(best.map_or(start, |b: usize| b.min(start)));
        }
    }
    match best {
        Some(start) => &sentence[start..],
        None => sentence,
    }
}

/// Split a tagged clause into enumeration segments: a conjunction followed
/// by a verb starts a new verb phrase ("save recipes and add workouts").
/// Punctuation always breaks a segment.
fn enumeration_segments(tagged: &[PosTaggedToken]) -> Vec<Vec<&PosTaggedToken>> {
    let mut segments: Vec<Vec<&PosTaggedToken>> = alloc::vec![Vec::new()];
    for (i, tok) in tagged.iter().enumerate() {
        match tok.tag {
            PosTag::Punct => segments.push(Vec::new()),
            PosTag::Conj
                if tagged
                    .get(i + 1)
                    .is_some_and(|next| next.tag == PosTag::Verb) =>
            {
                segments.push(Vec::new());
            }
            _ => segments.last_mut().expect("segments never empty").push(tok),
        }
    }
    segments.retain(|s| !s.is_empty());
    segments
}

fn scan_segment(
    segment: &[&PosTaggedToken],
    patterns: &PatternSet,
    app_id: &str,
    out: &mut Vec<AppFeature>,
    seen: &mut BTreeSet<Vec<String>>,
) {
    let mut i = 0;
    while i < segment.len() {
        let mut matched_len = 0;
        for pattern in &patterns.patterns {
            if i + pattern.len() > segment.len() {
                continue;
            }
            if pattern
                .iter()
                .zip(&segment[i..i + pattern.len()])
                .all(|(want, tok)| tok.tag == *want)
            {
                let span = &segment[i..i + pattern.len()];
                // Determiners are matched but dropped from the feature.
                let tokens: Vec<String> = span
                    .iter()
                    .filter(|t| t.tag != PosTag::Det)
                    .map(|t| t.surface.clone())
                    .collect();
                if (2..=4).contains(&tokens.len()) {
                    let stems: Vec<String> = tokens.iter().map(|t| stem(t)).collect();
                    if seen.insert(stems.clone()) {
                        out.push(AppFeature {
                            tokens,
                            stems,
                            source_app: app_id.to_owned(),
                            source_pattern: pattern
                                .iter()
                                .map(|t| t.as_str())
                                .collect::<Vec<_>>()
                                .join(" "),
                        });
                    }
                }
                matched_len = pattern.len();
                break;
            }
        }
        i += matched_len.max(1);
    }
}

/// Extract candidate app features from a description.
///
/// Sentences are split, cue phrases select the feature clause, verb-led
/// enumerations are expanded, and each segment is scanned with the pattern
/// set. Overlaps resolve longest-first; duplicates (by stems) are dropped.
/// An optional allowlist keeps only approved feature phrases.
pub fn extract_features(
    description: &str,
    app_id: &str,
    lexicon: &TagLexicon,
    patterns: &PatternSet,
    allowlist: Option<&BTreeSet<String>>,
) -> Vec<AppFeature> {
    let mut out = Vec::new();
    let mut seen: BTreeSet<Vec<String>> = BTreeSet::new();
    for sentence in split_sentences(description) {
        let clause = clause_after_cue(sentence);
        let tokens = tokenize(clause);
        let tagged = tag_pos(&tokens, lexicon);
        for segment in enumeration_segments(&tagged) {
            scan_segment(&segment, patterns, app_id, &mut out, &mut seen);
        }
    }
    if let Some(allow) = allowlist {
        out.retain(|f| allow.contains(&f.phrase()));
    }
    out
}

/// Window width for locating feature stems inside a review.
pub const FEATURE_WINDOW: usize = 5;

/// Features whose stems all occur, in any order, within a window of
/// [`FEATURE_WINDOW`] consecutive review stems.
pub fn match_features_in_review(
    features: &[AppFeature],
    review_stems: &[String],
) -> Vec<AppFeature> {
    features
        .iter()
        .filter(|f| feature_in_window(&f.stems, review_stems, FEATURE_WINDOW))
        .cloned()
        .collect()
}

fn feature_in_window(feature_stems: &[String], review_stems: &[String], window: usize) -> bool {
    if feature_stems.is_empty() || review_stems.len() < feature_stems.len() {
        return false;
    }
    let width = window.min(review_stems.len());
    let mut needed: BTreeMap<&str, usize> = BTreeMap::new();
    for s in feature_stems {
        *needed.entry(s.as_str()).or_default() += 1;
    }
    review_stems.windows(width).any(|w| {
        needed.iter().all(|(stem, &count)| {
            w.iter().filter(|s| s.as_str() == *stem).count() >= count
        })
    })
}
