//! Review-text preprocessing: tokenization, spell correction, stopword
//! removal, and stemming.
//!
//! Two views of a review come out of [`preprocess`]: `corrected_text`
//! (spell-corrected, casing and punctuation intact) feeds sentiment
//! scoring, while `content_stems` (stopword-filtered, stemmed) feeds
//! values-dictionary matching.

mod porter2;

pub use porter2::stem;

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// Token class produced by [`tokenize`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Word,
    Punctuation,
}

/// One token of the original stream. Word surfaces are lowercased;
/// punctuation surfaces are kept verbatim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    pub kind: TokenKind,
    /// 0-based index in the original token stream.
    pub position: usize,
}

impl Token {
    pub fn is_word(&self) -> bool {
        self.kind == TokenKind::Word
    }
}

/// Raw token with original casing, used to rebuild corrected text.
#[derive(Debug, Clone)]
struct RawToken {
    text: String,
    kind: TokenKind,
    /// Whitespace separated this token from the previous one.
    space_before: bool,
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '\''
}

fn raw_tokens(text: &str) -> Vec<RawToken> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let mut pending_space = false;
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            pending_space = true;
            continue;
        }
        let mut run = String::new();
        if is_word_char(c) {
            while let Some(&c) = chars.peek() {
                if is_word_char(c) {
                    run.push(c);
                    chars.next();
                } else {
                    break;
                }
            }
            // Apostrophe-only runs carry no letters; treat them as punctuation.
            if run.chars().all(|c| c == '\'') {
                out.push(RawToken {
                    text: run,
                    kind: TokenKind::Punctuation,
                    space_before: pending_space,
                });
            } else {
                let trimmed = run.trim_matches('\'');
                out.push(RawToken {
                    text: trimmed.to_owned(),
                    kind: TokenKind::Word,
                    space_before: pending_space,
                });
            }
        } else {
            while let Some(&c) = chars.peek() {
                if !c.is_whitespace() && !is_word_char(c) {
                    run.push(c);
                    chars.next();
                } else {
                    break;
                }
            }
            out.push(RawToken {
                text: run,
                kind: TokenKind::Punctuation,
                space_before: pending_space,
            });
        }
        pending_space = false;
    }
    out
}

/// Split text into word and punctuation tokens.
///
/// Word tokens are maximal runs of letters, digits, and interior
/// apostrophes, lowercased. Runs of other non-whitespace characters become
/// punctuation tokens. Whitespace only separates.
pub fn tokenize(text: &str) -> Vec<Token> {
    raw_tokens(text)
        .into_iter()
        .enumerate()
        .map(|(position, raw)| Token {
            surface: match raw.kind {
                TokenKind::Word => raw.text.to_lowercase(),
                TokenKind::Punctuation => raw.text,
            },
            kind: raw.kind,
            position,
        })
        .collect()
}

/// Count word tokens only; the informativeness filter uses this.
pub fn word_token_count(text: &str) -> usize {
    tokenize(text).iter().filter(|t| t.is_word()).count()
}

/// Word tokens with their original casing, in stream order. Sentiment
/// scoring uses this view for its ALL-CAPS heuristic.
pub fn tokenize_raw_words(text: &str) -> Vec<String> {
    raw_tokens(text)
        .into_iter()
        .filter(|t| t.kind == TokenKind::Word)
        .map(|t| t.text)
        .collect()
}

/// Minimum number of single-character insertions, deletions, and
/// substitutions transforming `a` into `b`.
pub fn levenshtein(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    if a.is_empty() {
        return b.len();
    }
    if b.is_empty() {
        return a.len();
    }
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut curr = alloc::vec![0usize; b.len() + 1];
    for (i, &ca) in a.iter().enumerate() {
        curr[0] = i + 1;
        for (j, &cb) in b.iter().enumerate() {
            let cost = usize::from(ca != cb);
            curr[j + 1] = (prev[j] + cost).min(prev[j + 1] + 1).min(curr[j] + 1);
        }
        core::mem::swap(&mut prev, &mut curr);
    }
    prev[b.len()]
}

/// Levenshtein distance capped at `bound`: returns `None` when the true
/// distance exceeds it. Used to scan candidate vocabularies cheaply.
fn levenshtein_within(a: &[char], b: &[char], bound: usize) -> Option<usize> {
    if a.len().abs_diff(b.len()) > bound {
        return None;
    }
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut curr = alloc::vec![0usize; b.len() + 1];
    for (i, &ca) in a.iter().enumerate() {
        curr[0] = i + 1;
        let mut row_min = curr[0];
        for (j, &cb) in b.iter().enumerate() {
            let cost = usize::from(ca != cb);
            curr[j + 1] = (prev[j] + cost).min(prev[j + 1] + 1).min(curr[j] + 1);
            row_min = row_min.min(curr[j + 1]);
        }
        if row_min > bound {
            return None;
        }
        core::mem::swap(&mut prev, &mut curr);
    }
    let d = prev[b.len()];
    (d <= bound).then_some(d)
}

/// Error raised while parsing a bundled text asset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssetParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for AssetParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for AssetParseError {}

/// Word-frequency list backing spell correction.
///
/// Keys are lowercase; counts are positive. Lookup by length keeps the
/// candidate scan for out-of-vocabulary words cheap.
#[derive(Debug, Clone, Default)]
pub struct FrequencyList {
    counts: BTreeMap<String, u64>,
    by_len: BTreeMap<usize, Vec<(String, u64)>>,
}

impl FrequencyList {
    /// Parse the `word<TAB>count` asset format.
    pub fn from_tsv(text: &str) -> Result<Self, AssetParseError> {
        let mut list = FrequencyList::default();
        for (idx, line) in text.lines().enumerate() {
            if line.is_empty() {
                continue;
            }
            let (word, count) = line.split_once('\t').ok_or_else(|| AssetParseError {
                line: idx + 1,
                message: "expected word<TAB>count".to_string(),
            })?;
            let count: u64 = count.trim().parse().map_err(|_| AssetParseError {
                line: idx + 1,
                message: alloc::format!("bad count {count:?}"),
            })?;
            if count == 0 {
                return Err(AssetParseError {
                    line: idx + 1,
                    message: "count must be positive".to_string(),
                });
            }
            if word.chars().any(|c| c.is_uppercase()) {
                return Err(AssetParseError {
                    line: idx + 1,
                    message: alloc::format!("word {word:?} must be lowercase"),
                });
            }
            list.insert(word, count);
        }
        Ok(list)
    }

    pub fn insert(&mut self, word: &str, count: u64) {
        self.counts.insert(word.to_owned(), count);
        self.by_len
            .entry(word.chars().count())
            .or_default()
            .push((word.to_owned(), count));
    }

    pub fn contains(&self, word: &str) -> bool {
        self.counts.contains_key(word)
    }

    pub fn count(&self, word: &str) -> Option<u64> {
        self.counts.get(word).copied()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.counts.keys().map(String::as_str)
    }

    /// Best in-vocabulary replacement within edit distance 2, if any.
    ///
    /// Distance-1 candidates strictly dominate distance-2; ties break by
    /// higher count, then lexicographically smaller word.
    pub fn best_correction(&self, word: &str) -> Option<&str> {
        let chars: Vec<char> = word.chars().collect();
        let len = chars.len();
        // (distance, negated count, word); smallest wins.
        let mut best: Option<(usize, u64, &str)> = None;
        for l in len.saturating_sub(2)..=len + 2 {
            let Some(bucket) = self.by_len.get(&l) else {
                continue;
            };
            for (cand, count) in bucket {
                let cand_chars: Vec<char> = cand.chars().collect();
                let Some(d) = levenshtein_within(&chars, &cand_chars, 2) else {
                    continue;
                };
                if d == 0 {
                    return Some(cand);
                }
                let better = match &best {
                    None => true,
                    Some((bd, bc, bw)) => {
                        (d, core::cmp::Reverse(*count), cand.as_str())
                            < (*bd, core::cmp::Reverse(*bc), *bw)
                    }
                };
                if better {
                    best = Some((d, *count, cand));
                }
            }
        }
        best.map(|(_, _, w)| w)
    }
}

/// Replace out-of-vocabulary word tokens with their best dictionary
/// candidate within edit distance 2. In-vocabulary words and punctuation
/// pass through untouched, as do words with no candidate.
pub fn correct_spelling(tokens: &[Token], freq: &FrequencyList) -> Vec<Token> {
    tokens
        .iter()
        .map(|t| {
            if t.kind != TokenKind::Word || freq.contains(&t.surface) {
                return t.clone();
            }
            match freq.best_correction(&t.surface) {
                Some(repl) => Token {
                    surface: repl.to_owned(),
                    kind: TokenKind::Word,
                    position: t.position,
                },
                None => t.clone(),
            }
        })
        .collect()
}

/// Drop stoplisted word tokens and all punctuation, preserving order.
pub fn remove_stopwords(tokens: &[Token], stoplist: &BTreeSet<String>) -> Vec<Token> {
    tokens
        .iter()
        .filter(|t| t.is_word() && !stoplist.contains(&t.surface))
        .cloned()
        .collect()
}

/// Parse the one-word-per-line stoplist asset.
pub fn parse_stoplist(text: &str) -> Result<BTreeSet<String>, AssetParseError> {
    let mut set = BTreeSet::new();
    for (idx, line) in text.lines().enumerate() {
        let word = line.trim();
        if word.is_empty() {
            continue;
        }
        if word.chars().any(|c| c.is_uppercase()) {
            return Err(AssetParseError {
                line: idx + 1,
                message: alloc::format!("stopword {word:?} must be lowercase"),
            });
        }
        set.insert(word.to_string());
    }
    Ok(set)
}

/// Preprocessed views of one review text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreprocessedReview {
    /// Spell-corrected text with original casing, punctuation, and token
    /// adjacency; runs of whitespace collapse to single spaces.
    pub corrected_text: String,
    /// Stemmed content words after spell correction and stopword removal.
    pub content_stems: Vec<String>,
}

/// Run the full preprocessing chain: correct spelling, rebuild the
/// corrected text, then stem the stopword-filtered content words.
pub fn preprocess(
    text: &str,
    freq: &FrequencyList,
    stoplist: &BTreeSet<String>,
) -> PreprocessedReview {
    let raw = raw_tokens(text);
    let mut corrected_text = String::new();
    let mut content_stems = Vec::new();
    for (i, tok) in raw.iter().enumerate() {
        let lower = tok.text.to_lowercase();
        let (emit, content): (String, Option<String>) = match tok.kind {
            TokenKind::Punctuation => (tok.text.clone(), None),
            TokenKind::Word => {
                if freq.contains(&lower) {
                    (tok.text.clone(), Some(lower))
                } else {
                    match freq.best_correction(&lower) {
                        Some(repl) => (repl.to_owned(), Some(repl.to_owned())),
                        None => (tok.text.clone(), Some(lower)),
                    }
                }
            }
        };
        if i > 0 && tok.space_before {
            corrected_text.push(' ');
        }
        corrected_text.push_str(&emit);
        if let Some(word) = content {
            if !stoplist.contains(&word) {
                content_stems.push(stem(&word));
            }
        }
    }
    PreprocessedReview {
        corrected_text,
        content_stems,
    }
}
