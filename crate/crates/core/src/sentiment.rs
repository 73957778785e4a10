//! Rule-augmented lexicon sentiment scoring.
//!
//! [`score`] sums per-token valences from a lexicon under a fixed set of
//! heuristics; booster and dampener words, negation within the three
//! preceding word tokens, ALL-CAPS emphasis, exclamation emphasis capped
//! at three, and contrastive "but" re-weighting; then normalizes the sum
//! to a compound score in `[-1, 1]` via `s / sqrt(s^2 + 15)`. The scoring
//! expects spell-corrected text with casing and punctuation intact, since
//! the caps and punctuation heuristics feed on them.

use crate::textprep::AssetParseError;
use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

/// Valence sums are squashed by `s / sqrt(s^2 + ALPHA)`.
const ALPHA: f64 = 15.0;
/// Valence shift for an ALL-CAPS sentiment word in mixed-case text.
const CAPS_INCREMENT: f64 = 0.733;
/// Multiplier applied per negation found in the preceding window.
const NEGATION_SCALAR: f64 = -0.74;
/// Per-`!` amplifier added to the raw sum, capped at three marks.
const EXCLAMATION_INCREMENT: f64 = 0.292;
const EXCLAMATION_CAP: usize = 3;
/// Damping for boosters two and three word tokens away.
const BOOSTER_DAMPING: [f64; 3] = [1.0, 0.95, 0.9];
/// Re-weighting of valences before and after a contrastive "but".
const BUT_BEFORE: f64 = 0.5;
const BUT_AFTER: f64 = 1.5;

/// Tri-class sentiment polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Polarity {
    Positive,
    Neutral,
    Negative,
}

impl Polarity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Polarity::Positive => "positive",
            Polarity::Neutral => "neutral",
            Polarity::Negative => "negative",
        }
    }
}

impl core::fmt::Display for Polarity {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Compound score plus its classification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SentimentResult {
    pub compound: f64,
    pub polarity: Polarity,
}

/// Token valences, booster increments, and negation cues.
#[derive(Debug, Clone, Default)]
pub struct SentimentLexicon {
    valences: BTreeMap<String, f64>,
    boosters: BTreeMap<String, f64>,
    negations: BTreeSet<String>,
}

impl SentimentLexicon {
    /// Assemble from the three text assets: `token<TAB>valence` lines,
    /// `token<TAB>increment` lines, and one negation token per line.
    pub fn from_assets(
        lexicon_tsv: &str,
        boosters_tsv: &str,
        negations_txt: &str,
    ) -> Result<Self, AssetParseError> {
        let mut lex = SentimentLexicon::default();
        for (idx, line) in lexicon_tsv.lines().enumerate() {
            if line.is_empty() {
                continue;
            }
            let (token, valence) = line.split_once('\t').ok_or_else(|| AssetParseError {
                line: idx + 1,
                message: "expected token<TAB>valence".to_string(),
            })?;
            let valence: f64 = valence.trim().parse().map_err(|_| AssetParseError {
                line: idx + 1,
                message: alloc::format!("bad valence {valence:?}"),
            })?;
            if !(-4.0..=4.0).contains(&valence) {
                return Err(AssetParseError {
                    line: idx + 1,
                    message: alloc::format!("valence {valence} outside [-4, 4]"),
                });
            }
            lex.valences.insert(token.to_owned(), valence);
        }
        for (idx, line) in boosters_tsv.lines().enumerate() {
            if line.is_empty() {
                continue;
            }
            let (token, incr) = line.split_once('\t').ok_or_else(|| AssetParseError {
                line: idx + 1,
                message: "expected token<TAB>increment".to_string(),
            })?;
            let incr: f64 = incr.trim().parse().map_err(|_| AssetParseError {
                line: idx + 1,
                message: alloc::format!("bad increment {incr:?}"),
            })?;
            lex.boosters.insert(token.to_owned(), incr);
        }
        for line in negations_txt.lines() {
            let token = line.trim();
            if !token.is_empty() {
                lex.negations.insert(token.to_owned());
            }
        }
        Ok(lex)
    }

    /// Build directly from parts; used by tests and experiments.
    pub fn from_parts(
        valences: BTreeMap<String, f64>,
        boosters: BTreeMap<String, f64>,
        negations: BTreeSet<String>,
    ) -> Self {
        SentimentLexicon {
            valences,
            boosters,
            negations,
        }
    }

    pub fn valence(&self, token: &str) -> Option<f64> {
        self.valences.get(token).copied()
    }

    pub fn is_booster(&self, token: &str) -> bool {
        self.boosters.contains_key(token)
    }

    pub fn len(&self) -> usize {
        self.valences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.valences.is_empty()
    }

    /// Lexicon with every valence negated; handy for symmetry checks.
    pub fn negated(&self) -> Self {
        SentimentLexicon {
            valences: self
                .valences
                .iter()
                .map(|(k, v)| (k.clone(), -v))
                .collect(),
            boosters: self.boosters.clone(),
            negations: self.negations.clone(),
        }
    }

    fn is_negation(&self, lower: &str) -> bool {
        if self.negations.contains(lower) {
            return true;
        }
        if lower.contains('\'') {
            let bare: String = lower.chars().filter(|&c| c != '\'').collect();
            if self.negations.contains(&bare) {
                return true;
            }
        }
        lower.ends_with("n't")
    }
}

/// Case-preserving word token; the scorer needs original casing.
struct ScoredToken {
    raw: String,
    lower: String,
}

fn word_tokens(text: &str) -> Vec<ScoredToken> {
    crate::textprep::tokenize_raw_words(text)
        .into_iter()
        .map(|raw| ScoredToken {
            lower: raw.to_lowercase(),
            raw,
        })
        .collect()
}

fn is_all_caps(token: &str) -> bool {
    token.chars().any(|c| c.is_alphabetic()) && !token.chars().any(|c| c.is_lowercase())
}

fn normalize(sum: f64) -> f64 {
    let norm = sum / libm::sqrt(sum * sum + ALPHA);
    norm.clamp(-1.0, 1.0)
}

/// Classify a compound score with the default `±0.05` boundaries.
pub fn classify(compound: f64) -> Polarity {
    classify_with(compound, 0.05)
}

/// Classify with a configurable symmetric boundary: positive at
/// `compound >= boundary`, negative at `compound <= -boundary`, neutral in
/// the open interval between.
pub fn classify_with(compound: f64, boundary: f64) -> Polarity {
    if compound >= boundary {
        Polarity::Positive
    } else if compound <= -boundary {
        Polarity::Negative
    } else {
        Polarity::Neutral
    }
}

/// Score one text. Empty text or text without lexicon hits yields a
/// compound of exactly `0.0`.
pub fn score(text: &str, lexicon: &SentimentLexicon) -> SentimentResult {
    let tokens = word_tokens(text);
    let caps: Vec<bool> = tokens.iter().map(|t| is_all_caps(&t.raw)).collect();
    // Caps emphasis only applies when the text mixes cased and ALL-CAPS words.
    let cap_count = caps.iter().filter(|&&c| c).count();
    let cap_differential = cap_count > 0 && cap_count < tokens.len();

    let mut valences: Vec<f64> = Vec::with_capacity(tokens.len());
    for (i, tok) in tokens.iter().enumerate() {
        if lexicon.is_booster(&tok.lower) {
            valences.push(0.0);
            continue;
        }
        let Some(mut valence) = lexicon.valence(&tok.lower) else {
            valences.push(0.0);
            continue;
        };
        if cap_differential && caps[i] {
            valence += CAPS_INCREMENT * valence.signum();
        }
        for back in 1..=3usize {
            let Some(j) = i.checked_sub(back) else { break };
            let prev = &tokens[j];
            if lexicon.valence(&prev.lower).is_some() && !lexicon.is_booster(&prev.lower) {
                continue;
            }
            if let Some(incr) = lexicon.boosters.get(&prev.lower) {
                let mut scalar = incr * BOOSTER_DAMPING[back - 1];
                if valence < 0.0 {
                    scalar = -scalar;
                }
                if cap_differential && caps[j] {
                    scalar += CAPS_INCREMENT * scalar.signum();
                }
                valence += scalar;
            }
            if lexicon.is_negation(&prev.lower) {
                valence *= NEGATION_SCALAR;
            }
        }
        valences.push(valence);
    }

    // Contrastive "but": halve everything before it, amplify after.
    if let Some(but_idx) = tokens.iter().position(|t| t.lower == "but") {
        for (i, v) in valences.iter_mut().enumerate() {
            if i < but_idx {
                *v *= BUT_BEFORE;
            } else if i > but_idx {
                *v *= BUT_AFTER;
            }
        }
    }

    let mut sum: f64 = valences.iter().sum();
    if sum != 0.0 {
        let bangs = text
            .chars()
            .filter(|&c| c == '!')
            .count()
            .min(EXCLAMATION_CAP);
        sum += bangs as f64 * EXCLAMATION_INCREMENT * sum.signum();
    }
    let compound = normalize(sum);
    SentimentResult {
        compound,
        polarity: classify(compound),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lexicon() -> SentimentLexicon {
        let valences: BTreeMap<String, f64> = [
            ("great", 3.1),
            ("good", 1.9),
            ("bad", -2.5),
            ("dishonest", -2.7),
            ("terrible", -2.1),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
        let boosters: BTreeMap<String, f64> = [("very", 0.293), ("slightly", -0.293)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        let negations: BTreeSet<String> = ["not", "never", "cant"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        SentimentLexicon::from_parts(valences, boosters, negations)
    }

    #[test]
    fn empty_text_is_neutral_zero() {
        let r = score("", &lexicon());
        assert_eq!(r.compound, 0.0);
        assert_eq!(r.polarity, Polarity::Neutral);
    }

    #[test]
    fn positive_sentence() {
        let r = score("This app is great!", &lexicon());
        assert!(r.compound > 0.05, "compound {}", r.compound);
        assert_eq!(r.polarity, Polarity::Positive);
    }

    #[test]
    fn negative_sentence() {
        let r = score(
            "Dishonest subscription system that cant be unsubscribed from",
            &lexicon(),
        );
        assert!(r.compound < -0.05, "compound {}", r.compound);
        assert_eq!(r.polarity, Polarity::Negative);
    }

    #[test]
    fn negation_flips_sign() {
        let plain = score("good", &lexicon());
        let negated = score("not good", &lexicon());
        assert!(plain.compound > 0.0);
        assert!(negated.compound < 0.0);
    }

    #[test]
    fn booster_amplifies() {
        let plain = score("good", &lexicon());
        let boosted = score("very good", &lexicon());
        assert!(boosted.compound > plain.compound);
    }

    #[test]
    fn caps_amplify_in_mixed_case() {
        let plain = score("this is bad", &lexicon());
        let caps = score("this is BAD", &lexicon());
        assert!(caps.compound < plain.compound);
    }

    #[test]
    fn exclamations_cap_at_three() {
        let three = score("good!!!", &lexicon());
        let five = score("good!!!!!", &lexicon());
        assert_eq!(three.compound, five.compound);
        assert!(three.compound > score("good", &lexicon()).compound);
    }

    #[test]
    fn but_shifts_weight() {
        let r = score("good but terrible", &lexicon());
        // 1.9 * 0.5 - 2.1 * 1.5 < 0
        assert!(r.compound < 0.0);
    }

    #[test]
    fn classify_boundaries() {
        assert_eq!(classify(0.05), Polarity::Positive);
        assert_eq!(classify(0.049), Polarity::Neutral);
        assert_eq!(classify(-0.05), Polarity::Negative);
        assert_eq!(classify(-0.049), Polarity::Neutral);
        assert_eq!(classify(0.0), Polarity::Neutral);
        assert_eq!(classify(1.0), Polarity::Positive);
        assert_eq!(classify(-1.0), Polarity::Negative);
    }
}
