//! Property tests for the module contracts, checked against
//! independent oracles where one exists.

use proptest::prelude::*;
use revalues_core::features::{match_features_in_review, AppFeature};
use revalues_core::sentiment::{classify, score, Polarity, SentimentLexicon};
use revalues_core::textprep::{
    correct_spelling, levenshtein, preprocess, tokenize, FrequencyList,
};
use revalues_core::values::{match_values, Category, DictionaryEntry, ValuesDictionary};
use std::collections::{BTreeMap, BTreeSet};

/// Full-matrix edit distance, kept deliberately separate from the
/// implementation's rolling-row version.
#[allow(clippy::needless_range_loop)]
fn levenshtein_oracle(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut dp = vec![vec![0usize; b.len() + 1]; a.len() + 1];
    for (i, row) in dp.iter_mut().enumerate() {
        row[0] = i;
    }
    for j in 0..=b.len() {
        dp[0][j] = j;
    }
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            let cost = usize::from(a[i - 1] != b[j - 1]);
            dp[i][j] = (dp[i - 1][j] + 1)
                .min(dp[i][j - 1] + 1)
                .min(dp[i - 1][j - 1] + cost);
        }
    }
    dp[a.len()][b.len()]
}

fn word_strategy() -> impl Strategy<Value = String> {
    "[a-d]{0,12}"
}

proptest! {
    #[test]
    fn levenshtein_matches_dp_oracle(a in word_strategy(), b in word_strategy()) {
        prop_assert_eq!(levenshtein(&a, &b), levenshtein_oracle(&a, &b));
    }

    #[test]
    fn levenshtein_metric_axioms(a in word_strategy(), b in word_strategy(), c in word_strategy()) {
        let dab = levenshtein(&a, &b);
        let dba = levenshtein(&b, &a);
        let dac = levenshtein(&a, &c);
        let dcb = levenshtein(&c, &b);
        prop_assert_eq!(dab, dba);
        prop_assert_eq!(dab == 0, a == b);
        prop_assert!(dab <= dac + dcb, "triangle inequality violated");
    }
}

fn small_frequency_list() -> FrequencyList {
    let mut f = FrequencyList::default();
    for (i, w) in [
        "app", "good", "great", "parking", "pay", "payment", "pretty", "share", "useless",
        "update", "account", "crash", "help", "helpful", "login", "screen",
    ]
    .iter()
    .enumerate()
    {
        f.insert(w, 1000 - i as u64 * 7);
    }
    f
}

proptest! {
    #[test]
    fn spell_correction_preserves_count_and_stays_within_distance_two(
        text in "[a-z !.]{0,40}",
    ) {
        let freq = small_frequency_list();
        let tokens = tokenize(&text);
        let corrected = correct_spelling(&tokens, &freq);
        prop_assert_eq!(tokens.len(), corrected.len());
        for (before, after) in tokens.iter().zip(&corrected) {
            prop_assert_eq!(before.position, after.position);
            if before.surface != after.surface {
                prop_assert!(freq.contains(&after.surface));
                prop_assert!(levenshtein(&before.surface, &after.surface) <= 2);
            }
        }
    }

    #[test]
    fn in_vocabulary_words_never_altered(idx in 0usize..16, noise in "[a-z]{0,6}") {
        let freq = small_frequency_list();
        let word = freq.words().nth(idx).unwrap().to_string();
        let text = format!("{noise} {word}");
        let tokens = tokenize(&text);
        let corrected = correct_spelling(&tokens, &freq);
        let last = corrected.last().unwrap();
        prop_assert_eq!(&last.surface, &word);
    }
}

proptest! {
    /// classify partitions [-1, 1]: exactly one class everywhere.
    #[test]
    fn classify_is_a_partition(millis in -1000i32..=1000) {
        let x = millis as f64 / 1000.0;
        let classes = [
            (x >= 0.05, Polarity::Positive),
            (x > -0.05 && x < 0.05, Polarity::Neutral),
            (x <= -0.05, Polarity::Negative),
        ];
        let hits: Vec<Polarity> = classes
            .iter()
            .filter(|(cond, _)| *cond)
            .map(|&(_, p)| p)
            .collect();
        prop_assert_eq!(hits.len(), 1, "x = {} hit {:?}", x, hits);
        prop_assert_eq!(hits[0], classify(x));
    }
}

/// Lexicon of plain words with no boosters or negations, so the
/// heuristic-free scoring path is exercised.
fn plain_lexicon() -> SentimentLexicon {
    let valences: BTreeMap<String, f64> = [
        ("alpha", 1.5),
        ("beta", -2.0),
        ("gamma", 0.5),
        ("delta", -0.75),
        ("epsilon", 3.0),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect();
    SentimentLexicon::from_parts(valences, BTreeMap::new(), BTreeSet::new())
}

proptest! {
    /// Negating every valence negates the compound exactly
    /// (heuristic-free path: no boosters, negations, caps, or `!`).
    #[test]
    fn compound_is_odd_under_lexicon_negation(
        words in proptest::collection::vec(
            prop_oneof![
                Just("alpha"), Just("beta"), Just("gamma"),
                Just("delta"), Just("epsilon"), Just("filler"),
            ],
            0..12,
        ),
    ) {
        let text = words.join(" ");
        let lex = plain_lexicon();
        let pos = score(&text, &lex);
        let neg = score(&text, &lex.negated());
        prop_assert_eq!(pos.compound, -neg.compound);
    }

    /// Larger raw sums produce strictly larger compounds.
    #[test]
    fn normalization_is_monotonic(shorter in 1usize..20, extra in 1usize..10) {
        let lex = plain_lexicon();
        let text_a = vec!["alpha"; shorter].join(" ");
        let text_b = vec!["alpha"; shorter + extra].join(" ");
        let a = score(&text_a, &lex).compound;
        let b = score(&text_b, &lex).compound;
        prop_assert!(a < b, "sum {} -> {}, sum {} -> {}", shorter, a, shorter + extra, b);
    }
}

fn test_dictionary() -> ValuesDictionary {
    let mut entries = Vec::new();
    for (category, count) in Category::EXPECTED_ITEM_COUNTS {
        for k in 0..count {
            let name = format!("{}item{}", category.name().to_lowercase(), k);
            // A couple of items share keywords on purpose.
            let keywords = match (category, k) {
                (Category::Benevolence, 0) => vec!["useless", "help"],
                (Category::SelfDirection, 0) => vec!["confined", "help"],
                _ => vec![Box::leak(format!("kw{}{}", category.name().to_lowercase(), k).into_boxed_str()) as &str],
            };
            entries.push(DictionaryEntry {
                category: category.name().to_string(),
                item: name,
                synonyms: keywords.iter().map(|s| s.to_string()).collect(),
                antonyms: vec![],
            });
        }
    }
    ValuesDictionary::from_entries(entries).unwrap()
}

proptest! {
    /// tv recomputed by brute-force membership reproduces match_values.
    #[test]
    fn match_values_agrees_with_brute_force(
        stems in proptest::collection::vec(
            prop_oneof![
                Just("useless".to_string()), Just("help".to_string()),
                Just("confined".to_string()), Just("noise".to_string()),
                Just("kwpower0".to_string()), Just("other".to_string()),
            ],
            0..30,
        ),
    ) {
        let dict = test_dictionary();
        let matches = match_values(&stems, &dict);
        for item in dict.items() {
            let tv_brute = stems
                .iter()
                .filter(|s| item.keywords().any(|(kw, _)| kw == s.as_str()))
                .count();
            let reported = matches.iter().find(|m| m.item.name == item.name);
            match reported {
                Some(m) => {
                    prop_assert_eq!(m.tv, tv_brute);
                    prop_assert_eq!(m.tr, stems.len());
                    prop_assert_eq!(m.probability, tv_brute as f64 / stems.len() as f64);
                }
                None => prop_assert_eq!(tv_brute, 0),
            }
        }
    }

    /// tv depends only on the stem multiset, not the order.
    #[test]
    fn match_values_is_order_invariant(
        stems in proptest::collection::vec(
            prop_oneof![
                Just("useless".to_string()), Just("help".to_string()),
                Just("noise".to_string()),
            ],
            1..20,
        ),
        seed in 0u64..1000,
    ) {
        let dict = test_dictionary();
        let forward = match_values(&stems, &dict);
        let mut shuffled = stems.clone();
        // Cheap deterministic shuffle.
        let mut state = seed.wrapping_add(1);
        for i in (1..shuffled.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (state >> 33) as usize % (i + 1);
            shuffled.swap(i, j);
        }
        let back = match_values(&shuffled, &dict);
        let summary = |ms: &[revalues_core::values::ValueMatch]| -> Vec<(String, usize, usize)> {
            ms.iter().map(|m| (m.item.name.clone(), m.tv, m.tr)).collect()
        };
        prop_assert_eq!(summary(&forward), summary(&back));
    }
}

/// Brute-force all-window scan the implementation must agree with.
fn window_match_oracle(feature_stems: &[String], review_stems: &[String], width: usize) -> bool {
    if feature_stems.is_empty() || review_stems.len() < feature_stems.len() {
        return false;
    }
    let width = width.min(review_stems.len());
    (0..=review_stems.len() - width).any(|start| {
        let window = &review_stems[start..start + width];
        let mut pool: Vec<&str> = window.iter().map(String::as_str).collect();
        feature_stems.iter().all(|needed| {
            if let Some(pos) = pool.iter().position(|s| s == needed) {
                pool.swap_remove(pos);
                true
            } else {
                false
            }
        })
    })
}

proptest! {
    #[test]
    fn feature_window_matching_agrees_with_brute_force(
        feature_stems in proptest::collection::vec(
            prop_oneof![Just("a".to_string()), Just("b".to_string()), Just("c".to_string())],
            1..4,
        ),
        review_stems in proptest::collection::vec(
            prop_oneof![
                Just("a".to_string()), Just("b".to_string()),
                Just("c".to_string()), Just("x".to_string()),
            ],
            0..15,
        ),
    ) {
        let feature = AppFeature {
            tokens: feature_stems.clone(),
            stems: feature_stems.clone(),
            source_app: "app".to_string(),
            source_pattern: "NOUN NOUN".to_string(),
        };
        let got = match_features_in_review(&[feature], &review_stems).len() == 1;
        let want = window_match_oracle(&feature_stems, &review_stems, 5);
        prop_assert_eq!(got, want);
    }
}

proptest! {
    /// Byte-identical output for identical input.
    #[test]
    fn preprocess_is_deterministic(text in "[ -~]{0,60}") {
        let freq = small_frequency_list();
        let stop: BTreeSet<String> = ["the", "is", "a"].iter().map(|s| s.to_string()).collect();
        let first = preprocess(&text, &freq, &stop);
        let second = preprocess(&text, &freq, &stop);
        prop_assert_eq!(first, second);
    }

    /// Content stems are exactly the stems of the stopword-filtered,
    /// spell-corrected word tokens, recomputed here step by step.
    #[test]
    fn content_stems_match_manual_chain(text in "[a-zA-Z !.]{0,60}") {
        let freq = small_frequency_list();
        let stop: BTreeSet<String> = ["the", "is", "a"].iter().map(|s| s.to_string()).collect();
        let out = preprocess(&text, &freq, &stop);
        let corrected = correct_spelling(&tokenize(&text), &freq);
        let manual: Vec<String> = corrected
            .iter()
            .filter(|t| t.is_word() && !stop.contains(&t.surface))
            .map(|t| revalues_core::textprep::stem(&t.surface))
            .collect();
        prop_assert_eq!(out.content_stems, manual);
    }
}
