//! Snowball English (Porter2) stemmer, implemented from the published
//! algorithm definition.
//!
//! Suffix rules follow longest-match-wins semantics: within a step, the
//! longest textually matching suffix is selected first and its region
//! condition is then applied; a failed condition ends the step without
//! falling back to shorter suffixes.

use alloc::string::String;
use alloc::vec::Vec;

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u' | 'y')
}

/// Anything outside {vowels, w, x, Y}; the short-syllable test needs it.
fn blocks_short_syllable(c: char) -> bool {
    !is_vowel(c) && !matches!(c, 'w' | 'x' | 'Y')
}

fn is_double(a: char, b: char) -> bool {
    a == b && matches!(a, 'b' | 'd' | 'f' | 'g' | 'm' | 'n' | 'p' | 'r' | 't')
}

fn valid_li_ending(c: char) -> bool {
    matches!(c, 'c' | 'd' | 'e' | 'g' | 'h' | 'k' | 'm' | 'n' | 'r' | 't')
}

fn ends_with(w: &[char], suffix: &str) -> bool {
    let n = suffix.chars().count();
    w.len() >= n && w[w.len() - n..].iter().copied().eq(suffix.chars())
}

fn starts_with(w: &[char], prefix: &str) -> bool {
    let n = prefix.chars().count();
    w.len() >= n && w[..n].iter().copied().eq(prefix.chars())
}

/// Whole-word exceptional forms checked before the algorithm proper.
fn exception1(w: &[char]) -> Option<&'static str> {
    const TABLE: &[(&str, &str)] = &[
        ("skis", "ski"),
        ("skies", "sky"),
        ("dying", "die"),
        ("lying", "lie"),
        ("tying", "tie"),
        ("idly", "idl"),
        ("gently", "gentl"),
        ("ugly", "ugli"),
        ("early", "earli"),
        ("only", "onli"),
        ("singly", "singl"),
        ("sky", "sky"),
        ("news", "news"),
        ("howe", "howe"),
        ("atlas", "atlas"),
        ("cosmos", "cosmos"),
        ("bias", "bias"),
        ("andes", "andes"),
    ];
    TABLE
        .iter()
        .find(|(word, _)| w.len() == word.len() && w.iter().copied().eq(word.chars()))
        .map(|&(_, out)| out)
}

/// Words left invariant once step 1a has run.
fn exception2(w: &[char]) -> bool {
    const WORDS: &[&str] = &[
        "inning", "outing", "canning", "herring", "earring", "proceed", "exceed", "succeed",
    ];
    WORDS
        .iter()
        .any(|word| w.len() == word.len() && w.iter().copied().eq(word.chars()))
}

/// End of the region starting after the first non-vowel that follows a
/// vowel, scanning from `from`.
fn region_after(w: &[char], from: usize) -> usize {
    let n = w.len();
    let mut i = from;
    loop {
        if i >= n {
            return n;
        }
        if is_vowel(w[i]) {
            i += 1;
            break;
        }
        i += 1;
    }
    loop {
        if i >= n {
            return n;
        }
        if !is_vowel(w[i]) {
            return i + 1;
        }
        i += 1;
    }
}

fn mark_regions(w: &[char]) -> (usize, usize) {
    let p1 = ["gener", "commun", "arsen"]
        .iter()
        .find(|p| starts_with(w, p))
        .map(|p| p.len())
        .unwrap_or_else(|| region_after(w, 0));
    (p1, region_after(w, p1))
}

/// True when `w` ends in a short syllable: either non-vowel, vowel,
/// non-vowel other than w/x/Y, or a two-letter word of vowel then
/// non-vowel.
fn ends_short_syllable(w: &[char]) -> bool {
    let n = w.len();
    if n >= 3 && !is_vowel(w[n - 3]) && is_vowel(w[n - 2]) && blocks_short_syllable(w[n - 1]) {
        return true;
    }
    n == 2 && is_vowel(w[0]) && !is_vowel(w[1])
}

/// Suffix starts inside the region beginning at `p`.
fn in_region(w: &[char], suffix_len: usize, p: usize) -> bool {
    w.len() - suffix_len >= p
}

fn truncate(w: &mut Vec<char>, by: usize) {
    let keep = w.len() - by;
    w.truncate(keep);
}

fn replace(w: &mut Vec<char>, suffix_len: usize, with: &str) {
    truncate(w, suffix_len);
    w.extend(with.chars());
}

fn step_0(w: &mut Vec<char>) {
    for apo in ["'s'", "'s", "'"] {
        if ends_with(w, apo) {
            truncate(w, apo.len());
            return;
        }
    }
}

fn step_1a(w: &mut Vec<char>) {
    if ends_with(w, "sses") {
        truncate(w, 2);
        return;
    }
    if ends_with(w, "ied") || ends_with(w, "ies") {
        if w.len() > 4 {
            replace(w, 3, "i");
        } else {
            replace(w, 3, "ie");
        }
        return;
    }
    if ends_with(w, "ss") || ends_with(w, "us") {
        return;
    }
    if ends_with(w, "s") {
        // Delete when a vowel precedes the letter just before the s.
        let n = w.len();
        if n >= 3 && w[..n - 2].iter().any(|&c| is_vowel(c)) {
            truncate(w, 1);
        }
    }
}

fn step_1b(w: &mut Vec<char>, p1: usize) {
    for suffix in ["eedly", "eed"] {
        if ends_with(w, suffix) {
            if in_region(w, suffix.len(), p1) {
                replace(w, suffix.len(), "ee");
            }
            return;
        }
    }
    for suffix in ["ingly", "edly", "ing", "ed"] {
        if !ends_with(w, suffix) {
            continue;
        }
        let keep = w.len() - suffix.len();
        if !w[..keep].iter().any(|&c| is_vowel(c)) {
            return;
        }
        truncate(w, suffix.len());
        if ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz") {
            w.push('e');
        } else if w.len() >= 2 && is_double(w[w.len() - 2], w[w.len() - 1]) {
            w.pop();
        } else if p1 == w.len() && ends_short_syllable(w) {
            w.push('e');
        }
        return;
    }
}

fn step_1c(w: &mut [char]) {
    let n = w.len();
    if n > 2 && matches!(w[n - 1], 'y' | 'Y') && !is_vowel(w[n - 2]) {
        w[n - 1] = 'i';
    }
}

fn step_2(w: &mut Vec<char>, p1: usize) {
    // Ordered longest-first; textual match is decided before the region
    // check, with no retry on shorter suffixes.
    const RULES: &[(&str, &str)] = &[
        ("ization", "ize"),
        ("ational", "ate"),
        ("fulness", "ful"),
        ("ousness", "ous"),
        ("iveness", "ive"),
        ("tional", "tion"),
        ("biliti", "ble"),
        ("lessli", "less"),
        ("entli", "ent"),
        ("ation", "ate"),
        ("alism", "al"),
        ("aliti", "al"),
        ("ousli", "ous"),
        ("iviti", "ive"),
        ("fulli", "ful"),
        ("enci", "ence"),
        ("anci", "ance"),
        ("abli", "able"),
        ("izer", "ize"),
        ("ator", "ate"),
        ("alli", "al"),
        ("bli", "ble"),
        ("ogi", "og"),
        ("li", ""),
    ];
    for &(suffix, with) in RULES {
        if !ends_with(w, suffix) {
            continue;
        }
        if !in_region(w, suffix.len(), p1) {
            return;
        }
        let before = w.len() - suffix.len();
        match suffix {
            "ogi" => {
                if before >= 1 && w[before - 1] == 'l' {
                    replace(w, 3, "og");
                }
            }
            "li" => {
                if before >= 1 && valid_li_ending(w[before - 1]) {
                    truncate(w, 2);
                }
            }
            _ => replace(w, suffix.len(), with),
        }
        return;
    }
}

fn step_3(w: &mut Vec<char>, p1: usize, p2: usize) {
    const RULES: &[(&str, &str)] = &[
        ("ational", "ate"),
        ("tional", "tion"),
        ("alize", "al"),
        ("icate", "ic"),
        ("iciti", "ic"),
        ("ative", ""),
        ("ical", "ic"),
        ("ness", ""),
        ("ful", ""),
    ];
    for &(suffix, with) in RULES {
        if !ends_with(w, suffix) {
            continue;
        }
        if !in_region(w, suffix.len(), p1) {
            return;
        }
        if suffix == "ative" {
            if in_region(w, suffix.len(), p2) {
                truncate(w, 5);
            }
        } else {
            replace(w, suffix.len(), with);
        }
        return;
    }
}

fn step_4(w: &mut Vec<char>, p2: usize) {
    const SUFFIXES: &[&str] = &[
        "ement", "ance", "ence", "able", "ible", "ment", "ant", "ent", "ism", "ate", "iti",
        "ous", "ive", "ize", "ion", "al", "er", "ic",
    ];
    for &suffix in SUFFIXES {
        if !ends_with(w, suffix) {
            continue;
        }
        if !in_region(w, suffix.len(), p2) {
            return;
        }
        if suffix == "ion" {
            let before = w.len() - 3;
            if before >= 1 && matches!(w[before - 1], 's' | 't') {
                truncate(w, 3);
            }
        } else {
            truncate(w, suffix.len());
        }
        return;
    }
}

fn step_5(w: &mut Vec<char>, p1: usize, p2: usize) {
    let n = w.len();
    if n == 0 {
        return;
    }
    if w[n - 1] == 'e' {
        if in_region(w, 1, p2) || (in_region(w, 1, p1) && !ends_short_syllable(&w[..n - 1])) {
            w.pop();
        }
    } else if w[n - 1] == 'l' && in_region(w, 1, p2) && n >= 2 && w[n - 2] == 'l' {
        w.pop();
    }
}

/// Stem one lowercase word with the Snowball English algorithm.
pub fn stem(word: &str) -> String {
    let mut w: Vec<char> = word.chars().collect();
    if let Some(exceptional) = exception1(&w) {
        return String::from(exceptional);
    }
    if w.len() <= 2 {
        return w.into_iter().collect();
    }
    if w[0] == '\'' {
        w.remove(0);
    }
    // Mark consonant-y as Y so the groupings can tell the two roles apart.
    let mut y_found = false;
    if !w.is_empty() && w[0] == 'y' {
        w[0] = 'Y';
        y_found = true;
    }
    for i in 1..w.len() {
        if w[i] == 'y' && is_vowel(w[i - 1]) {
            w[i] = 'Y';
            y_found = true;
        }
    }
    let (p1, p2) = mark_regions(&w);
    step_0(&mut w);
    step_1a(&mut w);
    if !exception2(&w) {
        step_1b(&mut w, p1);
        step_1c(&mut w);
        step_2(&mut w, p1);
        step_3(&mut w, p1, p2);
        step_4(&mut w, p2);
        step_5(&mut w, p1, p2);
    }
    if y_found {
        for c in w.iter_mut() {
            if *c == 'Y' {
                *c = 'y';
            }
        }
    }
    w.into_iter().collect()
}
