//! Suffix-stripping stemmer for plural `-s`/`-es`, `-ing`, `-ed` and verb
//! agreement `-s`. Single-step stripping is repeated to a fixpoint, which
//! makes `stem` idempotent.

const MIN_STEM: usize = 3;

fn has_vowel(s: &str) -> bool {
    s.chars().any(|c| matches!(c, 'a' | 'e' | 'i' | 'o' | 'u' | 'y'))
}

fn acceptable(stem: &str) -> bool {
    stem.chars().count() >= MIN_STEM && has_vowel(stem)
}

/// `stopp` -> `stop`, but not for l, s or z which double in base forms.
fn undouble(stem: &str) -> String {
    let chars: Vec<char> = stem.chars().collect();
    let n = chars.len();
    if n >= 2
        && chars[n - 1] == chars[n - 2]
        && !matches!(chars[n - 1], 'l' | 's' | 'z' | 'a' | 'e' | 'i' | 'o' | 'u')
        && acceptable(&stem[..stem.len() - 1])
    {
        chars[..n - 1].iter().collect()
    } else {
        stem.to_string()
    }
}

fn step(word: &str) -> Option<String> {
    if let Some(base) = word.strip_suffix("ies") {
        let s = format!("{base}y");
        return acceptable(&s).then_some(s);
    }
    if let Some(base) = word.strip_suffix("ied") {
        let s = format!("{base}y");
        return acceptable(&s).then_some(s);
    }
    if let Some(base) = word.strip_suffix("sses") {
        return Some(format!("{base}ss"));
    }
    if let Some(base) = word.strip_suffix("es") {
        if ["s", "x", "z", "ch", "sh"].iter().any(|e| base.ends_with(e)) && acceptable(base) {
            return Some(base.to_string());
        }
    }
    if let Some(base) = word.strip_suffix("ing") {
        if acceptable(base) {
            return Some(undouble(base));
        }
        return None;
    }
    if let Some(base) = word.strip_suffix("ed") {
        if acceptable(base) {
            return Some(undouble(base));
        }
        return None;
    }
    if word.ends_with('s') && !["ss", "us", "is"].iter().any(|e| word.ends_with(e)) {
        let base = &word[..word.len() - 1];
        if acceptable(base) {
            return Some(base.to_string());
        }
    }
    None
}

/// Lowercases and strips inflectional suffixes, keeping at least three
/// characters. Non-alphabetic input is returned lowercased.
pub fn stem(word: &str) -> String {
    let mut current = word.to_lowercase();
    if !current.chars().all(|c| c.is_ascii_alphabetic()) {
        return current;
    }
    while let Some(next) = step(&current) {
        if next == current {
            break;
        }
        current = next;
    }
    current
}
