use alloc::string::String;
use alloc::vec::Vec;

use super::{porter_stem, split_identifier, StopWords};
use crate::nlp::lexicon;

/// A normalized corpus term.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub surface: String,
    /// Lowercased, and stemmed unless the surface is an abbreviation.
    pub normalized: String,
    pub is_abbreviation: bool,
}

/// Domain abbreviations such as `LHCP`: two to six ASCII capitals that do not
/// spell a common English word.
pub fn is_abbreviation(token: &str) -> bool {
    let len = token.len();
    if !(2..=6).contains(&len) || !token.bytes().all(|b| b.is_ascii_uppercase()) {
        return false;
    }
    let lower = token.to_ascii_lowercase();
    !StopWords::english().contains(&lower) && !lexicon::is_common_word(&lower)
}

fn strip_non_alphanumeric(token: &str) -> String {
    token.chars().filter(|c| c.is_alphanumeric()).collect()
}

fn finish(surface: &str, base: &str) -> Option<Term> {
    let stripped = strip_non_alphanumeric(surface);
    if stripped.is_empty() {
        return None;
    }
    let abbreviation = is_abbreviation(&stripped);
    let base = if abbreviation {
        stripped.clone()
    } else {
        strip_non_alphanumeric(base)
    };
    let lower = base.to_lowercase();
    if lower.chars().count() < 2 || lower.chars().all(|c| c.is_numeric()) {
        return None;
    }
    let normalized = if abbreviation { lower } else { porter_stem(&lower) };
    Some(Term {
        surface: stripped,
        normalized,
        is_abbreviation: abbreviation,
    })
}

/// Normalizes a biterm constituent. The stop list is not applied; `lemma`,
/// when given, replaces the surface form before stemming.
pub fn normalize_term(surface: &str, lemma: Option<&str>) -> Option<Term> {
    let base = match lemma {
        Some(l) if !l.is_empty() && l != "_" => l,
        _ => surface,
    };
    finish(surface, base)
}

/// Unigram normalization: strip punctuation, mark abbreviations, lowercase,
/// drop stop words, single characters and numbers, then stem.
pub fn normalize_tokens<S: AsRef<str>>(tokens: &[S], stop: &StopWords) -> Vec<Term> {
    tokens
        .iter()
        .filter_map(|t| {
            let t = t.as_ref();
            let lower = strip_non_alphanumeric(t).to_lowercase();
            if stop.contains(&lower) {
                return None;
            }
            let term = finish(t, t)?;
            (!stop.contains(&term.normalized)).then_some(term)
        })
        .collect()
}

/// Splits free text or identifiers into raw tokens: whitespace and
/// punctuation separate words, and each word is split like an identifier.
pub fn tokenize(text: &str) -> Vec<&str> {
    text.split(|c: char| !c.is_alphanumeric() && c != '_' && c != '$')
        .filter(|w| !w.is_empty())
        .flat_map(split_identifier)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn norm(tokens: &[&str]) -> Vec<String> {
        normalize_tokens(tokens, &StopWords::default())
            .into_iter()
            .map(|t| t.normalized)
            .collect()
    }

    #[test]
    fn fake_email_sentence() {
        let terms = normalize_tokens(
            &["A", "fake", "email", "is", "sent", "to", "LHCP"],
            &StopWords::default(),
        );
        let got: Vec<(&str, bool)> = terms
            .iter()
            .map(|t| (t.normalized.as_str(), t.is_abbreviation))
            .collect();
        assert_eq!(
            got,
            vec![("fake", false), ("email", false), ("sent", false), ("lhcp", true)]
        );
    }

    #[test]
    fn stop_words_removed_in_any_case() {
        assert!(norm(&["the", "THE"]).is_empty());
    }

    #[test]
    fn abbreviations_are_not_stemmed() {
        assert_eq!(norm(&["XML", "processing"]), ["xml", "process"]);
        assert_eq!(norm(&["PHRS"]), ["phrs"]);
        // stemmed when not an abbreviation
        assert_eq!(norm(&["phrs"]), ["phr"]);
    }

    // Labeled abbreviation detector cases.
    #[test]
    fn abbreviation_detector() {
        for (tok, expected) in [
            ("LHCP", true),
            ("XML", true),
            ("HTTP", true),
            ("PHR", true),
            ("ID", true),
            ("UC", true),
            ("THE", false),
            ("AND", false),
            ("SEND", false),
            ("EMAIL", false),
            ("Email", false),
            ("A", false),
            ("ABCDEFG", false),
            ("X1", false),
            ("lhcp", false),
        ] {
            assert_eq!(is_abbreviation(tok), expected, "{tok}");
        }
    }

    #[test]
    fn numbers_and_punctuation_dropped() {
        assert_eq!(norm(&["42", "...", "x", "3.5"]), Vec::<String>::new());
        assert_eq!(
            tokenize("S1: A fake-email, sent."),
            ["S", "1", "A", "fake", "email", "sent"]
        );
    }

    #[test]
    fn lemma_drives_requirement_terms() {
        let t = normalize_term("sent", Some("send")).unwrap();
        assert_eq!(t.normalized, "send");
        let t = normalize_term("LHCP", Some("lhcp")).unwrap();
        assert_eq!((t.normalized.as_str(), t.is_abbreviation), ("lhcp", true));
        assert!(normalize_term("a", None).is_none());
        assert!(normalize_term("2024", None).is_none());
    }

    proptest::proptest! {
        #[test]
        fn never_emits_stop_words(words in proptest::collection::vec("[A-Za-z]{1,9}", 0..20)) {
            let stop = StopWords::default();
            for term in normalize_tokens(&words, &stop) {
                proptest::prop_assert!(!stop.contains(&term.normalized));
                proptest::prop_assert!(!term.normalized.is_empty());
            }
        }
    }
}
