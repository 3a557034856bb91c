use alloc::string::ToString;
use alloc::vec::Vec;

use super::lexicon::tag_word;
use super::{sentence_split, ParsedSentence, ParsedToken, Provenance, Upos};

/// Number of following content words each content word is paired with.
pub const WINDOW: usize = 2;

/// Relation label carried by window pairs.
pub const WINDOW_RELATION: &str = "win";

fn words(sentence: &str) -> impl Iterator<Item = &str> {
    sentence
        .split_whitespace()
        .map(|w| w.trim_matches(|c: char| !c.is_alphanumeric()))
        .filter(|w| !w.is_empty())
}

fn content_class(upos: Upos) -> bool {
    matches!(upos, Upos::Noun | Upos::Propn | Upos::Verb | Upos::Adj)
}

/// Dependency-free fallback parse.
///
/// Tokens are tagged from the lexicon and suffix rules; lemma equals form and
/// no heads are assigned. Each content word is related to the next
/// [`WINDOW`] content words of its sentence. Sentences carry no locator.
pub fn heuristic_parse(text: &str) -> Vec<ParsedSentence> {
    sentence_split(text)
        .into_iter()
        .filter_map(|sentence| {
            let tokens: Vec<ParsedToken> = words(sentence)
                .enumerate()
                .map(|(i, w)| ParsedToken {
                    index: i + 1,
                    form: w.to_string(),
                    lemma: w.to_string(),
                    upos: tag_word(w),
                    head: 0,
                    deprel: "_".to_string(),
                })
                .collect();
            if tokens.is_empty() {
                return None;
            }
            let content: Vec<usize> = tokens
                .iter()
                .filter(|t| content_class(t.upos))
                .map(|t| t.index)
                .collect();
            let mut edges = Vec::new();
            for (i, &gov) in content.iter().enumerate() {
                for &dep in content.iter().skip(i + 1).take(WINDOW) {
                    edges.push((gov, dep));
                }
            }
            Some(ParsedSentence {
                tokens,
                locator: None,
                provenance: Provenance::Window(edges),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn pairs(text: &str) -> Vec<(alloc::string::String, alloc::string::String)> {
        heuristic_parse(text)
            .iter()
            .flat_map(|s| {
                s.relations()
                    .into_iter()
                    .map(|r| (r.governor.form.clone(), r.dependent.form.clone()))
                    .collect::<Vec<_>>()
            })
            .collect()
    }

    #[test]
    fn window_of_two_over_three_content_words() {
        assert_eq!(
            pairs("send fake email"),
            vec![
                ("send".into(), "fake".into()),
                ("send".into(), "email".into()),
                ("fake".into(), "email".into())
            ]
        );
    }

    #[test]
    fn empty_text() {
        assert!(heuristic_parse("").is_empty());
    }

    #[test]
    fn function_words_are_never_endpoints() {
        let parsed = heuristic_parse("A fake email is sent to the LHCP by the system.");
        assert!(parsed[0].is_degraded());
        for s in &parsed {
            for r in s.relations() {
                assert!(r.governor.upos.is_content() && r.dependent.upos.is_content());
                assert_eq!(r.label, WINDOW_RELATION);
            }
        }
        let p = pairs("A fake email is sent to the LHCP.");
        assert!(p.contains(&("fake".into(), "email".into())));
        assert!(p.contains(&("sent".into(), "LHCP".into())));
        // window stops after two content words
        assert!(!p.contains(&("fake".into(), "LHCP".into())));
    }
}
