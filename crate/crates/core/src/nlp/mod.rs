//! Parsed sentences for requirement and comment text.
//!
//! Parses normally come from an external dependency parser as CoNLL-U. When
//! none is supplied, [`heuristic_parse`] produces a degraded parse whose only
//! relations are window pairs between nearby content words.

mod conllu;
mod heuristic;
pub mod lexicon;
mod sentence;

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

pub use conllu::{parse_conllu, write_conllu};
pub use heuristic::{heuristic_parse, WINDOW, WINDOW_RELATION};
pub use sentence::sentence_split;

use crate::model::PartName;

/// Universal POS tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Upos {
    Adj,
    Adp,
    Adv,
    Aux,
    Cconj,
    Det,
    Intj,
    Noun,
    Num,
    Part,
    Pron,
    Propn,
    Punct,
    Sconj,
    Sym,
    Verb,
    X,
}

impl Upos {
    const ALL: [Upos; 17] = [
        Upos::Adj,
        Upos::Adp,
        Upos::Adv,
        Upos::Aux,
        Upos::Cconj,
        Upos::Det,
        Upos::Intj,
        Upos::Noun,
        Upos::Num,
        Upos::Part,
        Upos::Pron,
        Upos::Propn,
        Upos::Punct,
        Upos::Sconj,
        Upos::Sym,
        Upos::Verb,
        Upos::X,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Upos::Adj => "ADJ",
            Upos::Adp => "ADP",
            Upos::Adv => "ADV",
            Upos::Aux => "AUX",
            Upos::Cconj => "CCONJ",
            Upos::Det => "DET",
            Upos::Intj => "INTJ",
            Upos::Noun => "NOUN",
            Upos::Num => "NUM",
            Upos::Part => "PART",
            Upos::Pron => "PRON",
            Upos::Propn => "PROPN",
            Upos::Punct => "PUNCT",
            Upos::Sconj => "SCONJ",
            Upos::Sym => "SYM",
            Upos::Verb => "VERB",
            Upos::X => "X",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Upos::ALL.into_iter().find(|u| u.as_str() == s)
    }

    /// Nouns, proper nouns, verbs and adjectives may form biterms.
    pub fn is_content(self) -> bool {
        matches!(self, Upos::Noun | Upos::Propn | Upos::Verb | Upos::Adj)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedToken {
    /// 1-based position in the sentence.
    pub index: usize,
    pub form: String,
    pub lemma: String,
    pub upos: Upos,
    /// Index of the governor, 0 for the root.
    pub head: usize,
    pub deprel: String,
}

/// Which artifact text a sentence was taken from.
///
/// Rendered as `req:<id>:<part>:<sentence>` or `cls:<id>:comment:<n>`, with
/// 1-based ordinals. Ids may themselves contain colons.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Locator {
    Requirement {
        id: String,
        part: PartName,
        sentence: usize,
    },
    Comment {
        class_id: String,
        comment: usize,
    },
}

impl Locator {
    pub fn owner(&self) -> &str {
        match self {
            Locator::Requirement { id, .. } => id,
            Locator::Comment { class_id, .. } => class_id,
        }
    }
}

impl fmt::Display for Locator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Locator::Requirement { id, part, sentence } => write!(f, "req:{id}:{part}:{sentence}"),
            Locator::Comment { class_id, comment } => write!(f, "cls:{class_id}:comment:{comment}"),
        }
    }
}

impl FromStr for Locator {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || alloc::format!("unresolvable sentence locator `{s}`");
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        let (head, ordinal) = rest.rsplit_once(':').ok_or_else(bad)?;
        let ordinal: usize = ordinal.parse().map_err(|_| bad())?;
        if ordinal == 0 {
            return Err(bad());
        }
        let (id, middle) = head.rsplit_once(':').ok_or_else(bad)?;
        if id.is_empty() {
            return Err(bad());
        }
        match kind {
            "req" => {
                let part = PartName::parse(middle).map_err(|_| bad())?;
                Ok(Locator::Requirement {
                    id: id.to_string(),
                    part,
                    sentence: ordinal,
                })
            }
            "cls" if middle == "comment" => Ok(Locator::Comment {
                class_id: id.to_string(),
                comment: ordinal,
            }),
            _ => Err(bad()),
        }
    }
}

/// How a sentence's relations were obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// Relations are the HEAD/DEPREL columns of a dependency parse.
    Dependency,
    /// Degraded mode: window pairs `(earlier, later)` of 1-based indices.
    Window(Vec<(usize, usize)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedSentence {
    pub tokens: Vec<ParsedToken>,
    pub locator: Option<Locator>,
    pub provenance: Provenance,
}

/// A directed relation between two tokens of a sentence.
#[derive(Debug, Clone, Copy)]
pub struct Relation<'a> {
    pub governor: &'a ParsedToken,
    pub dependent: &'a ParsedToken,
    pub label: &'a str,
}

impl ParsedSentence {
    pub fn is_degraded(&self) -> bool {
        matches!(self.provenance, Provenance::Window(_))
    }

    pub fn token(&self, index: usize) -> Option<&ParsedToken> {
        index.checked_sub(1).and_then(|i| self.tokens.get(i))
    }

    /// Every relation in the sentence; root attachments are skipped.
    pub fn relations(&self) -> Vec<Relation<'_>> {
        match &self.provenance {
            Provenance::Dependency => self
                .tokens
                .iter()
                .filter_map(|dep| {
                    let gov = self.token(dep.head)?;
                    Some(Relation {
                        governor: gov,
                        dependent: dep,
                        label: &dep.deprel,
                    })
                })
                .collect(),
            Provenance::Window(edges) => edges
                .iter()
                .filter_map(|&(g, d)| {
                    Some(Relation {
                        governor: self.token(g)?,
                        dependent: self.token(d)?,
                        label: WINDOW_RELATION,
                    })
                })
                .collect(),
        }
    }

    pub fn text(&self) -> String {
        let forms: Vec<&str> = self.tokens.iter().map(|t| t.form.as_str()).collect();
        forms.join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn locators_round_trip() {
        for s in [
            "req:UC35:sub_flow:2",
            "cls:edu.ncsu.EmailUtil:comment:1",
            "req:a:b:c:title:1",
        ] {
            let loc: Locator = s.parse().unwrap();
            assert_eq!(loc.to_string(), s);
        }
        let loc: Locator = "req:a:b:c:title:1".parse().unwrap();
        assert_eq!(loc.owner(), "a:b:c");
    }

    #[test]
    fn bad_locators() {
        for s in [
            "",
            "req:UC35",
            "req:UC35:nope:1",
            "cls:X:field:1",
            "req:UC35:title:0",
            "foo:x:title:1",
        ] {
            assert!(s.parse::<Locator>().is_err(), "{s}");
        }
    }
}
