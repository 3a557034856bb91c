//! Biterm extraction, canonicalization and crosscheck.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::model::{CodeClassFacts, CodeSlot, PartName, RequirementDoc};
use crate::nlp::{Locator, ParsedSentence, Provenance, Upos, WINDOW_RELATION};
use crate::text::{normalize_term, split_identifier, Term};
use crate::{Error, Result};

/// Separator of the synthetic index token for a biterm.
pub const TOKEN_SEPARATOR: &str = "__";

/// An unordered pair of distinct normalized terms, stored with `a < b`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Biterm {
    pub a: String,
    pub b: String,
}

impl Biterm {
    /// Orders two normalized terms; `None` when they are equal or empty.
    pub fn new(x: &str, y: &str) -> Option<Self> {
        if x.is_empty() || y.is_empty() || x == y {
            return None;
        }
        let (a, b) = if x < y { (x, y) } else { (y, x) };
        Some(Biterm {
            a: a.to_string(),
            b: b.to_string(),
        })
    }

    pub fn canonicalize(t1: &Term, t2: &Term) -> Option<Self> {
        Self::new(&t1.normalized, &t2.normalized)
    }

    /// The synthetic index token `a__b`.
    pub fn token(&self) -> String {
        alloc::format!("{}{TOKEN_SEPARATOR}{}", self.a, self.b)
    }
}

impl fmt::Display for Biterm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Where a biterm occurrence was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Part(PartName),
    Code(CodeSlot),
}

impl Slot {
    pub fn as_str(self) -> &'static str {
        match self {
            Slot::Part(p) => p.as_str(),
            Slot::Code(c) => c.as_str(),
        }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Candidate biterms of one artifact with per-slot occurrence counts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BitermProfile {
    pub owner: String,
    pub counts: BTreeMap<Biterm, BTreeMap<Slot, usize>>,
}

impl BitermProfile {
    pub fn new(owner: impl Into<String>) -> Self {
        BitermProfile {
            owner: owner.into(),
            counts: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, biterm: Biterm, slot: Slot, n: usize) {
        if n == 0 {
            return;
        }
        *self.counts.entry(biterm).or_default().entry(slot).or_insert(0) += n;
    }

    pub fn count(&self, biterm: &Biterm, slot: Slot) -> usize {
        self.counts.get(biterm).and_then(|m| m.get(&slot)).copied().unwrap_or(0)
    }

    /// Occurrences of `biterm` across all slots.
    pub fn total(&self, biterm: &Biterm) -> usize {
        self.counts.get(biterm).map_or(0, |m| m.values().sum())
    }

    pub fn biterms(&self) -> impl Iterator<Item = &Biterm> {
        self.counts.keys()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// `(slot, biterm, count)` rows in biterm then slot order.
    pub fn rows(&self) -> impl Iterator<Item = (Slot, &Biterm, usize)> {
        self.counts
            .iter()
            .flat_map(|(b, slots)| slots.iter().map(move |(s, n)| (*s, b, *n)))
    }
}

/// Dependency relations that qualify a word pair as a biterm.
///
/// A label matches when it is listed verbatim or when its base before the
/// first `:` is listed, so `obl` admits `obl:tmod`. Window pairs from the
/// heuristic parser are always admitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSet {
    labels: BTreeSet<String>,
}

impl RelationSet {
    pub const DEFAULT: [&'static str; 10] = [
        "nsubj",
        "nsubj:pass",
        "obj",
        "iobj",
        "obl",
        "amod",
        "compound",
        "nmod",
        "acl",
        "xcomp",
    ];

    pub fn new<S: AsRef<str>>(labels: impl IntoIterator<Item = S>) -> Self {
        RelationSet {
            labels: labels
                .into_iter()
                .map(|s| s.as_ref().trim().to_string())
                .filter(|s| !s.is_empty())
                .collect(),
        }
    }

    pub fn accepts(&self, label: &str) -> bool {
        if self.labels.contains(label) {
            return true;
        }
        match label.split_once(':') {
            Some((base, _)) => self.labels.contains(base),
            None => false,
        }
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.labels.iter().map(String::as_str)
    }
}

impl Default for RelationSet {
    fn default() -> Self {
        Self::new(Self::DEFAULT)
    }
}

fn sentence_biterms(sentence: &ParsedSentence, relations: &RelationSet) -> Vec<Biterm> {
    let degraded = matches!(sentence.provenance, Provenance::Window(_));
    sentence
        .relations()
        .into_iter()
        .filter(|r| {
            if degraded {
                r.label == WINDOW_RELATION
            } else {
                relations.accepts(r.label)
            }
        })
        .filter(|r| content(r.governor.upos) && content(r.dependent.upos))
        .filter_map(|r| {
            let g = normalize_term(&r.governor.form, Some(&r.governor.lemma))?;
            let d = normalize_term(&r.dependent.form, Some(&r.dependent.lemma))?;
            Biterm::canonicalize(&g, &d)
        })
        .collect()
}

fn content(upos: Upos) -> bool {
    upos.is_content()
}

/// Biterms of a requirement from its parsed sentences, bucketed by part.
///
/// Every sentence must carry a requirement locator naming `req` and one of
/// its kind's parts.
pub fn extract_req_biterms(
    req: &RequirementDoc,
    parsed: &[ParsedSentence],
    relations: &RelationSet,
) -> Result<BitermProfile> {
    let mut profile = BitermProfile::new(req.id.clone());
    for sentence in parsed {
        let part = match &sentence.locator {
            Some(Locator::Requirement { id, part, .. }) if *id == req.id => *part,
            other => {
                return Err(Error::LocatorMismatch {
                    expected: req.id.clone(),
                    found: other.as_ref().map_or_else(|| "<none>".to_string(), ToString::to_string),
                })
            }
        };
        if !req.kind.admits(part) {
            return Err(Error::InadmissiblePart {
                requirement: req.id.clone(),
                part: part.as_str(),
                kind: req.kind.as_str(),
                valid: req.kind.parts().iter().map(|p| p.as_str()).collect(),
            });
        }
        for b in sentence_biterms(sentence, relations) {
            profile.add(b, Slot::Part(part), 1);
        }
    }
    Ok(profile)
}

/// All position pairs `i < j` of an identifier's normalized fragments.
pub fn identifier_biterms(identifier: &str) -> Vec<Biterm> {
    let terms: Vec<Term> = split_identifier(identifier)
        .into_iter()
        .filter_map(|f| normalize_term(f, None))
        .collect();
    let mut out = Vec::new();
    for i in 0..terms.len() {
        for j in i + 1..terms.len() {
            if let Some(b) = Biterm::canonicalize(&terms[i], &terms[j]) {
                out.push(b);
            }
        }
    }
    out
}

/// Biterms of a class from its identifiers and parsed comments.
///
/// Comment sentences must carry comment locators naming `cls`.
pub fn extract_code_biterms(
    cls: &CodeClassFacts,
    comment_parses: &[ParsedSentence],
    relations: &RelationSet,
) -> Result<BitermProfile> {
    let mut profile = BitermProfile::new(cls.id.clone());
    for slot in CodeSlot::IDENTIFIERS {
        for identifier in cls.slot(slot) {
            for b in identifier_biterms(identifier) {
                profile.add(b, Slot::Code(slot), 1);
            }
        }
    }
    for sentence in comment_parses {
        match &sentence.locator {
            Some(Locator::Comment { class_id, .. }) if *class_id == cls.id => {}
            other => {
                return Err(Error::LocatorMismatch {
                    expected: cls.id.clone(),
                    found: other.as_ref().map_or_else(|| "<none>".to_string(), ToString::to_string),
                })
            }
        }
        for b in sentence_biterms(sentence, relations) {
            profile.add(b, Slot::Code(CodeSlot::Comment), 1);
        }
    }
    Ok(profile)
}

/// Biterms found on both sides of the corpus.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConsensualBitermSet {
    pub biterms: BTreeSet<Biterm>,
}

impl ConsensualBitermSet {
    pub fn contains(&self, b: &Biterm) -> bool {
        self.biterms.contains(b)
    }

    pub fn len(&self) -> usize {
        self.biterms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.biterms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Biterm> {
        self.biterms.iter()
    }
}

/// Intersection of the corpus-wide requirement and code biterm unions.
pub fn crosscheck(req_profiles: &[BitermProfile], code_profiles: &[BitermProfile]) -> ConsensualBitermSet {
    let req: BTreeSet<&Biterm> = req_profiles.iter().flat_map(|p| p.biterms()).collect();
    let biterms = code_profiles
        .iter()
        .flat_map(|p| p.biterms())
        .filter(|b| req.contains(b))
        .cloned()
        .collect();
    ConsensualBitermSet { biterms }
}
