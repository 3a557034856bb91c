//! Enriched documents: unigram counts plus consensual biterm counts.

use alloc::collections::BTreeMap;
use alloc::string::String;

use crate::biterm::{Biterm, BitermProfile, ConsensualBitermSet, Slot};
use crate::model::{CodeClassFacts, CodeSlot, PartName, RequirementDoc, RequirementKind};
use crate::text::{normalize_tokens, tokenize, StopWords};

/// Which side of the trace relation a document belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Requirement(RequirementKind),
    Code,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnrichedDocument {
    pub owner: String,
    pub side: Side,
    pub unigram_counts: BTreeMap<String, usize>,
    pub biterm_counts: BTreeMap<Biterm, usize>,
    /// Requirement side only; sums to `biterm_counts` over parts.
    pub part_biterm_counts: BTreeMap<PartName, BTreeMap<Biterm, usize>>,
}

impl EnrichedDocument {
    pub fn is_requirement(&self) -> bool {
        matches!(self.side, Side::Requirement(_))
    }

    /// Index tokens with counts: unigrams, plus synthetic biterm tokens when
    /// `with_biterms` is set.
    pub fn token_counts(&self, with_biterms: bool) -> BTreeMap<String, usize> {
        let mut out = self.unigram_counts.clone();
        if with_biterms {
            for (b, n) in &self.biterm_counts {
                *out.entry(b.token()).or_insert(0) += n;
            }
        }
        out
    }

    pub fn part_biterms(&self, part: PartName) -> Option<&BTreeMap<Biterm, usize>> {
        self.part_biterm_counts.get(&part)
    }
}

fn count_text(text: &str, stop: &StopWords, into: &mut BTreeMap<String, usize>) {
    for term in normalize_tokens(&tokenize(text), stop) {
        *into.entry(term.normalized).or_insert(0) += 1;
    }
}

/// Unigram counts over every part of a requirement.
pub fn requirement_unigrams(req: &RequirementDoc, stop: &StopWords) -> BTreeMap<String, usize> {
    let mut counts = BTreeMap::new();
    for text in req.parts.values() {
        count_text(text, stop, &mut counts);
    }
    counts
}

/// Unigram counts over class, method and field identifiers and comments.
/// Invoked methods and parameters are left out.
pub fn class_unigrams(cls: &CodeClassFacts, stop: &StopWords) -> BTreeMap<String, usize> {
    let mut counts = BTreeMap::new();
    for slot in [
        CodeSlot::ClassName,
        CodeSlot::MethodName,
        CodeSlot::FieldDecl,
        CodeSlot::Comment,
    ] {
        for text in cls.slot(slot) {
            count_text(text, stop, &mut counts);
        }
    }
    counts
}

/// Requirement document with part-wise consensual biterm counts summed into
/// totals. Precondition occurrences count toward the total.
pub fn enrich_requirement(
    profile: &BitermProfile,
    cons: &ConsensualBitermSet,
    req: &RequirementDoc,
    stop: &StopWords,
) -> EnrichedDocument {
    let mut biterm_counts = BTreeMap::new();
    let mut part_biterm_counts: BTreeMap<PartName, BTreeMap<Biterm, usize>> = BTreeMap::new();
    for (slot, b, n) in profile.rows() {
        let Slot::Part(part) = slot else { continue };
        if !cons.contains(b) {
            continue;
        }
        *biterm_counts.entry(b.clone()).or_insert(0) += n;
        *part_biterm_counts
            .entry(part)
            .or_default()
            .entry(b.clone())
            .or_insert(0) += n;
    }
    EnrichedDocument {
        owner: req.id.clone(),
        side: Side::Requirement(req.kind),
        unigram_counts: requirement_unigrams(req, stop),
        biterm_counts,
        part_biterm_counts,
    }
}

/// Enriched count of one biterm of a class profile.
///
/// Name slots add two per occurrence and comments one. A biterm seen only in
/// invoked methods, fields or parameters counts exactly once.
pub fn class_biterm_count(profile: &BitermProfile, b: &Biterm) -> usize {
    let Some(slots) = profile.counts.get(b) else { return 0 };
    let mut count = 0;
    let mut conservative = false;
    for (slot, n) in slots {
        match slot {
            Slot::Code(CodeSlot::ClassName) | Slot::Code(CodeSlot::MethodName) => count += 2 * n,
            Slot::Code(CodeSlot::Comment) => count += n,
            Slot::Code(_) => conservative |= *n > 0,
            Slot::Part(_) => {}
        }
    }
    if count == 0 && conservative {
        1
    } else {
        count
    }
}

pub fn enrich_class(
    profile: &BitermProfile,
    cons: &ConsensualBitermSet,
    cls: &CodeClassFacts,
    stop: &StopWords,
) -> EnrichedDocument {
    let biterm_counts = profile
        .biterms()
        .filter(|b| cons.contains(b))
        .filter_map(|b| {
            let n = class_biterm_count(profile, b);
            (n > 0).then(|| (b.clone(), n))
        })
        .collect();
    EnrichedDocument {
        owner: cls.id.clone(),
        side: Side::Code,
        unigram_counts: class_unigrams(cls, stop),
        biterm_counts,
        part_biterm_counts: BTreeMap::new(),
    }
}
