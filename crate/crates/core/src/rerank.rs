//! IR value adjustment from shared consensual biterms.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::biterm::Biterm;
use crate::enrich::{EnrichedDocument, Side};
use crate::model::{PartName, RequirementKind};

/// Default multiplier for links that share no consensual biterm.
pub const DEFAULT_PENALTY: f64 = 0.9;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CandidateLink {
    pub req_id: String,
    pub class_id: String,
    pub ir_initial: f64,
    pub lambda: f64,
    pub theta: f64,
    pub ir_new: f64,
    /// 1-based position within the requirement's list.
    pub rank: usize,
}

impl CandidateLink {
    /// An unadjusted link: `ir_new = ir_initial`, weights zero, unranked.
    pub fn initial(req_id: &str, class_id: &str, score: f64) -> Self {
        CandidateLink {
            req_id: req_id.to_string(),
            class_id: class_id.to_string(),
            ir_initial: score,
            lambda: 0.0,
            theta: 0.0,
            ir_new: score,
            rank: 0,
        }
    }
}

/// Sorts by descending `ir_new`, ties by ascending class id, and assigns ranks.
pub fn rank_links(links: &mut [CandidateLink]) {
    links.sort_by(|a, b| b.ir_new.total_cmp(&a.ir_new).then_with(|| a.class_id.cmp(&b.class_id)));
    for (i, link) in links.iter_mut().enumerate() {
        link.rank = i + 1;
    }
}

/// Biterm idf `ln(N / df)` over all enriched documents. A biterm found in
/// every document would weigh 0 and could zero out the global weight of a
/// pair that does share biterms, so it gets half the idf of a biterm
/// missing from one document instead: still the smallest weight in the
/// table, but positive.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BitermIdfTable {
    pub n_docs: usize,
    pub df: BTreeMap<Biterm, usize>,
    pub idf: BTreeMap<Biterm, f64>,
}

impl BitermIdfTable {
    pub fn build(docs: &[EnrichedDocument]) -> Self {
        let mut df: BTreeMap<Biterm, usize> = BTreeMap::new();
        for d in docs {
            for b in d.biterm_counts.keys() {
                *df.entry(b.clone()).or_insert(0) += 1;
            }
        }
        let n = docs.len();
        let idf = df.iter().map(|(b, &k)| (b.clone(), biterm_idf(n, k))).collect();
        BitermIdfTable { n_docs: n, df, idf }
    }

    /// idf of a biterm; 0 for biterms absent from the corpus.
    pub fn idf(&self, b: &Biterm) -> f64 {
        self.idf.get(b).copied().unwrap_or(0.0)
    }

    pub fn sum<'a>(&self, biterms: impl IntoIterator<Item = &'a Biterm>) -> f64 {
        biterms.into_iter().map(|b| self.idf(b)).sum()
    }
}

fn biterm_idf(n: usize, df: usize) -> f64 {
    if df < n {
        libm::log(n as f64 / df as f64)
    } else if n > 1 {
        0.5 * libm::log(n as f64 / (n - 1) as f64)
    } else {
        0.0
    }
}

/// Biterms present in both documents.
pub fn shared_biterms<'a>(req: &'a EnrichedDocument, cls: &EnrichedDocument) -> BTreeSet<&'a Biterm> {
    req.biterm_counts
        .keys()
        .filter(|b| cls.biterm_counts.contains_key(*b))
        .collect()
}

fn ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else {
        0.0
    }
}

/// Global weight: half the sum of the shared idf mass relative to each
/// document's own biterm idf mass. Zero when nothing is shared.
pub fn global_weight(req: &EnrichedDocument, cls: &EnrichedDocument, idf: &BitermIdfTable) -> f64 {
    let shared = shared_biterms(req, cls);
    if shared.is_empty() {
        return 0.0;
    }
    let cons = idf.sum(shared.iter().copied());
    let own_req = idf.sum(req.biterm_counts.keys());
    let own_cls = idf.sum(cls.biterm_counts.keys());
    0.5 * (ratio(cons, own_req) + ratio(cons, own_cls))
}

/// Part weight: shared idf mass of the part's biterms over the part's total
/// biterm idf mass; 0 for a part without biterms.
pub fn part_weight(req: &EnrichedDocument, part: PartName, cls: &EnrichedDocument, idf: &BitermIdfTable) -> f64 {
    let Some(own) = req.part_biterms(part) else { return 0.0 };
    let shared = idf.sum(own.keys().filter(|b| cls.biterm_counts.contains_key(*b)));
    ratio(shared, idf.sum(own.keys()))
}

/// Fixed part coefficients of the local weight. Precondition has none.
pub fn part_coefficients(kind: RequirementKind) -> &'static [(PartName, f64)] {
    match kind {
        RequirementKind::UseCase => &[
            (PartName::Title, 0.4),
            (PartName::MainFlow, 0.3),
            (PartName::SubFlow, 0.2),
            (PartName::AlternativeFlow, 0.1),
        ],
        RequirementKind::Issue => &[(PartName::Summary, 0.6), (PartName::Description, 0.4)],
    }
}

/// Local weight: coefficient-weighted sum of part weights.
pub fn local_weight(req: &EnrichedDocument, cls: &EnrichedDocument, idf: &BitermIdfTable) -> f64 {
    let Side::Requirement(kind) = req.side else { return 0.0 };
    part_coefficients(kind)
        .iter()
        .map(|&(part, c)| c * part_weight(req, part, cls, idf))
        .sum()
}

/// Which adjustment terms are applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AdjustMode {
    /// Scores pass through unchanged.
    None,
    /// Shared links gain `1 + λ`; others take the penalty.
    LambdaOnly,
    /// Shared links gain `1 + λ + θ`; others take the penalty.
    #[default]
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RerankOptions {
    pub mode: AdjustMode,
    pub penalty: f64,
}

impl Default for RerankOptions {
    fn default() -> Self {
        RerankOptions {
            mode: AdjustMode::Full,
            penalty: DEFAULT_PENALTY,
        }
    }
}

/// Score multiplier: `1 + λ + θ` for shared links, the penalty otherwise.
pub fn multiplier(lambda: f64, theta: f64, shared: bool, penalty: f64) -> f64 {
    if shared {
        1.0 + lambda + theta
    } else {
        penalty
    }
}

/// Applies the weights to one link. λ and θ are recorded as 0 when nothing
/// is shared.
pub fn adjust(link: &CandidateLink, lambda: f64, theta: f64, shared: bool, penalty: f64) -> CandidateLink {
    let (lambda, theta) = if shared { (lambda, theta) } else { (0.0, 0.0) };
    CandidateLink {
        lambda,
        theta,
        ir_new: link.ir_initial * multiplier(lambda, theta, shared, penalty),
        ..link.clone()
    }
}

/// Reranks every candidate list. Requirements or classes without an
/// enriched document are treated as sharing nothing.
pub fn rerank(
    ranked: &BTreeMap<String, Vec<CandidateLink>>,
    docs: &[EnrichedDocument],
    options: RerankOptions,
) -> BTreeMap<String, Vec<CandidateLink>> {
    let idf = BitermIdfTable::build(docs);
    let reqs: BTreeMap<&str, &EnrichedDocument> = docs
        .iter()
        .filter(|d| d.is_requirement())
        .map(|d| (d.owner.as_str(), d))
        .collect();
    let classes: BTreeMap<&str, &EnrichedDocument> = docs
        .iter()
        .filter(|d| !d.is_requirement())
        .map(|d| (d.owner.as_str(), d))
        .collect();
    ranked
        .iter()
        .map(|(req_id, links)| {
            let mut out: Vec<CandidateLink> = links
                .iter()
                .map(|link| {
                    if options.mode == AdjustMode::None {
                        return CandidateLink {
                            lambda: 0.0,
                            theta: 0.0,
                            ir_new: link.ir_initial,
                            ..link.clone()
                        };
                    }
                    let (Some(r), Some(c)) = (reqs.get(link.req_id.as_str()), classes.get(link.class_id.as_str()))
                    else {
                        return adjust(link, 0.0, 0.0, false, options.penalty);
                    };
                    let shared = !shared_biterms(r, c).is_empty();
                    let lambda = global_weight(r, c, &idf);
                    let theta = match options.mode {
                        AdjustMode::Full => local_weight(r, c, &idf),
                        _ => 0.0,
                    };
                    adjust(link, lambda, theta, shared, options.penalty)
                })
                .collect();
            rank_links(&mut out);
            (req_id.clone(), out)
        })
        .collect()
}
