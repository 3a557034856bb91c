//! tf-idf indexing and VSM, LSI and JS similarity.

mod index;
pub mod svd;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

pub use index::{IndexedDoc, TfIdfIndex};

use crate::rerank::{rank_links, CandidateLink};
use crate::{Error, Result};

/// Distribution source and logarithm base for JS similarity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JsOptions {
    /// Normalize tf-idf weights when set, raw term counts otherwise.
    pub tfidf: bool,
    pub log_base: f64,
}

impl Default for JsOptions {
    fn default() -> Self {
        JsOptions {
            tfidf: true,
            log_base: 2.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IrModel {
    Vsm,
    Lsi { k: usize },
    Js(JsOptions),
}

impl IrModel {
    pub fn name(&self) -> &'static str {
        match self {
            IrModel::Vsm => "vsm",
            IrModel::Lsi { .. } => "lsi",
            IrModel::Js(_) => "js",
        }
    }
}

/// Requirement × class scores.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    pub req_ids: Vec<String>,
    pub class_ids: Vec<String>,
    /// Row-major, one row per requirement.
    pub scores: Vec<f64>,
}

impl SimilarityMatrix {
    pub fn score(&self, req: usize, class: usize) -> f64 {
        self.scores[req * self.class_ids.len() + class]
    }

    pub fn get(&self, req_id: &str, class_id: &str) -> Option<f64> {
        let r = self.req_ids.iter().position(|x| x == req_id)?;
        let c = self.class_ids.iter().position(|x| x == class_id)?;
        Some(self.score(r, c))
    }

    /// `(req_id, class_id, score)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (&str, &str, f64)> {
        self.req_ids.iter().enumerate().flat_map(move |(r, rid)| {
            self.class_ids
                .iter()
                .enumerate()
                .map(move |(c, cid)| (rid.as_str(), cid.as_str(), self.score(r, c)))
        })
    }
}

fn pairwise(index: &TfIdfIndex, mut f: impl FnMut(usize, usize) -> f64) -> SimilarityMatrix {
    let reqs: Vec<usize> = index.requirements().map(|(i, _)| i).collect();
    let classes: Vec<usize> = index.classes().map(|(i, _)| i).collect();
    let mut scores = Vec::with_capacity(reqs.len() * classes.len());
    for &r in &reqs {
        for &c in &classes {
            scores.push(f(r, c));
        }
    }
    SimilarityMatrix {
        req_ids: reqs.iter().map(|&i| index.docs[i].owner.clone()).collect(),
        class_ids: classes.iter().map(|&i| index.docs[i].owner.clone()).collect(),
        scores,
    }
}

fn sparse_dot(x: &[(usize, f64)], y: &[(usize, f64)]) -> f64 {
    let (mut i, mut j, mut sum) = (0, 0, 0.0);
    while i < x.len() && j < y.len() {
        match x[i].0.cmp(&y[j].0) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                sum += x[i].1 * y[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    sum
}

fn cosine(dot: f64, nx: f64, ny: f64) -> f64 {
    if nx == 0.0 || ny == 0.0 {
        return 0.0;
    }
    (dot / (nx * ny)).clamp(0.0, 1.0)
}

/// Cosine of tf-idf vectors; a zero vector scores 0.
pub fn vsm_similarity(index: &TfIdfIndex) -> SimilarityMatrix {
    let norms: Vec<f64> = index
        .docs
        .iter()
        .map(|d| libm::sqrt(sparse_dot(&d.weights, &d.weights)))
        .collect();
    pairwise(index, |r, c| {
        cosine(
            sparse_dot(&index.docs[r].weights, &index.docs[c].weights),
            norms[r],
            norms[c],
        )
    })
}

/// Cosine in the rank-`k` LSI space; negative cosines clamp to 0.
pub fn lsi_similarity(index: &TfIdfIndex, k: usize) -> Result<SimilarityMatrix> {
    let max = index.n_docs().min(index.n_tokens());
    if k == 0 || k > max {
        return Err(Error::LsiRank { k, max });
    }
    let svd = svd::svd_columns(&index.dense_columns());
    let reps: Vec<Vec<f64>> = (0..index.n_docs())
        .map(|i| (0..k).map(|j| svd.v[j][i] * svd.sigma[j]).collect())
        .collect();
    let norms: Vec<f64> = reps.iter().map(|x| libm::sqrt(x.iter().map(|a| a * a).sum())).collect();
    Ok(pairwise(index, |r, c| {
        let dot: f64 = reps[r].iter().zip(&reps[c]).map(|(a, b)| a * b).sum();
        cosine(dot, norms[r], norms[c])
    }))
}

/// Jensen-Shannon divergence of two sparse distributions in the given base.
pub fn jensen_shannon(p: &[(usize, f64)], q: &[(usize, f64)], log_base: f64) -> f64 {
    let ln_base = libm::log(log_base);
    let term = |x: f64, m: f64| if x > 0.0 { x * libm::log(x / m) } else { 0.0 };
    let (mut i, mut j, mut sum) = (0, 0, 0.0);
    while i < p.len() || j < q.len() {
        let pi = p.get(i).map_or(usize::MAX, |e| e.0);
        let qj = q.get(j).map_or(usize::MAX, |e| e.0);
        let (x, y) = if pi == qj {
            i += 1;
            j += 1;
            (p[i - 1].1, q[j - 1].1)
        } else if pi < qj {
            i += 1;
            (p[i - 1].1, 0.0)
        } else {
            j += 1;
            (0.0, q[j - 1].1)
        };
        let m = 0.5 * (x + y);
        sum += 0.5 * term(x, m) + 0.5 * term(y, m);
    }
    sum / ln_base
}

fn distribution(v: &[(usize, f64)]) -> Option<Vec<(usize, f64)>> {
    let total: f64 = v.iter().map(|e| e.1).sum();
    (total > 0.0).then(|| v.iter().filter(|e| e.1 > 0.0).map(|&(i, x)| (i, x / total)).collect())
}

/// `1 − JSD` of L1-normalized document vectors; an empty document scores 0.
pub fn js_similarity(index: &TfIdfIndex, options: JsOptions) -> SimilarityMatrix {
    let dists: Vec<Option<Vec<(usize, f64)>>> = index
        .docs
        .iter()
        .map(|d| distribution(if options.tfidf { &d.weights } else { &d.tf }))
        .collect();
    pairwise(index, |r, c| match (&dists[r], &dists[c]) {
        (Some(p), Some(q)) => (1.0 - jensen_shannon(p, q, options.log_base)).clamp(0.0, 1.0),
        _ => 0.0,
    })
}

pub fn similarity(index: &TfIdfIndex, model: IrModel) -> Result<SimilarityMatrix> {
    match model {
        IrModel::Vsm => Ok(vsm_similarity(index)),
        IrModel::Lsi { k } => lsi_similarity(index, k),
        IrModel::Js(options) => Ok(js_similarity(index, options)),
    }
}

/// Per-requirement candidate lists over every class, by descending score
/// with ties broken by ascending class id.
pub fn rank_candidates(sim: &SimilarityMatrix) -> BTreeMap<String, Vec<CandidateLink>> {
    sim.req_ids
        .iter()
        .enumerate()
        .map(|(r, req_id)| {
            let mut links: Vec<CandidateLink> = sim
                .class_ids
                .iter()
                .enumerate()
                .map(|(c, class_id)| CandidateLink::initial(req_id, class_id, sim.score(r, c)))
                .collect();
            rank_links(&mut links);
            (req_id.clone(), links)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enrich::{EnrichedDocument, Side};
    use crate::model::RequirementKind;
    use alloc::string::ToString;
    use alloc::vec;

    fn doc(owner: &str, req: bool, tokens: &[(&str, usize)]) -> EnrichedDocument {
        EnrichedDocument {
            owner: owner.to_string(),
            side: if req {
                Side::Requirement(RequirementKind::UseCase)
            } else {
                Side::Code
            },
            unigram_counts: tokens.iter().map(|(t, n)| (t.to_string(), *n)).collect(),
            biterm_counts: BTreeMap::new(),
            part_biterm_counts: BTreeMap::new(),
        }
    }

    #[test]
    fn idf_values() {
        let docs = [
            doc("r", true, &[("a", 1), ("b", 2)]),
            doc("c", false, &[("a", 3), ("b", 1)]),
        ];
        let index = TfIdfIndex::build(&docs, true).unwrap();
        assert_eq!(index.idf, [0.0, 0.0]);
        let docs = [
            doc("r", true, &[("x", 1)]),
            doc("c1", false, &[("y", 1)]),
            doc("c2", false, &[("y", 1)]),
            doc("c3", false, &[("y", 1)]),
        ];
        let index = TfIdfIndex::build(&docs, true).unwrap();
        assert!((index.idf_of("x").unwrap() - 1.3862943611198906).abs() < 1e-15);
    }

    #[test]
    fn build_errors_and_empty_docs() {
        assert!(TfIdfIndex::build(&[doc("r", true, &[("a", 1)])], true).is_err());
        let two_reqs = [doc("r", true, &[("a", 1)]), doc("s", true, &[("a", 1)])];
        assert!(TfIdfIndex::build(&two_reqs, true).is_err());
        let docs = [doc("r", true, &[("a", 1)]), doc("c", false, &[])];
        let index = TfIdfIndex::build(&docs, true).unwrap();
        assert_eq!(index.empty_docs, ["c"]);
    }

    #[test]
    fn vsm_basic() {
        let docs = [
            doc("r", true, &[("a", 1), ("b", 1)]),
            doc("same", false, &[("a", 1), ("b", 1)]),
            doc("other", false, &[("c", 2)]),
        ];
        let index = TfIdfIndex::build(&docs, true).unwrap();
        let sim = vsm_similarity(&index);
        assert!((sim.get("r", "same").unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(sim.get("r", "other").unwrap(), 0.0);
    }

    #[test]
    fn jsd_example() {
        let p = [(0, 0.5), (1, 0.5)];
        let q = [(1, 0.5), (2, 0.5)];
        assert!((jensen_shannon(&p, &q, 2.0) - 0.5).abs() < 1e-15);
        assert!(jensen_shannon(&p, &p, 2.0).abs() < 1e-15);
        assert!((jensen_shannon(&[(0, 1.0)], &[(1, 1.0)], 2.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn lsi_rank_bounds() {
        let docs = [
            doc("r", true, &[("a", 1)]),
            doc("c", false, &[("b", 1)]),
            doc("d", false, &[("a", 1)]),
        ];
        let index = TfIdfIndex::build(&docs, true).unwrap();
        assert_eq!(lsi_similarity(&index, 0), Err(Error::LsiRank { k: 0, max: 2 }));
        assert_eq!(lsi_similarity(&index, 3), Err(Error::LsiRank { k: 3, max: 2 }));
        assert!(lsi_similarity(&index, 2).is_ok());
    }

    #[test]
    fn lsi_rank_one_is_collinear() {
        let docs = [
            doc("r", true, &[("a", 2), ("b", 1)]),
            doc("c1", false, &[("b", 3), ("c", 1)]),
            doc("c2", false, &[("a", 1), ("c", 2)]),
            doc("c3", false, &[("d", 1)]),
        ];
        let index = TfIdfIndex::build(&docs, true).unwrap();
        let sim = lsi_similarity(&index, 1).unwrap();
        for s in &sim.scores {
            assert!(s.abs() < 1e-9 || (s - 1.0).abs() < 1e-9, "{s}");
        }
    }

    #[test]
    fn ranking_ties_by_class_id() {
        let sim = SimilarityMatrix {
            req_ids: vec!["R".into()],
            class_ids: vec!["Beta".into(), "Alpha".into(), "Gamma".into()],
            scores: vec![0.5, 0.5, 0.9],
        };
        let ranked = rank_candidates(&sim);
        let order: Vec<&str> = ranked["R"].iter().map(|l| l.class_id.as_str()).collect();
        assert_eq!(order, ["Gamma", "Alpha", "Beta"]);
        assert_eq!(ranked["R"][1].rank, 2);
    }
}
