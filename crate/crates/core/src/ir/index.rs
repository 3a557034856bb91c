use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::enrich::EnrichedDocument;
use crate::{Error, Result};

/// One indexed document: sparse `(column, value)` pairs sorted by column.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexedDoc {
    pub owner: String,
    pub is_requirement: bool,
    pub tf: Vec<(usize, f64)>,
    pub weights: Vec<(usize, f64)>,
}

/// tf-idf index over requirements and classes in one term-by-document matrix.
///
/// tf is the raw count and idf is `ln(N / df)`. Documents are stored
/// requirements first, each side ordered by id, so the index does not depend
/// on input order.
#[derive(Debug, Clone, PartialEq)]
pub struct TfIdfIndex {
    pub vocabulary: BTreeMap<String, usize>,
    pub df: Vec<usize>,
    pub idf: Vec<f64>,
    pub docs: Vec<IndexedDoc>,
    /// Owners of documents with no tokens.
    pub empty_docs: Vec<String>,
}

impl TfIdfIndex {
    /// Builds the index. Synthetic biterm tokens are included when
    /// `with_biterms` is set.
    pub fn build(docs: &[EnrichedDocument], with_biterms: bool) -> Result<Self> {
        if docs.len() < 2 {
            return Err(Error::InvalidCorpus(alloc::format!(
                "an index needs at least two documents, got {}",
                docs.len()
            )));
        }
        if !docs.iter().any(|d| d.is_requirement()) || docs.iter().all(|d| d.is_requirement()) {
            return Err(Error::InvalidCorpus(
                "an index needs both requirements and classes".into(),
            ));
        }
        let mut ordered: Vec<&EnrichedDocument> = docs.iter().collect();
        ordered.sort_by(|a, b| {
            b.is_requirement()
                .cmp(&a.is_requirement())
                .then_with(|| a.owner.cmp(&b.owner))
        });

        let counts: Vec<BTreeMap<String, usize>> = ordered.iter().map(|d| d.token_counts(with_biterms)).collect();
        let mut vocabulary = BTreeMap::new();
        for c in &counts {
            for token in c.keys() {
                vocabulary.entry(token.clone()).or_insert(0usize);
            }
        }
        for (column, id) in vocabulary.values_mut().enumerate() {
            *id = column;
        }
        let mut df = alloc::vec![0usize; vocabulary.len()];
        for c in &counts {
            for token in c.keys() {
                df[vocabulary[token]] += 1;
            }
        }
        let n = ordered.len() as f64;
        let idf: Vec<f64> = df.iter().map(|&d| libm::log(n / d as f64)).collect();

        let mut empty_docs = Vec::new();
        let docs = ordered
            .iter()
            .zip(&counts)
            .map(|(d, c)| {
                if c.is_empty() {
                    empty_docs.push(d.owner.clone());
                }
                let tf: Vec<(usize, f64)> = c.iter().map(|(t, &k)| (vocabulary[t], k as f64)).collect();
                let weights = tf.iter().map(|&(col, f)| (col, f * idf[col])).collect();
                IndexedDoc {
                    owner: d.owner.clone(),
                    is_requirement: d.is_requirement(),
                    tf,
                    weights,
                }
            })
            .collect();
        Ok(TfIdfIndex {
            vocabulary,
            df,
            idf,
            docs,
            empty_docs,
        })
    }

    pub fn n_docs(&self) -> usize {
        self.docs.len()
    }

    pub fn n_tokens(&self) -> usize {
        self.vocabulary.len()
    }

    pub fn idf_of(&self, token: &str) -> Option<f64> {
        self.vocabulary.get(token).map(|&c| self.idf[c])
    }

    pub fn df_of(&self, token: &str) -> Option<usize> {
        self.vocabulary.get(token).map(|&c| self.df[c])
    }

    pub fn requirements(&self) -> impl Iterator<Item = (usize, &IndexedDoc)> {
        self.docs.iter().enumerate().filter(|(_, d)| d.is_requirement)
    }

    pub fn classes(&self) -> impl Iterator<Item = (usize, &IndexedDoc)> {
        self.docs.iter().enumerate().filter(|(_, d)| !d.is_requirement)
    }

    /// Dense `tokens × docs` tf-idf matrix, column-major (one `Vec` per doc).
    pub fn dense_columns(&self) -> Vec<Vec<f64>> {
        self.docs
            .iter()
            .map(|d| {
                let mut col = alloc::vec![0.0; self.n_tokens()];
                for &(i, w) in &d.weights {
                    col[i] = w;
                }
                col
            })
            .collect()
    }
}
