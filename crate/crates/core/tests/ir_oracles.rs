//! Similarity models against dense brute-force computations.

use std::collections::BTreeMap;

use bitrace_core::enrich::{EnrichedDocument, Side};
use bitrace_core::ir::{jensen_shannon, similarity, IrModel, JsOptions, TfIdfIndex};
use bitrace_core::model::RequirementKind;
use proptest::prelude::*;

fn doc(owner: String, requirement: bool, counts: BTreeMap<String, usize>) -> EnrichedDocument {
    EnrichedDocument {
        owner,
        side: if requirement {
            Side::Requirement(RequirementKind::UseCase)
        } else {
            Side::Code
        },
        unigram_counts: counts,
        biterm_counts: BTreeMap::new(),
        part_biterm_counts: BTreeMap::new(),
    }
}

/// 2 to 20 documents, at least one per side, over at most 60 tokens.
fn corpus() -> impl Strategy<Value = Vec<EnrichedDocument>> {
    (1usize..=60, 1usize..=10, 1usize..=10).prop_flat_map(|(vocab, reqs, classes)| {
        let counts = prop::collection::btree_map(0..vocab, 1usize..4, 1..=vocab.min(12));
        prop::collection::vec(counts, reqs + classes).prop_map(move |docs| {
            docs.into_iter()
                .enumerate()
                .map(|(i, c)| {
                    let counts = c.into_iter().map(|(t, n)| (format!("t{t}"), n)).collect();
                    let req = i < reqs;
                    doc(format!("{}{i:02}", if req { "R" } else { "C" }), req, counts)
                })
                .collect()
        })
    })
}

/// Dense tf-idf vectors straight from the definition, keyed by owner.
fn dense(docs: &[EnrichedDocument]) -> BTreeMap<String, Vec<f64>> {
    let vocab: Vec<String> = docs
        .iter()
        .flat_map(|d| d.unigram_counts.keys().cloned())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let n = docs.len() as f64;
    docs.iter()
        .map(|d| {
            let v = vocab
                .iter()
                .map(|t| {
                    let df = docs.iter().filter(|e| e.unigram_counts.contains_key(t)).count() as f64;
                    d.unigram_counts.get(t).copied().unwrap_or(0) as f64 * (n / df).ln()
                })
                .collect();
            (d.owner.clone(), v)
        })
        .collect()
}

fn cosine(x: &[f64], y: &[f64]) -> f64 {
    let dot: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let nx = x.iter().map(|a| a * a).sum::<f64>().sqrt();
    let ny = y.iter().map(|a| a * a).sum::<f64>().sqrt();
    if nx == 0.0 || ny == 0.0 {
        0.0
    } else {
        (dot / (nx * ny)).clamp(0.0, 1.0)
    }
}

/// Numerical rank of the dense matrix by Gaussian elimination.
fn rank(columns: &[Vec<f64>]) -> usize {
    let mut m: Vec<Vec<f64>> = columns.to_vec();
    let rows = m.first().map_or(0, Vec::len);
    let scale = m.iter().flatten().fold(0.0f64, |a, b| a.max(b.abs()));
    let tol = 1e-9 * scale.max(1.0);
    let mut r = 0;
    for col in 0..rows {
        let Some(p) = (r..m.len()).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs())) else {
            break;
        };
        if m[p][col].abs() <= tol {
            continue;
        }
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot = &top[r];
        for row in rest {
            let f = row[col] / pivot[col];
            for (x, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                *x -= f * p;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn vsm_matches_dense_cosine(docs in corpus()) {
        let index = TfIdfIndex::build(&docs, true).unwrap();
        let sim = similarity(&index, IrModel::Vsm).unwrap();
        let vecs = dense(&docs);
        for (r, c, s) in sim.entries() {
            let want = cosine(&vecs[r], &vecs[c]);
            prop_assert!((s - want).abs() < 1e-9, "{}/{}: {} vs {}", r, c, s, want);
        }
    }

    #[test]
    fn lsi_at_full_rank_equals_vsm(docs in corpus()) {
        let index = TfIdfIndex::build(&docs, true).unwrap();
        let k = rank(&index.dense_columns());
        prop_assume!(k > 0);
        let vsm = similarity(&index, IrModel::Vsm).unwrap();
        let lsi = similarity(&index, IrModel::Lsi { k }).unwrap();
        for ((_, _, a), (_, _, b)) in vsm.entries().zip(lsi.entries()) {
            prop_assert!((a - b).abs() < 1e-6, "k={}: {} vs {}", k, a, b);
        }
        // any k up to min(docs, tokens) is accepted, beyond it is rejected
        let max = index.n_docs().min(index.n_tokens());
        let at_max = similarity(&index, IrModel::Lsi { k: max });
        let beyond = similarity(&index, IrModel::Lsi { k: max + 1 });
        prop_assert!(at_max.is_ok());
        prop_assert!(beyond.is_err());
    }

    #[test]
    fn js_is_a_bounded_symmetric_similarity(
        p in prop::collection::btree_map(0usize..30, 0.01f64..5.0, 1..20),
        q in prop::collection::btree_map(0usize..30, 0.01f64..5.0, 1..20),
    ) {
        let norm = |m: &BTreeMap<usize, f64>| {
            let t: f64 = m.values().sum();
            m.iter().map(|(&i, &v)| (i, v / t)).collect::<Vec<_>>()
        };
        let (p, q) = (norm(&p), norm(&q));
        let d = jensen_shannon(&p, &q, 2.0);
        let e = jensen_shannon(&q, &p, 2.0);
        prop_assert!((d - e).abs() < 1e-12);
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&d));
        prop_assert!(jensen_shannon(&p, &p, 2.0).abs() < 1e-12);
        // brute force over the dense support
        let dense = |v: &[(usize, f64)]| {
            let mut out = vec![0.0; 30];
            for &(i, x) in v {
                out[i] = x;
            }
            out
        };
        let (pd, qd) = (dense(&p), dense(&q));
        let kl = |a: &[f64], m: &[f64]| a.iter().zip(m).filter(|(x, _)| **x > 0.0).map(|(x, y)| x * (x / y).log2()).sum::<f64>();
        let m: Vec<f64> = pd.iter().zip(&qd).map(|(a, b)| 0.5 * (a + b)).collect();
        let want = 0.5 * kl(&pd, &m) + 0.5 * kl(&qd, &m);
        prop_assert!((d - want).abs() < 1e-9);
    }
}

#[test]
fn js_extremes() {
    let counts = |toks: &[&str]| toks.iter().map(|t| (t.to_string(), 1)).collect::<BTreeMap<_, _>>();
    let docs = vec![
        doc("R".into(), true, counts(&["alpha", "beta"])),
        doc("Same".into(), false, counts(&["alpha", "beta"])),
        doc("Other".into(), false, counts(&["gamma", "delta"])),
    ];
    let index = TfIdfIndex::build(&docs, true).unwrap();
    for tfidf in [true, false] {
        let sim = similarity(&index, IrModel::Js(JsOptions { tfidf, log_base: 2.0 })).unwrap();
        assert!((sim.get("R", "Same").unwrap() - 1.0).abs() < 1e-9);
        assert!(sim.get("R", "Other").unwrap().abs() < 1e-9);
    }
}
