//! Invariants of the global and local weights and of the score multiplier.

use std::collections::BTreeMap;

use bitrace_core::biterm::Biterm;
use bitrace_core::enrich::{EnrichedDocument, Side};
use bitrace_core::model::{PartName, RequirementKind};
use bitrace_core::rerank::{
    global_weight, local_weight, multiplier, rerank, shared_biterms, AdjustMode, BitermIdfTable, CandidateLink,
    RerankOptions, DEFAULT_PENALTY,
};
use proptest::prelude::*;

fn biterm(i: usize) -> Biterm {
    Biterm::new(&format!("a{i}"), &format!("b{i}")).unwrap()
}

fn requirement(owner: &str, parts: &BTreeMap<PartName, BTreeMap<usize, usize>>) -> EnrichedDocument {
    let mut totals = BTreeMap::new();
    let mut part_counts = BTreeMap::new();
    for (part, counts) in parts {
        let m: BTreeMap<Biterm, usize> = counts.iter().map(|(&b, &n)| (biterm(b), n)).collect();
        for (b, n) in &m {
            *totals.entry(b.clone()).or_insert(0) += n;
        }
        part_counts.insert(*part, m);
    }
    EnrichedDocument {
        owner: owner.to_string(),
        side: Side::Requirement(RequirementKind::UseCase),
        unigram_counts: BTreeMap::new(),
        biterm_counts: totals,
        part_biterm_counts: part_counts,
    }
}

fn class(owner: &str, counts: &BTreeMap<usize, usize>) -> EnrichedDocument {
    EnrichedDocument {
        owner: owner.to_string(),
        side: Side::Code,
        unigram_counts: BTreeMap::new(),
        biterm_counts: counts.iter().map(|(&b, &n)| (biterm(b), n)).collect(),
        part_biterm_counts: BTreeMap::new(),
    }
}

fn part_map() -> impl Strategy<Value = BTreeMap<PartName, BTreeMap<usize, usize>>> {
    prop::collection::btree_map(
        prop::sample::select(PartName::USE_CASE.to_vec()),
        prop::collection::btree_map(0usize..8, 1usize..4, 0..5),
        0..5,
    )
}

fn class_map() -> impl Strategy<Value = BTreeMap<usize, usize>> {
    prop::collection::btree_map(0usize..8, 1usize..4, 0..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn weights_stay_in_range(reqs in prop::collection::vec(part_map(), 1..4), classes in prop::collection::vec(class_map(), 1..5)) {
        let mut docs: Vec<EnrichedDocument> =
            reqs.iter().enumerate().map(|(i, p)| requirement(&format!("R{i}"), p)).collect();
        docs.extend(classes.iter().enumerate().map(|(i, c)| class(&format!("C{i}"), c)));
        let idf = BitermIdfTable::build(&docs);
        let (rs, cs) = docs.split_at(reqs.len());
        for r in rs {
            // part totals add up to the document totals
            let mut sum: BTreeMap<&Biterm, usize> = BTreeMap::new();
            for m in r.part_biterm_counts.values() {
                for (b, n) in m {
                    *sum.entry(b).or_insert(0) += n;
                }
            }
            let totals: BTreeMap<&Biterm, usize> = r.biterm_counts.iter().map(|(b, n)| (b, *n)).collect();
            prop_assert_eq!(sum, totals);
            for c in cs {
                let shared = shared_biterms(r, c);
                let lambda = global_weight(r, c, &idf);
                let theta = local_weight(r, c, &idf);
                prop_assert!((0.0..=1.0 + 1e-12).contains(&theta));
                if !shared.is_empty() {
                    prop_assert!(lambda > 0.0 && lambda <= 1.0 + 1e-12, "lambda {}", lambda);
                } else {
                    prop_assert_eq!(lambda, 0.0);
                    prop_assert_eq!(theta, 0.0);
                }
                let m = multiplier(lambda, theta, !shared.is_empty(), DEFAULT_PENALTY);
                prop_assert!(m == DEFAULT_PENALTY || (1.0..=3.0 + 1e-12).contains(&m), "multiplier {}", m);
            }
        }
    }

    #[test]
    fn penalty_keeps_relative_order(scores in prop::collection::vec(0.0f64..1.0, 2..12)) {
        let docs = vec![
            requirement("R", &BTreeMap::from([(PartName::Title, BTreeMap::from([(0, 1)]))])),
            class("Shared", &BTreeMap::from([(0, 1)])),
        ];
        let mut links: Vec<CandidateLink> = scores
            .iter()
            .enumerate()
            .map(|(i, &s)| CandidateLink::initial("R", &format!("C{i:02}"), s))
            .collect();
        links.push(CandidateLink::initial("R", "Shared", 0.5));
        bitrace_core::rerank::rank_links(&mut links);
        let before: Vec<String> = links.iter().filter(|l| l.class_id != "Shared").map(|l| l.class_id.clone()).collect();
        let input = BTreeMap::from([("R".to_string(), links)]);
        for mode in [AdjustMode::LambdaOnly, AdjustMode::Full] {
            let out = rerank(&input, &docs, RerankOptions { mode, penalty: DEFAULT_PENALTY });
            let after: Vec<String> =
                out["R"].iter().filter(|l| l.class_id != "Shared").map(|l| l.class_id.clone()).collect();
            prop_assert_eq!(&after, &before);
            for l in out["R"].iter().filter(|l| l.class_id != "Shared") {
                prop_assert!((l.ir_new - DEFAULT_PENALTY * l.ir_initial).abs() < 1e-15);
            }
        }
    }
}

#[test]
fn single_shared_biterm_gives_full_weights() {
    let docs = vec![
        requirement("R", &BTreeMap::from([(PartName::Title, BTreeMap::from([(0, 2)]))])),
        class("A", &BTreeMap::from([(0, 3)])),
        class("B", &BTreeMap::new()),
    ];
    let idf = BitermIdfTable::build(&docs);
    assert!((idf.idf(&biterm(0)) - (3.0f64 / 2.0).ln()).abs() < 1e-15);
    assert_eq!(global_weight(&docs[0], &docs[1], &idf), 1.0);
    assert!((local_weight(&docs[0], &docs[1], &idf) - 0.4).abs() < 1e-15);
    assert_eq!(global_weight(&docs[0], &docs[2], &idf), 0.0);
}
