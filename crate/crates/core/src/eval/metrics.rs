use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::model::TraceMatrix;
use crate::rerank::CandidateLink;
use crate::{Error, Result};

/// Recall and precision at the cut of one retrieved relevant link.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PrPoint {
    pub recall: f64,
    pub precision: f64,
}

/// One point per relevant position of a relevance pattern.
pub fn pr_points_from_pattern(pattern: &[bool], total_relevant: usize) -> Vec<PrPoint> {
    let mut hits = 0usize;
    let mut points = Vec::new();
    for (i, &rel) in pattern.iter().enumerate() {
        if rel {
            hits += 1;
            points.push(PrPoint {
                recall: hits as f64 / total_relevant as f64,
                precision: hits as f64 / (i + 1) as f64,
            });
        }
    }
    points
}

/// Sum of precision at each relevant position, over `total_relevant`.
pub fn ap_from_pattern(pattern: &[bool], total_relevant: usize) -> f64 {
    if total_relevant == 0 {
        return 0.0;
    }
    let sum: f64 = pr_points_from_pattern(pattern, total_relevant)
        .iter()
        .map(|p| p.precision)
        .sum();
    sum / total_relevant as f64
}

/// All links of all queries by descending `ir_new`, ties by class id then
/// requirement id.
pub fn global_ranking(per_query: &BTreeMap<String, Vec<CandidateLink>>) -> Vec<&CandidateLink> {
    let mut all: Vec<&CandidateLink> = per_query.values().flatten().collect();
    all.sort_by(|a, b| {
        b.ir_new
            .total_cmp(&a.ir_new)
            .then_with(|| a.class_id.cmp(&b.class_id))
            .then_with(|| a.req_id.cmp(&b.req_id))
    });
    all
}

/// Errors unless the trace matrix is nonempty and every link is ranked.
pub fn check_universe<'a>(ranked: impl IntoIterator<Item = &'a CandidateLink>, rtm: &TraceMatrix) -> Result<()> {
    if rtm.is_empty() {
        return Err(Error::EmptyTraceMatrix);
    }
    let universe: BTreeSet<(&str, &str)> = ranked
        .into_iter()
        .map(|l| (l.req_id.as_str(), l.class_id.as_str()))
        .collect();
    let missing: Vec<(String, String)> = rtm
        .links
        .iter()
        .filter(|(r, c)| !universe.contains(&(r.as_str(), c.as_str())))
        .cloned()
        .collect();
    if missing.is_empty() {
        Ok(())
    } else {
        Err(Error::UnrankedLinks(missing))
    }
}

fn pattern(ranked: &[&CandidateLink], rtm: &TraceMatrix) -> Vec<bool> {
    ranked.iter().map(|l| rtm.contains(&l.req_id, &l.class_id)).collect()
}

/// Precision-recall points over a ranked list.
pub fn precision_recall(ranked: &[&CandidateLink], rtm: &TraceMatrix) -> Result<Vec<PrPoint>> {
    check_universe(ranked.iter().copied(), rtm)?;
    Ok(pr_points_from_pattern(&pattern(ranked, rtm), rtm.len()))
}

/// Average precision of a ranked list against all links of the matrix.
pub fn average_precision(ranked: &[&CandidateLink], rtm: &TraceMatrix) -> Result<f64> {
    check_universe(ranked.iter().copied(), rtm)?;
    Ok(ap_from_pattern(&pattern(ranked, rtm), rtm.len()))
}

/// Mean of per-query APs over queries with at least one relevant link.
pub fn mean_average_precision(
    per_query: &BTreeMap<String, Vec<CandidateLink>>,
    rtm: &TraceMatrix,
) -> Result<(f64, BTreeMap<String, f64>)> {
    check_universe(per_query.values().flatten(), rtm)?;
    let mut aps = BTreeMap::new();
    for (req, links) in per_query {
        let relevant = rtm.relevant_for(req);
        if relevant == 0 {
            continue;
        }
        let mut list: Vec<&CandidateLink> = links.iter().collect();
        list.sort_by(|a, b| b.ir_new.total_cmp(&a.ir_new).then_with(|| a.class_id.cmp(&b.class_id)));
        aps.insert(req.clone(), ap_from_pattern(&pattern(&list, rtm), relevant));
    }
    if aps.is_empty() {
        return Err(Error::NoRelevantQueries);
    }
    let map = aps.values().sum::<f64>() / aps.len() as f64;
    Ok((map, aps))
}

/// Harmonic mean of precision and recall at each point.
pub fn f_measures(points: &[PrPoint]) -> Vec<f64> {
    points
        .iter()
        .map(|p| {
            let s = p.precision + p.recall;
            if s == 0.0 {
                0.0
            } else {
                2.0 * p.precision * p.recall / s
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EvalReport {
    pub precision_recall_points: Vec<PrPoint>,
    pub ap: f64,
    pub map: f64,
    pub per_query_ap: BTreeMap<String, f64>,
    pub f_at_recall: Vec<f64>,
}

pub fn evaluate(per_query: &BTreeMap<String, Vec<CandidateLink>>, rtm: &TraceMatrix) -> Result<EvalReport> {
    let global = global_ranking(per_query);
    let points = precision_recall(&global, rtm)?;
    let ap = average_precision(&global, rtm)?;
    let (map, per_query_ap) = mean_average_precision(per_query, rtm)?;
    Ok(EvalReport {
        f_at_recall: f_measures(&points),
        precision_recall_points: points,
        ap,
        map,
        per_query_ap,
    })
}
