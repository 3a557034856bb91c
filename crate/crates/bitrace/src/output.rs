//! CSV and JSON writers. Everything is written in a fixed order so equal
//! inputs give byte-identical files.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use bitrace_core::biterm::{BitermProfile, ConsensualBitermSet};
use bitrace_core::enrich::{EnrichedDocument, Side};
use bitrace_core::eval::PrPoint;
use bitrace_core::ir::SimilarityMatrix;
use bitrace_core::rerank::CandidateLink;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{AppError, Result};

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| AppError::io(parent, e))?;
    }
    fs::write(path, bytes).map_err(|e| AppError::io(path, e))
}

pub fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| AppError::Internal(e.to_string()))?;
    text.push('\n');
    write_file(path, text.as_bytes())
}

fn csv_bytes<R: AsRef<[u8]>>(header: &[&str], rows: impl IntoIterator<Item = Vec<R>>) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let internal = |e: csv::Error| AppError::Internal(e.to_string());
    w.write_record(header).map_err(internal)?;
    for row in rows {
        w.write_record(&row).map_err(internal)?;
    }
    w.into_inner().map_err(|e| AppError::Internal(e.to_string()))
}

/// `req_id,class_id,score` in requirement then class order.
pub fn similarity_csv(sim: &SimilarityMatrix) -> Result<Vec<u8>> {
    csv_bytes(
        &["req_id", "class_id", "score"],
        sim.entries()
            .map(|(r, c, s)| vec![r.to_string(), c.to_string(), s.to_string()]),
    )
}

pub const RANKED_HEADER: [&str; 7] = ["req_id", "class_id", "ir_initial", "lambda", "theta", "ir_new", "rank"];

/// Reranked lists, requirement by requirement in rank order.
pub fn ranked_csv(lists: &BTreeMap<String, Vec<CandidateLink>>) -> Result<Vec<u8>> {
    let rows = lists.values().flatten().map(|l| {
        vec![
            l.req_id.clone(),
            l.class_id.clone(),
            l.ir_initial.to_string(),
            l.lambda.to_string(),
            l.theta.to_string(),
            l.ir_new.to_string(),
            l.rank.to_string(),
        ]
    });
    csv_bytes(&RANKED_HEADER, rows)
}

/// Reads a reranked CSV back into per-requirement lists ordered by rank.
pub fn read_ranked(path: &Path) -> Result<BTreeMap<String, Vec<CandidateLink>>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| AppError::format(path, e))?;
    let headers = reader.headers().map_err(|e| AppError::format(path, e))?.clone();
    if headers.iter().ne(RANKED_HEADER) {
        return Err(AppError::format(
            path,
            format!("expected header {}", RANKED_HEADER.join(",")),
        ));
    }
    let mut out: BTreeMap<String, Vec<CandidateLink>> = BTreeMap::new();
    for (i, record) in reader.deserialize::<CandidateLink>().enumerate() {
        let link = record.map_err(|e| AppError::format(path, format!("row {}: {e}", i + 2)))?;
        if ![link.ir_initial, link.lambda, link.theta, link.ir_new]
            .iter()
            .all(|v| v.is_finite())
        {
            return Err(AppError::format(path, format!("row {}: non-finite score", i + 2)));
        }
        out.entry(link.req_id.clone()).or_default().push(link);
    }
    for links in out.values_mut() {
        links.sort_by(|a, b| a.rank.cmp(&b.rank).then_with(|| a.class_id.cmp(&b.class_id)));
    }
    Ok(out)
}

/// `owner,slot,term_a,term_b,count`, optionally restricted to a set.
pub fn inventory_csv<'a>(
    profiles: impl IntoIterator<Item = &'a BitermProfile>,
    only: Option<&ConsensualBitermSet>,
) -> Result<Vec<u8>> {
    let mut rows = Vec::new();
    for p in profiles {
        for (slot, b, n) in p.rows() {
            if only.is_none_or(|set| set.contains(b)) {
                rows.push(vec![
                    p.owner.clone(),
                    slot.to_string(),
                    b.a.clone(),
                    b.b.clone(),
                    n.to_string(),
                ]);
            }
        }
    }
    csv_bytes(&["owner", "slot", "term_a", "term_b", "count"], rows)
}

/// `recall,precision,f` per achieved recall point.
pub fn pr_curve_csv(points: &[PrPoint], f: &[f64]) -> Result<Vec<u8>> {
    let rows = points
        .iter()
        .zip(f)
        .map(|(p, f)| vec![p.recall.to_string(), p.precision.to_string(), f.to_string()]);
    csv_bytes(&["recall", "precision", "f"], rows)
}

pub fn enriched_json(docs: &[EnrichedDocument]) -> Value {
    let docs: Vec<Value> = docs
        .iter()
        .map(|d| {
            let side = match d.side {
                Side::Requirement(kind) => kind.as_str(),
                Side::Code => "code",
            };
            let biterms: BTreeMap<String, usize> = d.biterm_counts.iter().map(|(b, n)| (b.token(), *n)).collect();
            let parts: BTreeMap<&str, BTreeMap<String, usize>> = d
                .part_biterm_counts
                .iter()
                .map(|(p, m)| (p.as_str(), m.iter().map(|(b, n)| (b.token(), *n)).collect()))
                .collect();
            json!({
                "owner": d.owner,
                "side": side,
                "unigram_counts": d.unigram_counts,
                "biterm_counts": biterms,
                "part_biterm_counts": parts,
            })
        })
        .collect();
    Value::Array(docs)
}

/// Digest of an input file, or of every file under a directory with its
/// relative path.
pub fn input_digest(path: &Path) -> Result<String> {
    let mut hasher = Sha256::new();
    if path.is_file() {
        hasher.update(fs::read(path).map_err(|e| AppError::io(path, e))?);
    } else {
        let mut files: Vec<PathBuf> = Vec::new();
        for entry in walkdir::WalkDir::new(path).sort_by_file_name() {
            let entry = entry.map_err(|e| AppError::format(path, e))?;
            if entry.file_type().is_file() {
                files.push(entry.into_path());
            }
        }
        for f in files {
            let rel = f.strip_prefix(path).unwrap_or(&f);
            hasher.update(rel.to_string_lossy().as_bytes());
            hasher.update([0]);
            hasher.update(fs::read(&f).map_err(|e| AppError::io(&f, e))?);
        }
    }
    Ok(hex::encode(hasher.finalize()))
}
