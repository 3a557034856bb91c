//! Loaders for requirements, code facts, trace matrices, stop lists and
//! CoNLL-U bundles.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use bitrace_core::java::scan_java_source;
use bitrace_core::model::{check_unique_ids, CodeClassFacts, PartName, RequirementDoc, RequirementKind, TraceMatrix};
use bitrace_core::nlp::parse_conllu;
use bitrace_core::pipeline::ParseBundle;
use bitrace_core::text::StopWords;
use log::warn;
use serde::Deserialize;
use walkdir::WalkDir;

use crate::error::{AppError, Result, StageExt};

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| AppError::io(path, e))
}

/// Files under `path` with one of `extensions`, sorted; `path` itself when
/// it is a file.
fn files_with(path: &Path, extensions: &[&str]) -> Result<Vec<PathBuf>> {
    if path.is_file() {
        return Ok(vec![path.to_path_buf()]);
    }
    if !path.is_dir() {
        return Err(AppError::io(
            path,
            std::io::Error::new(std::io::ErrorKind::NotFound, "no such file or directory"),
        ));
    }
    let mut out = Vec::new();
    for entry in WalkDir::new(path).sort_by_file_name() {
        let entry = entry.map_err(|e| AppError::format(path, e))?;
        let p = entry.path();
        let matches = p
            .extension()
            .and_then(|e| e.to_str())
            .is_some_and(|e| extensions.iter().any(|x| x.eq_ignore_ascii_case(e)));
        if entry.file_type().is_file() && matches {
            out.push(p.to_path_buf());
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RequirementFormat {
    /// By extension: `.json` is JSON, anything else sectioned text.
    #[default]
    Auto,
    Json,
    SectionedText,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RequirementRecord {
    id: String,
    kind: String,
    parts: BTreeMap<String, String>,
}

fn record_to_doc(r: RequirementRecord) -> bitrace_core::Result<RequirementDoc> {
    let kind = RequirementKind::parse(&r.kind).ok_or_else(|| {
        bitrace_core::Error::InvalidCorpus(format!("requirement `{}`: unknown kind `{}`", r.id, r.kind))
    })?;
    let mut doc = RequirementDoc::new(r.id, kind);
    for (name, text) in r.parts {
        doc.add_part(PartName::parse(&name)?, normalize_whitespace(&text))?;
    }
    Ok(doc)
}

/// Parses a JSON array of `{id, kind, parts}` records.
pub fn parse_requirements_json(text: &str, path: &Path) -> Result<Vec<RequirementDoc>> {
    let records: Vec<RequirementRecord> = serde_json::from_str(text).map_err(|e| AppError::format(path, e))?;
    records
        .into_iter()
        .map(|r| record_to_doc(r).map_err(|e| AppError::format(path, e)))
        .collect()
}

/// Trims trailing spaces, collapses runs of spaces and blank lines, and
/// keeps line structure.
pub fn normalize_whitespace(text: &str) -> String {
    let mut lines: Vec<String> = Vec::new();
    for line in text.lines() {
        let collapsed = line.split_whitespace().collect::<Vec<_>>().join(" ");
        if collapsed.is_empty() && lines.last().is_none_or(|l| l.is_empty()) {
            continue;
        }
        lines.push(collapsed);
    }
    while lines.last().is_some_and(|l| l.is_empty()) {
        lines.pop();
    }
    lines.join("\n")
}

fn header(line: &str) -> Option<&str> {
    let t = line.trim();
    let inner = t.strip_prefix("==")?.strip_suffix("==")?;
    let inner = inner.trim();
    (!inner.is_empty()).then_some(inner)
}

/// Parses a sectioned text requirement: `== Part ==` headers followed by
/// their text. Optional `== Id: X ==` and `== Kind: issue ==` headers set
/// the id (default `default_id`) and kind (default inferred from parts).
pub fn parse_sectioned(text: &str, default_id: &str, path: &Path) -> Result<RequirementDoc> {
    let mut id = default_id.to_string();
    let mut kind = None;
    let mut sections: Vec<(PartName, String)> = Vec::new();
    let mut current: Option<usize> = None;
    for line in text.lines() {
        if let Some(h) = header(line) {
            if let Some((key, value)) = h.split_once(':') {
                match key.trim().to_ascii_lowercase().as_str() {
                    "id" => id = value.trim().to_string(),
                    "kind" => {
                        kind = Some(RequirementKind::parse(value).ok_or_else(|| {
                            AppError::format(path, format!("unknown requirement kind `{}`", value.trim()))
                        })?)
                    }
                    other => return Err(AppError::format(path, format!("unknown header `{other}`"))),
                }
                current = None;
                continue;
            }
            let part = PartName::parse(h).map_err(|e| AppError::format(path, e))?;
            sections.push((part, String::new()));
            current = Some(sections.len() - 1);
            continue;
        }
        match current {
            Some(i) => {
                sections[i].1.push_str(line);
                sections[i].1.push('\n');
            }
            None if line.trim().is_empty() => {}
            None => warn!("{}: text outside any section ignored: {}", path.display(), line.trim()),
        }
    }
    let kind = kind.unwrap_or_else(|| {
        if sections
            .iter()
            .any(|(p, _)| matches!(p, PartName::Summary | PartName::Description))
        {
            RequirementKind::Issue
        } else {
            RequirementKind::UseCase
        }
    });
    let mut doc = RequirementDoc::new(id, kind);
    for (part, body) in sections {
        doc.add_part(part, normalize_whitespace(&body))
            .map_err(|e| AppError::format(path, e))?;
    }
    Ok(doc)
}

/// Loads requirements from a file or from every `.json`/`.txt` file in a
/// directory.
pub fn load_requirements(path: &Path, format: RequirementFormat) -> Result<Vec<RequirementDoc>> {
    let mut docs = Vec::new();
    for file in files_with(path, &["json", "txt", "md", "uc"])? {
        let text = read_text(&file)?;
        let is_json = match format {
            RequirementFormat::Json => true,
            RequirementFormat::SectionedText => false,
            RequirementFormat::Auto => file.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")),
        };
        if is_json {
            docs.extend(parse_requirements_json(&text, &file)?);
        } else {
            let stem = file.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
            docs.push(parse_sectioned(&text, stem, &file)?);
        }
    }
    check_unique_ids("requirement", docs.iter().map(|d| d.id.as_str())).map_err(|e| AppError::format(path, e))?;
    Ok(docs)
}

/// Loads a JSON array of code facts.
pub fn load_code_facts(path: &Path) -> Result<Vec<CodeClassFacts>> {
    let text = read_text(path)?;
    let facts: Vec<CodeClassFacts> = serde_json::from_str(&text).map_err(|e| AppError::format(path, e))?;
    check_unique_ids("class", facts.iter().map(|f| f.id.as_str())).map_err(|e| AppError::format(path, e))?;
    for f in &facts {
        f.validate().map_err(|e| AppError::format(path, e))?;
    }
    Ok(facts)
}

/// Scans every `.java` file under `dir`. Unreadable files and repeated
/// class ids are skipped with a warning.
pub fn scan_java_sources(dir: &Path) -> Result<Vec<CodeClassFacts>> {
    let mut facts: Vec<CodeClassFacts> = Vec::new();
    let mut seen = BTreeSet::new();
    for file in files_with(dir, &["java"])? {
        let bytes = match fs::read(&file) {
            Ok(b) => b,
            Err(e) => {
                warn!("{}: skipped: {e}", file.display());
                continue;
            }
        };
        let src = String::from_utf8_lossy(&bytes);
        for f in scan_java_source(&src) {
            if seen.insert(f.id.clone()) {
                facts.push(f);
            } else {
                warn!("{}: class `{}` already scanned; skipped", file.display(), f.id);
            }
        }
    }
    if facts.is_empty() {
        warn!("{}: no Java classes found", dir.display());
    }
    Ok(facts)
}

/// Loads a `req_id,class_id` CSV. A header row is optional; duplicates
/// collapse.
pub fn load_rtm(path: &Path) -> Result<TraceMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(false)
        .from_path(path)
        .map_err(|e| AppError::format(path, e))?;
    let mut pairs = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| AppError::format(path, e))?;
        if record.len() != 2 {
            return Err(AppError::format(path, format!("line {}: expected 2 columns", i + 1)));
        }
        let (r, c) = (&record[0], &record[1]);
        if i == 0 && r.eq_ignore_ascii_case("req_id") && c.eq_ignore_ascii_case("class_id") {
            continue;
        }
        if r.is_empty() || c.is_empty() {
            return Err(AppError::format(path, format!("line {}: empty id", i + 1)));
        }
        pairs.push((r.to_string(), c.to_string()));
    }
    Ok(TraceMatrix::from_pairs(pairs))
}

/// Loads one word per line, `#` starting a comment.
pub fn load_stop_list(path: &Path) -> Result<StopWords> {
    Ok(StopWords::from_lines(&read_text(path)?))
}

/// Reads every `.conllu` file under `path` into one bundle.
pub fn load_conllu_bundle(path: &Path) -> Result<ParseBundle> {
    let mut bundle = ParseBundle::new();
    for file in files_with(path, &["conllu", "conll"])? {
        let sentences = parse_conllu(&read_text(&file)?).map_err(|e| AppError::format(&file, e))?;
        bundle.extend(sentences).stage("parse")?;
    }
    Ok(bundle)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sectioned_text() {
        let text = "== Title ==\nSend fake email\n\n== Main Flow ==\nS1: The HCP   selects.\n\n\nS2: Done.\n";
        let doc = parse_sectioned(text, "UC35", Path::new("UC35.txt")).unwrap();
        assert_eq!(doc.id, "UC35");
        assert_eq!(doc.kind, RequirementKind::UseCase);
        assert_eq!(doc.part(PartName::Title), "Send fake email");
        assert_eq!(doc.part(PartName::MainFlow), "S1: The HCP selects.\n\nS2: Done.");
    }

    #[test]
    fn sectioned_issue_with_headers() {
        let text = "== Id: BUG-7 ==\n== Summary ==\nCrash\n== Description ==\nIt crashes.\n";
        let doc = parse_sectioned(text, "file", Path::new("f.txt")).unwrap();
        assert_eq!(doc.id, "BUG-7");
        assert_eq!(doc.kind, RequirementKind::Issue);
        let bad = "== Kind: issue ==\n== Main Flow ==\nx\n";
        let err = parse_sectioned(bad, "f", Path::new("f.txt")).unwrap_err();
        assert!(err.to_string().contains("part not admissible for kind"));
    }

    #[test]
    fn json_records() {
        let text = r#"[{"id":"UC35","kind":"use_case","parts":{"title":"Send","sub_flow":"S1: A fake email..."}}]"#;
        let docs = parse_requirements_json(text, Path::new("r.json")).unwrap();
        assert_eq!(docs[0].parts.len(), 2);
        let bad = r#"[{"id":"I1","kind":"issue","parts":{"main_flow":"x"}}]"#;
        let err = parse_requirements_json(bad, Path::new("r.json")).unwrap_err();
        assert!(err.to_string().contains("part not admissible for kind"));
    }

    #[test]
    fn whitespace() {
        assert_eq!(normalize_whitespace("  a  b \n\n\n c\n\n"), "a b\n\nc");
        assert_eq!(normalize_whitespace("\n\nx"), "x");
    }
}
