//! Artifact types: requirements, per-class code facts and the gold trace matrix.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum RequirementKind {
    UseCase,
    Issue,
}

impl RequirementKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RequirementKind::UseCase => "use_case",
            RequirementKind::Issue => "issue",
        }
    }

    pub fn parts(self) -> &'static [PartName] {
        match self {
            RequirementKind::UseCase => &PartName::USE_CASE,
            RequirementKind::Issue => &PartName::ISSUE,
        }
    }

    pub fn admits(self, part: PartName) -> bool {
        self.parts().contains(&part)
    }

    pub fn parse(s: &str) -> Option<Self> {
        match normalize_name(s).as_str() {
            "use_case" | "usecase" | "uc" => Some(RequirementKind::UseCase),
            "issue" => Some(RequirementKind::Issue),
            _ => None,
        }
    }
}

impl fmt::Display for RequirementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Named section of a requirement. Declaration order is the document order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum PartName {
    Title,
    Precondition,
    MainFlow,
    SubFlow,
    AlternativeFlow,
    Summary,
    Description,
}

impl PartName {
    pub const USE_CASE: [PartName; 5] = [
        PartName::Title,
        PartName::Precondition,
        PartName::MainFlow,
        PartName::SubFlow,
        PartName::AlternativeFlow,
    ];
    pub const ISSUE: [PartName; 2] = [PartName::Summary, PartName::Description];
    pub const ALL: [PartName; 7] = [
        PartName::Title,
        PartName::Precondition,
        PartName::MainFlow,
        PartName::SubFlow,
        PartName::AlternativeFlow,
        PartName::Summary,
        PartName::Description,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PartName::Title => "title",
            PartName::Precondition => "precondition",
            PartName::MainFlow => "main_flow",
            PartName::SubFlow => "sub_flow",
            PartName::AlternativeFlow => "alternative_flow",
            PartName::Summary => "summary",
            PartName::Description => "description",
        }
    }

    /// Accepts the canonical snake_case names as well as header spellings
    /// such as `Main Flow`, `Sub-Flows` or `Preconditions`.
    pub fn parse(s: &str) -> Result<Self> {
        let norm = normalize_name(s);
        let singular = norm.strip_suffix('s').unwrap_or(&norm);
        PartName::ALL
            .iter()
            .copied()
            .find(|p| {
                let canon = p.as_str();
                let squashed = canon.replace('_', "");
                [norm.as_str(), singular].iter().any(|n| *n == canon || *n == squashed)
            })
            .ok_or_else(|| Error::UnknownPart {
                name: s.to_string(),
                valid: PartName::ALL.iter().map(|p| p.as_str()).collect(),
            })
    }
}

impl fmt::Display for PartName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn normalize_name(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.trim().chars() {
        if c == ' ' || c == '-' || c == '_' {
            if !out.ends_with('_') && !out.is_empty() {
                out.push('_');
            }
        } else {
            out.extend(c.to_lowercase());
        }
    }
    while out.ends_with('_') {
        out.pop();
    }
    out
}

/// One requirement split into its named parts.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RequirementDoc {
    pub id: String,
    pub kind: RequirementKind,
    pub parts: BTreeMap<PartName, String>,
}

impl RequirementDoc {
    pub fn new(id: impl Into<String>, kind: RequirementKind) -> Self {
        RequirementDoc {
            id: id.into(),
            kind,
            parts: BTreeMap::new(),
        }
    }

    /// Adds a part, rejecting names the kind does not admit and repeats.
    pub fn add_part(&mut self, part: PartName, text: impl Into<String>) -> Result<()> {
        if !self.kind.admits(part) {
            return Err(Error::InadmissiblePart {
                requirement: self.id.clone(),
                part: part.as_str(),
                kind: self.kind.as_str(),
                valid: self.kind.parts().iter().map(|p| p.as_str()).collect(),
            });
        }
        if self.parts.contains_key(&part) {
            return Err(Error::DuplicatePart {
                requirement: self.id.clone(),
                part: part.as_str(),
            });
        }
        self.parts.insert(part, text.into());
        Ok(())
    }

    pub fn with_part(mut self, part: PartName, text: impl Into<String>) -> Result<Self> {
        self.add_part(part, text)?;
        Ok(self)
    }

    /// Text of a part, empty when the part is absent.
    pub fn part(&self, part: PartName) -> &str {
        self.parts.get(&part).map(String::as_str).unwrap_or("")
    }

    pub fn validate(&self) -> Result<()> {
        for part in self.parts.keys() {
            if !self.kind.admits(*part) {
                return Err(Error::InadmissiblePart {
                    requirement: self.id.clone(),
                    part: part.as_str(),
                    kind: self.kind.as_str(),
                    valid: self.kind.parts().iter().map(|p| p.as_str()).collect(),
                });
            }
        }
        Ok(())
    }
}

/// The kind of identifier or text a code fact was taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum CodeSlot {
    ClassName,
    MethodName,
    InvokedMethod,
    FieldDecl,
    ParamDecl,
    Comment,
}

impl CodeSlot {
    pub const IDENTIFIERS: [CodeSlot; 5] = [
        CodeSlot::ClassName,
        CodeSlot::MethodName,
        CodeSlot::InvokedMethod,
        CodeSlot::FieldDecl,
        CodeSlot::ParamDecl,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CodeSlot::ClassName => "class_name",
            CodeSlot::MethodName => "method_name",
            CodeSlot::InvokedMethod => "invoked_method",
            CodeSlot::FieldDecl => "field_decl",
            CodeSlot::ParamDecl => "param_decl",
            CodeSlot::Comment => "comment",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            CodeSlot::ClassName,
            CodeSlot::MethodName,
            CodeSlot::InvokedMethod,
            CodeSlot::FieldDecl,
            CodeSlot::ParamDecl,
            CodeSlot::Comment,
        ]
        .into_iter()
        .find(|slot| slot.as_str() == s)
    }
}

/// Lexical facts for one source class. Every list keeps one entry per
/// textual occurrence.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CodeClassFacts {
    pub id: String,
    #[cfg_attr(feature = "serde", serde(default))]
    pub class_names: Vec<String>,
    #[cfg_attr(feature = "serde", serde(default))]
    pub method_names: Vec<String>,
    #[cfg_attr(feature = "serde", serde(default))]
    pub invoked_method_names: Vec<String>,
    #[cfg_attr(feature = "serde", serde(default))]
    pub field_decls: Vec<String>,
    #[cfg_attr(feature = "serde", serde(default))]
    pub param_decls: Vec<String>,
    #[cfg_attr(feature = "serde", serde(default))]
    pub comments: Vec<String>,
}

impl CodeClassFacts {
    pub fn new(id: impl Into<String>) -> Self {
        CodeClassFacts {
            id: id.into(),
            ..Default::default()
        }
    }

    /// Identifiers of one identifier slot. `Comment` yields the comments.
    pub fn slot(&self, slot: CodeSlot) -> &[String] {
        match slot {
            CodeSlot::ClassName => &self.class_names,
            CodeSlot::MethodName => &self.method_names,
            CodeSlot::InvokedMethod => &self.invoked_method_names,
            CodeSlot::FieldDecl => &self.field_decls,
            CodeSlot::ParamDecl => &self.param_decls,
            CodeSlot::Comment => &self.comments,
        }
    }

    pub fn slot_mut(&mut self, slot: CodeSlot) -> &mut Vec<String> {
        match slot {
            CodeSlot::ClassName => &mut self.class_names,
            CodeSlot::MethodName => &mut self.method_names,
            CodeSlot::InvokedMethod => &mut self.invoked_method_names,
            CodeSlot::FieldDecl => &mut self.field_decls,
            CodeSlot::ParamDecl => &mut self.param_decls,
            CodeSlot::Comment => &mut self.comments,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.id.trim().is_empty() {
            return Err(Error::EmptyIdentifier { class: self.id.clone() });
        }
        let empty = CodeSlot::IDENTIFIERS
            .iter()
            .any(|slot| self.slot(*slot).iter().any(|s| s.trim().is_empty()));
        if empty {
            return Err(Error::EmptyIdentifier { class: self.id.clone() });
        }
        Ok(())
    }
}

/// Rejects a corpus in which two artifacts share an id.
pub fn check_unique_ids<'a>(what: &'static str, ids: impl IntoIterator<Item = &'a str>) -> Result<()> {
    let mut seen = BTreeSet::new();
    for id in ids {
        if !seen.insert(id) {
            return Err(Error::DuplicateId {
                what,
                id: id.to_string(),
            });
        }
    }
    Ok(())
}

/// Gold-standard requirement-to-class links.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TraceMatrix {
    pub links: BTreeSet<(String, String)>,
}

impl TraceMatrix {
    pub fn from_pairs<R, C>(pairs: impl IntoIterator<Item = (R, C)>) -> Self
    where
        R: Into<String>,
        C: Into<String>,
    {
        TraceMatrix {
            links: pairs.into_iter().map(|(r, c)| (r.into(), c.into())).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    pub fn contains(&self, req_id: &str, class_id: &str) -> bool {
        // BTreeSet<(String, String)> cannot be probed with borrowed strs.
        self.links
            .range((req_id.to_string(), String::new())..)
            .take_while(|(r, _)| r == req_id)
            .any(|(_, c)| c == class_id)
    }

    pub fn requirements(&self) -> BTreeSet<&str> {
        self.links.iter().map(|(r, _)| r.as_str()).collect()
    }

    /// Number of relevant links for one requirement.
    pub fn relevant_for(&self, req_id: &str) -> usize {
        self.links
            .range((req_id.to_string(), String::new())..)
            .take_while(|(r, _)| r == req_id)
            .count()
    }

    /// Fails with every link whose requirement or class id is unknown.
    pub fn validate<'a>(
        &self,
        req_ids: impl IntoIterator<Item = &'a str>,
        class_ids: impl IntoIterator<Item = &'a str>,
    ) -> Result<()> {
        let reqs: BTreeSet<&str> = req_ids.into_iter().collect();
        let classes: BTreeSet<&str> = class_ids.into_iter().collect();
        let dangling: Vec<(String, String)> = self
            .links
            .iter()
            .filter(|(r, c)| !reqs.contains(r.as_str()) || !classes.contains(c.as_str()))
            .cloned()
            .collect();
        if dangling.is_empty() {
            Ok(())
        } else {
            Err(Error::DanglingLinks(dangling))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn part_names_parse_header_spellings() {
        assert_eq!(PartName::parse("Main Flow").unwrap(), PartName::MainFlow);
        assert_eq!(PartName::parse("sub-flows").unwrap(), PartName::SubFlow);
        assert_eq!(PartName::parse("Preconditions").unwrap(), PartName::Precondition);
        assert_eq!(PartName::parse("alternative_flow").unwrap(), PartName::AlternativeFlow);
        assert_eq!(PartName::parse("Title").unwrap(), PartName::Title);
        assert!(matches!(PartName::parse("epilogue"), Err(Error::UnknownPart { .. })));
    }

    #[test]
    fn issue_rejects_use_case_parts() {
        let err = RequirementDoc::new("ISSUE-1", RequirementKind::Issue)
            .with_part(PartName::MainFlow, "x")
            .unwrap_err();
        let msg = alloc::format!("{err}");
        assert!(msg.contains("part not admissible for kind"), "{msg}");
        assert!(msg.contains("summary"));
    }

    #[test]
    fn duplicate_part_rejected() {
        let mut req = RequirementDoc::new("UC1", RequirementKind::UseCase);
        req.add_part(PartName::Title, "a").unwrap();
        assert!(matches!(
            req.add_part(PartName::Title, "b"),
            Err(Error::DuplicatePart { .. })
        ));
    }

    #[test]
    fn trace_matrix_dedups_and_validates() {
        let rtm = TraceMatrix::from_pairs([("UC1", "A"), ("UC1", "A"), ("UC2", "B")]);
        assert_eq!(rtm.len(), 2);
        assert!(rtm.contains("UC1", "A"));
        assert!(!rtm.contains("UC1", "B"));
        assert_eq!(rtm.relevant_for("UC1"), 1);
        let err = rtm.validate(["UC1"], ["A", "B"]).unwrap_err();
        assert_eq!(err, Error::DanglingLinks(alloc::vec![("UC2".into(), "B".into())]));
    }

    #[test]
    fn unique_ids() {
        assert!(check_unique_ids("class", ["a", "b"]).is_ok());
        assert!(check_unique_ids("class", ["a", "a"]).is_err());
    }
}
