use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A part name that is not one of the known requirement parts.
    UnknownPart {
        name: String,
        valid: Vec<&'static str>,
    },
    /// A known part that the requirement kind does not admit.
    InadmissiblePart {
        requirement: String,
        part: &'static str,
        kind: &'static str,
        valid: Vec<&'static str>,
    },
    DuplicatePart {
        requirement: String,
        part: &'static str,
    },
    DuplicateId {
        what: &'static str,
        id: String,
    },
    EmptyIdentifier {
        class: String,
    },
    /// Trace links whose ids do not resolve against the loaded corpora.
    DanglingLinks(Vec<(String, String)>),
    Conllu {
        line: usize,
        message: String,
    },
    LocatorMismatch {
        expected: String,
        found: String,
    },
    InvalidCorpus(String),
    LsiRank {
        k: usize,
        max: usize,
    },
    EmptyTraceMatrix,
    NoRelevantQueries,
    /// Relevant links that never appear in the ranked universe.
    UnrankedLinks(Vec<(String, String)>),
    EmptySample,
    NonFiniteSample,
}

fn join_pairs(f: &mut fmt::Formatter<'_>, pairs: &[(String, String)]) -> fmt::Result {
    for (i, (r, c)) in pairs.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{r}->{c}")?;
    }
    Ok(())
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnknownPart { name, valid } => {
                write!(f, "unknown part name `{name}`; valid names: {}", valid.join(", "))
            }
            Error::InadmissiblePart {
                requirement,
                part,
                kind,
                valid,
            } => write!(
                f,
                "requirement `{requirement}`: part not admissible for kind {kind}: `{part}`; valid names: {}",
                valid.join(", ")
            ),
            Error::DuplicatePart { requirement, part } => {
                write!(f, "requirement `{requirement}` has part `{part}` twice")
            }
            Error::DuplicateId { what, id } => write!(f, "duplicate {what} id `{id}`"),
            Error::EmptyIdentifier { class } => write!(f, "class `{class}` has an empty identifier"),
            Error::DanglingLinks(pairs) => {
                f.write_str("trace links reference unknown ids: ")?;
                join_pairs(f, pairs)
            }
            Error::Conllu { line, message } => write!(f, "CoNLL-U line {line}: {message}"),
            Error::LocatorMismatch { expected, found } => {
                write!(f, "sentence locator `{found}` does not belong to `{expected}`")
            }
            Error::InvalidCorpus(msg) => write!(f, "invalid corpus: {msg}"),
            Error::LsiRank { k, max } => write!(f, "LSI k = {k} out of range 1..={max}"),
            Error::EmptyTraceMatrix => f.write_str("trace matrix is empty; recall is undefined"),
            Error::NoRelevantQueries => f.write_str("no query has a relevant link"),
            Error::UnrankedLinks(pairs) => {
                f.write_str("relevant links missing from the ranked lists: ")?;
                join_pairs(f, pairs)
            }
            Error::EmptySample => f.write_str("sample is empty"),
            Error::NonFiniteSample => f.write_str("sample contains a non-finite value"),
        }
    }
}

impl core::error::Error for Error {}
