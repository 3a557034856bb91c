use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use super::{Locator, ParsedSentence, ParsedToken, Provenance, Upos};
use crate::{Error, Result};

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Conllu {
        line,
        message: message.into(),
    }
}

struct Pending {
    start_line: usize,
    locator: Option<Locator>,
    tokens: Vec<(usize, ParsedToken)>,
}

impl Pending {
    fn new(line: usize) -> Self {
        Pending {
            start_line: line,
            locator: None,
            tokens: Vec::new(),
        }
    }

    fn finish(self) -> Result<Option<ParsedSentence>> {
        if self.tokens.is_empty() {
            return Ok(None);
        }
        let Some(locator) = self.locator else {
            return Err(err(self.start_line, "sentence has no `# sent_id` locator"));
        };
        let len = self.tokens.len();
        if let Some((line, tok)) = self.tokens.iter().find(|(_, t)| t.head > len) {
            return Err(err(
                *line,
                format!("HEAD {} outside sentence of length {len}", tok.head),
            ));
        }
        Ok(Some(ParsedSentence {
            tokens: self.tokens.into_iter().map(|(_, t)| t).collect(),
            locator: Some(locator),
            provenance: Provenance::Dependency,
        }))
    }
}

/// Reads CoNLL-U text. Multiword-token ranges and empty nodes are skipped;
/// XPOS, FEATS, DEPS and MISC are ignored. Every sentence must carry a
/// `# sent_id = <locator>` comment.
pub fn parse_conllu(text: &str) -> Result<Vec<ParsedSentence>> {
    let mut out = Vec::new();
    let mut cur = Pending::new(1);
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() {
            let done = core::mem::replace(&mut cur, Pending::new(lineno + 1));
            out.extend(done.finish()?);
            continue;
        }
        if cur.tokens.is_empty() && cur.locator.is_none() {
            cur.start_line = lineno;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some((key, value)) = comment.split_once('=') {
                if key.trim() == "sent_id" {
                    let loc = value.trim().parse::<Locator>().map_err(|m| err(lineno, m))?;
                    cur.locator = Some(loc);
                }
            }
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 10 {
            return Err(err(
                lineno,
                format!("expected 10 tab-separated columns, found {}", cols.len()),
            ));
        }
        let id = cols[0];
        if id.contains('-') || id.contains('.') {
            continue;
        }
        let index: usize = id.parse().map_err(|_| err(lineno, format!("bad ID `{id}`")))?;
        if index != cur.tokens.len() + 1 {
            return Err(err(lineno, format!("token ID {index} out of sequence")));
        }
        let upos = match cols[3] {
            "_" => Upos::X,
            tag => Upos::parse(tag).ok_or_else(|| err(lineno, format!("unknown UPOS `{tag}`")))?,
        };
        let head: usize = cols[6]
            .parse()
            .map_err(|_| err(lineno, format!("bad HEAD `{}`", cols[6])))?;
        cur.tokens.push((
            lineno,
            ParsedToken {
                index,
                form: cols[1].to_string(),
                lemma: cols[2].to_string(),
                upos,
                head,
                deprel: cols[7].to_string(),
            },
        ));
    }
    out.extend(cur.finish()?);
    Ok(out)
}

/// Writes sentences as CoNLL-U. Unused columns are `_`; sentences without a
/// locator are written without a `sent_id`.
pub fn write_conllu(sentences: &[ParsedSentence]) -> String {
    let mut out = String::new();
    for s in sentences {
        if let Some(loc) = &s.locator {
            let _ = writeln!(out, "# sent_id = {loc}");
        }
        let _ = writeln!(out, "# text = {}", s.text());
        for t in &s.tokens {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t_\t_\t{}\t{}\t_\t_",
                t.index,
                t.form,
                t.lemma,
                t.upos.as_str(),
                t.head,
                if t.deprel.is_empty() { "_" } else { &t.deprel }
            );
        }
        out.push('\n');
    }
    out
}
