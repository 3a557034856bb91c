//! Lexical Java fact extraction.
//!
//! A tokenizer plus bracket-depth bookkeeping recovers class, method, call,
//! field and parameter identifiers and the comments preceding class and
//! method declarations. There is no grammar: broken input yields fewer facts,
//! never an error. Everything declared inside a top-level class, including
//! nested and anonymous classes, is attributed to that top-level class.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::model::CodeClassFacts;

const KEYWORDS: &[&str] = &[
    "abstract",
    "assert",
    "boolean",
    "break",
    "byte",
    "case",
    "catch",
    "char",
    "class",
    "const",
    "continue",
    "default",
    "do",
    "double",
    "else",
    "enum",
    "extends",
    "final",
    "finally",
    "float",
    "for",
    "goto",
    "if",
    "implements",
    "import",
    "instanceof",
    "int",
    "interface",
    "long",
    "native",
    "new",
    "package",
    "private",
    "protected",
    "public",
    "return",
    "short",
    "static",
    "strictfp",
    "super",
    "switch",
    "synchronized",
    "this",
    "throw",
    "throws",
    "transient",
    "try",
    "void",
    "volatile",
    "while",
    "true",
    "false",
    "null",
    "var",
    "yield",
    "sealed",
    "permits",
    "non",
];

const PRIMITIVES: &[&str] = &[
    "boolean", "byte", "char", "double", "float", "int", "long", "short", "void", "var",
];

const MODIFIERS: &[&str] = &[
    "public",
    "private",
    "protected",
    "static",
    "final",
    "abstract",
    "transient",
    "volatile",
    "synchronized",
    "native",
    "strictfp",
    "default",
    "sealed",
];

fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok<'a> {
    Ident(&'a str),
    Punct(char),
    Literal,
    Comment(String),
}

impl<'a> Tok<'a> {
    fn is_punct(&self, c: char) -> bool {
        matches!(self, Tok::Punct(p) if *p == c)
    }

    fn ident(&self) -> Option<&'a str> {
        match self {
            Tok::Ident(s) => Some(*s),
            _ => None,
        }
    }
}

fn clean_comment(raw: &str) -> String {
    let body = if let Some(rest) = raw.strip_prefix("//") {
        rest
    } else {
        let inner = raw.strip_prefix("/*").unwrap_or(raw);
        let inner = inner.strip_suffix("*/").unwrap_or(inner);
        inner.strip_prefix('*').unwrap_or(inner)
    };
    let mut out = String::new();
    for line in body.lines() {
        let line = line.trim().trim_start_matches('*').trim();
        for word in line.split_whitespace() {
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(word);
        }
    }
    out
}

fn lex(src: &str) -> Vec<Tok<'_>> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        if b.is_ascii_whitespace() {
            i += 1;
        } else if src[i..].starts_with("//") {
            let end = src[i..].find('\n').map_or(bytes.len(), |e| i + e);
            toks.push(Tok::Comment(clean_comment(&src[i..end])));
            i = end;
        } else if src[i..].starts_with("/*") {
            let end = src[i + 2..].find("*/").map_or(bytes.len(), |e| i + 2 + e + 2);
            toks.push(Tok::Comment(clean_comment(&src[i..end])));
            i = end;
        } else if src[i..].starts_with("\"\"\"") {
            let end = src[i + 3..].find("\"\"\"").map_or(bytes.len(), |e| i + 3 + e + 3);
            toks.push(Tok::Literal);
            i = end;
        } else if b == b'"' || b == b'\'' {
            let mut j = i + 1;
            while j < bytes.len() && bytes[j] != b && bytes[j] != b'\n' {
                j += if bytes[j] == b'\\' { 2 } else { 1 };
            }
            toks.push(Tok::Literal);
            i = (j + 1).min(bytes.len());
        } else if b.is_ascii_digit() {
            let mut j = i;
            while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'.' || bytes[j] == b'_') {
                j += 1;
            }
            toks.push(Tok::Literal);
            i = j;
        } else {
            let c = src[i..].chars().next().unwrap_or(' ');
            if c.is_alphabetic() || c == '_' || c == '$' {
                let start = i;
                let mut j = i;
                for ch in src[i..].chars() {
                    if ch.is_alphanumeric() || ch == '_' || ch == '$' {
                        j += ch.len_utf8();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Ident(&src[start..j]));
                i = j;
            } else {
                toks.push(Tok::Punct(c));
                i += c.len_utf8();
            }
        }
    }
    toks
}

/// Index of the token closing the bracket opened at `open`.
fn matching(toks: &[Tok<'_>], open: usize, o: char, c: char) -> Option<usize> {
    let mut depth = 0usize;
    for (k, t) in toks.iter().enumerate().skip(open) {
        if t.is_punct(o) {
            depth += 1;
        } else if t.is_punct(c) {
            depth = depth.saturating_sub(1);
            if depth == 0 {
                return Some(k);
            }
        }
    }
    None
}

/// First index at or after `from` holding `{` or `;` outside parentheses.
fn next_open_or_semi(toks: &[Tok<'_>], from: usize) -> Option<usize> {
    let mut depth = 0usize;
    for (k, t) in toks.iter().enumerate().skip(from) {
        match t {
            Tok::Punct('(') => depth += 1,
            Tok::Punct(')') => depth = depth.saturating_sub(1),
            Tok::Punct('{') | Tok::Punct(';') | Tok::Punct('}') if depth == 0 => return Some(k),
            _ => {}
        }
    }
    None
}

/// Skips an annotation starting at `at` (the `@`); returns the next index.
fn skip_annotation(toks: &[Tok<'_>], at: usize) -> usize {
    let mut k = at + 1;
    while matches!(toks.get(k), Some(Tok::Ident(_))) {
        k += 1;
        if matches!(toks.get(k), Some(Tok::Punct('.'))) && matches!(toks.get(k + 1), Some(Tok::Ident(_))) {
            k += 1;
        } else {
            break;
        }
    }
    if k < toks.len() && toks[k].is_punct('(') {
        k = matching(toks, k, '(', ')').map_or(toks.len(), |m| m + 1);
    }
    k
}

/// Identifier tokens of a parameter list, annotations and keywords removed.
fn parameter_identifiers<'a>(toks: &[Tok<'a>]) -> Vec<&'a str> {
    let mut out = Vec::new();
    let mut k = 0;
    while k < toks.len() {
        match &toks[k] {
            Tok::Punct('@') => k = skip_annotation(toks, k),
            Tok::Ident(s) => {
                if !is_keyword(s) {
                    out.push(*s);
                }
                k += 1;
            }
            _ => k += 1,
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Scope {
    /// Members of a class; `enum_constants` while still in an enum's constant list.
    ClassBody { enum_constants: bool },
    /// Method, constructor or initializer body.
    Body,
    /// Any other brace block (lambdas, array initializers, control flow).
    Block,
}

struct Scanner<'a> {
    toks: Vec<Tok<'a>>,
    package: Option<String>,
    facts: Vec<CodeClassFacts>,
    current: Option<usize>,
    stack: Vec<Scope>,
    opens: alloc::collections::BTreeMap<usize, Scope>,
    named_bodies: alloc::collections::BTreeMap<usize, &'a str>,
    saved_statements: Vec<Vec<Tok<'a>>>,
    pending_comments: Vec<String>,
    statement: Vec<Tok<'a>>,
    class_names: Vec<Option<&'a str>>,
}

impl<'a> Scanner<'a> {
    fn in_member_scope(&self) -> bool {
        matches!(self.stack.last(), None | Some(Scope::ClassBody { .. }))
    }

    fn in_class(&self) -> bool {
        self.stack.iter().any(|s| matches!(s, Scope::ClassBody { .. }))
    }

    fn facts(&mut self) -> Option<&mut CodeClassFacts> {
        self.current.map(|i| &mut self.facts[i])
    }

    fn flush_comments(&mut self) {
        let pending = core::mem::take(&mut self.pending_comments);
        if let Some(f) = self.facts() {
            f.comments.extend(pending.into_iter().filter(|c| !c.is_empty()));
        }
    }

    fn run(mut self) -> Vec<CodeClassFacts> {
        let mut i = 0;
        while i < self.toks.len() {
            i = self.step(i);
        }
        self.facts
    }

    fn step(&mut self, i: usize) -> usize {
        let tok = self.toks[i].clone();
        match tok {
            Tok::Comment(text) => {
                if self.in_member_scope() {
                    self.pending_comments.push(text);
                }
                i + 1
            }
            Tok::Punct('@') => {
                if matches!(self.toks.get(i + 1), Some(Tok::Ident("interface"))) {
                    return self.class_decl(i + 1);
                }
                skip_annotation(&self.toks, i)
            }
            Tok::Punct('{') => {
                let scope = self.opens.remove(&i).unwrap_or_else(|| match self.stack.last() {
                    Some(Scope::ClassBody { enum_constants: true }) => Scope::ClassBody { enum_constants: false },
                    Some(Scope::ClassBody { enum_constants: false }) if self.is_initializer() => Scope::Body,
                    _ => Scope::Block,
                });
                if matches!(self.stack.last(), Some(Scope::ClassBody { .. })) && scope == Scope::Body {
                    self.statement.clear();
                }
                self.stack.push(scope);
                if matches!(scope, Scope::ClassBody { .. }) {
                    self.class_names.push(self.named_bodies.remove(&i));
                    let outer = core::mem::take(&mut self.statement);
                    self.saved_statements.push(outer);
                }
                i + 1
            }
            Tok::Punct('}') => {
                if let Some(scope) = self.stack.pop() {
                    if matches!(scope, Scope::ClassBody { .. }) {
                        self.class_names.pop();
                        self.statement = self.saved_statements.pop().unwrap_or_default();
                        if !self.in_class() {
                            self.current = None;
                        }
                    }
                    if scope == Scope::Body {
                        self.statement.clear();
                    }
                }
                i + 1
            }
            Tok::Punct(';') => {
                match self.stack.last_mut() {
                    Some(Scope::ClassBody { enum_constants }) if *enum_constants => {
                        *enum_constants = false;
                        self.statement.clear();
                    }
                    Some(Scope::ClassBody { .. }) => self.finish_field(),
                    _ => {}
                }
                i + 1
            }
            Tok::Ident(word) => self.ident(i, word),
            other => {
                if matches!(self.stack.last(), Some(Scope::ClassBody { .. })) {
                    self.statement.push(other);
                }
                i + 1
            }
        }
    }

    fn is_initializer(&self) -> bool {
        self.statement.iter().all(|t| matches!(t, Tok::Ident("static")))
    }

    fn ident(&mut self, i: usize, word: &'a str) -> usize {
        let prev_dot = i > 0 && self.toks[i - 1].is_punct('.');
        let next_paren = self.toks.get(i + 1).is_some_and(|t| t.is_punct('('));
        if self.stack.is_empty() && (word == "package" || word == "import") {
            let end = (i..self.toks.len())
                .find(|&k| self.toks[k].is_punct(';'))
                .unwrap_or(self.toks.len());
            if word == "package" {
                let name: Vec<&str> = self.toks[i + 1..end].iter().filter_map(|t| t.ident()).collect();
                self.package = Some(name.join("."));
            }
            self.pending_comments.clear();
            return end + 1;
        }
        if matches!(word, "class" | "interface" | "enum" | "record") && !prev_dot {
            if let Some(Tok::Ident(_)) = self.toks.get(i + 1) {
                return self.class_decl(i);
            }
        }
        if word == "new" {
            self.mark_anonymous(i);
        }
        match self.stack.last().copied() {
            Some(Scope::ClassBody { enum_constants: true }) => {
                if next_paren {
                    return matching(&self.toks, i + 1, '(', ')').map_or(self.toks.len(), |m| m + 1);
                }
                i + 1
            }
            Some(Scope::ClassBody { .. }) => {
                let in_initializer = self.statement.iter().any(|t| t.is_punct('='));
                if next_paren && !is_keyword(word) && !in_initializer {
                    return self.method_decl(i, word);
                }
                self.statement.push(Tok::Ident(word));
                i + 1
            }
            Some(Scope::Body) | Some(Scope::Block) => {
                let after_new = i > 0 && matches!(self.toks[i - 1], Tok::Ident("new"));
                if next_paren && !is_keyword(word) && !after_new {
                    if let Some(f) = self.facts() {
                        f.invoked_method_names.push(word.to_string());
                    }
                }
                i + 1
            }
            None => i + 1,
        }
    }

    /// Records that the `{` after `new Type(...)` opens an anonymous class.
    fn mark_anonymous(&mut self, at: usize) {
        let mut k = at + 1;
        let mut angle = 0usize;
        while k < self.toks.len() {
            match &self.toks[k] {
                Tok::Ident(_) | Tok::Punct('.') | Tok::Punct(',') | Tok::Punct('?') => k += 1,
                Tok::Punct('<') => {
                    angle += 1;
                    k += 1;
                }
                Tok::Punct('>') if angle > 0 => {
                    angle -= 1;
                    k += 1;
                }
                Tok::Punct('(') if angle == 0 => {
                    if let Some(close) = matching(&self.toks, k, '(', ')') {
                        if self.toks.get(close + 1).is_some_and(|t| t.is_punct('{')) {
                            self.opens.insert(close + 1, Scope::ClassBody { enum_constants: false });
                        }
                    }
                    return;
                }
                _ => return,
            }
        }
    }

    fn class_decl(&mut self, keyword_at: usize) -> usize {
        let Some(name) = self.toks.get(keyword_at + 1).and_then(|t| t.ident()) else {
            return keyword_at + 1;
        };
        if !self.in_class() {
            let id = match &self.package {
                Some(p) if !p.is_empty() => alloc::format!("{p}.{name}"),
                _ => name.to_string(),
            };
            self.facts.push(CodeClassFacts::new(id));
            self.current = Some(self.facts.len() - 1);
        }
        if let Some(f) = self.facts() {
            f.class_names.push(name.to_string());
        }
        self.flush_comments();
        self.statement.clear();
        let is_enum = matches!(self.toks[keyword_at], Tok::Ident("enum"));
        match next_open_or_semi(&self.toks, keyword_at + 2) {
            Some(open) if self.toks[open].is_punct('{') => {
                self.opens.insert(
                    open,
                    Scope::ClassBody {
                        enum_constants: is_enum,
                    },
                );
                self.named_bodies.insert(open, name);
                open
            }
            Some(other) => other + 1,
            None => self.toks.len(),
        }
    }

    fn method_decl(&mut self, name_at: usize, name: &'a str) -> usize {
        let prev = self.statement.last();
        let returns_type = match prev {
            Some(Tok::Ident(p)) => !MODIFIERS.contains(p) && (!is_keyword(p) || PRIMITIVES.contains(p)),
            Some(Tok::Punct('>')) | Some(Tok::Punct(']')) => true,
            _ => false,
        };
        let enclosing = self.class_names.last().copied().flatten();
        let is_constructor = !returns_type || enclosing == Some(name);
        let Some(close) = matching(&self.toks, name_at + 1, '(', ')') else {
            return self.toks.len();
        };
        let params = parameter_identifiers(&self.toks[name_at + 2..close]);
        self.flush_comments();
        if let Some(f) = self.facts() {
            if !is_constructor {
                f.method_names.push(name.to_string());
            }
            f.param_decls.extend(params.into_iter().map(ToString::to_string));
        }
        self.statement.clear();
        match next_open_or_semi(&self.toks, close + 1) {
            Some(open) if self.toks[open].is_punct('{') => {
                self.opens.insert(open, Scope::Body);
                open
            }
            Some(semi) if self.toks[semi].is_punct(';') => semi + 1,
            Some(other) => other,
            None => self.toks.len(),
        }
    }

    fn finish_field(&mut self) {
        let stmt = core::mem::take(&mut self.statement);
        let mut k = 0;
        while k < stmt.len() && matches!(&stmt[k], Tok::Ident(m) if MODIFIERS.contains(m)) {
            k += 1;
        }
        let stmt = &stmt[k..];
        // head: type tokens and the first declared name
        let mut depth = 0i32;
        let mut head_end = stmt.len();
        for (k, t) in stmt.iter().enumerate() {
            match t {
                Tok::Punct('<') | Tok::Punct('(') | Tok::Punct('[') => depth += 1,
                Tok::Punct('>') | Tok::Punct(')') | Tok::Punct(']') => depth -= 1,
                Tok::Punct('=') | Tok::Punct(',') if depth <= 0 => {
                    head_end = k;
                    break;
                }
                _ => {}
            }
        }
        let mut idents: Vec<&str> = stmt[..head_end]
            .iter()
            .filter_map(|t| t.ident())
            .filter(|s| !is_keyword(s))
            .collect();
        let declared_words = stmt[..head_end].iter().filter(|t| matches!(t, Tok::Ident(_))).count();
        if declared_words < 2 || idents.is_empty() {
            return;
        }
        let mut names: Vec<&str> = Vec::new();
        names.extend(idents.pop());
        // later declarators: `, name [= init]`
        let mut depth = 0i32;
        let mut expect_name = false;
        for t in &stmt[head_end..] {
            match t {
                Tok::Punct('<') | Tok::Punct('(') | Tok::Punct('[') | Tok::Punct('{') => depth += 1,
                Tok::Punct('>') | Tok::Punct(')') | Tok::Punct(']') | Tok::Punct('}') => depth -= 1,
                Tok::Punct(',') if depth <= 0 => expect_name = true,
                Tok::Ident(s) if expect_name && depth <= 0 => {
                    names.push(s);
                    expect_name = false;
                }
                _ => {}
            }
        }
        if let Some(f) = self.facts() {
            f.field_decls.extend(idents.iter().map(|s| s.to_string()));
            f.field_decls.extend(names.iter().map(|s| s.to_string()));
        }
    }
}

/// Extracts facts for every top-level class in one Java compilation unit.
/// Class ids are qualified with the file's package when one is declared.
pub fn scan_java_source(src: &str) -> Vec<CodeClassFacts> {
    Scanner {
        toks: lex(src),
        package: None,
        facts: Vec::new(),
        current: None,
        stack: Vec::new(),
        opens: Default::default(),
        named_bodies: Default::default(),
        saved_statements: Vec::new(),
        pending_comments: Vec::new(),
        statement: Vec::new(),
        class_names: Vec::new(),
    }
    .run()
}
