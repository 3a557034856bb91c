//! Small part-of-speech lexicon for the heuristic tagger.
//!
//! Closed-class words are listed exhaustively; open-class lists hold common
//! English and software-documentation vocabulary. Unknown words fall through
//! to suffix rules and finally default to nouns.

use super::Upos;

const DET: &[&str] = &[
    "a",
    "all",
    "an",
    "another",
    "any",
    "both",
    "each",
    "either",
    "every",
    "few",
    "many",
    "much",
    "neither",
    "no",
    "some",
    "such",
    "that",
    "the",
    "these",
    "this",
    "those",
    "what",
    "whatever",
    "which",
    "whichever",
];

const PRON: &[&str] = &[
    "anybody",
    "anyone",
    "anything",
    "everybody",
    "everyone",
    "everything",
    "he",
    "her",
    "hers",
    "herself",
    "him",
    "himself",
    "his",
    "i",
    "it",
    "its",
    "itself",
    "me",
    "mine",
    "my",
    "myself",
    "nobody",
    "none",
    "nothing",
    "one",
    "our",
    "ours",
    "ourselves",
    "she",
    "somebody",
    "someone",
    "something",
    "their",
    "theirs",
    "them",
    "themselves",
    "they",
    "us",
    "we",
    "who",
    "whoever",
    "whom",
    "whose",
    "you",
    "your",
    "yours",
    "yourself",
    "yourselves",
];

const ADP: &[&str] = &[
    "about",
    "above",
    "across",
    "after",
    "against",
    "along",
    "among",
    "around",
    "as",
    "at",
    "before",
    "behind",
    "below",
    "beneath",
    "beside",
    "between",
    "beyond",
    "by",
    "despite",
    "down",
    "during",
    "except",
    "for",
    "from",
    "in",
    "inside",
    "into",
    "like",
    "near",
    "of",
    "off",
    "on",
    "onto",
    "out",
    "outside",
    "over",
    "per",
    "since",
    "through",
    "throughout",
    "to",
    "toward",
    "towards",
    "under",
    "until",
    "up",
    "upon",
    "via",
    "with",
    "within",
    "without",
];

const AUX: &[&str] = &[
    "am", "are", "be", "been", "being", "can", "could", "did", "do", "does", "had", "has", "have", "having", "is",
    "may", "might", "must", "shall", "should", "was", "were", "will", "would", "cannot",
];

const CCONJ: &[&str] = &["and", "but", "nor", "or", "yet", "plus"];

const SCONJ: &[&str] = &[
    "although", "because", "if", "once", "so", "than", "though", "unless", "whereas", "whether", "while", "when",
    "where", "whenever", "wherever",
];

const PART: &[&str] = &["not", "n't", "to"];

const ADV: &[&str] = &[
    "again",
    "almost",
    "already",
    "also",
    "always",
    "anyway",
    "back",
    "currently",
    "else",
    "even",
    "ever",
    "first",
    "here",
    "how",
    "however",
    "instead",
    "just",
    "later",
    "never",
    "next",
    "now",
    "often",
    "only",
    "otherwise",
    "perhaps",
    "quite",
    "rather",
    "soon",
    "still",
    "then",
    "there",
    "therefore",
    "thus",
    "together",
    "too",
    "very",
    "why",
    "yes",
];

const NUM: &[&str] = &[
    "zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten", "hundred", "thousand",
    "million",
];

const VERB: &[&str] = &[
    "accept",
    "access",
    "add",
    "allow",
    "append",
    "apply",
    "approve",
    "archive",
    "ask",
    "assign",
    "attach",
    "authenticate",
    "authorize",
    "begin",
    "began",
    "begun",
    "bring",
    "brought",
    "build",
    "built",
    "calculate",
    "call",
    "cancel",
    "change",
    "check",
    "choose",
    "chose",
    "chosen",
    "clear",
    "click",
    "close",
    "collect",
    "come",
    "came",
    "compare",
    "compile",
    "complete",
    "compute",
    "configure",
    "confirm",
    "connect",
    "contain",
    "continue",
    "convert",
    "copy",
    "create",
    "decide",
    "declare",
    "decline",
    "decode",
    "define",
    "delete",
    "deliver",
    "deny",
    "describe",
    "determine",
    "disable",
    "display",
    "do",
    "done",
    "download",
    "drop",
    "edit",
    "enable",
    "encode",
    "encrypt",
    "end",
    "ensure",
    "enter",
    "execute",
    "exist",
    "exit",
    "expire",
    "export",
    "extend",
    "extract",
    "fail",
    "fetch",
    "fill",
    "filter",
    "find",
    "found",
    "finish",
    "fix",
    "follow",
    "format",
    "generate",
    "get",
    "got",
    "give",
    "gave",
    "given",
    "go",
    "went",
    "gone",
    "handle",
    "hide",
    "hold",
    "held",
    "identify",
    "ignore",
    "implement",
    "import",
    "include",
    "indicate",
    "initialize",
    "input",
    "insert",
    "install",
    "invoke",
    "keep",
    "kept",
    "know",
    "knew",
    "known",
    "launch",
    "leave",
    "left",
    "let",
    "list",
    "load",
    "locate",
    "lock",
    "log",
    "login",
    "logout",
    "look",
    "make",
    "made",
    "manage",
    "mark",
    "match",
    "merge",
    "modify",
    "move",
    "need",
    "notify",
    "obtain",
    "occur",
    "open",
    "order",
    "output",
    "parse",
    "pass",
    "perform",
    "persist",
    "place",
    "prescribe",
    "present",
    "press",
    "prevent",
    "print",
    "process",
    "produce",
    "prompt",
    "provide",
    "publish",
    "put",
    "query",
    "raise",
    "read",
    "receive",
    "record",
    "redirect",
    "refresh",
    "register",
    "reject",
    "release",
    "reload",
    "remain",
    "remove",
    "render",
    "replace",
    "reply",
    "report",
    "request",
    "require",
    "reset",
    "resolve",
    "respond",
    "restore",
    "retrieve",
    "return",
    "review",
    "run",
    "ran",
    "save",
    "say",
    "said",
    "schedule",
    "search",
    "see",
    "saw",
    "seen",
    "select",
    "send",
    "sent",
    "serialize",
    "set",
    "show",
    "shown",
    "sign",
    "skip",
    "sort",
    "specify",
    "start",
    "stop",
    "store",
    "submit",
    "succeed",
    "support",
    "switch",
    "take",
    "took",
    "taken",
    "tell",
    "told",
    "terminate",
    "test",
    "throw",
    "threw",
    "thrown",
    "track",
    "transfer",
    "transform",
    "translate",
    "trigger",
    "try",
    "turn",
    "type",
    "undo",
    "update",
    "upload",
    "use",
    "validate",
    "verify",
    "view",
    "visit",
    "wait",
    "want",
    "warn",
    "write",
    "wrote",
    "written",
];

const ADJ: &[&str] = &[
    "able",
    "active",
    "actual",
    "additional",
    "adverse",
    "available",
    "bad",
    "basic",
    "big",
    "blank",
    "certain",
    "clinical",
    "common",
    "complete",
    "correct",
    "current",
    "dead",
    "default",
    "different",
    "due",
    "dynamic",
    "easy",
    "electronic",
    "empty",
    "entire",
    "equal",
    "existing",
    "expired",
    "external",
    "fake",
    "false",
    "familiar",
    "final",
    "free",
    "full",
    "general",
    "global",
    "good",
    "great",
    "hard",
    "high",
    "important",
    "inactive",
    "initial",
    "internal",
    "invalid",
    "large",
    "last",
    "late",
    "legal",
    "little",
    "local",
    "long",
    "low",
    "main",
    "major",
    "medical",
    "minor",
    "missing",
    "multiple",
    "necessary",
    "new",
    "next",
    "normal",
    "null",
    "old",
    "optional",
    "other",
    "own",
    "past",
    "pending",
    "personal",
    "possible",
    "previous",
    "primary",
    "private",
    "proper",
    "public",
    "quick",
    "ready",
    "real",
    "recent",
    "relevant",
    "remote",
    "required",
    "right",
    "safe",
    "same",
    "secondary",
    "secure",
    "separate",
    "short",
    "similar",
    "simple",
    "single",
    "small",
    "special",
    "specific",
    "standard",
    "static",
    "successful",
    "sure",
    "true",
    "unique",
    "unknown",
    "upper",
    "urgent",
    "usual",
    "valid",
    "various",
    "whole",
    "wrong",
];

const NOUN: &[&str] = &[
    "account",
    "action",
    "address",
    "administrator",
    "age",
    "alert",
    "appointment",
    "area",
    "attribute",
    "bean",
    "body",
    "button",
    "case",
    "category",
    "child",
    "class",
    "code",
    "comment",
    "condition",
    "content",
    "context",
    "count",
    "data",
    "database",
    "date",
    "day",
    "description",
    "detail",
    "diagnosis",
    "doctor",
    "document",
    "drug",
    "email",
    "entry",
    "error",
    "event",
    "exception",
    "field",
    "file",
    "flow",
    "form",
    "group",
    "hospital",
    "id",
    "immunization",
    "information",
    "item",
    "key",
    "level",
    "line",
    "link",
    "list",
    "mail",
    "message",
    "method",
    "name",
    "number",
    "office",
    "page",
    "parameter",
    "password",
    "patient",
    "person",
    "personnel",
    "phone",
    "physician",
    "prescription",
    "problem",
    "profile",
    "program",
    "property",
    "reaction",
    "reason",
    "record",
    "report",
    "request",
    "requirement",
    "result",
    "role",
    "rule",
    "scenario",
    "screen",
    "server",
    "service",
    "session",
    "status",
    "step",
    "string",
    "system",
    "table",
    "task",
    "text",
    "time",
    "title",
    "type",
    "user",
    "value",
    "visit",
    "way",
    "week",
    "year",
];

fn contains(list: &[&str], w: &str) -> bool {
    list.contains(&w)
}

/// Whether `lower` is ordinary English vocabulary known to the lexicon.
pub fn is_common_word(lower: &str) -> bool {
    lookup(lower).is_some() && lower != "id"
}

/// Direct lexicon lookup on a lowercase word.
pub fn lookup(lower: &str) -> Option<Upos> {
    // closed classes win over open-class homographs ("that", "to", "can")
    let tables: [(&[&str], Upos); 13] = [
        (PART, Upos::Part),
        (DET, Upos::Det),
        (PRON, Upos::Pron),
        (AUX, Upos::Aux),
        (ADP, Upos::Adp),
        (CCONJ, Upos::Cconj),
        (SCONJ, Upos::Sconj),
        (ADV, Upos::Adv),
        (NUM, Upos::Num),
        (VERB, Upos::Verb),
        (ADJ, Upos::Adj),
        (NOUN, Upos::Noun),
        (&[], Upos::X),
    ];
    tables
        .iter()
        .find(|(list, _)| contains(list, lower))
        .map(|(_, tag)| *tag)
}

/// Inflected forms of lexicon verbs: `-s`, `-es`, `-ed`, `-d`, `-ing`
/// (with or without a restored final `e` or a doubled consonant).
fn inflected_verb(lower: &str) -> bool {
    let is_verb = |base: &str| contains(VERB, base);
    for suffix in ["ing", "ed", "es", "s", "d"] {
        if let Some(base) = lower.strip_suffix(suffix) {
            if base.len() < 2 {
                continue;
            }
            if is_verb(base) {
                return true;
            }
            if suffix == "ing" || suffix == "ed" {
                let mut with_e = alloc::string::String::from(base);
                with_e.push('e');
                if is_verb(&with_e) {
                    return true;
                }
                let b = base.as_bytes();
                if b.len() >= 3 && b[b.len() - 1] == b[b.len() - 2] && is_verb(&base[..base.len() - 1]) {
                    return true;
                }
            }
        }
    }
    false
}

/// Tags a single word: lexicon, verb inflections, suffix rules, then noun.
pub fn tag_word(word: &str) -> Upos {
    if word.is_empty() {
        return Upos::X;
    }
    if word.chars().all(|c| !c.is_alphanumeric()) {
        return Upos::Punct;
    }
    if word.chars().all(|c| c.is_numeric() || c == '.' || c == ',') {
        return Upos::Num;
    }
    let lower = word.to_lowercase();
    if let Some(tag) = lookup(&lower) {
        return tag;
    }
    if crate::text::is_abbreviation(word) {
        return Upos::Propn;
    }
    if inflected_verb(&lower) {
        return Upos::Verb;
    }
    // plural nouns
    if let Some(base) = lower.strip_suffix('s') {
        if contains(NOUN, base) {
            return Upos::Noun;
        }
    }
    const NOUN_SUFFIXES: [&str; 3] = ["tion", "ment", "ness"];
    const VERB_SUFFIXES: [&str; 2] = ["ize", "ate"];
    const ADJ_SUFFIXES: [&str; 3] = ["ous", "ful", "able"];
    if NOUN_SUFFIXES
        .iter()
        .any(|s| lower.ends_with(s) || lower.ends_with(&*alloc::format!("{s}s")))
    {
        Upos::Noun
    } else if VERB_SUFFIXES.iter().any(|s| lower.ends_with(s)) {
        Upos::Verb
    } else if ADJ_SUFFIXES.iter().any(|s| lower.ends_with(s)) {
        Upos::Adj
    } else if lower.len() > 4 && lower.ends_with("ly") {
        Upos::Adv
    } else {
        Upos::Noun
    }
}
