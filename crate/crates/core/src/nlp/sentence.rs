use alloc::vec::Vec;

const ABBREVIATIONS: &[&str] = &[
    "al", "approx", "cf", "dept", "dr", "e.g", "eg", "esp", "etc", "fig", "i.e", "ie", "inc", "jr", "ltd", "mr", "mrs",
    "ms", "no", "nos", "prof", "resp", "sr", "st", "vs",
];

/// Step labels such as `S1`, `[E2a]`, `3`, `A1:`.
fn is_step_label(word: &str) -> bool {
    let w = word.trim_start_matches(['(', '[']);
    let w = w.trim_end_matches([':', '.', ')', ']']);
    let letters = w.bytes().take_while(|b| b.is_ascii_uppercase()).count();
    if letters > 3 {
        return false;
    }
    let rest = &w[letters..];
    let digits = rest.bytes().take_while(|b| b.is_ascii_digit()).count();
    if digits == 0 {
        return false;
    }
    let tail = &rest[digits..];
    tail.is_empty() || (tail.len() == 1 && tail.as_bytes()[0].is_ascii_lowercase())
}

fn starts_with_label(line: &str) -> bool {
    let t = line.trim_start();
    if t.starts_with("- ") || t.starts_with("* ") || t.starts_with("• ") {
        return true;
    }
    let first = t.split_whitespace().next().unwrap_or("");
    is_step_label(first) && (first.ends_with([':', '.', ')', ']']) || first.starts_with(['[', '(']))
}

fn period_is_guarded(before: &str) -> bool {
    let word = before
        .rsplit(char::is_whitespace)
        .next()
        .unwrap_or("")
        .trim_start_matches(['(', '[', '"', '\'']);
    if word.is_empty() {
        return false;
    }
    let lower = word.to_lowercase();
    if ABBREVIATIONS.contains(&lower.as_str()) {
        return true;
    }
    let mut chars = word.chars();
    if let (Some(c), None) = (chars.next(), chars.next()) {
        // initials like "J." but not a closing parenthesis
        if c.is_alphabetic() {
            return true;
        }
    }
    // a label only guards its period when it opens the sentence
    before.split_whitespace().count() == 1 && is_step_label(word)
}

fn split_block<'a>(block: &'a str, out: &mut Vec<&'a str>) {
    let bytes = block.as_bytes();
    let mut start = 0;
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        if matches!(b, b'.' | b'!' | b'?') {
            let mut end = i + 1;
            while end < bytes.len() && matches!(bytes[end], b'.' | b'!' | b'?' | b'"' | b'\'' | b')' | b']') {
                end += 1;
            }
            let mut next = end;
            while next < bytes.len() && bytes[next].is_ascii_whitespace() {
                next += 1;
            }
            let has_space = next > end;
            let upper_follows = block[next..].chars().next().is_some_and(char::is_uppercase);
            let guarded = b == b'.' && period_is_guarded(&block[start..i]);
            if has_space && upper_follows && !guarded {
                push_trimmed(&block[start..end], out);
                start = next;
                i = next;
                continue;
            }
            i = end;
            continue;
        }
        i += 1;
    }
    push_trimmed(&block[start..], out);
}

fn push_trimmed<'a>(s: &'a str, out: &mut Vec<&'a str>) {
    let t = s.trim();
    if !t.is_empty() {
        out.push(t);
    }
}

/// Splits text into sentences.
///
/// Boundaries are terminal punctuation followed by whitespace and a capital
/// letter, blank lines, and line breaks that begin a new labeled step
/// (`S2:`, `[E1]`, `- `). Periods after known abbreviations, initials and
/// step labels do not end a sentence.
pub fn sentence_split(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut block_start = 0;
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let is_blank = line.trim().is_empty();
        if offset > block_start && (is_blank || starts_with_label(line)) {
            split_block(&text[block_start..offset], &mut out);
            block_start = offset;
        }
        offset += line.len();
        if is_blank {
            block_start = offset;
        }
    }
    if block_start < text.len() {
        split_block(&text[block_start..], &mut out);
    }
    out
}
