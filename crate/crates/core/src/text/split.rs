use alloc::vec::Vec;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Class {
    Upper,
    Lower,
    Digit,
    Sep,
}

fn classify(c: char) -> Class {
    if c.is_numeric() {
        Class::Digit
    } else if c.is_uppercase() {
        Class::Upper
    } else if c.is_alphabetic() {
        // caseless scripts group with lowercase
        Class::Lower
    } else {
        Class::Sep
    }
}

/// Splits an identifier at separators, camelCase humps, acronym runs
/// (`HTTPServer` -> `HTTP`, `Server`) and letter/digit boundaries.
///
/// Fragments borrow from `name`, keep their original case and order, and are
/// never empty.
pub fn split_identifier(name: &str) -> Vec<&str> {
    let chars: Vec<(usize, Class)> = name.char_indices().map(|(i, c)| (i, classify(c))).collect();
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for k in 0..chars.len() {
        let (pos, class) = chars[k];
        if class == Class::Sep {
            if let Some(s) = start.take() {
                out.push(&name[s..pos]);
            }
            continue;
        }
        let Some(s) = start else {
            start = Some(pos);
            continue;
        };
        let prev = chars[k - 1].1;
        let boundary = match (prev, class) {
            (Class::Lower, Class::Upper) => Some(pos),
            (Class::Digit, Class::Upper | Class::Lower) | (Class::Upper | Class::Lower, Class::Digit) => Some(pos),
            // acronym run followed by a capitalized word: split before the last capital
            (Class::Upper, Class::Lower) if k >= 2 && chars[k - 2].1 == Class::Upper && chars[k - 1].0 > s => {
                Some(chars[k - 1].0)
            }
            _ => None,
        };
        if let Some(b) = boundary {
            out.push(&name[s..b]);
            start = Some(b);
        }
    }
    if let Some(s) = start {
        out.push(&name[s..]);
    }
    out
}
