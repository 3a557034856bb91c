//! Tokenization, identifier splitting, stop words and stemming shared by
//! both artifact sides.

mod normalize;
mod porter;
mod split;
mod stopwords;

pub use normalize::{is_abbreviation, normalize_term, normalize_tokens, tokenize, Term};
pub use porter::porter_stem;
pub use split::split_identifier;
pub use stopwords::StopWords;
