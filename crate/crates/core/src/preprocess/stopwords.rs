use std::collections::BTreeSet;
use std::path::Path;

use crate::error::{Error, Result};

const DEFAULT_ENGLISH: &str = include_str!("../../data/stopwords_en.txt");

/// The shipped English stopword list.
pub fn default_stopwords() -> BTreeSet<String> {
    parse_stopwords(DEFAULT_ENGLISH).expect("bundled stopword list is well formed")
}

/// Parses a stopword file: one term per line, `#` starts a comment, blank
/// lines are ignored. Terms are lowercased; a term with inner whitespace is
/// rejected.
pub fn parse_stopwords(text: &str) -> Result<BTreeSet<String>> {
    let mut words = BTreeSet::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = match line.find('#') {
            Some(pos) => &line[..pos],
            None => line,
        };
        let term = line.trim();
        if term.is_empty() {
            continue;
        }
        if term.contains(char::is_whitespace) {
            return Err(Error::InvalidParameter(format!(
                "stopword on line {} contains whitespace: {term:?}",
                lineno + 1
            )));
        }
        words.insert(term.to_lowercase());
    }
    Ok(words)
}

pub fn load_stopwords(path: impl AsRef<Path>) -> Result<BTreeSet<String>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_stopwords(&text)
}
