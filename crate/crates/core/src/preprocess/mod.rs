//! Raw text to term lists: markup removal, tokenization, stopword removal
//! and stemming.
//!
//! Stages run in a fixed order: strip markup, tokenize, drop stopwords,
//! stem, then (optionally) append adjacent-pair phrase tokens built from the
//! surviving roots.

mod markup;
mod porter;
mod stopwords;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

pub use markup::strip_markup;
pub use porter::stem;
pub use stopwords::{default_stopwords, load_stopwords, parse_stopwords};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDocument {
    pub id: String,
    pub content: String,
}

impl RawDocument {
    pub fn new(id: impl Into<String>, content: impl Into<String>) -> Self {
        RawDocument {
            id: id.into(),
            content: content.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct PreprocessConfig {
    pub strip_markup: bool,
    pub stopwords: BTreeSet<String>,
    pub stemming: bool,
    /// Also emit `first_second` tokens for adjacent terms.
    pub bigrams: bool,
}

impl Default for PreprocessConfig {
    fn default() -> Self {
        PreprocessConfig {
            strip_markup: true,
            stopwords: default_stopwords(),
            stemming: true,
            bigrams: false,
        }
    }
}

impl PreprocessConfig {
    /// No markup stripping, no stopwords, no stemming, no bigrams.
    pub fn raw() -> Self {
        PreprocessConfig {
            strip_markup: false,
            stopwords: BTreeSet::new(),
            stemming: false,
            bigrams: false,
        }
    }

    pub fn with_stopwords<I, S>(mut self, words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        self.stopwords = words
            .into_iter()
            .map(|w| w.as_ref().to_lowercase())
            .collect();
        self
    }
}

/// The preprocessed terms of one document, in document order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermList {
    pub doc_id: String,
    pub terms: Vec<String>,
}

impl TermList {
    pub fn new(doc_id: impl Into<String>, terms: Vec<String>) -> Self {
        TermList {
            doc_id: doc_id.into(),
            terms,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Lowercases `text` and splits it on every character outside `[a-z0-9]`.
fn split_terms(text: &str) -> Vec<String> {
    text.to_lowercase()
        .split(|c: char| !c.is_ascii_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_owned)
        .collect()
}

fn append_bigrams(terms: &mut Vec<String>) {
    let pairs: Vec<String> = terms
        .windows(2)
        .map(|w| format!("{}_{}", w[0], w[1]))
        .collect();
    terms.extend(pairs);
}

/// Splits text into lowercase alphanumeric terms. Hyphens and apostrophes
/// are separators, so `no-ball` yields `no` and `ball`.
///
/// Stopwords are not removed here. When `config.bigrams` is set, one
/// `t1_t2` token per adjacent pair of non-stopword terms is appended after
/// the unigrams.
pub fn tokenize(text: &str, config: &PreprocessConfig) -> Vec<String> {
    let mut terms = split_terms(text);
    if config.bigrams {
        let mut content = remove_stopwords(&terms, &config.stopwords);
        let unigrams = content.len();
        append_bigrams(&mut content);
        terms.extend(content.drain(unigrams..));
    }
    terms
}

pub fn remove_stopwords(terms: &[String], stopwords: &BTreeSet<String>) -> Vec<String> {
    terms
        .iter()
        .filter(|t| !stopwords.contains(t.as_str()))
        .cloned()
        .collect()
}

pub fn preprocess_document(doc: &RawDocument, config: &PreprocessConfig) -> TermList {
    let text = if config.strip_markup {
        strip_markup(&doc.content)
    } else {
        doc.content.clone()
    };
    let mut terms = remove_stopwords(&split_terms(&text), &config.stopwords);
    if config.stemming {
        terms = terms.iter().map(|t| stem(t)).collect();
        // A stem can coincide with a stopword (e.g. "doing" -> "do").
        terms.retain(|t| !config.stopwords.contains(t));
    }
    if config.bigrams {
        append_bigrams(&mut terms);
    }
    TermList::new(doc.id.clone(), terms)
}
