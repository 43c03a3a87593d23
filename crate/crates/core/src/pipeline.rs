//! Whole-corpus helpers composing the per-document stages.

use crate::error::Result;
use crate::features::{
    build_profile, count_terms, vectorize, DocumentVector, FeatureSet, LabeledProfile,
};
use crate::preprocess::{preprocess_document, PreprocessConfig, RawDocument, TermList};

pub fn preprocess_corpus(docs: &[RawDocument], config: &PreprocessConfig) -> Vec<TermList> {
    docs.iter()
        .map(|d| preprocess_document(d, config))
        .collect()
}

/// Preprocesses a labeled sample corpus and pools it into one profile.
pub fn profile_corpus(
    label: impl Into<String>,
    docs: &[RawDocument],
    config: &PreprocessConfig,
) -> Result<LabeledProfile> {
    build_profile(label, &preprocess_corpus(docs, config))
}

/// Document vectors in input order, plus the ids of documents that had no
/// terms left after preprocessing and were skipped.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusVectors {
    pub vectors: Vec<DocumentVector>,
    pub skipped: Vec<String>,
}

pub fn vectorize_corpus(
    docs: &[RawDocument],
    config: &PreprocessConfig,
    features: &FeatureSet,
) -> Result<CorpusVectors> {
    let mut vectors = Vec::with_capacity(docs.len());
    let mut skipped = Vec::new();
    for terms in preprocess_corpus(docs, config) {
        if terms.is_empty() {
            skipped.push(terms.doc_id);
            continue;
        }
        vectors.push(vectorize(&count_terms(&terms), features)?);
    }
    Ok(CorpusVectors { vectors, skipped })
}
