//! Bag-of-words counts, per-10000 word frequencies (WF), labeled WF profiles
//! and discriminative feature selection.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::preprocess::TermList;

/// Scale of a word frequency: occurrences per this many words.
pub const WF_SCALE: f64 = 10_000.0;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BagOfWords {
    pub doc_id: String,
    pub counts: BTreeMap<String, u64>,
    /// Number of terms in the source term list; always the sum of `counts`.
    pub total: u64,
}

impl BagOfWords {
    pub fn count(&self, term: &str) -> u64 {
        self.counts.get(term).copied().unwrap_or(0)
    }
}

pub fn count_terms(terms: &TermList) -> BagOfWords {
    let mut counts = BTreeMap::new();
    for t in &terms.terms {
        *counts.entry(t.clone()).or_insert(0) += 1;
    }
    BagOfWords {
        doc_id: terms.doc_id.clone(),
        counts,
        total: terms.terms.len() as u64,
    }
}

/// `count / total * 10000`, unrounded.
pub fn word_frequency(count: u64, total: u64) -> Result<f64> {
    if total == 0 {
        return Err(Error::EmptyDocument);
    }
    if count > total {
        return Err(Error::InvalidParameter(format!(
            "word count {count} exceeds document length {total}"
        )));
    }
    Ok(count as f64 / total as f64 * WF_SCALE)
}

/// Ordered, duplicate-free list of feature terms; position defines the
/// vector dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct FeatureSet {
    features: Vec<String>,
}

impl FeatureSet {
    pub fn new(features: Vec<String>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for f in &features {
            if f.is_empty() {
                return Err(Error::InvalidParameter("empty feature term".into()));
            }
            if !seen.insert(f.as_str()) {
                return Err(Error::InvalidParameter(format!("duplicate feature {f:?}")));
            }
        }
        Ok(FeatureSet { features })
    }

    pub fn terms(&self) -> &[String] {
        &self.features
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    pub fn position(&self, term: &str) -> Option<usize> {
        self.features.iter().position(|f| f == term)
    }
}

impl TryFrom<Vec<String>> for FeatureSet {
    type Error = Error;

    fn try_from(features: Vec<String>) -> Result<Self> {
        FeatureSet::new(features)
    }
}

impl From<FeatureSet> for Vec<String> {
    fn from(fs: FeatureSet) -> Self {
        fs.features
    }
}

/// Pooled word frequencies of a labeled sample corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledProfile {
    pub label: String,
    pub wf: BTreeMap<String, f64>,
}

impl LabeledProfile {
    /// WF of `term`, zero when the term never occurred in the corpus.
    pub fn get(&self, term: &str) -> f64 {
        self.wf.get(term).copied().unwrap_or(0.0)
    }

    /// The profile restricted to the feature dimensions.
    pub fn project(&self, features: &FeatureSet) -> Vec<f64> {
        features.terms().iter().map(|t| self.get(t)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocumentVector {
    pub doc_id: String,
    pub values: Vec<f64>,
}

/// Pools counts over all documents and divides by the pooled length, giving
/// one WF per term for the whole labeled corpus.
pub fn build_profile(label: impl Into<String>, docs: &[TermList]) -> Result<LabeledProfile> {
    let mut counts: BTreeMap<&str, u64> = BTreeMap::new();
    let mut total = 0u64;
    for doc in docs {
        total += doc.terms.len() as u64;
        for t in &doc.terms {
            *counts.entry(t.as_str()).or_insert(0) += 1;
        }
    }
    if total == 0 {
        return Err(Error::EmptyCorpus);
    }
    let wf = counts
        .into_iter()
        .map(|(t, c)| Ok((t.to_owned(), word_frequency(c, total)?)))
        .collect::<Result<_>>()?;
    Ok(LabeledProfile {
        label: label.into(),
        wf,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SelectionParams {
    pub top_k: usize,
    /// Minimum discrimination ratio, at least 1.
    pub min_ratio: f64,
    /// Minimum WF in the label where the term is most frequent.
    pub min_wf: f64,
}

impl Default for SelectionParams {
    fn default() -> Self {
        SelectionParams {
            top_k: 50,
            min_ratio: 2.0,
            min_wf: 5.0,
        }
    }
}

impl SelectionParams {
    fn validate(&self) -> Result<()> {
        if self.top_k == 0 {
            return Err(Error::InvalidParameter("top_k must be positive".into()));
        }
        if self.min_ratio < 1.0 || !self.min_ratio.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "min_ratio must be a finite value >= 1, got {}",
                self.min_ratio
            )));
        }
        if self.min_wf < 0.0 || !self.min_wf.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "min_wf must be a finite value >= 0, got {}",
                self.min_wf
            )));
        }
        Ok(())
    }
}

/// One row of the discrimination table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TermScore {
    pub term: String,
    /// WF per profile, in the order the profiles were given.
    pub wf: Vec<f64>,
    pub ratio: f64,
    /// Whether the term passes both thresholds.
    pub qualifies: bool,
}

impl TermScore {
    pub fn max_wf(&self) -> f64 {
        self.wf.iter().copied().fold(0.0, f64::max)
    }
}

/// `max / (min + 1)` over the per-label WF values.
pub fn discrimination_ratio(wf: &[f64]) -> f64 {
    let max = wf.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = wf.iter().copied().fold(f64::INFINITY, f64::min);
    max / (min + 1.0)
}

fn by_ratio_then_term(a: &TermScore, b: &TermScore) -> Ordering {
    b.ratio
        .partial_cmp(&a.ratio)
        .unwrap_or(Ordering::Equal)
        .then_with(|| a.term.cmp(&b.term))
}

/// Scores every term that occurs in any profile, sorted by descending ratio
/// with ties broken by term.
pub fn discrimination_table(
    profiles: &[LabeledProfile],
    params: &SelectionParams,
) -> Result<Vec<TermScore>> {
    params.validate()?;
    if profiles.len() < 2 {
        return Err(Error::InvalidParameter(format!(
            "feature selection needs at least 2 labeled profiles, got {}",
            profiles.len()
        )));
    }
    let mut labels = BTreeSet::new();
    for p in profiles {
        if !labels.insert(p.label.as_str()) {
            return Err(Error::InvalidParameter(format!(
                "duplicate label {:?}",
                p.label
            )));
        }
    }
    let universe: BTreeSet<&str> = profiles
        .iter()
        .flat_map(|p| p.wf.keys().map(String::as_str))
        .collect();
    let mut table: Vec<TermScore> = universe
        .into_iter()
        .map(|term| {
            let wf: Vec<f64> = profiles.iter().map(|p| p.get(term)).collect();
            let ratio = discrimination_ratio(&wf);
            let mut score = TermScore {
                term: term.to_owned(),
                wf,
                ratio,
                qualifies: false,
            };
            score.qualifies = ratio >= params.min_ratio && score.max_wf() >= params.min_wf;
            score
        })
        .collect();
    table.sort_by(by_ratio_then_term);
    Ok(table)
}

/// Keeps the `top_k` terms whose ratio and peak WF clear the thresholds,
/// ordered by descending ratio.
pub fn select_features(
    profiles: &[LabeledProfile],
    params: &SelectionParams,
) -> Result<FeatureSet> {
    let table = discrimination_table(profiles, params)?;
    let selected: Vec<String> = table
        .into_iter()
        .filter(|s| s.qualifies)
        .take(params.top_k)
        .map(|s| s.term)
        .collect();
    if selected.is_empty() {
        return Err(Error::NoDiscriminativeFeatures);
    }
    FeatureSet::new(selected)
}

pub fn vectorize(bow: &BagOfWords, features: &FeatureSet) -> Result<DocumentVector> {
    if bow.total == 0 {
        return Err(Error::EmptyDocument);
    }
    let values = features
        .terms()
        .iter()
        .map(|t| word_frequency(bow.count(t), bow.total))
        .collect::<Result<_>>()?;
    Ok(DocumentVector {
        doc_id: bow.doc_id.clone(),
        values,
    })
}
