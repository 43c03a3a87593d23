//! JSON file formats and corpus ingestion.
//!
//! All files are UTF-8 with LF line endings. JSON numbers are written in
//! their shortest round-trip form.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fcm::{FcmResult, PartitionMatrix};
use crate::features::{FeatureSet, LabeledProfile};
use crate::labeling::MembershipReport;
use crate::preprocess::RawDocument;

/// Contents of a clustering result file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultFile {
    pub doc_ids: Vec<String>,
    pub features: Vec<String>,
    /// `c x n`, one row per cluster.
    pub memberships: Vec<Vec<f64>>,
    /// `c x m`, one row per cluster.
    pub centers: Vec<Vec<f64>>,
    pub iterations: usize,
    pub converged: bool,
    pub objective_history: Vec<f64>,
}

impl ResultFile {
    pub fn new(doc_ids: Vec<String>, features: &FeatureSet, result: &FcmResult) -> Self {
        ResultFile {
            doc_ids,
            features: features.terms().to_vec(),
            memberships: result.partition.to_rows(),
            centers: result.centers.to_rows(),
            iterations: result.iterations,
            converged: result.converged,
            objective_history: result.objective_history.clone(),
        }
    }

    pub fn partition(&self) -> Result<PartitionMatrix> {
        let u = PartitionMatrix::new(self.memberships.clone())?;
        if u.n_docs() != self.doc_ids.len() {
            return Err(Error::DimensionMismatch(format!(
                "result has {} documents but {} membership columns",
                self.doc_ids.len(),
                u.n_docs()
            )));
        }
        Ok(u)
    }

    pub fn feature_set(&self) -> Result<FeatureSet> {
        FeatureSet::new(self.features.clone())
    }
}

pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("in-memory values serialize");
    s.push('\n');
    s
}

pub fn write_json<T: Serialize + ?Sized>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, to_json_string(value)).map_err(|e| Error::io(path, e))
}

pub fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::json(path, e))
}

pub fn read_feature_set(path: impl AsRef<Path>) -> Result<FeatureSet> {
    read_json(path)
}

pub fn read_profile(path: impl AsRef<Path>) -> Result<LabeledProfile> {
    read_json(path)
}

pub fn read_result(path: impl AsRef<Path>) -> Result<ResultFile> {
    read_json(path)
}

pub fn read_report(path: impl AsRef<Path>) -> Result<MembershipReport> {
    read_json(path)
}

/// An initial partition file: a `c x n` JSON array of rows.
pub fn read_partition(path: impl AsRef<Path>) -> Result<PartitionMatrix> {
    read_json(path)
}

/// Reads every regular file in `dir` as one document, in lexicographic
/// order of file name; the file name is the document id. Hidden files are
/// skipped.
pub fn read_corpus(dir: impl AsRef<Path>) -> Result<Vec<RawDocument>> {
    let dir = dir.as_ref();
    let mut entries = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        let path = entry.path();
        if !path.is_file() {
            continue;
        }
        let name = entry.file_name().to_string_lossy().into_owned();
        if name.starts_with('.') {
            continue;
        }
        entries.push((name, path));
    }
    entries.sort();
    entries
        .into_iter()
        .map(|(name, path)| {
            let content = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
            Ok(RawDocument::new(name, content))
        })
        .collect()
}
