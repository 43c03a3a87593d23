//! Python bindings for the fuzzydoc toolkit.
//!
//! Matrices cross the boundary as lists of rows. Library errors surface as
//! `ValueError`, file errors as `OSError`.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;

use fuzzydoc::{
    Centers, ClusterLabeling as CoreLabeling, Error, FcmParams, FeatureMatrix, FeatureSet,
    InitSpec, LabeledProfile as CoreProfile, PartitionMatrix, PreprocessConfig as CoreConfig,
    RawDocument, SelectionParams, StrengthParams, TermList,
};

fn to_py(err: Error) -> PyErr {
    match err {
        Error::Io { .. } => PyOSError::new_err(err.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// Preprocessing switches. The stopword list defaults to the built-in
/// English list.
#[pyclass(module = "fuzzydoc_py", get_all, set_all, from_py_object)]
#[derive(Clone)]
struct PreprocessConfig {
    strip_markup: bool,
    stemming: bool,
    bigrams: bool,
    stopwords: Vec<String>,
}

#[pymethods]
impl PreprocessConfig {
    #[new]
    #[pyo3(signature = (strip_markup=true, stemming=true, bigrams=false, stopwords=None))]
    fn new(
        strip_markup: bool,
        stemming: bool,
        bigrams: bool,
        stopwords: Option<Vec<String>>,
    ) -> Self {
        let stopwords =
            stopwords.unwrap_or_else(|| CoreConfig::default().stopwords.into_iter().collect());
        Self {
            strip_markup,
            stemming,
            bigrams,
            stopwords,
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "PreprocessConfig(strip_markup={}, stemming={}, bigrams={}, stopwords=<{} words>)",
            py_bool(self.strip_markup),
            py_bool(self.stemming),
            py_bool(self.bigrams),
            self.stopwords.len()
        )
    }
}

impl PreprocessConfig {
    fn core(&self) -> CoreConfig {
        CoreConfig {
            strip_markup: self.strip_markup,
            stopwords: self.stopwords.iter().cloned().collect(),
            stemming: self.stemming,
            bigrams: self.bigrams,
        }
    }
}

fn py_bool(b: bool) -> &'static str {
    if b {
        "True"
    } else {
        "False"
    }
}

fn config_or_default(config: Option<PreprocessConfig>) -> CoreConfig {
    config.map(|c| c.core()).unwrap_or_default()
}

/// Word frequencies of one labeled sample corpus.
#[pyclass(module = "fuzzydoc_py", get_all, from_py_object)]
#[derive(Clone)]
struct LabeledProfile {
    label: String,
    wf: BTreeMap<String, f64>,
}

#[pymethods]
impl LabeledProfile {
    #[new]
    fn new(label: String, wf: BTreeMap<String, f64>) -> Self {
        Self { label, wf }
    }

    fn __repr__(&self) -> String {
        format!(
            "LabeledProfile(label={:?}, terms={})",
            self.label,
            self.wf.len()
        )
    }
}

impl From<CoreProfile> for LabeledProfile {
    fn from(p: CoreProfile) -> Self {
        Self {
            label: p.label,
            wf: p.wf,
        }
    }
}

impl From<&LabeledProfile> for CoreProfile {
    fn from(p: &LabeledProfile) -> Self {
        CoreProfile {
            label: p.label.clone(),
            wf: p.wf.clone(),
        }
    }
}

fn core_profiles(profiles: &[LabeledProfile]) -> Vec<CoreProfile> {
    profiles.iter().map(CoreProfile::from).collect()
}

/// Outcome of a clustering run.
#[pyclass(module = "fuzzydoc_py", get_all, frozen)]
struct FcmResult {
    partition: Vec<Vec<f64>>,
    centers: Vec<Vec<f64>>,
    iterations: usize,
    objective_history: Vec<f64>,
    max_change_history: Vec<f64>,
    converged: bool,
}

#[pymethods]
impl FcmResult {
    /// Index of the highest-membership cluster for every document.
    fn harden(&self) -> PyResult<Vec<usize>> {
        harden(self.partition.clone())
    }

    fn __repr__(&self) -> String {
        format!(
            "FcmResult(clusters={}, iterations={}, converged={})",
            self.partition.len(),
            self.iterations,
            py_bool(self.converged)
        )
    }
}

/// Label per cluster plus its distance to the matched profile.
#[pyclass(module = "fuzzydoc_py", get_all, from_py_object)]
#[derive(Clone)]
struct ClusterLabeling {
    assignment: Vec<String>,
    score: Vec<f64>,
}

#[pymethods]
impl ClusterLabeling {
    #[new]
    fn new(assignment: Vec<String>, score: Vec<f64>) -> Self {
        Self { assignment, score }
    }

    fn __repr__(&self) -> String {
        format!("ClusterLabeling(assignment={:?})", self.assignment)
    }
}

impl ClusterLabeling {
    fn core(&self) -> CoreLabeling {
        CoreLabeling {
            assignment: self.assignment.clone(),
            score: self.score.clone(),
        }
    }
}

/// One row of a membership report.
#[pyclass(module = "fuzzydoc_py", get_all, frozen)]
struct DocumentMembership {
    doc_id: String,
    labels: BTreeMap<String, f64>,
    top_label: String,
    strength: String,
}

#[pymethods]
impl DocumentMembership {
    fn __repr__(&self) -> String {
        format!(
            "DocumentMembership(doc_id={:?}, top_label={:?}, strength={:?})",
            self.doc_id, self.top_label, self.strength
        )
    }
}

#[pyfunction]
fn strip_markup(text: &str) -> String {
    fuzzydoc::strip_markup(text)
}

#[pyfunction]
#[pyo3(signature = (text, config=None))]
fn tokenize(text: &str, config: Option<PreprocessConfig>) -> Vec<String> {
    fuzzydoc::tokenize(text, &config_or_default(config))
}

#[pyfunction]
fn stem(term: &str) -> String {
    fuzzydoc::stem(term)
}

/// Full pipeline: markup, tokens, stopwords, stems, bigrams.
#[pyfunction]
#[pyo3(signature = (text, config=None))]
fn preprocess(text: &str, config: Option<PreprocessConfig>) -> Vec<String> {
    let doc = RawDocument::new("", text);
    fuzzydoc::preprocess_document(&doc, &config_or_default(config)).terms
}

#[pyfunction]
fn word_frequency(count: u64, total: u64) -> PyResult<f64> {
    fuzzydoc::word_frequency(count, total).map_err(to_py)
}

/// Pools already-preprocessed documents into one profile.
#[pyfunction]
fn build_profile(label: String, documents: Vec<Vec<String>>) -> PyResult<LabeledProfile> {
    let docs: Vec<TermList> = documents
        .into_iter()
        .map(|terms| TermList::new("", terms))
        .collect();
    fuzzydoc::build_profile(label, &docs)
        .map(Into::into)
        .map_err(to_py)
}

/// `(term, wf_per_profile, ratio, qualifies)`
type ScoreRow = (String, Vec<f64>, f64, bool);

/// Every term scored across the profiles, best ratio first.
#[pyfunction]
#[pyo3(signature = (profiles, min_ratio=2.0, min_wf=5.0))]
fn discrimination_table(
    profiles: Vec<LabeledProfile>,
    min_ratio: f64,
    min_wf: f64,
) -> PyResult<Vec<ScoreRow>> {
    let params = SelectionParams {
        min_ratio,
        min_wf,
        ..SelectionParams::default()
    };
    let table =
        fuzzydoc::discrimination_table(&core_profiles(&profiles), &params).map_err(to_py)?;
    Ok(table
        .into_iter()
        .map(|s| (s.term, s.wf, s.ratio, s.qualifies))
        .collect())
}

#[pyfunction]
#[pyo3(signature = (profiles, top_k=50, min_ratio=2.0, min_wf=5.0))]
fn select_features(
    profiles: Vec<LabeledProfile>,
    top_k: usize,
    min_ratio: f64,
    min_wf: f64,
) -> PyResult<Vec<String>> {
    let params = SelectionParams {
        top_k,
        min_ratio,
        min_wf,
    };
    let features = fuzzydoc::select_features(&core_profiles(&profiles), &params).map_err(to_py)?;
    Ok(features.terms().to_vec())
}

/// Word frequencies of `features` in one preprocessed document.
#[pyfunction]
fn vectorize(terms: Vec<String>, features: Vec<String>) -> PyResult<Vec<f64>> {
    let features = FeatureSet::new(features).map_err(to_py)?;
    let bow = fuzzydoc::count_terms(&TermList::new("", terms));
    fuzzydoc::vectorize(&bow, &features)
        .map(|v| v.values)
        .map_err(to_py)
}

/// Clusters the rows of `data`. `init` is an optional starting partition,
/// one row per cluster; otherwise a random one is drawn from `seed`.
#[pyfunction]
#[pyo3(signature = (data, clusters, fuzzifier=2.0, epsilon=1e-3, max_iters=100, seed=0, init=None))]
fn run_fcm(
    data: Vec<Vec<f64>>,
    clusters: usize,
    fuzzifier: f64,
    epsilon: f64,
    max_iters: usize,
    seed: u64,
    init: Option<Vec<Vec<f64>>>,
) -> PyResult<FcmResult> {
    let ids = (0..data.len()).map(|i| i.to_string()).collect();
    let x = FeatureMatrix::new(ids, data).map_err(to_py)?;
    let init = match init {
        Some(rows) => InitSpec::Explicit(PartitionMatrix::new(rows).map_err(to_py)?),
        None => InitSpec::Random { seed },
    };
    let params = FcmParams::new(clusters)
        .with_fuzzifier(fuzzifier)
        .with_epsilon(epsilon)
        .with_max_iters(max_iters)
        .with_init(init);
    let r = fuzzydoc::run_fcm(&x, &params).map_err(to_py)?;
    Ok(FcmResult {
        partition: r.partition.to_rows(),
        centers: r.centers.to_rows(),
        iterations: r.iterations,
        objective_history: r.objective_history,
        max_change_history: r.max_change_history,
        converged: r.converged,
    })
}

#[pyfunction]
fn harden(partition: Vec<Vec<f64>>) -> PyResult<Vec<usize>> {
    let u = PartitionMatrix::new(partition).map_err(to_py)?;
    Ok(fuzzydoc::harden(&u))
}

#[pyfunction]
fn label_clusters(
    centers: Vec<Vec<f64>>,
    profiles: Vec<LabeledProfile>,
    features: Vec<String>,
) -> PyResult<ClusterLabeling> {
    let v = Centers::new(centers).map_err(to_py)?;
    let features = FeatureSet::new(features).map_err(to_py)?;
    let l = fuzzydoc::label_clusters(&v, &core_profiles(&profiles), &features).map_err(to_py)?;
    Ok(ClusterLabeling {
        assignment: l.assignment,
        score: l.score,
    })
}

#[pyfunction]
#[pyo3(signature = (partition, doc_ids, labeling, strong_threshold=0.85, ambiguity_margin=0.1))]
fn classify_strength(
    partition: Vec<Vec<f64>>,
    doc_ids: Vec<String>,
    labeling: ClusterLabeling,
    strong_threshold: f64,
    ambiguity_margin: f64,
) -> PyResult<Vec<DocumentMembership>> {
    let u = PartitionMatrix::new(partition).map_err(to_py)?;
    let params = StrengthParams {
        strong_threshold,
        ambiguity_margin,
    };
    let report =
        fuzzydoc::classify_strength(&u, &doc_ids, &labeling.core(), &params).map_err(to_py)?;
    Ok(report
        .documents
        .into_iter()
        .map(|d| DocumentMembership {
            doc_id: d.doc_id,
            labels: d.labels,
            top_label: d.top_label,
            strength: d.strength.to_string(),
        })
        .collect())
}

#[pyfunction]
fn rank_documents(
    partition: Vec<Vec<f64>>,
    doc_ids: Vec<String>,
    labeling: ClusterLabeling,
    label: &str,
) -> PyResult<Vec<(String, f64)>> {
    let u = PartitionMatrix::new(partition).map_err(to_py)?;
    fuzzydoc::rank_documents(&u, &doc_ids, &labeling.core(), label).map_err(to_py)
}

#[pymodule]
fn fuzzydoc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PreprocessConfig>()?;
    m.add_class::<LabeledProfile>()?;
    m.add_class::<FcmResult>()?;
    m.add_class::<ClusterLabeling>()?;
    m.add_class::<DocumentMembership>()?;
    m.add_function(wrap_pyfunction!(strip_markup, m)?)?;
    m.add_function(wrap_pyfunction!(tokenize, m)?)?;
    m.add_function(wrap_pyfunction!(stem, m)?)?;
    m.add_function(wrap_pyfunction!(preprocess, m)?)?;
    m.add_function(wrap_pyfunction!(word_frequency, m)?)?;
    m.add_function(wrap_pyfunction!(build_profile, m)?)?;
    m.add_function(wrap_pyfunction!(discrimination_table, m)?)?;
    m.add_function(wrap_pyfunction!(select_features, m)?)?;
    m.add_function(wrap_pyfunction!(vectorize, m)?)?;
    m.add_function(wrap_pyfunction!(run_fcm, m)?)?;
    m.add_function(wrap_pyfunction!(harden, m)?)?;
    m.add_function(wrap_pyfunction!(label_clusters, m)?)?;
    m.add_function(wrap_pyfunction!(classify_strength, m)?)?;
    m.add_function(wrap_pyfunction!(rank_documents, m)?)?;
    Ok(())
}
