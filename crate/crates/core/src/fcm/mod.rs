//! Fuzzy c-means.
//!
//! Each iteration computes centers from the current partition, distances
//! from every document to every center, and a new partition from those
//! distances. The loop stops once no membership moves by `epsilon` or more,
//! or after `max_iters` iterations.
//!
//! All reductions run in document-index order on one thread, so a run is
//! bit-reproducible for a given input and parameter set.

mod matrix;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use matrix::{Centers, DistanceMatrix, FeatureMatrix, PartitionMatrix, COLUMN_SUM_TOLERANCE};

/// How the first partition is produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitSpec {
    Explicit(PartitionMatrix),
    /// Each column drawn uniformly from the probability simplex.
    Random {
        seed: u64,
    },
}

impl Default for InitSpec {
    fn default() -> Self {
        InitSpec::Random { seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FcmParams {
    pub clusters: usize,
    /// Membership exponent, strictly greater than 1.
    pub fuzzifier: f64,
    /// Stop when the largest membership change falls below this.
    pub epsilon: f64,
    pub max_iters: usize,
    pub init: InitSpec,
}

impl FcmParams {
    pub fn new(clusters: usize) -> Self {
        FcmParams {
            clusters,
            fuzzifier: 2.0,
            epsilon: 1e-3,
            max_iters: 100,
            init: InitSpec::default(),
        }
    }

    pub fn with_init(mut self, init: InitSpec) -> Self {
        self.init = init;
        self
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_fuzzifier(mut self, fuzzifier: f64) -> Self {
        self.fuzzifier = fuzzifier;
        self
    }

    pub fn with_max_iters(mut self, max_iters: usize) -> Self {
        self.max_iters = max_iters;
        self
    }

    pub fn validate(&self, n_docs: usize) -> Result<()> {
        check_cluster_count(n_docs, self.clusters)?;
        check_fuzzifier(self.fuzzifier)?;
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "epsilon must lie in (0, 1), got {}",
                self.epsilon
            )));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidParameter("max_iters must be positive".into()));
        }
        Ok(())
    }
}

fn check_cluster_count(n_docs: usize, clusters: usize) -> Result<()> {
    if clusters == 0 {
        return Err(Error::InvalidParameter(
            "cluster count must be at least 1".into(),
        ));
    }
    if clusters > n_docs {
        return Err(Error::InvalidParameter(format!(
            "{clusters} clusters requested for {n_docs} documents"
        )));
    }
    Ok(())
}

fn check_fuzzifier(fuzzifier: f64) -> Result<()> {
    if fuzzifier <= 1.0 || !fuzzifier.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "fuzzifier must be a finite value > 1, got {fuzzifier}"
        )));
    }
    Ok(())
}

/// Outcome of [`run_fcm`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FcmResult {
    pub partition: PartitionMatrix,
    /// The centers the final partition was computed from.
    pub centers: Centers,
    pub iterations: usize,
    /// Objective after each iteration, evaluated on that iteration's new
    /// partition and the centers it was derived from.
    pub objective_history: Vec<f64>,
    pub max_change_history: Vec<f64>,
    pub converged: bool,
}

impl FcmResult {
    pub fn final_objective(&self) -> f64 {
        self.objective_history.last().copied().unwrap_or(f64::NAN)
    }
}

/// State after one iteration, handed to the observer of
/// [`run_fcm_with_observer`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IterationStep {
    /// 1-based.
    pub iteration: usize,
    pub centers: Centers,
    pub partition: PartitionMatrix,
    pub objective: f64,
    pub max_change: f64,
}

/// Produces the starting partition for `n` documents and `c` clusters.
pub fn init_partition(n: usize, c: usize, init: &InitSpec) -> Result<PartitionMatrix> {
    check_cluster_count(n, c)?;
    match init {
        InitSpec::Explicit(u) => {
            if u.n_clusters() != c || u.n_docs() != n {
                return Err(Error::InvalidPartition(format!(
                    "initial partition is {}x{}, expected {c}x{n}",
                    u.n_clusters(),
                    u.n_docs()
                )));
            }
            Ok(u.clone())
        }
        InitSpec::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut data = vec![0.0; c * n];
            let mut column = vec![0.0; c];
            for i in 0..n {
                // Normalized unit exponentials are uniform on the simplex.
                let sum = loop {
                    for e in column.iter_mut() {
                        *e = -(1.0 - rng.gen::<f64>()).ln();
                    }
                    let sum: f64 = column.iter().sum();
                    if sum > 0.0 {
                        break sum;
                    }
                };
                for (j, e) in column.iter().enumerate() {
                    data[j * n + i] = e / sum;
                }
            }
            Ok(PartitionMatrix::from_raw(c, n, data))
        }
    }
}

/// Membership-weighted means: `v_j = sum_i u_ji^m x_i / sum_i u_ji^m`.
pub fn update_centers(u: &PartitionMatrix, x: &FeatureMatrix, fuzzifier: f64) -> Result<Centers> {
    if u.n_docs() != x.n_docs() {
        return Err(Error::DimensionMismatch(format!(
            "partition covers {} documents, feature matrix has {}",
            u.n_docs(),
            x.n_docs()
        )));
    }
    let dims = x.n_features();
    let mut data = vec![0.0; u.n_clusters() * dims];
    for (j, center) in data.chunks_exact_mut(dims).enumerate() {
        let mut weight_sum = 0.0;
        for (i, row) in x.rows().enumerate() {
            let w = u.get(j, i).powf(fuzzifier);
            weight_sum += w;
            for (acc, v) in center.iter_mut().zip(row) {
                *acc += w * v;
            }
        }
        if weight_sum == 0.0 {
            return Err(Error::EmptyCluster(j));
        }
        for acc in center.iter_mut() {
            *acc /= weight_sum;
        }
    }
    Ok(Centers::from_raw(dims, data))
}

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p - q) * (p - q)).sum()
}

pub fn pairwise_distances(x: &FeatureMatrix, v: &Centers) -> Result<DistanceMatrix> {
    if x.n_features() != v.n_features() {
        return Err(Error::DimensionMismatch(format!(
            "documents have {} features, centers have {}",
            x.n_features(),
            v.n_features()
        )));
    }
    let n = x.n_docs();
    let mut data = Vec::with_capacity(v.n_clusters() * n);
    for j in 0..v.n_clusters() {
        let center = v.center(j);
        data.extend(x.rows().map(|row| squared_distance(row, center).sqrt()));
    }
    Ok(DistanceMatrix::from_raw(n, data))
}

/// `u_ji = 1 / sum_k (d_ji / d_ki)^(2 / (m - 1))`.
///
/// A column with a zero distance is undefined under that formula. When
/// exactly one cluster is at distance zero the column is one-hot on it;
/// coincident centers at distance zero share the membership equally.
pub fn update_memberships(d: &DistanceMatrix, fuzzifier: f64) -> Result<PartitionMatrix> {
    check_fuzzifier(fuzzifier)?;
    let c = d.n_clusters();
    let n = d.n_docs();
    let exponent = 2.0 / (fuzzifier - 1.0);
    let mut data = vec![0.0; c * n];
    for i in 0..n {
        let zeros = (0..c).filter(|&j| d.get(j, i) == 0.0).count();
        if zeros > 0 {
            let share = 1.0 / zeros as f64;
            for j in (0..c).filter(|&j| d.get(j, i) == 0.0) {
                data[j * n + i] = share;
            }
            continue;
        }
        for j in 0..c {
            let dji = d.get(j, i);
            let denom: f64 = (0..c).map(|k| (dji / d.get(k, i)).powf(exponent)).sum();
            data[j * n + i] = 1.0 / denom;
        }
    }
    Ok(PartitionMatrix::from_raw(c, n, data))
}

/// `J_m = sum_i sum_j u_ji^m ||x_i - v_j||^2`.
pub fn objective(
    x: &FeatureMatrix,
    u: &PartitionMatrix,
    v: &Centers,
    fuzzifier: f64,
) -> Result<f64> {
    if u.n_docs() != x.n_docs()
        || u.n_clusters() != v.n_clusters()
        || x.n_features() != v.n_features()
    {
        return Err(Error::DimensionMismatch(
            "objective needs an n x m matrix, a c x n partition and c x m centers".into(),
        ));
    }
    let mut total = 0.0;
    for (i, row) in x.rows().enumerate() {
        for j in 0..v.n_clusters() {
            total += u.get(j, i).powf(fuzzifier) * squared_distance(row, v.center(j));
        }
    }
    Ok(total)
}

/// One center update followed by one membership update.
pub fn iterate_once(
    x: &FeatureMatrix,
    u: &PartitionMatrix,
    fuzzifier: f64,
) -> Result<(Centers, PartitionMatrix)> {
    let v = update_centers(u, x, fuzzifier)?;
    let d = pairwise_distances(x, &v)?;
    let next = update_memberships(&d, fuzzifier)?;
    Ok((v, next))
}

pub fn run_fcm(x: &FeatureMatrix, params: &FcmParams) -> Result<FcmResult> {
    run_fcm_with_observer(x, params, |_| {})
}

/// [`run_fcm`], calling `observe` after every iteration.
pub fn run_fcm_with_observer<F>(
    x: &FeatureMatrix,
    params: &FcmParams,
    mut observe: F,
) -> Result<FcmResult>
where
    F: FnMut(&IterationStep),
{
    params.validate(x.n_docs())?;
    let mut u = init_partition(x.n_docs(), params.clusters, &params.init)?;
    let mut objective_history = Vec::new();
    let mut max_change_history = Vec::new();
    let mut centers = None;
    for iteration in 1..=params.max_iters {
        let (v, next) = iterate_once(x, &u, params.fuzzifier)?;
        let change = next.max_abs_diff(&u);
        let jm = objective(x, &next, &v, params.fuzzifier)?;
        objective_history.push(jm);
        max_change_history.push(change);
        let step = IterationStep {
            iteration,
            centers: v,
            partition: next,
            objective: jm,
            max_change: change,
        };
        observe(&step);
        u = step.partition;
        centers = Some(step.centers);
        if change < params.epsilon {
            break;
        }
    }
    let converged = max_change_history
        .last()
        .is_some_and(|&c| c < params.epsilon);
    Ok(FcmResult {
        partition: u,
        centers: centers.expect("max_iters >= 1"),
        iterations: objective_history.len(),
        objective_history,
        max_change_history,
        converged,
    })
}

/// Crisp assignment: the 0-based index of each column's largest membership,
/// lowest index on ties.
pub fn harden(u: &PartitionMatrix) -> Vec<usize> {
    (0..u.n_docs())
        .map(|i| {
            let mut best = 0;
            for j in 1..u.n_clusters() {
                if u.get(j, i) > u.get(best, i) {
                    best = j;
                }
            }
            best
        })
        .collect()
}
