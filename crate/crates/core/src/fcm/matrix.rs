use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::{DocumentVector, WF_SCALE};

/// Tolerance on partition column sums.
pub const COLUMN_SUM_TOLERANCE: f64 = 1e-9;

/// n documents by m features, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureMatrix {
    doc_ids: Vec<String>,
    dims: usize,
    data: Vec<f64>,
}

impl FeatureMatrix {
    /// Builds the matrix from one row per document. Every entry must be a
    /// word frequency, i.e. lie in `[0, 10000]`.
    pub fn new(doc_ids: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::DimensionMismatch(
                "feature matrix needs at least one document".into(),
            ));
        }
        if doc_ids.len() != rows.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} document ids for {} rows",
                doc_ids.len(),
                rows.len()
            )));
        }
        let dims = rows[0].len();
        if dims == 0 {
            return Err(Error::DimensionMismatch(
                "feature matrix needs at least one feature".into(),
            ));
        }
        let mut data = Vec::with_capacity(rows.len() * dims);
        for (id, row) in doc_ids.iter().zip(&rows) {
            if row.len() != dims {
                return Err(Error::DimensionMismatch(format!(
                    "row {id:?} has {} values, expected {dims}",
                    row.len()
                )));
            }
            if let Some(v) = row.iter().find(|v| !(0.0..=WF_SCALE).contains(*v)) {
                return Err(Error::InvalidParameter(format!(
                    "row {id:?} has value {v} outside [0, {WF_SCALE}]"
                )));
            }
            data.extend_from_slice(row);
        }
        Ok(FeatureMatrix {
            doc_ids,
            dims,
            data,
        })
    }

    pub fn from_vectors(vectors: &[DocumentVector]) -> Result<Self> {
        FeatureMatrix::new(
            vectors.iter().map(|v| v.doc_id.clone()).collect(),
            vectors.iter().map(|v| v.values.clone()).collect(),
        )
    }

    pub fn doc_ids(&self) -> &[String] {
        &self.doc_ids
    }

    pub fn n_docs(&self) -> usize {
        self.doc_ids.len()
    }

    pub fn n_features(&self) -> usize {
        self.dims
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dims..(i + 1) * self.dims]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.dims)
    }
}

/// The fuzzy partition: `c` clusters by `n` documents, every column a
/// probability vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct PartitionMatrix {
    clusters: usize,
    docs: usize,
    data: Vec<f64>,
}

impl PartitionMatrix {
    /// Validates ranges and column sums; one inner vector per cluster.
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let clusters = rows.len();
        if clusters == 0 {
            return Err(Error::InvalidPartition("no clusters".into()));
        }
        let docs = rows[0].len();
        if docs == 0 {
            return Err(Error::InvalidPartition("no documents".into()));
        }
        if rows.iter().any(|r| r.len() != docs) {
            return Err(Error::InvalidPartition(
                "rows have different lengths".into(),
            ));
        }
        let data: Vec<f64> = rows.into_iter().flatten().collect();
        let u = PartitionMatrix {
            clusters,
            docs,
            data,
        };
        u.validate()?;
        Ok(u)
    }

    pub(crate) fn from_raw(clusters: usize, docs: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), clusters * docs);
        PartitionMatrix {
            clusters,
            docs,
            data,
        }
    }

    fn validate(&self) -> Result<()> {
        if let Some(v) = self.data.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::InvalidPartition(format!(
                "membership {v} outside [0, 1]"
            )));
        }
        for i in 0..self.docs {
            let sum: f64 = (0..self.clusters).map(|j| self.get(j, i)).sum();
            if (sum - 1.0).abs() > COLUMN_SUM_TOLERANCE {
                return Err(Error::InvalidPartition(format!("column {i} sums to {sum}")));
            }
        }
        Ok(())
    }

    pub fn n_clusters(&self) -> usize {
        self.clusters
    }

    pub fn n_docs(&self) -> usize {
        self.docs
    }

    /// Membership of document `doc` in cluster `cluster`.
    pub fn get(&self, cluster: usize, doc: usize) -> f64 {
        self.data[cluster * self.docs + doc]
    }

    pub fn row(&self, cluster: usize) -> &[f64] {
        &self.data[cluster * self.docs..(cluster + 1) * self.docs]
    }

    pub fn column(&self, doc: usize) -> Vec<f64> {
        (0..self.clusters).map(|j| self.get(j, doc)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data
            .chunks_exact(self.docs)
            .map(<[f64]>::to_vec)
            .collect()
    }

    /// Largest absolute entrywise difference.
    pub fn max_abs_diff(&self, other: &PartitionMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl TryFrom<Vec<Vec<f64>>> for PartitionMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self> {
        PartitionMatrix::new(rows)
    }
}

impl From<PartitionMatrix> for Vec<Vec<f64>> {
    fn from(u: PartitionMatrix) -> Self {
        u.to_rows()
    }
}

/// Cluster centers, `c` by `m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct Centers {
    dims: usize,
    data: Vec<f64>,
}

impl Centers {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let dims = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || dims == 0 || rows.iter().any(|r| r.len() != dims) {
            return Err(Error::DimensionMismatch(
                "centers must be a non-empty c x m matrix".into(),
            ));
        }
        Ok(Centers {
            dims,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub(crate) fn from_raw(dims: usize, data: Vec<f64>) -> Self {
        Centers { dims, data }
    }

    pub fn n_clusters(&self) -> usize {
        self.data.len() / self.dims
    }

    pub fn n_features(&self) -> usize {
        self.dims
    }

    pub fn center(&self, cluster: usize) -> &[f64] {
        &self.data[cluster * self.dims..(cluster + 1) * self.dims]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data
            .chunks_exact(self.dims)
            .map(<[f64]>::to_vec)
            .collect()
    }
}

impl TryFrom<Vec<Vec<f64>>> for Centers {
    type Error = Error;

    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self> {
        Centers::new(rows)
    }
}

impl From<Centers> for Vec<Vec<f64>> {
    fn from(v: Centers) -> Self {
        v.to_rows()
    }
}

/// Euclidean distances, `c` clusters by `n` documents.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    docs: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let docs = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || docs == 0 || rows.iter().any(|r| r.len() != docs) {
            return Err(Error::DimensionMismatch(
                "distances must be a non-empty c x n matrix".into(),
            ));
        }
        if let Some(d) = rows.iter().flatten().find(|d| d.is_nan() || **d < 0.0) {
            return Err(Error::InvalidParameter(format!(
                "distance {d} is negative or NaN"
            )));
        }
        Ok(DistanceMatrix {
            docs,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub(crate) fn from_raw(docs: usize, data: Vec<f64>) -> Self {
        DistanceMatrix { docs, data }
    }

    pub fn n_clusters(&self) -> usize {
        self.data.len() / self.docs
    }

    pub fn n_docs(&self) -> usize {
        self.docs
    }

    pub fn get(&self, cluster: usize, doc: usize) -> f64 {
        self.data[cluster * self.docs + doc]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data
            .chunks_exact(self.docs)
            .map(<[f64]>::to_vec)
            .collect()
    }
}
