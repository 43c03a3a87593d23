//! Cluster naming and interpretation of the fuzzy partition.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fcm::{Centers, PartitionMatrix};
use crate::features::{FeatureSet, LabeledProfile};

/// Label assigned to each cluster, indexed by cluster.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterLabeling {
    pub assignment: Vec<String>,
    /// Euclidean distance from each center to its label's profile vector.
    pub score: Vec<f64>,
}

impl ClusterLabeling {
    pub fn n_clusters(&self) -> usize {
        self.assignment.len()
    }

    pub fn label(&self, cluster: usize) -> &str {
        &self.assignment[cluster]
    }

    pub fn cluster_of(&self, label: &str) -> Option<usize> {
        self.assignment.iter().position(|l| l == label)
    }
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(p, q)| (p - q) * (p - q))
        .sum::<f64>()
        .sqrt()
}

/// Searches injective cluster-to-profile maps in lexicographic order of
/// profile index; only a strictly smaller total replaces the incumbent.
struct AssignmentSearch<'a> {
    cost: &'a [Vec<f64>],
    used: Vec<bool>,
    current: Vec<usize>,
    best: Option<(f64, Vec<usize>)>,
}

impl AssignmentSearch<'_> {
    fn visit(&mut self, partial: f64) {
        let cluster = self.current.len();
        if cluster == self.cost.len() {
            if self.best.as_ref().is_none_or(|(b, _)| partial < *b) {
                self.best = Some((partial, self.current.clone()));
            }
            return;
        }
        for p in 0..self.used.len() {
            if self.used[p] {
                continue;
            }
            self.used[p] = true;
            self.current.push(p);
            self.visit(partial + self.cost[cluster][p]);
            self.current.pop();
            self.used[p] = false;
        }
    }
}

/// Names each cluster after the labeled profile nearest to its center,
/// minimizing the summed distance over all injective assignments.
///
/// Profiles are compared on the feature dimensions only. Exact ties go to
/// the assignment whose label sequence sorts first.
pub fn label_clusters(
    centers: &Centers,
    profiles: &[LabeledProfile],
    features: &FeatureSet,
) -> Result<ClusterLabeling> {
    let clusters = centers.n_clusters();
    if features.len() != centers.n_features() {
        return Err(Error::DimensionMismatch(format!(
            "{} features for centers of dimension {}",
            features.len(),
            centers.n_features()
        )));
    }
    if profiles.len() < clusters {
        return Err(Error::InsufficientProfiles {
            profiles: profiles.len(),
            clusters,
        });
    }
    let mut sorted: Vec<&LabeledProfile> = profiles.iter().collect();
    sorted.sort_by(|a, b| a.label.cmp(&b.label));
    if let Some(w) = sorted.windows(2).find(|w| w[0].label == w[1].label) {
        return Err(Error::InvalidParameter(format!(
            "duplicate label {:?}",
            w[0].label
        )));
    }
    let vectors: Vec<Vec<f64>> = sorted.iter().map(|p| p.project(features)).collect();
    let cost: Vec<Vec<f64>> = (0..clusters)
        .map(|j| {
            vectors
                .iter()
                .map(|pv| euclidean(centers.center(j), pv))
                .collect()
        })
        .collect();

    let mut search = AssignmentSearch {
        cost: &cost,
        used: vec![false; sorted.len()],
        current: Vec::with_capacity(clusters),
        best: None,
    };
    search.visit(0.0);
    let (_, best) = search.best.expect("at least one assignment exists");
    Ok(ClusterLabeling {
        assignment: best.iter().map(|&p| sorted[p].label.clone()).collect(),
        score: best.iter().enumerate().map(|(j, &p)| cost[j][p]).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strength {
    Strong,
    Moderate,
    Ambiguous,
}

impl fmt::Display for Strength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strength::Strong => "strong",
            Strength::Moderate => "moderate",
            Strength::Ambiguous => "ambiguous",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct StrengthParams {
    pub strong_threshold: f64,
    pub ambiguity_margin: f64,
}

impl Default for StrengthParams {
    fn default() -> Self {
        StrengthParams {
            strong_threshold: 0.85,
            ambiguity_margin: 0.1,
        }
    }
}

impl StrengthParams {
    /// Strong when the top degree reaches the threshold; otherwise ambiguous
    /// when the spread between top and bottom degree is under the margin.
    pub fn classify(&self, degrees: &[f64]) -> Strength {
        let max = degrees.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = degrees.iter().copied().fold(f64::INFINITY, f64::min);
        if max >= self.strong_threshold {
            Strength::Strong
        } else if max - min < self.ambiguity_margin {
            Strength::Ambiguous
        } else {
            Strength::Moderate
        }
    }

    fn validate(&self, clusters: usize) -> Result<()> {
        let unit = |v: f64| v > 0.0 && v < 1.0;
        if !unit(self.strong_threshold) || !unit(self.ambiguity_margin) {
            return Err(Error::InvalidParameter(format!(
                "thresholds must lie in (0, 1): strong {} margin {}",
                self.strong_threshold, self.ambiguity_margin
            )));
        }
        // With one cluster every degree is 1, so there is nothing to bound.
        if clusters > 1 && self.strong_threshold <= 1.0 / clusters as f64 {
            return Err(Error::InvalidParameter(format!(
                "strong threshold {} must exceed 1/{clusters}",
                self.strong_threshold
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocumentMembership {
    pub doc_id: String,
    pub labels: BTreeMap<String, f64>,
    pub top_label: String,
    pub strength: Strength,
}

impl DocumentMembership {
    pub fn top_degree(&self) -> f64 {
        self.labels[&self.top_label]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MembershipReport {
    pub documents: Vec<DocumentMembership>,
}

impl MembershipReport {
    /// Rows sorted by top label, then descending degree, then document id.
    pub fn sorted_rows(&self) -> Vec<&DocumentMembership> {
        let mut rows: Vec<&DocumentMembership> = self.documents.iter().collect();
        rows.sort_by(|a, b| {
            a.top_label
                .cmp(&b.top_label)
                .then_with(|| {
                    b.top_degree()
                        .partial_cmp(&a.top_degree())
                        .unwrap_or(Ordering::Equal)
                })
                .then_with(|| a.doc_id.cmp(&b.doc_id))
        });
        rows
    }

    /// Aligned plain-text table, one row per document.
    pub fn to_table(&self) -> String {
        let labels: BTreeSet<&str> = self
            .documents
            .iter()
            .flat_map(|d| d.labels.keys().map(String::as_str))
            .collect();
        let mut header = vec!["doc_id".to_string()];
        header.extend(labels.iter().map(|l| l.to_string()));
        header.push("top_label".into());
        header.push("strength".into());

        let mut rows = vec![header];
        for d in self.sorted_rows() {
            let mut row = vec![d.doc_id.clone()];
            row.extend(
                labels
                    .iter()
                    .map(|l| format!("{:.3}", d.labels.get(*l).copied().unwrap_or(0.0))),
            );
            row.push(d.top_label.clone());
            row.push(d.strength.to_string());
            rows.push(row);
        }
        let widths: Vec<usize> = (0..rows[0].len())
            .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in &rows {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(cell, w)| format!("{cell:<w$}"))
                .collect();
            let _ = writeln!(out, "{}", line.join("  ").trim_end());
        }
        out
    }
}

fn check_shapes(u: &PartitionMatrix, doc_ids: &[String], labeling: &ClusterLabeling) -> Result<()> {
    if u.n_docs() != doc_ids.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} document ids for {} partition columns",
            doc_ids.len(),
            u.n_docs()
        )));
    }
    if u.n_clusters() != labeling.n_clusters() {
        return Err(Error::DimensionMismatch(format!(
            "{} labels for {} clusters",
            labeling.n_clusters(),
            u.n_clusters()
        )));
    }
    Ok(())
}

/// Attaches labels to every partition column and classifies its strength.
/// The top label is the one with the largest degree, lexicographically
/// smallest on ties.
pub fn classify_strength(
    u: &PartitionMatrix,
    doc_ids: &[String],
    labeling: &ClusterLabeling,
    params: &StrengthParams,
) -> Result<MembershipReport> {
    check_shapes(u, doc_ids, labeling)?;
    params.validate(u.n_clusters())?;
    let documents = doc_ids
        .iter()
        .enumerate()
        .map(|(i, id)| {
            let degrees = u.column(i);
            let labels: BTreeMap<String, f64> = labeling
                .assignment
                .iter()
                .cloned()
                .zip(degrees.iter().copied())
                .collect();
            let mut top: Option<(&String, f64)> = None;
            for (label, &deg) in &labels {
                if top.is_none_or(|(_, best)| deg > best) {
                    top = Some((label, deg));
                }
            }
            let top_label = top.expect("at least one cluster").0.clone();
            DocumentMembership {
                doc_id: id.clone(),
                strength: params.classify(&degrees),
                top_label,
                labels,
            }
        })
        .collect();
    Ok(MembershipReport { documents })
}

/// Documents by descending membership in `label`'s cluster, ties by id.
pub fn rank_documents(
    u: &PartitionMatrix,
    doc_ids: &[String],
    labeling: &ClusterLabeling,
    label: &str,
) -> Result<Vec<(String, f64)>> {
    check_shapes(u, doc_ids, labeling)?;
    let cluster = labeling
        .cluster_of(label)
        .ok_or_else(|| Error::UnknownLabel(label.to_owned()))?;
    let mut ranked: Vec<(String, f64)> = doc_ids
        .iter()
        .cloned()
        .zip(u.row(cluster).iter().copied())
        .collect();
    ranked.sort_by(|a, b| {
        b.1.partial_cmp(&a.1)
            .unwrap_or(Ordering::Equal)
            .then_with(|| a.0.cmp(&b.0))
    });
    Ok(ranked)
}
