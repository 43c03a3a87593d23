#![allow(dead_code)]

use fuzzydoc::{FeatureMatrix, FeatureSet, LabeledProfile, PartitionMatrix};

pub const FEATURES: [&str; 4] = ["stadium", "ball", "team", "democracy"];

/// Word frequencies of the eight documents to cluster, one row per document.
pub const DOCS: [[f64; 4]; 8] = [
    [180.0, 400.0, 200.0, 1.0],
    [200.0, 410.0, 250.0, 2.0],
    [5.0, 20.0, 40.0, 40.0],
    [3.0, 7.0, 35.0, 38.0],
    [210.0, 380.0, 180.0, 0.0],
    [7.0, 10.0, 20.0, 27.0],
    [190.0, 401.0, 170.0, 5.0],
    [2.0, 15.0, 26.0, 50.0],
];

pub fn doc_ids() -> Vec<String> {
    (1..=8).map(|i| format!("Doc{i}")).collect()
}

pub fn feature_matrix() -> FeatureMatrix {
    FeatureMatrix::new(doc_ids(), DOCS.iter().map(|r| r.to_vec()).collect()).unwrap()
}

pub fn feature_set() -> FeatureSet {
    FeatureSet::new(FEATURES.iter().map(|s| s.to_string()).collect()).unwrap()
}

/// Crisp start: documents 1, 2, 5, 6 in cluster 1, the rest in cluster 2.
pub fn initial_partition() -> PartitionMatrix {
    PartitionMatrix::new(vec![
        vec![1.0, 1.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0],
        vec![0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 1.0, 1.0],
    ])
    .unwrap()
}

pub fn profile(label: &str, entries: &[(&str, f64)]) -> LabeledProfile {
    LabeledProfile {
        label: label.into(),
        wf: entries.iter().map(|(t, v)| (t.to_string(), *v)).collect(),
    }
}

/// Pooled word frequencies of the labeled sample corpora.
pub fn sample_profiles() -> Vec<LabeledProfile> {
    vec![
        profile(
            "sports",
            &[
                ("win", 10.0213),
                ("stadium", 203.2321),
                ("democracy", 1.1213),
                ("ball", 501.6553),
                ("team", 250.6312),
                ("candidate", 38.7658),
                ("campaign", 8.8350),
            ],
        ),
        profile(
            "politics",
            &[
                ("win", 8.9012),
                ("stadium", 7.1214),
                ("democracy", 140.1213),
                ("ball", 30.2121),
                ("team", 80.8452),
                ("candidate", 40.2313),
                ("campaign", 9.4213),
            ],
        ),
    ]
}
