//! Soft clustering of text documents.
//!
//! The pipeline runs in four stages, each in its own module:
//!
//! 1. [`preprocess`]: markup stripping, tokenization, stopword removal and
//!    Porter stemming.
//! 2. [`features`]: bag-of-words counts, per-10000 word frequencies, labeled
//!    profiles and discriminative feature selection.
//! 3. [`fcm`]: the fuzzy c-means engine.
//! 4. [`labeling`]: naming clusters from labeled profiles and classifying
//!    membership strength.
//!
//! [`pipeline`] runs the stages over whole corpora, and [`io`] holds the
//! JSON file formats and corpus ingestion shared by the CLI and the Python
//! bindings.

pub mod error;
pub mod fcm;
pub mod features;
pub mod io;
pub mod labeling;
pub mod pipeline;
pub mod preprocess;

pub use error::{Error, Result};
pub use fcm::{
    harden, init_partition, iterate_once, objective, pairwise_distances, run_fcm,
    run_fcm_with_observer, update_centers, update_memberships, Centers, DistanceMatrix, FcmParams,
    FcmResult, FeatureMatrix, InitSpec, IterationStep, PartitionMatrix,
};
pub use features::{
    build_profile, count_terms, discrimination_table, select_features, vectorize, word_frequency,
    BagOfWords, DocumentVector, FeatureSet, LabeledProfile, SelectionParams, TermScore,
};
pub use labeling::{
    classify_strength, label_clusters, rank_documents, ClusterLabeling, DocumentMembership,
    MembershipReport, Strength, StrengthParams,
};
pub use preprocess::{
    preprocess_document, remove_stopwords, stem, strip_markup, tokenize, PreprocessConfig,
    RawDocument, TermList,
};
