//! Run configuration: command-line flags override the JSON config file,
//! which overrides built-in defaults.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Deserialize;

use crate::UsageError;

/// Mirror of every tunable; all fields optional so a config file can set
/// any subset.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub corpus_dir: Option<PathBuf>,
    pub sample_dirs: BTreeMap<String, PathBuf>,
    pub features_path: Option<PathBuf>,
    pub profiles_dir: Option<PathBuf>,
    pub profiles: Vec<PathBuf>,
    pub result_path: Option<PathBuf>,
    pub report_path: Option<PathBuf>,

    pub strip_markup: Option<bool>,
    pub stopwords_file: Option<PathBuf>,
    pub stemming: Option<bool>,
    pub bigrams: Option<bool>,

    pub top_k: Option<usize>,
    pub min_ratio: Option<f64>,
    pub min_wf: Option<f64>,

    pub clusters: Option<usize>,
    pub fuzzifier: Option<f64>,
    pub epsilon: Option<f64>,
    pub max_iters: Option<usize>,
    pub seed: Option<u64>,
    pub init_file: Option<PathBuf>,
    pub trace: Option<bool>,

    pub strong_threshold: Option<f64>,
    pub ambiguity_margin: Option<f64>,
}

impl RunConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        if !path.is_file() {
            return Err(UsageError(format!("config file {} not found", path.display())).into());
        }
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    /// Overlays `flags` on top of `self`: any value set in `flags` wins.
    pub fn overlay(mut self, flags: RunConfig) -> Self {
        macro_rules! take {
            ($($field:ident),*) => {
                $(if flags.$field.is_some() { self.$field = flags.$field; })*
            };
        }
        take!(
            corpus_dir,
            features_path,
            profiles_dir,
            result_path,
            report_path,
            strip_markup,
            stopwords_file,
            stemming,
            bigrams,
            top_k,
            min_ratio,
            min_wf,
            clusters,
            fuzzifier,
            epsilon,
            max_iters,
            seed,
            init_file,
            trace,
            strong_threshold,
            ambiguity_margin
        );
        if !flags.sample_dirs.is_empty() {
            self.sample_dirs = flags.sample_dirs;
        }
        if !flags.profiles.is_empty() {
            self.profiles = flags.profiles;
        }
        self
    }
}
