use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use fuzzydoc::fcm::{run_fcm_with_observer, FcmParams, InitSpec};
use fuzzydoc::features::{
    discrimination_table, select_features as select, LabeledProfile, SelectionParams,
};
use fuzzydoc::io::{self, ResultFile};
use fuzzydoc::labeling::{classify_strength, label_clusters, rank_documents, StrengthParams};
use fuzzydoc::pipeline::{profile_corpus, vectorize_corpus};
use fuzzydoc::preprocess::{load_stopwords, PreprocessConfig};
use fuzzydoc::{Centers, FeatureMatrix};

use crate::config::RunConfig;
use crate::UsageError;

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn required<'a, T>(value: &'a Option<T>, flag: &str) -> anyhow::Result<&'a T> {
    value
        .as_ref()
        .ok_or_else(|| usage(format!("missing required option {flag}")))
}

fn existing(path: &Path, what: &str) -> anyhow::Result<()> {
    if path.exists() {
        Ok(())
    } else {
        Err(usage(format!("{what} {} not found", path.display())))
    }
}

fn preprocess_config(cfg: &RunConfig) -> anyhow::Result<PreprocessConfig> {
    let mut pc = PreprocessConfig::default();
    if let Some(path) = &cfg.stopwords_file {
        existing(path, "stopword file")?;
        pc.stopwords = load_stopwords(path)?;
    }
    if let Some(v) = cfg.strip_markup {
        pc.strip_markup = v;
    }
    if let Some(v) = cfg.stemming {
        pc.stemming = v;
    }
    if let Some(v) = cfg.bigrams {
        pc.bigrams = v;
    }
    Ok(pc)
}

fn profile_file_name(label: &str) -> anyhow::Result<String> {
    if label.is_empty() || label.contains(['/', '\\']) || label.starts_with('.') {
        return Err(usage(format!(
            "label {label:?} cannot be used as a file name"
        )));
    }
    Ok(format!("{label}.profile.json"))
}

/// `features`: labeled samples to a feature file plus one profile per label.
pub fn select_features(cfg: &RunConfig) -> anyhow::Result<()> {
    if cfg.sample_dirs.len() < 2 {
        return Err(usage(format!(
            "feature selection needs at least two --samples LABEL=DIR, got {}",
            cfg.sample_dirs.len()
        )));
    }
    let out = required(&cfg.features_path, "--out")?;
    for (label, dir) in &cfg.sample_dirs {
        profile_file_name(label)?;
        existing(dir, &format!("sample directory for {label:?}"))?;
    }
    let pc = preprocess_config(cfg)?;
    let defaults = SelectionParams::default();
    let params = SelectionParams {
        top_k: cfg.top_k.unwrap_or(defaults.top_k),
        min_ratio: cfg.min_ratio.unwrap_or(defaults.min_ratio),
        min_wf: cfg.min_wf.unwrap_or(defaults.min_wf),
    };

    let mut profiles: Vec<LabeledProfile> = Vec::new();
    for (label, dir) in &cfg.sample_dirs {
        let docs = io::read_corpus(dir)?;
        let profile = profile_corpus(label.clone(), &docs, &pc)
            .with_context(|| format!("sample corpus {label:?} ({})", dir.display()))?;
        profiles.push(profile);
    }
    let table = discrimination_table(&profiles, &params)?;
    let features = select(&profiles, &params)?;

    io::write_json(out, &features)?;
    let profiles_dir = match &cfg.profiles_dir {
        Some(dir) => dir.clone(),
        None => out.parent().map(Path::to_path_buf).unwrap_or_default(),
    };
    for p in &profiles {
        io::write_json(profiles_dir.join(profile_file_name(&p.label)?), p)?;
    }

    let labels: Vec<&str> = profiles.iter().map(|p| p.label.as_str()).collect();
    let selected = |t: &str| features.position(t).is_some();
    let mut rows = vec![{
        let mut h = vec!["term".to_string()];
        h.extend(labels.iter().map(|l| l.to_string()));
        h.push("ratio".into());
        h
    }];
    let render = |s: &fuzzydoc::TermScore| {
        let mut r = vec![s.term.clone()];
        r.extend(s.wf.iter().map(|v| format!("{v:.4}")));
        r.push(format!("{:.3}", s.ratio));
        r
    };
    rows.extend(table.iter().filter(|s| selected(&s.term)).map(render));
    let cut = rows.len();
    rows.extend(table.iter().filter(|s| !selected(&s.term)).map(render));
    print!("{}", align(&rows, Some(cut)));
    println!("selected {} features -> {}", features.len(), out.display());
    Ok(())
}

/// Left-aligned columns; `cut` inserts a threshold rule before that row.
fn align(rows: &[Vec<String>], cut: Option<usize>) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for (i, row) in rows.iter().enumerate() {
        if Some(i) == cut {
            let width = widths.iter().sum::<usize>() + 2 * cols.saturating_sub(1);
            let _ = writeln!(out, "{}", "-".repeat(width.max(11)));
        }
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
    }
    out
}

/// `cluster`: corpus plus feature file to a result file.
pub fn cluster(cfg: &RunConfig) -> anyhow::Result<()> {
    let corpus = required(&cfg.corpus_dir, "--corpus")?;
    let features_path = required(&cfg.features_path, "--features")?;
    let clusters = *required(&cfg.clusters, "--clusters")?;
    let out = required(&cfg.result_path, "--out")?;
    existing(corpus, "corpus directory")?;
    existing(features_path, "feature file")?;
    if let Some(init) = &cfg.init_file {
        existing(init, "initial partition file")?;
    }
    let pc = preprocess_config(cfg)?;

    let features = io::read_feature_set(features_path)?;
    let docs = io::read_corpus(corpus)?;
    let vectors = vectorize_corpus(&docs, &pc, &features)?;
    for id in &vectors.skipped {
        eprintln!("warning: skipping {id}: no terms left after preprocessing");
    }
    if vectors.vectors.len() < clusters {
        bail!(
            "{clusters} clusters requested but only {} usable documents in {}",
            vectors.vectors.len(),
            corpus.display()
        );
    }
    let x = FeatureMatrix::from_vectors(&vectors.vectors)?;

    let init = match &cfg.init_file {
        Some(path) => InitSpec::Explicit(io::read_partition(path)?),
        None => InitSpec::Random {
            seed: cfg.seed.unwrap_or(0),
        },
    };
    let defaults = FcmParams::new(clusters);
    let params = FcmParams {
        clusters,
        fuzzifier: cfg.fuzzifier.unwrap_or(defaults.fuzzifier),
        epsilon: cfg.epsilon.unwrap_or(defaults.epsilon),
        max_iters: cfg.max_iters.unwrap_or(defaults.max_iters),
        init,
    };
    let trace = cfg.trace.unwrap_or(false);
    let result = run_fcm_with_observer(&x, &params, |step| {
        if trace {
            println!(
                "{}",
                serde_json::to_string(step).expect("trace step serializes")
            );
        }
    })?;

    io::write_json(
        out,
        &ResultFile::new(x.doc_ids().to_vec(), &features, &result),
    )?;
    println!("iterations: {}", result.iterations);
    println!("converged: {}", result.converged);
    println!("objective: {}", result.final_objective());
    if !result.converged {
        eprintln!(
            "warning: no convergence within {} iterations (last change {})",
            params.max_iters,
            result
                .max_change_history
                .last()
                .copied()
                .unwrap_or(f64::NAN)
        );
    }
    Ok(())
}

fn load_profiles(paths: &[PathBuf]) -> anyhow::Result<Vec<LabeledProfile>> {
    let mut profiles = Vec::new();
    for path in paths {
        existing(path, "profile path")?;
        if path.is_dir() {
            let mut files: Vec<PathBuf> = std::fs::read_dir(path)
                .with_context(|| format!("reading {}", path.display()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.to_string_lossy().ends_with(".profile.json"))
                .collect();
            files.sort();
            for f in files {
                profiles.push(io::read_profile(&f)?);
            }
        } else {
            profiles.push(io::read_profile(path)?);
        }
    }
    if profiles.is_empty() {
        bail!("no profiles found");
    }
    Ok(profiles)
}

/// `report`: result file plus profiles to a labeled membership report.
pub fn report(cfg: &RunConfig) -> anyhow::Result<()> {
    let result_path = required(&cfg.result_path, "--result")?;
    let out = required(&cfg.report_path, "--out")?;
    if cfg.profiles.is_empty() {
        return Err(usage("missing required option --profiles"));
    }
    existing(result_path, "result file")?;
    let profiles = load_profiles(&cfg.profiles)?;

    let result = io::read_result(result_path)?;
    let u = result.partition()?;
    let features = result.feature_set()?;
    let centers = Centers::new(result.centers.clone())?;
    if centers.n_clusters() != u.n_clusters() {
        bail!(
            "result has {} centers but {} membership rows",
            centers.n_clusters(),
            u.n_clusters()
        );
    }
    let labeling = label_clusters(&centers, &profiles, &features)?;
    let defaults = StrengthParams::default();
    let params = StrengthParams {
        strong_threshold: cfg.strong_threshold.unwrap_or(defaults.strong_threshold),
        ambiguity_margin: cfg.ambiguity_margin.unwrap_or(defaults.ambiguity_margin),
    };
    let report = classify_strength(&u, &result.doc_ids, &labeling, &params)?;
    io::write_json(out, &report)?;

    for (j, label) in labeling.assignment.iter().enumerate() {
        println!(
            "cluster {}: {label} (distance {:.3})",
            j + 1,
            labeling.score[j]
        );
    }
    println!();
    print!("{}", report.to_table());
    println!();
    let mut labels = labeling.assignment.clone();
    labels.sort();
    for label in &labels {
        let ranked = rank_documents(&u, &result.doc_ids, &labeling, label)
            .map_err(|e| anyhow!(e))?
            .into_iter()
            .map(|(id, deg)| format!("{id} ({deg:.3})"))
            .collect::<Vec<_>>();
        println!("{label}: {}", ranked.join(", "));
    }
    Ok(())
}
