#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub const BIN: &str = env!("CARGO_BIN_EXE_fuzzydoc");

/// Per-document counts of (stadium, ball, team, democracy) in a 10000-word
/// document, so each count is also the document's word frequency.
pub const DOC_COUNTS: [[usize; 4]; 8] = [
    [180, 400, 200, 1],
    [200, 410, 250, 2],
    [5, 20, 40, 40],
    [3, 7, 35, 38],
    [210, 380, 180, 0],
    [7, 10, 20, 27],
    [190, 401, 170, 5],
    [2, 15, 26, 50],
];

const FILLER: [&str; 5] = ["lorem", "ipsum", "dolor", "amet", "elit"];

/// Builds a document of exactly `total` tokens from `(word, count)` pairs
/// padded with filler words, interleaved so it reads as running text.
fn document(words: &[(&str, usize)], total: usize) -> String {
    let mut tokens: Vec<&str> = Vec::with_capacity(total);
    for (w, c) in words {
        tokens.extend(std::iter::repeat_n(*w, *c));
    }
    assert!(tokens.len() <= total);
    let pad = total - tokens.len();
    tokens.extend((0..pad).map(|i| FILLER[i % FILLER.len()]));
    // Deterministic shuffle: stride through the tokens.
    let n = tokens.len();
    let stride = 7919 % n.max(1);
    let mut out = String::with_capacity(n * 7);
    let mut idx = 0;
    for i in 0..n {
        if i > 0 {
            out.push(if i % 12 == 0 { '\n' } else { ' ' });
        }
        out.push_str(tokens[idx]);
        idx = (idx + if stride == 0 { 1 } else { stride }) % n;
    }
    out
}

/// Eight documents whose vectors over `feature_file()` are the rows of
/// `DOC_COUNTS`.
pub fn write_example_corpus(dir: &Path) -> PathBuf {
    let corpus = dir.join("corpus");
    fs::create_dir_all(&corpus).unwrap();
    for (i, c) in DOC_COUNTS.iter().enumerate() {
        let body = document(
            &[
                ("stadium", c[0]),
                ("ball", c[1]),
                ("team", c[2]),
                ("democracy", c[3]),
            ],
            10_000,
        );
        fs::write(
            corpus.join(format!("Doc{}.txt", i + 1)),
            format!("<html><body>{body}</body></html>\n"),
        )
        .unwrap();
    }
    corpus
}

/// Feature file over the stemmed forms of the four selected words.
pub fn write_feature_file(dir: &Path) -> PathBuf {
    let path = dir.join("features.json");
    fs::write(&path, "[\"stadium\", \"ball\", \"team\", \"democraci\"]\n").unwrap();
    path
}

/// Crisp start: documents 1, 2, 5, 6 in cluster 1, the rest in cluster 2.
pub fn write_init_file(dir: &Path) -> PathBuf {
    let path = dir.join("init.json");
    fs::write(&path, "[[1,1,0,0,1,1,0,0],[0,0,1,1,0,0,1,1]]\n").unwrap();
    path
}

/// Counts per 40000 words chosen so the pooled word frequencies are within
/// 0.5 of the published sports/politics table.
pub const SPORTS_COUNTS: [(&str, usize); 7] = [
    ("win", 40),
    ("stadium", 813),
    ("democracy", 4),
    ("ball", 2007),
    ("team", 1003),
    ("candidate", 155),
    ("campaign", 35),
];
pub const POLITICS_COUNTS: [(&str, usize); 7] = [
    ("win", 36),
    ("stadium", 28),
    ("democracy", 560),
    ("ball", 121),
    ("team", 323),
    ("candidate", 161),
    ("campaign", 38),
];

/// Writes a labeled sample corpus of four 10000-word files.
pub fn write_sample_corpus(dir: &Path, label: &str, counts: &[(&str, usize)]) -> PathBuf {
    let root = dir.join(format!("samples_{label}"));
    fs::create_dir_all(&root).unwrap();
    for part in 0..4 {
        let share: Vec<(&str, usize)> = counts
            .iter()
            .map(|(w, c)| (*w, c / 4 + usize::from(part < c % 4)))
            .collect();
        fs::write(
            root.join(format!("part{part}.txt")),
            document(&share, 10_000),
        )
        .unwrap();
    }
    root
}

pub fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("run fuzzydoc")
}

pub fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}
