//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

mod common;

use std::fs;
use std::process::ExitCode;

use fuzzydoc::{
    harden, iterate_once, label_clusters, pairwise_distances, run_fcm, select_features,
    update_centers, update_memberships, word_frequency, Centers, FcmParams, FeatureMatrix,
    FeatureSet, InitSpec, LabeledProfile, PartitionMatrix, SelectionParams,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($fmt)+));
        }
    };
}

const DOCS: [[f64; 4]; 8] = [
    [180.0, 400.0, 200.0, 1.0],
    [200.0, 410.0, 250.0, 2.0],
    [5.0, 20.0, 40.0, 40.0],
    [3.0, 7.0, 35.0, 38.0],
    [210.0, 380.0, 180.0, 0.0],
    [7.0, 10.0, 20.0, 27.0],
    [190.0, 401.0, 170.0, 5.0],
    [2.0, 15.0, 26.0, 50.0],
];

const ORACLE_DISTANCES: [[f64; 8]; 2] = [
    [
        111.328623902391,
        149.539501470347,
        339.515187436439,
        352.738660342186,
        102.240219581141,
        353.583883258273,
        109.197355737216,
        351.206580946314,
    ],
    [
        345.102430446382,
        382.416249001007,
        105.243467730781,
        118.609390437688,
        334.366845694964,
        119.660718282985,
        339.261237838926,
        116.170940858719,
    ],
];

const PRINTED_DISTANCES: [[f64; 8]; 2] = [
    [111.32, 149.5, 339.5, 352.5, 102.2, 353.4, 109.2, 351.1],
    [345.10, 382.2, 105.1, 118.3, 334.4, 119.6, 339.7, 116.9],
];

const PRINTED_MEMBERSHIPS: [[f64; 8]; 2] = [
    [0.900, 0.867, 0.087, 0.102, 0.915, 0.103, 0.906, 0.099],
    [0.100, 0.133, 0.913, 0.898, 0.085, 0.897, 0.094, 0.901],
];

fn example_matrix() -> FeatureMatrix {
    FeatureMatrix::new(
        (1..=8).map(|i| format!("Doc{i}")).collect(),
        DOCS.iter().map(|r| r.to_vec()).collect(),
    )
    .unwrap()
}

fn example_init() -> PartitionMatrix {
    PartitionMatrix::new(vec![
        vec![1.0, 1.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0],
        vec![0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 1.0, 1.0],
    ])
    .unwrap()
}

fn profile(label: &str, entries: &[(&str, f64)]) -> LabeledProfile {
    LabeledProfile {
        label: label.into(),
        wf: entries.iter().map(|(t, v)| (t.to_string(), *v)).collect(),
    }
}

fn sample_profiles() -> Vec<LabeledProfile> {
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

fn word_frequency_golden() -> Check {
    let wf = word_frequency(5, 44).map_err(|e| e.to_string())?;
    ensure!((wf - 1136.36).abs() <= 0.01, "wf = {wf}");
    Ok(())
}

fn center_golden() -> Check {
    let v = update_centers(&example_init(), &example_matrix(), 2.0).map_err(|e| e.to_string())?;
    let expected = [[149.25, 300.0, 162.5, 7.5], [50.0, 110.75, 67.75, 33.25]];
    for j in 0..2 {
        for k in 0..4 {
            let got = v.center(j)[k];
            ensure!(
                (got - expected[j][k]).abs() <= 1e-9,
                "V{}[{k}] = {got}",
                j + 1
            );
        }
    }
    Ok(())
}

fn distance_golden() -> Check {
    let x = example_matrix();
    let v = update_centers(&example_init(), &x, 2.0).map_err(|e| e.to_string())?;
    let d = pairwise_distances(&x, &v).map_err(|e| e.to_string())?;
    for j in 0..2 {
        for i in 0..8 {
            let got = d.get(j, i);
            ensure!(
                (got - ORACLE_DISTANCES[j][i]).abs() <= 0.01,
                "D{}{} = {got} vs oracle",
                j + 1,
                i + 1
            );
            ensure!(
                (got - PRINTED_DISTANCES[j][i]).abs() <= 1.0,
                "D{}{} = {got} vs printed",
                j + 1,
                i + 1
            );
        }
    }
    Ok(())
}

fn membership_golden() -> Check {
    let (_, u) =
        iterate_once(&example_matrix(), &example_init(), 2.0).map_err(|e| e.to_string())?;
    for j in 0..2 {
        for i in 0..8 {
            let got = u.get(j, i);
            ensure!(
                (got - PRINTED_MEMBERSHIPS[j][i]).abs() <= 0.01,
                "u{}{} = {got}",
                j + 1,
                i + 1
            );
        }
    }
    Ok(())
}

fn convergence_and_labels() -> Check {
    let params = FcmParams::new(2)
        .with_epsilon(0.001)
        .with_init(InitSpec::Explicit(example_init()));
    let result = run_fcm(&example_matrix(), &params).map_err(|e| e.to_string())?;
    ensure!(
        result.converged,
        "did not converge in {} iterations",
        result.iterations
    );
    let crisp = harden(&result.partition);
    ensure!(crisp == [0, 0, 1, 1, 0, 1, 0, 1], "hardened to {crisp:?}");
    let features = FeatureSet::new(
        ["stadium", "ball", "team", "democracy"]
            .map(String::from)
            .to_vec(),
    )
    .map_err(|e| e.to_string())?;
    let labeling = label_clusters(&result.centers, &sample_profiles(), &features)
        .map_err(|e| e.to_string())?;
    ensure!(
        labeling.assignment == ["sports", "politics"],
        "labels {:?}",
        labeling.assignment
    );
    Ok(())
}

fn feature_selection_golden() -> Check {
    let params = SelectionParams {
        top_k: 4,
        min_ratio: 2.0,
        min_wf: 5.0,
    };
    let selected = select_features(&sample_profiles(), &params).map_err(|e| e.to_string())?;
    ensure!(
        selected.terms() == ["democracy", "stadium", "ball", "team"],
        "selected {:?}",
        selected.terms()
    );
    Ok(())
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize, m: usize) -> FeatureMatrix {
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            (0..m)
                .map(|_| {
                    if rng.gen_bool(0.1) {
                        0.0
                    } else {
                        (rng.gen_range(0.0..1000.0f64) * 100.0).round() / 100.0
                    }
                })
                .collect()
        })
        .collect();
    FeatureMatrix::new((0..n).map(|i| format!("d{i}")).collect(), rows).unwrap()
}

fn random_partition(rng: &mut ChaCha8Rng, c: usize, n: usize) -> PartitionMatrix {
    let mut rows = vec![vec![0.0; n]; c];
    for i in 0..n {
        let w: Vec<f64> = (0..c).map(|_| rng.gen_range(0.01..1.0)).collect();
        let s: f64 = w.iter().sum();
        for j in 0..c {
            rows[j][i] = w[j] / s;
        }
    }
    PartitionMatrix::new(rows).unwrap()
}

const CASES: usize = 1000;

fn property_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

    // Column sums, bounds, objective descent, order reversal.
    for case in 0..CASES {
        let n = rng.gen_range(2..=12);
        let m = rng.gen_range(1..=5);
        let c = rng.gen_range(1..=n.min(4));
        let fuzzifier = rng.gen_range(1.2..3.5);
        let x = random_matrix(&mut rng, n, m);
        let params = FcmParams::new(c)
            .with_fuzzifier(fuzzifier)
            .with_init(InitSpec::Random { seed: rng.gen() });
        let result = run_fcm(&x, &params).map_err(|e| format!("case {case}: {e}"))?;
        let u = &result.partition;
        for i in 0..n {
            let col = u.column(i);
            let sum: f64 = col.iter().sum();
            ensure!(
                (sum - 1.0).abs() <= 1e-9,
                "case {case}: column {i} sums to {sum}"
            );
            ensure!(
                col.iter().all(|v| (0.0..=1.0).contains(v)),
                "case {case}: column {i} = {col:?}"
            );
        }
        for w in result.objective_history.windows(2) {
            ensure!(
                w[1] <= w[0] + 1e-9 * w[0].abs(),
                "case {case}: objective rose {} -> {}",
                w[0],
                w[1]
            );
        }
        let d = pairwise_distances(&x, &result.centers).map_err(|e| e.to_string())?;
        let next = update_memberships(&d, fuzzifier).map_err(|e| e.to_string())?;
        for i in 0..n {
            let singular = (0..c).any(|j| d.get(j, i) == 0.0);
            for a in 0..c {
                for b in 0..c {
                    let (da, db) = (d.get(a, i), d.get(b, i));
                    let (ua, ub) = (next.get(a, i), next.get(b, i));
                    if da < db {
                        ensure!(
                            ua >= ub,
                            "case {case}: doc {i} d {da} < {db} but u {ua} < {ub}"
                        );
                        if !singular && ub > f64::MIN_POSITIVE {
                            ensure!(ua > ub, "case {case}: doc {i} not strictly ordered");
                        }
                    } else if da == db {
                        ensure!(
                            ua == ub,
                            "case {case}: doc {i} equal distances, u {ua} != {ub}"
                        );
                    }
                }
            }
        }
    }

    // Permutation equivariance on 10 x 4 instances.
    for case in 0..CASES {
        let (n, m) = (10, 4);
        let c = rng.gen_range(2..=4);
        let x = random_matrix(&mut rng, n, m);
        let init = random_partition(&mut rng, c, n);
        let mut docs: Vec<usize> = (0..n).collect();
        docs.shuffle(&mut rng);
        let mut clusters: Vec<usize> = (0..c).collect();
        clusters.shuffle(&mut rng);

        let px = FeatureMatrix::new(
            docs.iter().map(|&i| x.doc_ids()[i].clone()).collect(),
            docs.iter().map(|&i| x.row(i).to_vec()).collect(),
        )
        .unwrap();
        let pinit = PartitionMatrix::new(
            clusters
                .iter()
                .map(|&j| docs.iter().map(|&i| init.get(j, i)).collect())
                .collect(),
        )
        .unwrap();
        let base = run_fcm(&x, &FcmParams::new(c).with_init(InitSpec::Explicit(init)))
            .map_err(|e| e.to_string())?;
        let perm = run_fcm(&px, &FcmParams::new(c).with_init(InitSpec::Explicit(pinit)))
            .map_err(|e| e.to_string())?;
        ensure!(
            base.iterations == perm.iterations,
            "case {case}: {} vs {} iterations",
            base.iterations,
            perm.iterations
        );
        for (pj, &j) in clusters.iter().enumerate() {
            for (pi, &i) in docs.iter().enumerate() {
                let (a, b) = (base.partition.get(j, i), perm.partition.get(pj, pi));
                ensure!((a - b).abs() <= 1e-9, "case {case}: u[{j}][{i}] {a} vs {b}");
            }
            for k in 0..m {
                let (a, b) = (base.centers.center(j)[k], perm.centers.center(pj)[k]);
                ensure!(
                    (a - b).abs() <= 1e-9 * a.abs().max(1.0),
                    "case {case}: center {j}[{k}] {a} vs {b}"
                );
            }
        }
    }

    // A document sitting exactly on one center gets a one-hot column.
    for case in 0..CASES {
        let n = rng.gen_range(2..=10);
        let m = rng.gen_range(1..=4);
        let c = rng.gen_range(2..=n.min(4));
        let x = random_matrix(&mut rng, n, m);
        let mut rows: Vec<Vec<f64>> = (0..c)
            .map(|_| (0..m).map(|_| rng.gen_range(0.0..1000.0)).collect())
            .collect();
        let doc = rng.gen_range(0..n);
        let hit = rng.gen_range(0..c);
        rows[hit] = x.row(doc).to_vec();
        let v = Centers::new(rows).map_err(|e| e.to_string())?;
        let d = pairwise_distances(&x, &v).map_err(|e| e.to_string())?;
        let zeros = (0..c).filter(|&j| d.get(j, doc) == 0.0).count();
        ensure!(
            zeros == 1,
            "case {case}: expected one zero distance, got {zeros}"
        );
        let u = update_memberships(&d, rng.gen_range(1.2..3.5)).map_err(|e| e.to_string())?;
        for j in 0..c {
            let expected = if j == hit { 1.0 } else { 0.0 };
            ensure!(
                u.get(j, doc) == expected,
                "case {case}: u[{j}][{doc}] = {}",
                u.get(j, doc)
            );
        }
    }
    Ok(())
}

/// Centers and memberships evaluated directly from their defining sums,
/// sharing no code with the library.
fn brute_force_iteration(x: &[[f64; 2]], u: &[Vec<f64>], m: f64) -> (Vec<[f64; 2]>, Vec<Vec<f64>>) {
    let c = u.len();
    let n = x.len();
    let mut v = vec![[0.0; 2]; c];
    for j in 0..c {
        let mut num = [0.0; 2];
        let mut den = 0.0;
        for i in 0..n {
            let w = u[j][i].powf(m);
            num[0] += w * x[i][0];
            num[1] += w * x[i][1];
            den += w;
        }
        v[j] = [num[0] / den, num[1] / den];
    }
    let dist = |i: usize, j: usize| (x[i][0] - v[j][0]).hypot(x[i][1] - v[j][1]);
    let mut next = vec![vec![0.0; n]; c];
    for i in 0..n {
        for j in 0..c {
            let dj = dist(i, j);
            let mut s = 0.0;
            for k in 0..c {
                s += (dj / dist(i, k)).powf(2.0 / (m - 1.0));
            }
            next[j][i] = 1.0 / s;
        }
    }
    (v, next)
}

fn oracle_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0ac1e);
    for case in 0..CASES {
        let c = rng.gen_range(2..=3);
        let fuzzifier = rng.gen_range(1.5..3.0);
        let x: Vec<[f64; 2]> = (0..6)
            .map(|_| [rng.gen_range(0.0..1000.0), rng.gen_range(0.0..1000.0)])
            .collect();
        let u = random_partition(&mut rng, c, 6);
        let fm = FeatureMatrix::new(
            (0..6).map(|i| format!("d{i}")).collect(),
            x.iter().map(|r| r.to_vec()).collect(),
        )
        .unwrap();
        let (v, next) = iterate_once(&fm, &u, fuzzifier).map_err(|e| e.to_string())?;
        let (ov, onext) = brute_force_iteration(&x, &u.to_rows(), fuzzifier);
        for j in 0..c {
            for k in 0..2 {
                let (a, b) = (v.center(j)[k], ov[j][k]);
                ensure!(
                    (a - b).abs() <= 1e-12 * b.abs().max(1.0),
                    "case {case}: center {j}[{k}] {a} vs {b}"
                );
            }
            for i in 0..6 {
                let (a, b) = (next.get(j, i), onext[j][i]);
                ensure!(
                    (a - b).abs() <= 1e-12,
                    "case {case}: u[{j}][{i}] {a} vs {b}"
                );
            }
        }
    }
    Ok(())
}

fn cli_determinism() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let corpus = common::write_example_corpus(dir.path());
    let features = common::write_feature_file(dir.path());
    let mut files = Vec::new();
    for round in 0..2 {
        let out = dir.path().join(format!("result{round}.json"));
        let output = common::run(&[
            "cluster",
            "--corpus",
            common::path_str(&corpus),
            "--features",
            common::path_str(&features),
            "--clusters",
            "2",
            "--seed",
            "7",
            "--out",
            common::path_str(&out),
        ]);
        ensure!(
            output.status.success(),
            "cluster failed: {}",
            String::from_utf8_lossy(&output.stderr)
        );
        files.push(fs::read(&out).map_err(|e| e.to_string())?);
    }
    ensure!(files[0] == files[1], "result files differ");
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("word frequency of 5 in 44 words", word_frequency_golden),
        ("initial cluster centers", center_golden),
        ("document-center distances", distance_golden),
        ("first membership update", membership_golden),
        ("convergence grouping and labels", convergence_and_labels),
        ("discriminative feature selection", feature_selection_golden),
        ("randomized property suite", property_suite),
        ("brute-force iteration oracle", oracle_equivalence),
        ("deterministic cluster output", cli_determinism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("PASS  {}. {name}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {}. {name}: {why}", k + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
