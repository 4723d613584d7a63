//! Acceptance suite. One test per criterion; each enforces its tolerance
//! and wall-clock budget and prints as its own pass/fail line.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use decept_core::corpus::Label;
use decept_core::crossdomain::ScoreTable;
use decept_core::features::{ExtractorSet, FeatureExtraction, FeatureMatrix};
use decept_core::model::{cross_validate, RFConfig};
use decept_core::ngrams::{occ_score, OccDenominator};
use decept_core::selection::{
    cumulative_counts, run_selection_pipeline, shared_features, FeatureSet, SelectionConfig,
};
use decept_core::stats::{coin_flip_f1, holm_correct, one_sample_t_test, welch_t_test, Alternative};
use decept_core::text::{Sentence, Token, TokenizedDoc};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_decept-cue"))
}

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

fn budget(start: Instant, seconds: f64, name: &str) {
    let elapsed = start.elapsed().as_secs_f64();
    assert!(
        elapsed < seconds,
        "{name} took {elapsed:.2}s, budget {seconds}s"
    );
}

// ---------------------------------------------------------------------
// Criterion 1: shared-feature table reproduction from the published
// per-domain decompositions (function words, POS tags, linguistic).
// ---------------------------------------------------------------------

type TableRow = (&'static [&'static str], &'static [&'static str], usize, usize);

// Function-word table. Three CC cells as printed are arithmetically
// inconsistent with the table's own N decomposition (they omit the
// {J, P, Pr, Ps} group); the asserted values below are the consistent
// ones required by the CC(S) = sum over supersets identity, which the
// direct-intersection cross-check also yields.
const FW_TABLE: &[TableRow] = &[
    (&["F", "J", "P", "Pr", "Ps"], &["and", "in", "is", "of", "on", "the"], 6, 6),
    (&["F", "J", "P", "Pr"], &["this", "you"], 2, 8),
    (&["F", "J", "Pr", "Ps"], &["are"], 1, 7),
    (&["J", "P", "Pr", "Ps"], &["for", "to"], 2, 8),
    (&["F", "J", "P"], &["at"], 1, 9),
    (&["F", "Pr", "Ps"], &["it", "that", "would"], 3, 10),
    (&["J", "P", "Ps"], &["from", "our"], 2, 10),
    (&["J", "Pr", "Ps"], &["as", "with"], 2, 11),
    (&["P", "Pr", "Ps"], &["not"], 1, 9),
    (&["F", "P"], &["all", "had"], 2, 11),
    (&["F", "Ps"], &["he"], 1, 11),
    (&["J", "Pr"], &["be", "or"], 2, 15), // printed 13
    (&["J", "Ps"], &["we"], 1, 14),       // printed 12
    (&["P", "Pr"], &["me"], 1, 12),       // printed 10
    (&["Pr", "Ps"], &["they", "was"], 2, 17),
];

const POS_TABLE: &[TableRow] = &[
    (
        &["F", "J", "P", "Pr", "Ps"],
        &["CC", "CD", "DT", "IN", "MD", "PRP", "RB", "TO", "VBP", "VBZ"],
        10,
        10,
    ),
    (&["F", "J", "P", "Ps"], &["RP", "VB", "WDT", "WP", "WRB"], 5, 15),
    (&["F", "P", "Pr", "Ps"], &["VBD"], 1, 11),
    (&["F", "J", "P"], &["POS", "UH"], 2, 17),
    (&["F", "P", "Ps"], &["EX", "VBN"], 2, 18),
    (&["F", "J"], &["VBG"], 1, 18),
    (&["J", "P"], &["ADD"], 1, 18),
];

const LING_TABLE: &[TableRow] = &[
    (&["F", "J", "P", "Pr", "Ps"], &["per_cap"], 1, 1),
    (&["J", "P", "Pr", "Ps"], &["Dic", "f_b", "f_g", "per_digit", "richness"], 5, 6),
    (&["F", "J", "P"], &["cert", "f_e_2", "function", "sen_len"], 4, 5),
    (&["F", "J", "Pr"], &["period"], 1, 2),
    (&["F", "P", "Pr"], &["paus"], 1, 2),
    (&["P", "Pr", "Ps"], &["conj", "f_f", "modi"], 3, 9),
    (&["F", "J"], &["apostro", "comm"], 2, 8),
    (
        &["F", "P"],
        &["f_e_0", "f_e_1", "f_e_3", "f_e_7", "sens"],
        5,
        11,
    ),
    (
        &["F", "Pr"],
        &[
            "adverb", "allPunc", "analytic", "f_e_8", "focuspast", "ipron", "len_text", "OtherP",
            "pronoun", "WPS",
        ],
        10,
        13,
    ),
    (&["J", "P"], &["f_c", "f_o", "f_v", "f_w", "socrefs"], 5, 15),
    (
        &["P", "Pr"],
        &["avg_len", "f_d", "f_i", "f_s", "f_t", "f_y", "self_ref"],
        7,
        17,
    ),
    (&["P", "Ps"], &["f_1", "f_p"], 2, 11),
    (&["J", "Pr"], &["allure", "article", "lifestyle"], 3, 10),
    (&["Pr", "Ps"], &["quantity"], 1, 10),
];

/// Rebuild per-domain sets from the exact-group rows: a domain owns every
/// feature of every row whose subset contains it.
fn reconstruct_sets(table: &[TableRow]) -> Vec<FeatureSet> {
    let mut by_domain: BTreeMap<&str, BTreeSet<String>> = BTreeMap::new();
    for d in ["F", "J", "P", "Pr", "Ps"] {
        by_domain.insert(d, BTreeSet::new());
    }
    for (domains, features, _, _) in table {
        for d in *domains {
            let set = by_domain.get_mut(d).unwrap();
            for f in *features {
                set.insert(f.to_string());
            }
        }
    }
    by_domain
        .into_iter()
        .map(|(d, names)| FeatureSet::new(d, names.into_iter().collect()))
        .collect()
}

fn check_table(table: &[TableRow], label: &str) {
    let sets = reconstruct_sets(table);
    let shared = shared_features(&sets).unwrap();
    let cc = cumulative_counts(&shared).unwrap();
    for (domains, features, n, expected_cc) in table {
        let subset: BTreeSet<String> = domains.iter().map(|s| s.to_string()).collect();
        let group = shared
            .groups
            .iter()
            .find(|g| g.subset == subset)
            .unwrap_or_else(|| panic!("{label}: no group for {subset:?}"));
        assert_eq!(group.n, *n, "{label}: N for {subset:?}");
        let want: BTreeSet<String> = features.iter().map(|s| s.to_string()).collect();
        assert_eq!(group.exact_features, want, "{label}: features for {subset:?}");
        assert_eq!(cc[&subset], *expected_cc, "{label}: CC for {subset:?}");
        assert_eq!(shared.cc(&subset), *expected_cc, "{label}: direct CC for {subset:?}");
    }
    // Every reported group is one of the table rows.
    assert_eq!(shared.groups.len(), table.len(), "{label}: group count");
}

#[test]
fn c01_cc_table_reproduction() {
    let start = Instant::now();
    check_table(FW_TABLE, "function words");
    check_table(POS_TABLE, "pos tags");
    check_table(LING_TABLE, "linguistic");

    // The cc-table command reproduces the function-word table.
    let dir = tempfile::tempdir().unwrap();
    let mut paths = Vec::new();
    for fs in reconstruct_sets(FW_TABLE) {
        let path = dir.path().join(format!("{}.json", fs.domain));
        std::fs::write(&path, serde_json::to_string(&fs).unwrap()).unwrap();
        paths.push(path);
    }
    let mut cmd = bin();
    cmd.arg("cc-table").arg("--sets");
    for p in &paths {
        cmd.arg(p);
    }
    let output = cmd.output().unwrap();
    assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));
    let stdout = String::from_utf8(output.stdout).unwrap();
    let mut seen = 0;
    for line in stdout.lines().skip(2) {
        let cells: Vec<&str> = line.trim_matches('|').split('|').map(str::trim).collect();
        assert_eq!(cells.len(), 4, "bad row: {line}");
        let subset: BTreeSet<String> = if cells[0] == "All" {
            ["F", "J", "P", "Pr", "Ps"].iter().map(|s| s.to_string()).collect()
        } else {
            cells[0].split(", ").map(str::to_string).collect()
        };
        let row = FW_TABLE
            .iter()
            .find(|(d, _, _, _)| {
                d.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>() == subset
            })
            .unwrap_or_else(|| panic!("unexpected subset {subset:?}"));
        assert_eq!(cells[1].parse::<usize>().unwrap(), row.2, "N in {line}");
        assert_eq!(cells[3].parse::<usize>().unwrap(), row.3, "CC in {line}");
        seen += 1;
    }
    assert_eq!(seen, FW_TABLE.len());
    budget(start, 1.0, "criterion 1");
}

// ---------------------------------------------------------------------
// Criterion 2: Holm correction vs a brute-force step-down oracle.
// ---------------------------------------------------------------------

fn holm_oracle(raw: &[f64], alpha: f64) -> (Vec<f64>, Vec<bool>) {
    let m = raw.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| raw[a].partial_cmp(&raw[b]).unwrap());
    // Adjusted p by the direct definition (quadratic scan).
    let mut adjusted = vec![0.0; m];
    for (rank, &idx) in order.iter().enumerate() {
        let mut best = 0.0f64;
        for j in 0..=rank {
            let scaled = ((m - j) as f64 * raw[order[j]]).min(1.0);
            if scaled > best {
                best = scaled;
            }
        }
        adjusted[idx] = best;
    }
    // Step-down rejection without adjusted values.
    let mut rejected = vec![false; m];
    for (rank, &idx) in order.iter().enumerate() {
        if raw[idx] <= alpha / (m - rank) as f64 {
            rejected[idx] = true;
        } else {
            break;
        }
    }
    (adjusted, rejected)
}

#[test]
fn c02_holm_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    for case in 0..1000 {
        let m = rng.gen_range(1..=20);
        let raw: Vec<f64> = (0..m)
            .map(|_| {
                // Mix of tiny and ordinary p-values, with ties.
                match rng.gen_range(0..4) {
                    0 => rng.gen_range(0.0..0.01),
                    1 => rng.gen_range(0.0..1.0f64).powi(3),
                    2 => 0.05,
                    _ => rng.gen_range(0.0..=1.0),
                }
            })
            .collect();
        let alpha = [0.01, 0.05, 0.1][case % 3];
        let got = holm_correct(&raw, alpha).unwrap();
        let (adj, rej) = holm_oracle(&raw, alpha);
        assert_eq!(got.adjusted_p, adj, "case {case}: adjusted mismatch");
        assert_eq!(got.rejected, rej, "case {case}: rejection mismatch");
    }
    budget(start, 5.0, "criterion 2");
}

// ---------------------------------------------------------------------
// Criterion 3: t-test p-values vs high-precision numerical integration.
// ---------------------------------------------------------------------

/// Composite Simpson integration.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + h * i as f64);
    }
    acc * h / 3.0
}

/// P(T >= t_abs) for Student's t with df degrees of freedom, computed by
/// integrating the unnormalized density (no gamma function involved).
fn t_tail_oracle(t_abs: f64, df: f64) -> f64 {
    let g = move |x: f64| (1.0 + x * x / df).powf(-(df + 1.0) / 2.0);
    let integrate_from = |a: f64| {
        simpson(
            |s: f64| {
                if s >= 1.0 {
                    return 0.0;
                }
                let x = a + s / (1.0 - s);
                g(x) / ((1.0 - s) * (1.0 - s))
            },
            0.0,
            1.0,
            200_000,
        )
    };
    integrate_from(t_abs) / (2.0 * integrate_from(0.0))
}

#[test]
fn c03_t_test_precision() {
    let start = Instant::now();

    // Worked examples, frozen from an independent reference.
    let r = welch_t_test(&[1.0, 2.0, 3.0, 4.0], &[5.0, 6.0, 7.0, 8.0], Alternative::TwoSided).unwrap();
    assert!((r.statistic - -4.381_780_460_041_33).abs() < 1e-10);
    assert!((r.df - 6.0).abs() < 1e-10);
    assert!((r.p_value - 4.659_214_943_993_93e-3).abs() < 1e-10);
    let r1 = one_sample_t_test(&[0.6, 0.62, 0.58, 0.61, 0.59], 0.5, Alternative::Greater).unwrap();
    assert!((r1.statistic - 14.142_135_623_730_92).abs() < 1e-9);
    assert!((r1.p_value - 7.256_408_530_659_94e-5).abs() < 1e-10);

    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut sample = |n: usize, loc: f64, scale: f64, rng: &mut ChaCha8Rng| -> Vec<f64> {
        (0..n)
            .map(|_| loc + scale * (rng.gen::<f64>() + rng.gen::<f64>() + rng.gen::<f64>() - 1.5))
            .collect()
    };
    for case in 0..50 {
        let na = rng.gen_range(3..12);
        let nb = rng.gen_range(3..12);
        let a = sample(na, rng.gen_range(-1.0..1.0), rng.gen_range(0.2..2.0), &mut rng);
        let b = sample(nb, rng.gen_range(-1.0..1.0), rng.gen_range(0.2..2.0), &mut rng);
        let r = welch_t_test(&a, &b, Alternative::TwoSided).unwrap();
        let oracle = 2.0 * t_tail_oracle(r.statistic.abs(), r.df);
        assert!(
            (r.p_value - oracle).abs() < 1e-8,
            "welch case {case}: {} vs oracle {oracle}",
            r.p_value
        );
    }
    for case in 0..50 {
        let n = rng.gen_range(3..15);
        let s = sample(n, rng.gen_range(-0.5..0.5), rng.gen_range(0.1..1.5), &mut rng);
        let mu0 = rng.gen_range(-0.5..0.5);
        let r = match one_sample_t_test(&s, mu0, Alternative::Greater) {
            Ok(r) => r,
            Err(_) => continue, // constant sample; regenerate not needed at these sizes
        };
        let tail = t_tail_oracle(r.statistic.abs(), r.df);
        let oracle = if r.statistic >= 0.0 { tail } else { 1.0 - tail };
        assert!(
            (r.p_value - oracle).abs() < 1e-8,
            "one-sample case {case}: {} vs oracle {oracle}",
            r.p_value
        );
    }
    budget(start, 5.0, "criterion 3");
}

// ---------------------------------------------------------------------
// Criterion 4: Occ_n vs an exhaustive brute-force enumerator.
// ---------------------------------------------------------------------

const FW_POOL: &[&str] = &["the", "of", "and", "to", "in", "a", "on", "but"];
const CONTENT_POOL: &[&str] = &["cat", "dog", "tree", "house", "runs", "red", "sky", "door"];

fn random_doc(rng: &mut ChaCha8Rng) -> TokenizedDoc {
    let n_sentences = rng.gen_range(1..=5);
    let mut sentences = Vec::new();
    let mut chars = 0;
    for _ in 0..n_sentences {
        let n_words = rng.gen_range(1..=12);
        let tokens: Vec<Token> = (0..n_words)
            .map(|_| {
                let fw = rng.gen_bool(0.5);
                let surface = if fw {
                    FW_POOL[rng.gen_range(0..FW_POOL.len())]
                } else {
                    CONTENT_POOL[rng.gen_range(0..CONTENT_POOL.len())]
                };
                chars += surface.len() + 1;
                Token {
                    surface: surface.to_string(),
                    lower: surface.to_string(),
                    pos: Some("NN".into()),
                    is_function_word: fw,
                    is_punct: false,
                }
            })
            .collect();
        sentences.push(Sentence { tokens });
    }
    TokenizedDoc {
        sentences,
        char_count: chars,
    }
}

/// Brute-force: for each sentence, scan every window of the function-word
/// positions token by token.
fn occ_brute_force(ngram: &[String], doc: &TokenizedDoc) -> f64 {
    let n = ngram.len();
    let mut total = 0.0;
    for sentence in &doc.sentences {
        let words = sentence.tokens.iter().filter(|t| !t.is_punct).count();
        if words <= n {
            continue;
        }
        let fws: Vec<&str> = sentence
            .tokens
            .iter()
            .filter(|t| t.is_function_word)
            .map(|t| t.lower.as_str())
            .collect();
        let mut hits = 0;
        if fws.len() >= n {
            for start in 0..=(fws.len() - n) {
                let mut ok = true;
                for (k, want) in ngram.iter().enumerate() {
                    if fws[start + k] != want {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    hits += 1;
                }
            }
        }
        total += hits as f64 / (words - n) as f64;
    }
    total
}

#[test]
fn c04_occ_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    for _ in 0..200 {
        let doc = random_doc(&mut rng);
        for n in 1..=4usize {
            // Candidates: every n-gram over the pool that appears, plus
            // random absent ones.
            let mut candidates: Vec<Vec<String>> = Vec::new();
            for sentence in &doc.sentences {
                let fws: Vec<&str> = sentence
                    .tokens
                    .iter()
                    .filter(|t| t.is_function_word)
                    .map(|t| t.lower.as_str())
                    .collect();
                if fws.len() >= n {
                    for w in fws.windows(n) {
                        candidates.push(w.iter().map(|s| s.to_string()).collect());
                    }
                }
            }
            for _ in 0..5 {
                candidates.push(
                    (0..n)
                        .map(|_| FW_POOL[rng.gen_range(0..FW_POOL.len())].to_string())
                        .collect(),
                );
            }
            for ngram in candidates {
                let got = occ_score(&ngram, &doc, OccDenominator::SentenceWords).unwrap();
                let want = occ_brute_force(&ngram, &doc);
                assert!(
                    (got - want).abs() < 1e-12,
                    "ngram {ngram:?}: {got} vs brute force {want}"
                );
            }
        }
    }
    budget(start, 10.0, "criterion 4");
}

// ---------------------------------------------------------------------
// Criterion 5: coin-flip F1 formula vs simulation.
// ---------------------------------------------------------------------

#[test]
fn c05_coin_flip_baseline() {
    let start = Instant::now();
    let n = 100_000usize;
    let reps = 25;
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    for &q in &[0.05, 0.3, 0.5, 0.9] {
        let positives = (q * n as f64).round() as usize;
        let mut f1_sum = 0.0;
        for _ in 0..reps {
            let mut tp = 0usize;
            let mut fp = 0usize;
            let mut fne = 0usize;
            for i in 0..n {
                let truth = i < positives;
                let pred = rng.gen_bool(0.5);
                match (pred, truth) {
                    (true, true) => tp += 1,
                    (true, false) => fp += 1,
                    (false, true) => fne += 1,
                    (false, false) => {}
                }
            }
            let precision = tp as f64 / (tp + fp) as f64;
            let recall = tp as f64 / (tp + fne) as f64;
            f1_sum += 2.0 * precision * recall / (precision + recall);
        }
        let empirical = f1_sum / reps as f64;
        let formula = coin_flip_f1(q).unwrap();
        assert!(
            (formula - empirical).abs() < 0.005,
            "q={q}: formula {formula} vs simulated {empirical}"
        );
    }
    budget(start, 10.0, "criterion 5");
}

// ---------------------------------------------------------------------
// Criterion 6: random-forest sanity on two-Gaussian data.
// ---------------------------------------------------------------------

fn two_gaussian_matrix(n: usize, d: usize, separation: f64, seed: u64) -> FeatureMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut normal = move || {
        // Box-Muller.
        let u1: f64 = rng.gen_range(1e-12..1.0);
        let u2: f64 = rng.gen();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    };
    let mut rows = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let deceptive = i % 2 == 1;
        let shift = if deceptive { separation } else { 0.0 };
        rows.push((0..d).map(|_| Some(shift + normal())).collect());
        labels.push(if deceptive { Label::Deceptive } else { Label::Truthful });
    }
    FeatureMatrix {
        feature_names: (0..d).map(|j| format!("x{j}")).collect(),
        doc_ids: (0..n).map(|i| format!("d{i}")).collect(),
        domains: vec!["synthetic".into(); n],
        labels,
        rows,
    }
}

#[test]
fn c06_random_forest_sanity() {
    let start = Instant::now();
    let matrix = two_gaussian_matrix(2000, 5, 3.0, 606);
    let cfg = RFConfig {
        n_trees: 50,
        min_leaf: 5,
        feature_fraction: 0.5,
        seed: 616,
    };
    let a = cross_validate(&matrix, &cfg, 5, 626).unwrap();
    assert!(a.mean.accuracy >= 0.95, "cv accuracy {}", a.mean.accuracy);
    let b = cross_validate(&matrix, &cfg, 5, 626).unwrap();
    assert_eq!(
        serde_json::to_vec(&a).unwrap(),
        serde_json::to_vec(&b).unwrap(),
        "same seed must give byte-identical reports"
    );
    budget(start, 30.0, "criterion 6");
}

// ---------------------------------------------------------------------
// Criterion 7: golden feature matrix.
// ---------------------------------------------------------------------

#[test]
fn c07_golden_feature_matrix() {
    let start = Instant::now();
    let corpus = decept_core::corpus::load_corpus(
        &data_dir().join("golden/corpus.jsonl"),
        decept_core::corpus::CorpusFormat::Jsonl,
    )
    .unwrap();
    let extraction = FeatureExtraction::new(
        ExtractorSet::all(),
        Some(decept_core::features::CategoryDictionary::demo()),
    );
    let got = extraction.build_matrix(&corpus).unwrap();

    let expected_file = std::fs::File::open(data_dir().join("golden/expected_matrix.csv")).unwrap();
    let want = FeatureMatrix::read_csv(std::io::BufReader::new(expected_file)).unwrap();

    assert_eq!(got.feature_names, want.feature_names);
    assert_eq!(got.doc_ids, want.doc_ids);
    assert_eq!(got.n_rows(), 10);
    for (i, (grow, wrow)) in got.rows.iter().zip(&want.rows).enumerate() {
        for (j, (g, w)) in grow.iter().zip(wrow).enumerate() {
            match (g, w) {
                (None, None) => {}
                (Some(gv), Some(wv)) => assert!(
                    (gv - wv).abs() <= 1e-9,
                    "doc {} feature {}: {gv} vs golden {wv}",
                    got.doc_ids[i],
                    got.feature_names[j]
                ),
                _ => panic!(
                    "doc {} feature {}: missing-ness mismatch ({g:?} vs {w:?})",
                    got.doc_ids[i], got.feature_names[j]
                ),
            }
        }
    }
    budget(start, 5.0, "criterion 7");
}

// ---------------------------------------------------------------------
// Criterion 8: selection pipeline on planted data.
// ---------------------------------------------------------------------

#[test]
fn c08_selection_pipeline_planted() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    let n = 500;
    let names: Vec<String> = vec![
        "inf_a".into(),
        "inf_b".into(),
        "inf_c".into(),
        "noise_0".into(),
        "noise_1".into(),
        "noise_2".into(),
        "noise_3".into(),
        "noise_4".into(),
        "dup_a".into(),
        "dup_b".into(),
    ];
    let mut normal = {
        let mut rng = ChaCha8Rng::seed_from_u64(809);
        move || {
            let u1: f64 = rng.gen_range(1e-12..1.0);
            let u2: f64 = rng.gen();
            (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
        }
    };
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for i in 0..n {
        let deceptive = i % 2 == 1;
        let shift = if deceptive { 1.6 } else { -1.6 };
        let mut row: Vec<Option<f64>> = Vec::new();
        // Three independent informative columns; any one alone is much
        // weaker than the three together, so each drop costs accuracy.
        for _ in 0..3 {
            row.push(Some(shift + normal()));
        }
        for _ in 0..5 {
            row.push(Some(rng.gen_range(-3.0..3.0)));
        }
        // Coarse monotone copies of the first two informative columns:
        // same ranks (strongly rank-correlated), less resolution.
        row.push(Some((row[0].unwrap() / 1.5).round() * 1.5));
        row.push(Some((row[1].unwrap() / 1.5).round() * 1.5));
        rows.push(row);
        labels.push(if deceptive { Label::Deceptive } else { Label::Truthful });
    }
    let matrix = FeatureMatrix {
        feature_names: names,
        doc_ids: (0..n).map(|i| format!("d{i}")).collect(),
        domains: vec!["planted".into(); n],
        labels,
        rows,
    };

    // Enough trees that out-of-bag estimates are stable across retrains;
    // with few trees the guard stops on estimate noise rather than signal.
    let cfg = SelectionConfig {
        rf: RFConfig {
            n_trees: 300,
            min_leaf: 10,
            feature_fraction: 0.5,
            seed: 818,
        },
        colinearity_cut: 0.05,
        cv_folds: 5,
        seed: 828,
    };
    let selected = run_selection_pipeline(&matrix, &cfg).unwrap();

    let final_set: BTreeSet<&str> = selected.names.iter().map(String::as_str).collect();
    let want: BTreeSet<&str> = ["inf_a", "inf_b", "inf_c"].into_iter().collect();
    assert_eq!(final_set, want, "stage log: {:?}", selected.stage_log);
    for entry in &selected.stage_log {
        assert!(
            entry.metric_after >= entry.metric_before,
            "guard violated in {}: {} -> {}",
            entry.stage,
            entry.metric_before,
            entry.metric_after
        );
    }
    budget(start, 60.0, "criterion 8");
}

// ---------------------------------------------------------------------
// Criterion 9: end-to-end planted cross-domain run through the CLI.
// ---------------------------------------------------------------------

fn synth_text(deceptive: bool, reversed: bool, i: usize) -> String {
    let nouns = ["report", "invoice", "update", "record", "summary", "package"];
    let adjs = ["recent", "final", "internal", "official", "archived", "original"];
    let noun = nouns[i % nouns.len()];
    let adj = adjs[(i / 2) % adjs.len()];
    let noun2 = nouns[(i + 2) % nouns.len()];
    // Short modal-heavy text, one to two sentences.
    let mut short_modal = match i % 3 {
        0 => format!("You must send the {noun} now."),
        1 => format!("We must check the {adj} {noun} quickly."),
        _ => format!("They must review the {noun} first."),
    };
    if i % 2 == 0 {
        short_modal.push_str(" It should arrive today.");
    }
    if i % 5 == 0 {
        short_modal.push_str(" You will see.");
    }
    // Long plain text, two to four sentences, no modals.
    let mut long_plain = format!(
        "The team examined the {adj} {noun} over several long days and compared \
         every section against the {noun2} from the archive."
    );
    if i % 2 == 0 {
        long_plain.push_str(
            " Colleagues from the office reviewed the details again and found \
             the records consistent with the earlier versions.",
        );
    }
    if i % 3 == 0 {
        long_plain.push_str(
            " Nothing unusual appeared anywhere in the file, and the final notes \
             matched the outline from last month.",
        );
    }
    if i % 7 == 0 {
        long_plain.push_str(" A short appendix covered the rest of the material.");
    }
    if deceptive != reversed {
        short_modal
    } else {
        long_plain
    }
}

fn write_domain(path: &Path, name: &str, n: usize, reversed: bool) {
    let mut out = String::new();
    for i in 0..n {
        let deceptive = i % 2 == 1;
        let doc = serde_json::json!({
            "id": format!("{name}-{i}"),
            "text": synth_text(deceptive, reversed, i),
            "label": if deceptive { "deceptive" } else { "truthful" },
            "domain": name,
        });
        out.push_str(&doc.to_string());
        out.push('\n');
    }
    std::fs::write(path, out).unwrap();
}

#[test]
fn c09_end_to_end_planted_crossdomain() {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<PathBuf> = ["alpha", "beta", "gamma"]
        .iter()
        .enumerate()
        .map(|(k, name)| {
            let raw = dir.path().join(format!("{name}_raw.jsonl"));
            // gamma is the unrelated domain: its cue runs the other way.
            write_domain(&raw, name, 240, k == 2);
            let clean = dir.path().join(format!("{name}.jsonl"));
            let status = bin()
                .args(["clean", "--in"])
                .arg(&raw)
                .arg("--out")
                .arg(&clean)
                .arg("--no-dedup")
                .status()
                .unwrap();
            assert!(status.success());
            clean
        })
        .collect();

    // sigtest on the first planted domain flags the planted cues.
    let matrix_path = dir.path().join("alpha_matrix.csv");
    let status = bin()
        .args(["features", "--extractors", "cues", "--in"])
        .arg(&paths[0])
        .arg("--out")
        .arg(&matrix_path)
        .status()
        .unwrap();
    assert!(status.success());
    let sig_path = dir.path().join("alpha_sig.csv");
    let status = bin()
        .args(["sigtest", "--alpha", "0.01", "--matrix"])
        .arg(&matrix_path)
        .arg("--out")
        .arg(&sig_path)
        .status()
        .unwrap();
    assert!(status.success());
    let sig_text = std::fs::read_to_string(&sig_path).unwrap();
    let mut flagged: BTreeMap<String, (f64, bool)> = BTreeMap::new();
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(sig_text.as_bytes());
    for record in rdr.records() {
        let record = record.unwrap();
        flagged.insert(
            record[0].to_string(),
            (record[4].parse().unwrap(), &record[5] == "true"),
        );
    }
    for cue in ["modal", "words", "sens"] {
        let (p_holm, significant) = flagged[cue];
        assert!(
            significant && p_holm < 0.01,
            "planted cue {cue}: p_holm {p_holm}, significant {significant}"
        );
    }

    // Cross-domain run over all three domains.
    let scores_path = dir.path().join("scores.csv");
    let report_path = dir.path().join("scores.report.json");
    let status = bin()
        .args(["crossdomain", "--runs", "6", "--trees", "20", "--extractors", "cues", "--seed", "909"])
        .arg("--domains")
        .args(&paths)
        .arg("--out")
        .arg(&scores_path)
        .status()
        .unwrap();
    assert!(status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    let p_of = |train: &str, eval: &str| -> f64 {
        report["report"]["cells"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["train_domain"] == train && c["eval_domain"] == eval)
            .unwrap_or_else(|| panic!("no cell {train}->{eval}"))["p"]
            .as_f64()
            .unwrap()
    };
    // Shared planted cue transfers in both directions.
    assert!(p_of("alpha", "beta") < 0.01, "alpha->beta p {}", p_of("alpha", "beta"));
    assert!(p_of("beta", "alpha") < 0.01, "beta->alpha p {}", p_of("beta", "alpha"));
    // The unrelated domain does not beat its coin flip.
    assert!(p_of("alpha", "gamma") > 0.5, "alpha->gamma p {}", p_of("alpha", "gamma"));
    assert!(p_of("beta", "gamma") > 0.5, "beta->gamma p {}", p_of("beta", "gamma"));
    budget(start, 120.0, "criterion 9");
}

// ---------------------------------------------------------------------
// Criterion 10: committed score-table fixture with known answers.
// ---------------------------------------------------------------------

#[test]
fn c10_score_analysis_fixture() {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("analysis.json");
    let md_path = dir.path().join("matrix.md");
    let status = bin()
        .args(["scores-analyze", "--union-tag", "union", "--scores"])
        .arg(data_dir().join("scores_fixture.csv"))
        .arg("--q-file")
        .arg(data_dir().join("scores_fixture_q.json"))
        .arg("--out")
        .arg(&out_path)
        .arg("--md")
        .arg(&md_path)
        .status()
        .unwrap();
    assert!(status.success());

    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();

    // Identical columns: slope 1, r 1.
    let pair = &report["correlation"]["pairs"][0];
    assert_eq!(pair["domain_a"], "xdom");
    assert_eq!(pair["domain_b"], "ydom");
    assert!((pair["slope"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((pair["r"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(pair["significant"], true);

    let cell = |train: &str, eval: &str| -> serde_json::Value {
        report["generalization"]["cells"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["train_domain"] == train && c["eval_domain"] == eval)
            .cloned()
            .unwrap_or_else(|| panic!("missing cell {train}->{eval}"))
    };
    // Constant below baseline: p exactly 1, reported as 1.00.
    let low = cell("base", "lowdom");
    assert_eq!(low["p"].as_f64().unwrap(), 1.0);
    assert_eq!(low["significant"], false);
    // Far above baseline: rounds to 0.00 at two decimals.
    let high = cell("base", "highdom");
    assert!(high["p"].as_f64().unwrap() < 0.005);
    assert_eq!(high["significant"], true);
    // Non-converged rows are excluded: 5 runs counted, not 6.
    assert_eq!(high["n_runs"].as_u64().unwrap(), 5);

    let md = std::fs::read_to_string(&md_path).unwrap();
    let low_row = md.lines().find(|l| l.starts_with("| base ")).unwrap();
    assert!(low_row.contains(" 0.00 "), "markdown row: {low_row}");
    assert!(low_row.contains(" 1.00 "), "markdown row: {low_row}");

    // Decisions reproduce exactly on a rerun (byte-identical artifact).
    let first = std::fs::read(&out_path).unwrap();
    let status = bin()
        .args(["scores-analyze", "--union-tag", "union", "--scores"])
        .arg(data_dir().join("scores_fixture.csv"))
        .arg("--q-file")
        .arg(data_dir().join("scores_fixture_q.json"))
        .arg("--out")
        .arg(&out_path)
        .status()
        .unwrap();
    assert!(status.success());
    assert_eq!(first, std::fs::read(&out_path).unwrap());
    budget(start, 1.0, "criterion 10");
}

// ---------------------------------------------------------------------
// Criterion 11: optional external-data check.
// ---------------------------------------------------------------------

#[test]
fn c11_external_data_totals() {
    let Some(dir) = std::env::var_os("DECEPT_CUE_EXTERNAL_DATA") else {
        println!("criterion 11 skipped: DECEPT_CUE_EXTERNAL_DATA not set (optional external-data check)");
        return;
    };
    let dir = PathBuf::from(dir);
    let expected = [
        ("amazon.jsonl", 20_976usize),
        ("decop.jsonl", 1_250),
        ("iwspa_ap.jsonl", 5_026),
        ("welfake.jsonl", 62_101),
    ];
    let mut total = 0usize;
    for (file, want) in expected {
        let corpus = decept_core::corpus::load_corpus(
            &dir.join(file),
            decept_core::corpus::CorpusFormat::Jsonl,
        )
        .unwrap();
        let (cleaned, _) = decept_core::corpus::clean_corpus(
            &corpus,
            &decept_core::corpus::CleanConfig::default(),
        );
        assert_eq!(cleaned.len(), want, "{file} post-clean total");
        total += cleaned.len();
    }
    assert_eq!(total, 89_353, "combined post-clean total");
}

// ---------------------------------------------------------------------
// CLI hygiene: --help for every command (flag listing smoke test).
// ---------------------------------------------------------------------

#[test]
fn cli_help_lists_all_commands() {
    let commands = [
        "clean",
        "features",
        "ngrams",
        "sigtest",
        "select",
        "train",
        "crossdomain",
        "scores-analyze",
        "cc-table",
        "taxonomy-validate",
    ];
    let output = bin().arg("--help").output().unwrap();
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    for c in commands {
        assert!(text.contains(c), "--help missing {c}");
    }
    for c in commands {
        let output = bin().args([c, "--help"]).output().unwrap();
        assert!(output.status.success(), "{c} --help failed");
    }
}

#[test]
fn cli_missing_input_exits_2() {
    let output = bin()
        .args(["clean", "--in", "/nonexistent/raw.jsonl", "--out", "/tmp/x.jsonl"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("/nonexistent/raw.jsonl"), "stderr: {stderr}");
}
