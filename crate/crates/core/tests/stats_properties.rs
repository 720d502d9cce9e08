use ltsrank_core::lts::generate_random;
use ltsrank_core::stats::{
    agreement, aggregate, correlate, fit_bt, fit_bt_traced, kendall_tau, sample_pairs, BtOptions,
    BtResult, Choice, ComparisonMatrix, ComparisonRecord, Polarity, StatsError,
};
use ltsrank_core::{compute_all, Metric, MetricReport};
use ltsrank_testkit as oracle;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ids(k: usize) -> Vec<String> {
    (0..k).map(|i| format!("d{i:02}")).collect()
}

fn fit(wins: Vec<Vec<u64>>) -> BtResult {
    let m = ComparisonMatrix::from_wins(ids(wins.len()), wins, Polarity::Complexity);
    fit_bt(&m, &BtOptions::default()).unwrap()
}

fn recovery_tau(truth: &[f64], pairs: &[(usize, usize)], seed: u64) -> f64 {
    let fitted = fit(oracle::simulate_wins(truth, pairs, seed));
    kendall_tau(truth, &fitted.strengths).unwrap().tau
}

#[test]
fn two_items_three_to_one() {
    let r = fit(vec![vec![0, 3], vec![1, 0]]);
    assert!((r.strengths[0] - 0.75).abs() < 1e-6);
    assert!((r.strengths[1] - 0.25).abs() < 1e-6);
    assert!(r.converged && !r.smoothed);
}

#[test]
fn rock_paper_scissors_is_uniform() {
    let r = fit(vec![vec![0, 2, 0], vec![0, 0, 2], vec![2, 0, 0]]);
    for p in r.strengths {
        assert!((p - 1.0 / 3.0).abs() < 1e-6);
    }
}

#[test]
fn log_likelihood_never_decreases() {
    let truth = oracle::geometric_strengths(20, 0.85);
    let wins = oracle::simulate_wins(&truth, &oracle::pairs_with_replacement(20, 600, 3), 4);
    let m = ComparisonMatrix::from_wins(ids(20), wins, Polarity::Complexity);
    let mut trace = Vec::new();
    let r = fit_bt_traced(&m, &BtOptions::default(), |_, ll| trace.push(ll)).unwrap();
    assert!(trace.len() >= 2);
    for w in trace.windows(2) {
        assert!(w[1] >= w[0] - 4.0 * f64::EPSILON * w[0].abs(), "{} -> {}", w[0], w[1]);
    }
    assert!((trace.last().unwrap() - r.log_likelihood).abs() < 1e-9);
}

#[test]
fn recovers_geometric_strengths_with_ample_data() {
    let truth = oracle::geometric_strengths(48, 0.9);
    let pairs = oracle::pairs_with_replacement(48, 5000, 17);
    let tau = recovery_tau(&truth, &pairs, 18);
    assert!(tau >= 0.9, "tau = {tau}");
}

#[test]
fn recovers_order_at_sparse_budget() {
    let truth = oracle::geometric_strengths(48, 0.9);
    let sample = sample_pairs(48, 324, 21).unwrap();
    assert!(sample.connected);
    let tau = recovery_tau(&truth, &sample.pairs, 22);
    assert!(tau >= 0.5, "tau = {tau}");
}

#[test]
fn disconnected_wins_are_smoothed_or_rejected() {
    // item 2 never wins
    let wins = vec![vec![0, 2, 1], vec![1, 0, 1], vec![0, 0, 0]];
    let m = ComparisonMatrix::from_wins(ids(3), wins, Polarity::Complexity);
    let r = fit_bt(&m, &BtOptions::default()).unwrap();
    assert!(r.smoothed && r.converged);
    assert_eq!(r.ranking.last().map(String::as_str), Some("d02"));
    let strict = BtOptions { alpha: 0.0, ..BtOptions::default() };
    assert_eq!(fit_bt(&m, &strict), Err(StatsError::NotStronglyConnected));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relabeling_permutes_strengths(k in 3usize..9, seed: u64) {
        let truth = oracle::geometric_strengths(k, 0.7);
        let wins = oracle::simulate_wins(&truth, &oracle::pairs_with_replacement(k, 40 * k, seed), seed ^ 1);
        let mut perm: Vec<usize> = (0..k).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));

        let items = ids(k);
        let permuted_items: Vec<String> = perm.iter().map(|&i| items[i].clone()).collect();
        let permuted_wins: Vec<Vec<u64>> = perm
            .iter()
            .map(|&i| perm.iter().map(|&j| wins[i][j]).collect())
            .collect();

        let opts = BtOptions::default();
        let a = fit_bt(&ComparisonMatrix::from_wins(items.clone(), wins, Polarity::Complexity), &opts).unwrap();
        let b = fit_bt(&ComparisonMatrix::from_wins(permuted_items, permuted_wins, Polarity::Complexity), &opts).unwrap();
        for id in &items {
            let (x, y) = (a.strength_of(id).unwrap(), b.strength_of(id).unwrap());
            prop_assert!((x - y).abs() < 1e-7, "{}: {} vs {}", id, x, y);
        }
    }

    #[test]
    fn scaling_counts_keeps_fixed_point(k in 3usize..9, factor in 2u64..6, seed: u64) {
        let truth = oracle::geometric_strengths(k, 0.7);
        let wins = oracle::simulate_wins(&truth, &oracle::pairs_with_replacement(k, 40 * k, seed), seed ^ 1);
        let scaled: Vec<Vec<u64>> = wins.iter().map(|r| r.iter().map(|w| w * factor).collect()).collect();
        let opts = BtOptions { alpha: 0.0, ..BtOptions::default() };
        let a = fit_bt(&ComparisonMatrix::from_wins(ids(k), wins, Polarity::Complexity), &opts);
        let b = fit_bt(&ComparisonMatrix::from_wins(ids(k), scaled, Polarity::Complexity), &opts);
        match (a, b) {
            (Ok(a), Ok(b)) => {
                for (x, y) in a.strengths.iter().zip(&b.strengths) {
                    prop_assert!((x - y).abs() < 1e-7);
                }
            }
            (Err(e1), Err(e2)) => prop_assert_eq!(e1, e2),
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
        }
    }

    #[test]
    fn strengths_are_a_distribution(k in 2usize..12, seed: u64) {
        let truth = oracle::geometric_strengths(k, 0.8);
        let wins = oracle::simulate_wins(&truth, &oracle::pairs_with_replacement(k, 10 * k, seed), seed);
        let r = fit(wins);
        prop_assert!(r.strengths.iter().all(|&p| p > 0.0));
        prop_assert!((r.strengths.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        prop_assert_eq!(r.ranking.len(), k);
    }
}

#[test]
fn kendall_matches_naive_on_random_permutations() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..1000 {
        let n = rng.random_range(2..60);
        let x: Vec<f64> = (0..n).map(|i| i as f64).collect();
        let mut y = x.clone();
        y.shuffle(&mut rng);
        let got = kendall_tau(&x, &y).unwrap().tau;
        assert!((got - oracle::kendall_tau_b_naive(&x, &y)).abs() < 1e-12);
    }
}

#[test]
fn kendall_matches_naive_with_ties() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let n = rng.random_range(3..50);
        let x: Vec<f64> = (0..n).map(|_| rng.random_range(0..6) as f64).collect();
        let y: Vec<f64> = (0..n).map(|_| rng.random_range(0..6) as f64).collect();
        match kendall_tau(&x, &y) {
            Ok(t) => {
                assert!((t.tau - oracle::kendall_tau_b_naive(&x, &y)).abs() < 1e-12);
                assert!((0.0..=1.0).contains(&t.p_value));
            }
            Err(e) => assert_eq!(e, StatsError::TauUndefined),
        }
    }
}

proptest! {
    #[test]
    fn reversing_one_ranking_negates_tau(values in prop::collection::hash_set(-1000i32..1000, 2..40), seed: u64) {
        let x: Vec<f64> = values.into_iter().map(f64::from).collect();
        let mut y = x.clone();
        y.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let rev: Vec<f64> = y.iter().map(|v| -v).collect();
        let t = kendall_tau(&x, &y).unwrap();
        let r = kendall_tau(&x, &rev).unwrap();
        prop_assert!((t.tau + r.tau).abs() < 1e-12);
        prop_assert!((t.p_value - r.p_value).abs() < 1e-9);
    }
}

#[test]
fn identical_and_reversed_rankings() {
    let x: Vec<f64> = (0..30).map(f64::from).collect();
    let rev: Vec<f64> = x.iter().rev().copied().collect();
    assert_eq!(kendall_tau(&x, &x).unwrap().tau, 1.0);
    assert_eq!(kendall_tau(&x, &rev).unwrap().tau, -1.0);
}

fn record(pair_id: usize, a: &str, b: &str, annotator: &str, choice: Choice) -> ComparisonRecord {
    ComparisonRecord {
        pair_id,
        design_a: a.into(),
        design_b: b.into(),
        annotator_id: annotator.into(),
        choice,
        time_a_ms: 1000,
        time_b_ms: 1500,
        total_ms: 3000,
        timestamp: 1_700_000_000_000,
    }
}

#[test]
fn agreement_fixtures() {
    let pairs: Vec<(String, String)> = (0..10).map(|i| (format!("x{i}"), format!("y{i}"))).collect();
    let mut records = Vec::new();
    for (i, (a, b)) in pairs.iter().enumerate() {
        records.push(record(i, a, b, "ann1", Choice::A));
        records.push(record(i, a, b, "ann2", Choice::A));
        records.push(record(i, a, b, "ann3", Choice::B));
    }
    let pct = agreement(&records).unwrap();
    assert!((pct - 100.0 / 3.0).abs() < 1e-9);

    let two: Vec<_> = records.iter().filter(|r| r.annotator_id != "ann2").cloned().collect();
    assert_eq!(agreement(&two).unwrap(), 0.0);
    let same: Vec<_> = records.iter().filter(|r| r.annotator_id != "ann3").cloned().collect();
    assert_eq!(agreement(&same).unwrap(), 100.0);
}

fn corpus(k: usize, seed: u64) -> Vec<MetricReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..k)
        .map(|i| {
            let n = rng.random_range(4..=24);
            let density = rng.random_range(0.8..=1.8);
            let d = generate_random(n, density, 3, seed * 1000 + i as u64)
                .unwrap()
                .with_id(format!("d{i:02}"));
            compute_all(&d).unwrap()
        })
        .collect()
}

/// Annotator that prefers the design with lower albin, flipping 10% of answers.
fn noisy_albin_annotator(reports: &[MetricReport], pairs: &[(usize, usize)], seed: u64) -> Vec<ComparisonRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    pairs
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| {
            let (ra, rb) = (&reports[a], &reports[b]);
            let mut choice = if ra.albin <= rb.albin { Choice::A } else { Choice::B };
            if rng.random::<f64>() < 0.1 {
                choice = if choice == Choice::A { Choice::B } else { Choice::A };
            }
            record(i, &ra.design_id, &rb.design_id, "sim", choice)
        })
        .collect()
}

#[test]
fn self_correlation_is_one() {
    let reports = corpus(20, 3);
    let total: f64 = reports.iter().map(|r| r.albin as f64).sum();
    let human = BtResult {
        items: reports.iter().map(|r| r.design_id.clone()).collect(),
        strengths: reports.iter().map(|r| r.albin as f64 / total).collect(),
        ranking: Vec::new(),
        iterations: 0,
        converged: true,
        smoothed: false,
        log_likelihood: 0.0,
        polarity: Polarity::Complexity,
    };
    let report = correlate(&reports, &human, "self").unwrap();
    assert_eq!(report.rows.len(), 7);
    assert_eq!(report.row(Metric::Albin).unwrap().tau, Some(1.0));

    let flipped = BtResult { polarity: Polarity::Preference, ..human };
    let report = correlate(&reports, &flipped, "self").unwrap();
    assert_eq!(report.row(Metric::Albin).unwrap().tau, Some(-1.0));
}

#[test]
fn noisy_albin_annotations_favour_albin() {
    let reports = corpus(48, 1);
    let sample = sample_pairs(48, 324, 2).unwrap();
    let records = noisy_albin_annotator(&reports, &sample.pairs, 3);
    let items: Vec<String> = reports.iter().map(|r| r.design_id.clone()).collect();
    let m = aggregate(&items, &records, Polarity::Complexity).unwrap();
    let human = fit_bt(&m, &BtOptions::default()).unwrap();
    let report = correlate(&reports, &human, "sim").unwrap();
    assert_eq!(report.rows.len(), 7);
    assert_eq!(report.best(), Some(Metric::Albin), "{report}");
    assert!(report.row(Metric::Albin).unwrap().tau.unwrap() > 0.5);

    // the preference polarity ranks the same data the other way up
    let pm = aggregate(&items, &records, Polarity::Preference).unwrap();
    let pref = fit_bt(&pm, &BtOptions::default()).unwrap();
    let again = correlate(&reports, &pref, "sim").unwrap();
    let (t1, t2) = (
        report.row(Metric::Albin).unwrap().tau.unwrap(),
        again.row(Metric::Albin).unwrap().tau.unwrap(),
    );
    assert!((t1 - t2).abs() < 1e-6, "{t1} vs {t2}");
}

#[test]
fn correlate_rejects_mismatched_items() {
    let reports = corpus(5, 9);
    let human = fit(vec![vec![0, 1], vec![1, 0]]);
    assert!(matches!(
        correlate(&reports, &human, "x"),
        Err(StatsError::ItemSetMismatch(_))
    ));
}
