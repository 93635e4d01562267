use hqmm_core::catalog;
use hqmm_core::classify::{analyze, merging_criterion, AnalyzeOptions, CaseLabel};
use hqmm_core::hmm::{merge_identical_states, word_distribution};
use hqmm_core::info::excess_curve;
use hqmm_core::quantum::induce_quantum_model;
use hqmm_core::{shannon_entropy, Hmm64, LogBase};

fn grid(lo: f64, hi: f64, steps: usize) -> impl Iterator<Item = f64> {
    (0..=steps).map(move |k| lo + (hi - lo) * k as f64 / steps as f64)
}

#[test]
fn duplicate_states_merge_to_the_two_state_model() {
    for p in grid(0.1, 0.9, 8) {
        let m = catalog::rnc::<f64>(p, 1.0).unwrap();
        let r = analyze(&m, &AnalyzeOptions::default()).unwrap();
        assert_eq!(r.case_label, CaseLabel::III);

        let merged = merge_identical_states(&m);
        assert!(merged.n_states() < m.n_states());
        let reference = catalog::rnc_merged::<f64>(p).unwrap();
        for l in 1..=6 {
            let a = word_distribution(&merged, l).unwrap();
            let b = word_distribution(&reference, l).unwrap();
            assert!(a.max_abs_diff(&b) <= 1e-8, "p = {p}, L = {l}");
        }
        let qm = induce_quantum_model(&merged, LogBase::Two).unwrap();
        assert!(qm.is_orthogonal(), "p = {p}");
        assert_eq!(analyze(&merged, &AnalyzeOptions::default()).unwrap().case_label, CaseLabel::I);
    }
}

#[test]
fn catalog_merges_preserve_words() {
    let models: Vec<Hmm64> = vec![
        catalog::rnc(0.3, 0.7).unwrap(),
        catalog::rnc(1.0, 1.0).unwrap(),
        catalog::rnc_merged(0.4).unwrap(),
        catalog::perturbed_coin_em(0.3).unwrap(),
        catalog::perturbed_coin_3state(0.3).unwrap(),
        catalog::four_symbol(),
    ];
    for m in &models {
        let merged = merge_identical_states(m);
        let max_l = if m.n_symbols() > 2 { 4 } else { 6 };
        for l in 1..=max_l {
            let a = word_distribution(m, l).unwrap();
            let b = word_distribution(&merged, l).unwrap();
            assert!(a.max_abs_diff(&b) <= 1e-8, "{} L = {l}", m.name());
        }
    }
}

#[test]
fn witnesses_track_excess_gap_for_unifilar_models() {
    let mut models: Vec<Hmm64> = Vec::new();
    for x in grid(0.2, 0.8, 6) {
        models.push(catalog::perturbed_coin_em(x).unwrap());
        for q in grid(0.2, 0.8, 3) {
            models.push(catalog::rnc(x, q).unwrap());
        }
    }
    for m in &models {
        assert!(m.is_unifilar());
        let h = shannon_entropy(m.initial(), LogBase::Two).unwrap();
        let e = excess_curve(m, 10, LogBase::Two).unwrap().last();
        assert_eq!(!merging_criterion(m).is_empty(), e < h - 0.01, "{}", m.name());
    }
}

#[test]
fn three_state_coin_generates_the_markov_coin() {
    for eps in grid(0.1, 0.9, 8) {
        let a = catalog::perturbed_coin_em::<f64>(eps).unwrap();
        let b = catalog::perturbed_coin_3state::<f64>(eps).unwrap();
        for l in 1..=6 {
            let da = word_distribution(&a, l).unwrap();
            let db = word_distribution(&b, l).unwrap();
            assert!(da.max_abs_diff(&db) <= 1e-12, "eps = {eps}, L = {l}");
        }
    }
}
