//! Cross-checks against nalgebra and frozen reference values computed with
//! an independent numpy implementation.

mod common;

use common::random_model;
use hqmm_core::catalog;
use hqmm_core::linalg::{symmetric_eigen, Mat};
use hqmm_core::quantum::{density_spectrum, induce_quantum_model};
use hqmm_core::{channel_mutual_information, excess_curve, mutual_information, Hmm64, LogBase};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn full_rho_eigenvalues(m: &Hmm64) -> Vec<f64> {
    let qm = induce_quantum_model(m, LogBase::Two).unwrap();
    let rho = qm.density_matrix();
    let d = rho.rows();
    let a = DMatrix::from_fn(d, d, |i, j| rho[(i, j)]);
    let mut ev: Vec<f64> = a.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|x, y| y.partial_cmp(x).unwrap());
    ev
}

fn assert_spectra_agree(m: &Hmm64, tol: f64) {
    let full = full_rho_eigenvalues(m);
    let gram = density_spectrum(&induce_quantum_model(m, LogBase::Two).unwrap()).unwrap();
    for (k, g) in gram.iter().enumerate() {
        assert!((full[k] - g).abs() <= tol, "{}: eigenvalue {k}: {} vs {g}", m.name(), full[k]);
    }
    for v in &full[gram.len()..] {
        assert!(v.abs() <= tol, "{}: extra eigenvalue {v}", m.name());
    }
}

#[test]
fn jacobi_matches_nalgebra() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=12 {
        let raw: Vec<f64> = (0..n * n).map(|_| rng.random::<f64>() - 0.5).collect();
        let a = Mat::from_fn(n, n, |i, j| raw[i * n + j] + raw[j * n + i]);
        let ours = symmetric_eigen(&a).unwrap().values;
        let mut theirs: Vec<f64> = DMatrix::from_fn(n, n, |i, j| a[(i, j)])
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .collect();
        theirs.sort_by(|x, y| y.partial_cmp(x).unwrap());
        for (x, y) in ours.iter().zip(&theirs) {
            assert!((x - y).abs() < 1e-12, "n = {n}");
        }
    }
}

#[test]
fn gram_spectrum_matches_full_rho_on_random_models() {
    for seed in 0..100 {
        assert_spectra_agree(&random_model(seed, 6, 3), 1e-9);
    }
}

#[test]
fn gram_spectrum_matches_full_rho_on_catalog() {
    for k in 0..=10 {
        let x = k as f64 / 10.0;
        assert_spectra_agree(&catalog::rnc::<f64>(x, 1.0 - x).unwrap(), 1e-9);
        assert_spectra_agree(&catalog::rnc_merged::<f64>(x).unwrap(), 1e-9);
        if x > 0.0 {
            assert_spectra_agree(&catalog::perturbed_coin_em::<f64>(x).unwrap(), 1e-9);
            assert_spectra_agree(&catalog::perturbed_coin_3state::<f64>(x).unwrap(), 1e-9);
        }
    }
    assert_spectra_agree(&catalog::four_symbol::<f64>(), 1e-9);
}

#[test]
fn mutual_information_reference() {
    let j = Mat::<f64>::from_rows(&[vec![0.375, 0.125], vec![0.125, 0.375]]).unwrap();
    assert!((mutual_information(&j, LogBase::Two).unwrap() - 0.188_721_875_540_867_06).abs() < 1e-12);
}

#[test]
fn rnc_reference_values() {
    let cases = [
        (0.5, 0.7, 1.084_597_427_550_527_5, 1.204_018_165_213_478),
        (0.3, 0.2, 1.242_118_927_400_451_2, 1.374_194_913_053_017),
        (0.5, 1.0, 1.0, 1.0),
        (0.5, 0.0, 1.5, 1.5),
        (0.0, 0.0, 1.0, 1.0),
        (1.0, 1.0, 1.0, 1.0),
    ];
    for (p, q, i_ref, cq_ref) in cases {
        let m = catalog::rnc::<f64>(p, q).unwrap();
        let i = channel_mutual_information(&m, LogBase::Two).unwrap();
        let cq = induce_quantum_model(&m, LogBase::Two).unwrap().c_q;
        assert!((i - i_ref).abs() < 1e-10, "I at ({p}, {q}): {i}");
        assert!((cq - cq_ref).abs() < 1e-10, "C_q at ({p}, {q}): {cq}");
    }
    let spectrum = induce_quantum_model(&catalog::rnc::<f64>(0.5, 0.7).unwrap(), LogBase::Two)
        .unwrap()
        .spectrum;
    for (a, b) in spectrum.iter().zip([0.5, 0.459_165_006_633_519, 0.040_834_993_366_481]) {
        assert!((a - b).abs() < 1e-12);
    }
}

#[test]
fn rnc_excess_curve_reference() {
    let curve = excess_curve(&catalog::rnc::<f64>(0.5, 0.5).unwrap(), 5, LogBase::Two).unwrap();
    let reference = [
        0.028_627_190_905_782_25,
        0.048_942_323_714_513_68,
        0.190_584_039_056_123_98,
        0.389_04,
        0.554_217_821_254_441_7,
    ];
    for (l, want) in reference.iter().enumerate() {
        let tol = if l == 3 { 1e-5 } else { 1e-10 };
        assert!((curve.value(l + 1).unwrap() - want).abs() < tol, "E_{}", l + 1);
    }
}

#[test]
fn coin_quantum_entropy_reference() {
    for (eps, want) in [(0.05, 0.007_558), (0.2, 0.081_469), (0.5, 0.354_579), (0.95, 0.928_479)] {
        let cq = induce_quantum_model(&catalog::perturbed_coin_em::<f64>(eps).unwrap(), LogBase::Two)
            .unwrap()
            .c_q;
        assert!((cq - want).abs() < 1e-6, "eps {eps}: {cq}");
    }
}
