//! The quantum model induced by a classical HMM.
//!
//! State `i` is encoded as the real unit vector
//! `|S_i⟩ = Σ_{j,r} √T[r][i][j] |j⟩ ⊗ |r⟩` in `C^{n·m}`, and the model's
//! internal-state entropy is the von Neumann entropy of
//! `ρ = Σ_i μ_i |S_i⟩⟨S_i|`. Since `ρ` has rank at most `n`, its nonzero
//! spectrum is computed from the `n × n` weighted Gram matrix
//! `W_ik = √(μ_i μ_k) ⟨S_i|S_k⟩`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hmm::{self, draw_index, Hmm};
use crate::info::{self, entropy_unchecked};
use crate::linalg::{symmetric_eigen, Mat};
use crate::scalar::{LogBase, Scalar};

#[derive(Debug, Clone)]
pub struct QuantumModel<T> {
    pub source: Hmm<T>,
    pub base: LogBase,
    /// `n` vectors of length `n·m`; coordinate `j·m + r` holds `√T[r][i][j]`.
    pub state_vectors: Vec<Vec<T>>,
    pub weights: Vec<T>,
    /// `⟨S_i|S_k⟩`.
    pub gram: Mat<T>,
    /// Eigenvalues of `ρ`, descending, length `n`.
    pub spectrum: Vec<T>,
    pub c_q: T,
}

/// Index of `|j⟩ ⊗ |r⟩`.
#[inline]
pub fn basis_index(j: usize, r: usize, n_symbols: usize) -> usize {
    j * n_symbols + r
}

/// Build the induced quantum model and its entropy.
pub fn induce_quantum_model<T: Scalar>(model: &Hmm<T>, base: LogBase) -> Result<QuantumModel<T>> {
    hmm::validate(model, T::tau_stoch()).into_result()?;
    let n = model.n_states();
    let m = model.n_symbols();
    let state_vectors: Vec<Vec<T>> = (0..n)
        .map(|i| {
            let mut v = vec![T::zero(); n * m];
            for j in 0..n {
                for r in 0..m {
                    v[basis_index(j, r, m)] = model.t(r, i, j).max(T::zero()).sqrt();
                }
            }
            v
        })
        .collect();
    let gram = Mat::from_fn(n, n, |i, k| {
        state_vectors[i]
            .iter()
            .zip(&state_vectors[k])
            .map(|(&a, &b)| a * b)
            .sum()
    });
    let weights = model.initial().to_vec();
    let mut qm = QuantumModel {
        source: model.clone(),
        base,
        state_vectors,
        weights,
        gram,
        spectrum: Vec::new(),
        c_q: T::zero(),
    };
    qm.spectrum = density_spectrum(&qm)?;
    qm.c_q = von_neumann_entropy(&qm.spectrum, base)?;
    Ok(qm)
}

impl<T: Scalar> QuantumModel<T> {
    /// `W_ik = √(μ_i μ_k) ⟨S_i|S_k⟩`.
    pub fn weighted_gram(&self) -> Mat<T> {
        let n = self.weights.len();
        Mat::from_fn(n, n, |i, k| {
            (self.weights[i].max(T::zero()) * self.weights[k].max(T::zero())).sqrt() * self.gram[(i, k)]
        })
    }

    /// The full `(n·m) × (n·m)` density matrix `Σ_i μ_i |S_i⟩⟨S_i|`.
    pub fn density_matrix(&self) -> Mat<T> {
        let d = self.state_vectors.first().map_or(0, Vec::len);
        let mut rho = Mat::zeros(d, d);
        for (v, &w) in self.state_vectors.iter().zip(&self.weights) {
            for a in 0..d {
                if v[a] == T::zero() {
                    continue;
                }
                for b in 0..d {
                    rho[(a, b)] += w * v[a] * v[b];
                }
            }
        }
        rho
    }

    /// States carrying positive weight.
    pub fn support(&self) -> Vec<usize> {
        (0..self.weights.len())
            .filter(|&i| self.weights[i] > T::tau_zero())
            .collect()
    }

    /// `⟨S_i|S_k⟩ / √(⟨S_i|S_i⟩⟨S_k|S_k⟩)`.
    pub fn normalized_overlap(&self, i: usize, k: usize) -> T {
        let norm = (self.gram[(i, i)] * self.gram[(k, k)]).sqrt();
        if norm > T::zero() {
            self.gram[(i, k)] / norm
        } else {
            T::zero()
        }
    }

    /// Off-diagonal normalized overlaps between supported states.
    pub fn support_overlaps(&self) -> Vec<(usize, usize, T)> {
        let s = self.support();
        let mut out = Vec::new();
        for (a, &i) in s.iter().enumerate() {
            for &k in &s[a + 1..] {
                out.push((i, k, self.normalized_overlap(i, k)));
            }
        }
        out
    }

    /// Supported states are mutually orthogonal.
    pub fn is_orthogonal(&self) -> bool {
        self.support_overlaps().iter().all(|o| o.2 <= T::tau_zero())
    }

    /// Every supported overlap is 0 or 1: the pure states commute.
    pub fn is_zero_one(&self) -> bool {
        self.support_overlaps()
            .iter()
            .all(|o| o.2 <= T::tau_zero() || o.2 >= T::one() - T::tau_zero())
    }

    pub fn has_duplicates(&self) -> bool {
        self.support_overlaps().iter().any(|o| o.2 >= T::one() - T::tau_zero())
    }

    /// Independent random stream reproducing the source process.
    pub fn simulate(&self, steps: usize, seed: u64) -> Result<Vec<usize>> {
        simulate_hqmm(self, steps, seed)
    }
}

/// Nonzero spectrum of `ρ` via the weighted Gram matrix, sorted descending,
/// with round-off negatives clamped to zero.
pub fn density_spectrum<T: Scalar>(qm: &QuantumModel<T>) -> Result<Vec<T>> {
    let eig = symmetric_eigen(&qm.weighted_gram())?;
    clamp_spectrum(eig.values)
}

pub(crate) fn clamp_spectrum<T: Scalar>(mut values: Vec<T>) -> Result<Vec<T>> {
    for v in &mut values {
        if *v < T::zero() {
            if *v < -T::tau_eig() {
                return Err(Error::NegativeEigenvalue(v.as_f64()));
            }
            *v = T::zero();
        }
    }
    Ok(values)
}

/// `S(ρ) = −Σ λ log λ` of a clamped spectrum.
pub fn von_neumann_entropy<T: Scalar>(spectrum: &[T], base: LogBase) -> Result<T> {
    let tol = T::tau_eig() * T::from_usize_lossy(spectrum.len().max(1)) + T::tau_stoch();
    if let Some(v) = spectrum.iter().find(|&&v| v < -T::tau_eig()) {
        return Err(Error::NegativeEigenvalue(v.as_f64()));
    }
    let total: T = spectrum.iter().copied().sum();
    if !((total - T::one()).abs() <= tol) {
        return Err(Error::InvalidDistribution(format!("spectrum sums to {total}")));
    }
    Ok(entropy_unchecked(spectrum.iter().copied(), base))
}

/// Both sides of the Holevo bound for the induced model (pure code states,
/// so the bound is `I(X;Y) ≤ S(ρ)`).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct HolevoReport<T> {
    pub lhs: T,
    pub rhs: T,
    pub gap: T,
    pub commuting: bool,
}

pub fn holevo_report<T: Scalar>(qm: &QuantumModel<T>) -> Result<HolevoReport<T>> {
    let lhs = info::channel_mutual_information(&qm.source, qm.base)?;
    let rhs = qm.c_q;
    Ok(HolevoReport {
        lhs,
        rhs,
        gap: rhs - lhs,
        commuting: qm.is_zero_one(),
    })
}

/// Run the induced model as a measured quantum system.
///
/// Each step holds the density matrix `|S_i⟩⟨S_i|` of the current internal
/// state, measures it with the projectors onto `|j⟩ ⊗ |r⟩`, emits `r` and
/// re-prepares `|S_j⟩`. The initial state is drawn from the weights.
pub fn simulate_hqmm<T: Scalar>(qm: &QuantumModel<T>, steps: usize, seed: u64) -> Result<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = draw_index(&qm.weights, &mut rng);
    simulate_hqmm_from(qm, start, steps, &mut rng)
}

pub fn simulate_hqmm_from<T: Scalar, R: rand::Rng + ?Sized>(
    qm: &QuantumModel<T>,
    start: usize,
    steps: usize,
    rng: &mut R,
) -> Result<Vec<usize>> {
    let n = qm.state_vectors.len();
    if start >= n {
        return Err(Error::Parameter(format!("start state {start} out of range")));
    }
    let m = qm.source.n_symbols();
    let d = n * m;
    // Prepared density matrices of the internal states.
    let prepared: Vec<Mat<T>> = qm
        .state_vectors
        .iter()
        .map(|v| Mat::from_fn(d, d, |a, b| v[a] * v[b]))
        .collect();
    let mut rho = prepared[start].clone();
    let mut out = Vec::with_capacity(steps);
    let mut probs = vec![T::zero(); d];
    for _ in 0..steps {
        // Tr(P_{j,r} ρ) is the diagonal entry at |j⟩⊗|r⟩.
        for (a, p) in probs.iter_mut().enumerate() {
            *p = rho[(a, a)].max(T::zero());
        }
        if probs.iter().all(|&p| p <= T::zero()) {
            return Err(Error::VanishingProbability);
        }
        let outcome = draw_index(&probs, rng);
        let (j, r) = (outcome / m, outcome % m);
        out.push(r);
        rho.clone_from(&prepared[j]);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn rnc_spectrum(p: f64, q: f64) -> [f64; 3] {
        let s = (1.0 - 4.0 * p + 4.0 * p * p + 4.0 * p * q - 4.0 * p * p * q).max(0.0).sqrt();
        let mut v = [0.5, 0.25 * (1.0 + s), 0.25 * (1.0 - s)];
        v.sort_by(|a, b| b.partial_cmp(a).unwrap());
        v
    }

    #[test]
    fn rnc_overlaps() {
        for &(p, q) in &[(0.5, 0.7), (0.3, 0.2), (0.9, 1.0)] {
            let qm = induce_quantum_model(&catalog::rnc::<f64>(p, q).unwrap(), LogBase::Two).unwrap();
            assert!(qm.gram[(0, 1)].abs() < 1e-15);
            assert!(qm.gram[(0, 2)].abs() < 1e-15);
            assert!((qm.gram[(1, 2)] - q.sqrt()).abs() < 1e-15);
            for i in 0..3 {
                assert!((qm.gram[(i, i)] - 1.0).abs() < 1e-12);
            }
            // squared amplitudes reproduce the transition matrices
            for i in 0..3 {
                for j in 0..3 {
                    for r in 0..2 {
                        let a = qm.state_vectors[i][basis_index(j, r, 2)];
                        assert!((a * a - qm.source.t(r, i, j)).abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn coin_overlap() {
        for eps in [0.2, 0.6, 0.95] {
            let qm = induce_quantum_model(&catalog::perturbed_coin_em::<f64>(eps).unwrap(), LogBase::Two).unwrap();
            assert!((qm.gram[(0, 1)] - (1.0 - eps * eps).sqrt()).abs() < 1e-12);
        }
        let qm = induce_quantum_model(&catalog::perturbed_coin_em::<f64>(1.0).unwrap(), LogBase::Two).unwrap();
        assert_eq!(qm.gram, Mat::identity(2));
    }

    #[test]
    fn rnc_spectrum_matches_closed_form() {
        for &(p, q) in &[(0.5, 0.7), (0.1, 0.4), (0.8, 0.0), (0.5, 1.0)] {
            let qm = induce_quantum_model(&catalog::rnc::<f64>(p, q).unwrap(), LogBase::Two).unwrap();
            let want = rnc_spectrum(p, q);
            for (a, b) in qm.spectrum.iter().zip(want) {
                assert!((a - b).abs() < 1e-12, "p={p} q={q}: {:?}", qm.spectrum);
            }
        }
    }

    #[test]
    fn orthogonal_spectrum_is_weights() {
        let qm = induce_quantum_model(&catalog::rnc::<f64>(0.3, 0.0).unwrap(), LogBase::Two).unwrap();
        let mut w = qm.weights.clone();
        w.sort_by(|a, b| b.partial_cmp(a).unwrap());
        for (a, b) in qm.spectrum.iter().zip(w) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn four_symbol_entropy() {
        let qm = induce_quantum_model(&catalog::four_symbol::<f64>(), LogBase::Two).unwrap();
        // closed form printed with the example; numpy gives 1.201752073385712
        let s2 = 2f64.sqrt();
        let closed = (6.0 + (-3.0 + 2.0 * s2) * ((3.0 - 2.0 * s2) / 8.0).log2()
            - (3.0 + 2.0 * s2) * ((3.0 + 2.0 * s2) / 8.0).log2())
            / 8.0;
        assert!((qm.c_q - closed).abs() < 1e-12);
        assert!((qm.c_q - 1.2018).abs() < 5e-4);
    }

    #[test]
    fn von_neumann_examples() {
        assert!((von_neumann_entropy(&[0.5f64, 0.25, 0.25], LogBase::Two).unwrap() - 1.5).abs() < 1e-15);
        // RnC at p = ½, q = 1: spectrum {½, ½, 0}
        let qm = induce_quantum_model(&catalog::rnc::<f64>(0.5, 1.0).unwrap(), LogBase::Two).unwrap();
        assert!((qm.c_q - 1.0).abs() < 1e-12);
        assert!(von_neumann_entropy(&[0.5, 0.6], LogBase::Two).is_err());
        assert!(matches!(
            von_neumann_entropy(&[1.1, -0.1], LogBase::Two),
            Err(Error::NegativeEigenvalue(_))
        ));
    }

    #[test]
    fn holevo_cases() {
        let h = holevo_report(&induce_quantum_model(&catalog::rnc::<f64>(0.5, 0.0).unwrap(), LogBase::Two).unwrap()).unwrap();
        assert!(h.commuting && h.gap.abs() <= 1e-8);
        let h = holevo_report(&induce_quantum_model(&catalog::rnc::<f64>(0.5, 0.7).unwrap(), LogBase::Two).unwrap()).unwrap();
        assert!(!h.commuting && h.gap > 1e-3);
        let h = holevo_report(&induce_quantum_model(&catalog::rnc::<f64>(0.5, 1.0).unwrap(), LogBase::Two).unwrap()).unwrap();
        assert!(h.commuting && h.gap.abs() <= 1e-8);
    }

    #[test]
    fn absorbing_coin_simulation() {
        let qm = induce_quantum_model(&catalog::perturbed_coin_em::<f64>(1.0).unwrap(), LogBase::Two).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let out = simulate_hqmm_from(&qm, 0, 20, &mut rng).unwrap();
        assert!(out.iter().all(|&s| s == 0));
    }

    #[test]
    fn single_state_simulation() {
        let t = Mat::<f64>::from_rows(&[vec![1.0]]).unwrap();
        let m = Hmm::from_matrices("one", vec![t], None).unwrap();
        let qm = induce_quantum_model(&m, LogBase::Two).unwrap();
        assert_eq!(qm.c_q, 0.0);
        assert_eq!(qm.simulate(7, 1).unwrap(), vec![0; 7]);
    }

    #[test]
    fn f32_model() {
        let m = catalog::rnc::<f32>(0.5, 0.7).unwrap();
        let qm = induce_quantum_model(&m, LogBase::Two).unwrap();
        assert!((qm.c_q - 1.204_018_2).abs() < 1e-4);
    }
}
