//! Generic hidden quantum Markov models: a density matrix plus, for every
//! symbol, a quantum operation in Kraus form.

use std::collections::BTreeMap;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hmm::{check_budget, draw_index, WordDistribution, DEFAULT_WORD_BUDGET};
use crate::linalg::CMat;
use crate::quantum::{clamp_spectrum, von_neumann_entropy};
use crate::scalar::{LogBase, Scalar};

#[derive(Debug, Clone)]
pub struct GenericHqmm<T> {
    name: String,
    symbols: Vec<String>,
    kraus: Vec<Vec<CMat<T>>>,
    rho: CMat<T>,
    /// `Σ_k K_{r,k}† K_{r,k}` per symbol, so that `P(r) = Tr(E_r ρ)`.
    effects: Vec<CMat<T>>,
}

impl<T: Scalar> GenericHqmm<T> {
    /// Build and check: every Kraus operator is `d × d`, the operations sum
    /// to a trace-preserving map, and `ρ` is a density matrix.
    pub fn new(
        name: impl Into<String>,
        symbols: Vec<String>,
        kraus: Vec<Vec<CMat<T>>>,
        rho: CMat<T>,
    ) -> Result<Self> {
        let d = rho.dim();
        if d == 0 {
            return Err(Error::Dimension("HQMM dimension must be positive".into()));
        }
        if symbols.is_empty() || kraus.len() != symbols.len() {
            return Err(Error::Dimension(format!(
                "{} Kraus families for {} symbols",
                kraus.len(),
                symbols.len()
            )));
        }
        for (r, family) in kraus.iter().enumerate() {
            if let Some(k) = family.iter().find(|k| k.dim() != d) {
                return Err(Error::Dimension(format!(
                    "Kraus operator for symbol `{}` is {}x{0}, expected {d}x{d}",
                    symbols[r],
                    k.dim()
                )));
            }
        }
        let effects: Vec<CMat<T>> = kraus
            .iter()
            .map(|family| {
                family.iter().fold(CMat::zeros(d), |mut acc, k| {
                    acc.add_assign(&k.adjoint().matmul(k));
                    acc
                })
            })
            .collect();
        let total = effects.iter().fold(CMat::zeros(d), |mut acc, e| {
            acc.add_assign(e);
            acc
        });
        let defect = total.max_abs_diff(&CMat::identity(d));
        if defect > T::tau_eig() * T::lit(10.0) {
            return Err(Error::Validation(format!(
                "Kraus operators are not trace preserving (max |Σ K†K − I| = {:e})",
                defect.as_f64()
            )));
        }
        check_density(&rho)?;
        Ok(Self {
            name: name.into(),
            symbols,
            kraus,
            rho,
            effects,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.rho.dim()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn n_symbols(&self) -> usize {
        self.symbols.len()
    }

    pub fn kraus(&self) -> &[Vec<CMat<T>>] {
        &self.kraus
    }

    pub fn rho(&self) -> &CMat<T> {
        &self.rho
    }

    /// Replace the state (checked).
    pub fn with_rho(&self, rho: CMat<T>) -> Result<Self> {
        if rho.dim() != self.dim() {
            return Err(Error::Dimension("density matrix dimension differs".into()));
        }
        check_density(&rho)?;
        Ok(Self { rho, ..self.clone() })
    }

    /// `Tr(E_r ρ)` for every symbol.
    pub fn symbol_probabilities(&self) -> Vec<T> {
        self.effects
            .iter()
            .map(|e| e.matmul(&self.rho).trace().re.max(T::zero()))
            .collect()
    }

    /// Unnormalized post-measurement state `Σ_k K_{r,k} ρ K_{r,k}†`.
    pub fn apply(&self, r: usize, rho: &CMat<T>) -> CMat<T> {
        self.kraus[r].iter().fold(CMat::zeros(self.dim()), |mut acc, k| {
            acc.add_assign(&k.sandwich(rho));
            acc
        })
    }

    /// Emit one symbol and update `ρ` in place.
    pub fn step_in_place<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<usize> {
        let probs = self.symbol_probabilities();
        if probs.iter().all(|&p| p <= T::zero()) {
            return Err(Error::VanishingProbability);
        }
        let r = draw_index(&probs, rng);
        let next = self.apply(r, &self.rho);
        let tr = next.trace().re;
        if !(tr > T::zero()) {
            return Err(Error::VanishingProbability);
        }
        self.rho = next.scale(T::one() / tr);
        Ok(r)
    }

    /// One step returning the emitted symbol and the updated model.
    pub fn step<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<(usize, Self)> {
        let mut next = self.clone();
        let r = next.step_in_place(rng)?;
        Ok((r, next))
    }

    pub fn simulate(&self, steps: usize, seed: u64) -> Result<Vec<usize>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut state = self.clone();
        (0..steps).map(|_| state.step_in_place(&mut rng)).collect()
    }

    /// Exact law of length-`length` words, `P(w) = Tr 𝒦_{w_L} ⋯ 𝒦_{w_1}(ρ)`.
    pub fn word_distribution(&self, length: usize) -> Result<WordDistribution<T>> {
        if length == 0 {
            return Err(Error::Parameter("word length must be positive".into()));
        }
        check_budget(self.n_symbols(), length, DEFAULT_WORD_BUDGET)?;
        let mut probs = BTreeMap::new();
        let mut word = Vec::with_capacity(length);
        self.expand(&self.rho, &mut word, length, &mut probs);
        Ok(WordDistribution {
            length,
            base: LogBase::default(),
            probs,
        })
    }

    fn expand(&self, rho: &CMat<T>, word: &mut Vec<usize>, length: usize, out: &mut BTreeMap<Vec<usize>, T>) {
        for r in 0..self.n_symbols() {
            let next = self.apply(r, rho);
            let p = next.trace().re;
            if p <= T::zero() {
                continue;
            }
            word.push(r);
            if word.len() == length {
                out.insert(word.clone(), p);
            } else {
                self.expand(&next, word, length, out);
            }
            word.pop();
        }
    }

    /// Eigenvalues of `ρ`, descending and clamped.
    pub fn spectrum(&self) -> Result<Vec<T>> {
        clamp_spectrum(self.rho.hermitian_eigenvalues()?)
    }

    /// `S(ρ)`.
    pub fn entropy(&self, base: LogBase) -> Result<T> {
        von_neumann_entropy(&self.spectrum()?, base)
    }

    pub fn to_file(&self) -> HqmmFile {
        let enc = |m: &CMat<T>| -> Vec<Vec<[f64; 2]>> {
            m.to_rows()
                .iter()
                .map(|row| row.iter().map(|z| [z.re.as_f64(), z.im.as_f64()]).collect())
                .collect()
        };
        HqmmFile {
            name: Some(self.name.clone()),
            dimension: self.dim(),
            symbols: self.symbols.clone(),
            kraus: self
                .symbols
                .iter()
                .zip(&self.kraus)
                .map(|(s, family)| (s.clone(), family.iter().map(enc).collect()))
                .collect(),
            rho: enc(&self.rho),
        }
    }

    pub fn from_file(file: &HqmmFile) -> Result<Self> {
        let dec = |rows: &[Vec<[f64; 2]>]| -> Result<CMat<T>> {
            if rows.len() != file.dimension {
                return Err(Error::Format(format!(
                    "matrix has {} rows, dimension is {}",
                    rows.len(),
                    file.dimension
                )));
            }
            let rows: Vec<Vec<Complex<T>>> = rows
                .iter()
                .map(|row| row.iter().map(|&[re, im]| Complex::new(T::lit(re), T::lit(im))).collect())
                .collect();
            CMat::from_rows(&rows)
        };
        let kraus = file
            .symbols
            .iter()
            .map(|s| {
                let family = file
                    .kraus
                    .get(s)
                    .ok_or_else(|| Error::Format(format!("no Kraus operators for symbol `{s}`")))?;
                family.iter().map(|m| dec(m)).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(extra) = file.kraus.keys().find(|k| !file.symbols.contains(k)) {
            return Err(Error::Format(format!("Kraus operators for undeclared symbol `{extra}`")));
        }
        Self::new(
            file.name.clone().unwrap_or_else(|| "hqmm".into()),
            file.symbols.clone(),
            kraus,
            dec(&file.rho)?,
        )
    }
}

fn check_density<T: Scalar>(rho: &CMat<T>) -> Result<()> {
    let tol = T::tau_eig() * T::lit(10.0);
    let herm = rho.hermiticity_defect();
    if herm > tol {
        return Err(Error::Validation(format!("density matrix is not Hermitian (defect {:e})", herm.as_f64())));
    }
    let tr = rho.trace();
    if (tr.re - T::one()).abs() > tol || tr.im.abs() > tol {
        return Err(Error::Validation(format!("density matrix has trace {tr}")));
    }
    let ev = rho.hermitian_eigenvalues()?;
    if let Some(&min) = ev.last() {
        if min < -T::tau_eig() {
            return Err(Error::Validation(format!(
                "density matrix is not positive semidefinite (eigenvalue {:e})",
                min.as_f64()
            )));
        }
    }
    Ok(())
}

/// On-disk form of a [`GenericHqmm`]: complex entries are `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HqmmFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dimension: usize,
    pub symbols: Vec<String>,
    pub kraus: BTreeMap<String, Vec<Vec<Vec<[f64; 2]>>>>,
    pub rho: Vec<Vec<[f64; 2]>>,
}
