//! Diagonal HQMM construction: the internal states are the basis vectors
//! `|i⟩`, and symbol `r` acts through the rank-one Kraus operators
//! `K_r^{i,j} = √T[r][j][i] |i⟩⟨j|`. Its state entropy is always `H(μ)`.

use serde::Serialize;

use crate::catalog;
use crate::error::Result;
use crate::hmm::{self, Hmm};
use crate::hqmm::GenericHqmm;
use crate::info;
use crate::linalg::CMat;
use crate::quantum::induce_quantum_model;
use crate::scalar::{LogBase, Scalar};

#[derive(Debug, Clone)]
pub struct DiagonalConstruction<T> {
    pub source: Hmm<T>,
    pub hqmm: GenericHqmm<T>,
    pub c_q_tilde: T,
}

pub fn build_diagonal_construction<T: Scalar>(model: &Hmm<T>, base: LogBase) -> Result<DiagonalConstruction<T>> {
    hmm::validate(model, T::tau_stoch()).into_result()?;
    let n = model.n_states();
    let kraus = (0..model.n_symbols())
        .map(|r| {
            let mut family = Vec::new();
            for j in 0..n {
                for i in 0..n {
                    let t = model.t(r, j, i);
                    if t > T::zero() {
                        let mut k = CMat::zeros(n);
                        k[(i, j)].re = t.sqrt();
                        family.push(k);
                    }
                }
            }
            family
        })
        .collect();
    let mut rho = CMat::zeros(n);
    for (i, &p) in model.initial().iter().enumerate() {
        rho[(i, i)].re = p;
    }
    let hqmm = GenericHqmm::new(
        format!("{} (diagonal)", model.name()),
        model.symbol_labels().to_vec(),
        kraus,
        rho,
    )?;
    let c_q_tilde = hqmm.entropy(base)?;
    Ok(DiagonalConstruction {
        source: model.clone(),
        hqmm,
        c_q_tilde,
    })
}

impl<T: Scalar> DiagonalConstruction<T> {
    /// `Tr(𝒦_r |j⟩⟨j|)` for every symbol `r`.
    pub fn emission_law(&self, state: usize) -> Result<Vec<T>> {
        let n = self.hqmm.dim();
        let mut rho = CMat::zeros(n);
        rho[(state, state)].re = T::one();
        Ok(self.hqmm.with_rho(rho)?.symbol_probabilities())
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConstructionComparison<T> {
    pub h_mu: T,
    pub i_xy: T,
    pub c_q_induced: T,
    pub c_q_diagonal: T,
    /// Set when the model is the four-symbol process, which also has a
    /// known two-level realization.
    pub monras_applicable: bool,
    pub monras_entropy: Option<T>,
}

/// Both quantum constructions side by side with `H(μ)` and `I(X;Y)`.
pub fn compare_constructions<T: Scalar>(model: &Hmm<T>, base: LogBase) -> Result<ConstructionComparison<T>> {
    let h_mu = info::shannon_entropy(model.initial(), base)?;
    let i_xy = info::channel_mutual_information(model, base)?;
    let c_q_induced = induce_quantum_model(model, base)?.c_q;
    let c_q_diagonal = build_diagonal_construction(model, base)?.c_q_tilde;
    let monras_applicable = catalog::is_four_symbol(model);
    let monras_entropy = if monras_applicable {
        Some(catalog::monras_2level::<T>().entropy(base)?)
    } else {
        None
    };
    Ok(ConstructionComparison {
        h_mu,
        i_xy,
        c_q_induced,
        c_q_diagonal,
        monras_applicable,
        monras_entropy,
    })
}
