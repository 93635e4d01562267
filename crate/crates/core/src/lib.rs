//! Internal-state entropies of hidden Markov models and of the hidden quantum
//! Markov models they induce.
//!
//! Given a transition-emitting HMM with kernels `T[r][i][j]`, the crate
//! computes the chain `E ≤ I(X;Y) ≤ C_q ≤ H(μ)`, builds and simulates the
//! induced quantum model and the diagonal construction, and classifies the
//! model by the structure of its quantum-state Gram matrix.
//!
//! Everything numeric is generic over [`Scalar`] (`f64` or `f32`); the
//! `*64` aliases below are what most callers want.
//!
//! ```
//! use hqmm_core::{analyze, catalog, AnalyzeOptions, CaseLabel};
//!
//! let model = catalog::rnc::<f64>(0.5, 0.7).unwrap();
//! let report = analyze(&model, &AnalyzeOptions::default()).unwrap();
//! assert_eq!(report.case_label, CaseLabel::V);
//! assert!(report.i_xy < report.c_q && report.c_q < report.h_mu);
//! ```

// Negated comparisons reject NaN; `Scalar` carries no `AddAssign`.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::assign_op_pattern)]

pub mod alt;
pub mod catalog;
pub mod classify;
pub mod error;
pub mod hmm;
pub mod hqmm;
pub mod info;
pub mod io;
pub mod linalg;
pub mod quantum;
pub mod scalar;
pub mod verify;

pub use alt::{build_diagonal_construction, compare_constructions, ConstructionComparison, DiagonalConstruction};
pub use classify::{
    analyze, assert_impossible_cases, classify, merging_criterion, AnalysisReport, AnalyzeOptions, Assertions,
    CaseLabel, GramClass, MergeWitness, Metrics,
};
pub use error::{Error, Result};
pub use hmm::{
    merge_identical_states, sample, stationary_distribution, validate, word_distribution, Hmm, ValidationReport,
    WordDistribution,
};
pub use hqmm::GenericHqmm;
pub use info::{
    block_entropies, channel_mutual_information, excess_curve, excess_entropy_epsilon_machine, mutual_information,
    shannon_entropy, ExcessCurve,
};
pub use quantum::{density_spectrum, induce_quantum_model, simulate_hqmm, von_neumann_entropy, QuantumModel};
pub use scalar::{LogBase, Scalar};
pub use verify::{verify, verify_hqmm, VerifyOptions, VerifyReport};

pub type Hmm64 = Hmm<f64>;
pub type Hmm32 = Hmm<f32>;
pub type QuantumModel64 = QuantumModel<f64>;
pub type QuantumModel32 = QuantumModel<f32>;
pub type GenericHqmm64 = GenericHqmm<f64>;
pub type GenericHqmm32 = GenericHqmm<f32>;
pub type AnalysisReport64 = AnalysisReport<f64>;
pub type WordDistribution64 = WordDistribution<f64>;
