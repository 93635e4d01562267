//! Invariant battery run by `hqmm verify`.

use serde::Serialize;

use crate::classify::{self, AnalyzeOptions};
use crate::error::{Error, Result};
use crate::hmm::{self, Hmm, WordDistribution};
use crate::hqmm::GenericHqmm;
use crate::quantum::{induce_quantum_model, simulate_hqmm};
use crate::scalar::{LogBase, Scalar};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub model: String,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn render_text(&self) -> String {
        let mut s = format!("model {}\n", self.model);
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            s.push_str(&format!("[{tag}] {:<20} {}\n", c.name, c.detail));
        }
        s.push_str(if self.passed { "all checks passed\n" } else { "verification FAILED\n" });
        s
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub analyze: AnalyzeOptions,
    pub deep: bool,
    pub steps: usize,
    pub seed: u64,
    pub tv_length: usize,
    pub tv_threshold: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            analyze: AnalyzeOptions::default(),
            deep: false,
            steps: 1_000_000,
            seed: 1,
            tv_length: 3,
            tv_threshold: 0.01,
        }
    }
}

pub fn verify<T: Scalar>(model: &Hmm<T>, opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut checks = Vec::new();
    let validation = hmm::validate(model, T::tau_stoch());
    if validation.has_errors() {
        let detail = validation.errors().map(ToString::to_string).collect::<Vec<_>>().join("; ");
        checks.push(Check::new("validation", false, detail));
        return Ok(finish(model, checks));
    }
    let warn = validation.warnings().count();
    checks.push(Check::new(
        "validation",
        true,
        if warn == 0 { "clean".to_string() } else { format!("{warn} warning(s)") },
    ));

    let report = match classify::analyze(model, &opts.analyze) {
        Ok(r) => r,
        Err(Error::InternalConsistency(msg)) => {
            checks.push(Check::new("case consistency", false, msg));
            return Ok(finish(model, checks));
        }
        Err(e) => return Err(e),
    };
    checks.push(Check::new(
        "case consistency",
        true,
        format!("case {} ({:?})", report.case_label, report.gram_class),
    ));

    let tol = T::lit(10.0) * T::tau_stoch();
    let e_max = report
        .excess
        .values
        .iter()
        .map(|p| p.1)
        .fold(T::zero(), T::max);
    let chain = e_max <= report.i_xy + tol && report.i_xy <= report.c_q + tol && report.c_q <= report.h_mu + tol;
    checks.push(Check::new(
        "entropy chain",
        chain,
        format!(
            "max E_L {:.9} <= I {:.9} <= C_q {:.9} <= H {:.9}",
            e_max, report.i_xy, report.c_q, report.h_mu
        ),
    ));

    let gap = report.holevo.gap;
    let zero_gap = gap.abs() <= tol;
    let holevo_ok = gap >= -tol && zero_gap == report.holevo.commuting;
    checks.push(Check::new(
        "holevo gap",
        holevo_ok,
        format!("gap {:.3e}, commuting {}", gap, report.holevo.commuting),
    ));

    let qm = induce_quantum_model(model, opts.analyze.base)?;
    let metrics = classify::Metrics::compute(model, &qm, opts.analyze.base)?;
    checks.push(Check::new(
        "impossible cases",
        classify::assert_impossible_cases(&metrics),
        "cases ii and iv absent",
    ));

    if opts.deep {
        checks.push(tv_check(model, opts)?);
    }
    Ok(finish(model, checks))
}

fn tv_check<T: Scalar>(model: &Hmm<T>, opts: &VerifyOptions) -> Result<Check> {
    let l = opts.tv_length;
    let exact = hmm::word_distribution(model, l)?;
    let classical = hmm::sample(model, opts.steps, opts.seed)?;
    let qm = induce_quantum_model(model, LogBase::Two)?;
    let quantum = simulate_hqmm(&qm, opts.steps, opts.seed.wrapping_add(1))?;
    let tv_c = WordDistribution::<T>::empirical(&classical.symbols, l, exact.base).total_variation(&exact);
    let tv_q = WordDistribution::<T>::empirical(&quantum, l, exact.base).total_variation(&exact);
    let thr = T::lit(opts.tv_threshold);
    Ok(Check::new(
        "simulation tv",
        tv_c <= thr && tv_q <= thr,
        format!(
            "L = {l}, N = {}: classical {:.5}, quantum {:.5} (limit {})",
            opts.steps, tv_c, tv_q, opts.tv_threshold
        ),
    ))
}

/// Checks for a quantum model given directly by Kraus operators.
pub fn verify_hqmm<T: Scalar>(model: &GenericHqmm<T>, opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut checks = vec![Check::new("construction", true, "trace preserving, valid density matrix")];

    let mut next = crate::linalg::CMat::zeros(model.dim());
    for r in 0..model.n_symbols() {
        next.add_assign(&model.apply(r, model.rho()));
    }
    let defect = next.max_abs_diff(model.rho());
    let tol = T::lit(10.0) * T::tau_stoch();
    checks.push(Check::new(
        "invariant state",
        defect <= tol,
        format!("max |sum_r K_r(rho) - rho| = {:.3e}", defect),
    ));

    let max_len = (1..=4)
        .take_while(|&l| hmm::check_budget(model.n_symbols(), l + 1, hmm::DEFAULT_WORD_BUDGET).is_ok())
        .last()
        .unwrap_or(1);
    let mut worst_total = T::zero();
    let mut worst_marginal = T::zero();
    for l in 1..=max_len {
        let wd = model.word_distribution(l)?;
        worst_total = worst_total.max((wd.total() - T::one()).abs());
        let longer = model.word_distribution(l + 1)?;
        worst_marginal = worst_marginal.max(longer.marginalize_last().max_abs_diff(&wd));
    }
    checks.push(Check::new(
        "word distributions",
        worst_total <= tol && worst_marginal <= tol,
        format!(
            "L <= {max_len}: normalization {:.3e}, marginal consistency {:.3e}",
            worst_total, worst_marginal
        ),
    ));

    let s = model.entropy(opts.analyze.base)?;
    let cap = opts.analyze.base.log(T::from_usize_lossy(model.dim()));
    checks.push(Check::new(
        "entropy bound",
        s <= cap + tol,
        format!("S(rho) {:.9} <= log d {:.9}", s, cap),
    ));

    if opts.deep {
        let l = opts.tv_length;
        let exact = model.word_distribution(l)?;
        let word = model.simulate(opts.steps, opts.seed)?;
        let tv = WordDistribution::<T>::empirical(&word, l, exact.base).total_variation(&exact);
        checks.push(Check::new(
            "simulation tv",
            tv <= T::lit(opts.tv_threshold),
            format!("L = {l}, N = {}: {:.5} (limit {})", opts.steps, tv, opts.tv_threshold),
        ));
    }
    Ok(VerifyReport {
        model: model.name().to_string(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

fn finish<T: Scalar>(model: &Hmm<T>, checks: Vec<Check>) -> VerifyReport {
    VerifyReport {
        model: model.name().to_string(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}
