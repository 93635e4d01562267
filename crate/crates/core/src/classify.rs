//! Equality-case classification and the assembled analysis report.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::alt::build_diagonal_construction;
use crate::error::{Error, Result};
use crate::hmm::{self, Hmm, InitialSource, DEFAULT_WORD_BUDGET};
use crate::info::{self, ExcessCurve};
use crate::quantum::{holevo_report, induce_quantum_model, HolevoReport, QuantumModel};
use crate::scalar::{LogBase, Scalar};

pub const DEFAULT_BLOCK_DEPTH: usize = 8;

/// Two distinct states `j < k` that both move to `l` while emitting `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MergeWitness {
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub r: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledWitness {
    pub j: String,
    pub k: String,
    pub l: String,
    pub r: String,
}

impl MergeWitness {
    pub fn labeled<T>(&self, model: &Hmm<T>) -> LabeledWitness
    where
        T: Scalar,
    {
        LabeledWitness {
            j: model.state_labels()[self.j].clone(),
            k: model.state_labels()[self.k].clone(),
            l: model.state_labels()[self.l].clone(),
            r: model.symbol_labels()[self.r].clone(),
        }
    }
}

pub fn merging_criterion<T: Scalar>(model: &Hmm<T>) -> Vec<MergeWitness> {
    let n = model.n_states();
    let mut out = Vec::new();
    for j in 0..n {
        for k in j + 1..n {
            for l in 0..n {
                for r in 0..model.n_symbols() {
                    if model.t(r, j, l) > T::tau_zero() && model.t(r, k, l) > T::tau_zero() {
                        out.push(MergeWitness { j, k, l, r });
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GramClass {
    Orthogonal,
    ZeroOneWithDuplicates,
    General,
}

impl GramClass {
    pub fn of<T: Scalar>(qm: &QuantumModel<T>) -> Self {
        if qm.is_orthogonal() {
            GramClass::Orthogonal
        } else if qm.is_zero_one() {
            GramClass::ZeroOneWithDuplicates
        } else {
            GramClass::General
        }
    }

    pub fn case_label(self) -> CaseLabel {
        match self {
            GramClass::Orthogonal => CaseLabel::I,
            GramClass::ZeroOneWithDuplicates => CaseLabel::III,
            GramClass::General => CaseLabel::V,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CaseLabel {
    #[serde(rename = "i")]
    I,
    #[serde(rename = "iii")]
    III,
    #[serde(rename = "v")]
    V,
}

impl std::fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CaseLabel::I => "i",
            CaseLabel::III => "iii",
            CaseLabel::V => "v",
        })
    }
}

/// The three entropies the equality cases compare, plus whether the Gram
/// matrix has an overlap strictly between 0 and 1.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Metrics<T> {
    pub h_mu: T,
    pub i_xy: T,
    pub c_q: T,
    pub fractional_overlap: bool,
}

impl<T: Scalar> Metrics<T> {
    pub fn compute(model: &Hmm<T>, qm: &QuantumModel<T>, base: LogBase) -> Result<Self> {
        Ok(Self {
            h_mu: info::shannon_entropy(model.initial(), base)?,
            i_xy: info::channel_mutual_information(model, base)?,
            c_q: qm.c_q,
            fractional_overlap: !qm.is_zero_one(),
        })
    }
}

fn slack<T: Scalar>() -> T {
    T::lit(10.0) * T::tau_stoch()
}

/// False when the metrics realize one of the two excluded equality patterns.
pub fn assert_impossible_cases<T: Scalar>(m: &Metrics<T>) -> bool {
    let tol = slack::<T>();
    let case_ii = (m.i_xy - m.c_q).abs() <= tol && m.c_q < m.h_mu - tol && m.fractional_overlap;
    let case_iv = m.i_xy < m.c_q - tol && (m.c_q - m.h_mu).abs() <= tol;
    !case_ii && !case_iv
}

#[derive(Debug, Clone, Serialize)]
pub struct ExcessSummary<T> {
    pub l_max: usize,
    pub values: Vec<(usize, T)>,
    pub last: Option<T>,
    pub last_increment: Option<T>,
    /// Channel value, reported only for unifilar models asserted to be epsilon-machines.
    pub exact: Option<T>,
}

impl<T: Scalar> ExcessSummary<T> {
    pub fn from_curve(curve: Option<&ExcessCurve<T>>, exact: Option<T>) -> Self {
        match curve {
            Some(c) => Self {
                l_max: c.l_max,
                values: c.points.clone(),
                last: Some(c.last()),
                last_increment: Some(c.last_increment()),
                exact,
            },
            None => Self {
                l_max: 0,
                values: Vec::new(),
                last: None,
                last_increment: None,
                exact,
            },
        }
    }
}

/// What the caller vouches for about the supplied model.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Assertions {
    pub epsilon_machine: bool,
    pub minimal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport<T> {
    pub model: String,
    pub parameters: BTreeMap<String, f64>,
    pub base: LogBase,
    pub states: Vec<String>,
    pub symbols: Vec<String>,
    pub initial: Vec<T>,
    pub initial_source: InitialSource,
    pub h_mu: T,
    /// `H(mu)`, or `C_epsilon` / `C_Cl` under the matching assertion.
    pub h_mu_label: String,
    pub i_xy: T,
    pub c_q: T,
    pub c_q_diagonal: T,
    pub spectrum: Vec<T>,
    pub excess: ExcessSummary<T>,
    pub holevo: HolevoReport<T>,
    pub gram_class: GramClass,
    pub case_label: CaseLabel,
    pub merging_witnesses: Vec<LabeledWitness>,
    pub unifilar: bool,
    pub warnings: Vec<String>,
}

/// Everything `classify` needs beyond the model and its quantum model.
#[derive(Debug, Clone)]
pub struct ReportInputs<T> {
    pub metrics: Metrics<T>,
    pub c_q_diagonal: T,
    pub excess: ExcessSummary<T>,
    pub holevo: HolevoReport<T>,
    pub assertions: Assertions,
    pub parameters: BTreeMap<String, f64>,
    pub warnings: Vec<String>,
}

pub fn classify<T: Scalar>(
    model: &Hmm<T>,
    qm: &QuantumModel<T>,
    inputs: ReportInputs<T>,
) -> Result<AnalysisReport<T>> {
    let ReportInputs {
        metrics,
        c_q_diagonal,
        excess,
        holevo,
        assertions,
        parameters,
        mut warnings,
    } = inputs;
    let gram_class = GramClass::of(qm);
    let case_label = gram_class.case_label();
    check_case(case_label, &metrics)?;
    check_chain(&metrics, &excess)?;
    if !assert_impossible_cases(&metrics) {
        return Err(Error::InternalConsistency(
            "metrics realize an excluded equality case".into(),
        ));
    }

    let witnesses = merging_criterion(model);
    let n = model.n_states();
    let gram_off_zero = (0..n).all(|i| (0..n).all(|k| i == k || qm.gram[(i, k)] <= T::tau_zero()));
    if witnesses.is_empty() != gram_off_zero {
        warnings.push("merging criterion and Gram off-diagonals disagree at the zero tolerance".into());
    }

    let flagged = model.is_flagged_not_epsilon_machine();
    if flagged && (assertions.epsilon_machine || assertions.minimal) {
        warnings.push("model is known not to be an epsilon-machine; assertion ignored, reporting H(mu)".into());
    }
    let h_mu_label = if flagged {
        "H(mu)"
    } else if assertions.minimal {
        "C_Cl"
    } else if assertions.epsilon_machine {
        "C_epsilon"
    } else {
        "H(mu)"
    };

    Ok(AnalysisReport {
        model: model.name().to_string(),
        parameters,
        base: qm.base,
        states: model.state_labels().to_vec(),
        symbols: model.symbol_labels().to_vec(),
        initial: model.initial().to_vec(),
        initial_source: model.initial_source(),
        h_mu: metrics.h_mu,
        h_mu_label: h_mu_label.to_string(),
        i_xy: metrics.i_xy,
        c_q: metrics.c_q,
        c_q_diagonal,
        spectrum: qm.spectrum.clone(),
        excess,
        holevo,
        gram_class,
        case_label,
        merging_witnesses: witnesses.iter().map(|w| w.labeled(model)).collect(),
        unifilar: model.is_unifilar(),
        warnings,
    })
}

fn check_case<T: Scalar>(label: CaseLabel, m: &Metrics<T>) -> Result<()> {
    let tol = slack::<T>();
    let bad = |what: &str| {
        Err(Error::InternalConsistency(format!(
            "case {label}: {what} (H = {}, I = {}, C_q = {})",
            m.h_mu, m.i_xy, m.c_q
        )))
    };
    match label {
        CaseLabel::I => {
            if (m.c_q - m.h_mu).abs() > tol || (m.i_xy - m.c_q).abs() > tol {
                return bad("orthogonal states but entropies differ");
            }
        }
        CaseLabel::III => {
            if (m.i_xy - m.c_q).abs() > tol {
                return bad("zero-one overlaps but I != C_q");
            }
            if m.c_q >= m.h_mu - tol {
                return bad("duplicate states but C_q is not below H");
            }
        }
        CaseLabel::V => {}
    }
    Ok(())
}

fn check_chain<T: Scalar>(m: &Metrics<T>, excess: &ExcessSummary<T>) -> Result<()> {
    let tol = slack::<T>();
    if m.i_xy > m.c_q + tol || m.c_q > m.h_mu + tol {
        return Err(Error::InternalConsistency(format!(
            "chain I <= C_q <= H broken (I = {}, C_q = {}, H = {})",
            m.i_xy, m.c_q, m.h_mu
        )));
    }
    if let Some(&(l, e)) = excess.values.iter().find(|p| p.1 > m.i_xy + tol) {
        return Err(Error::InternalConsistency(format!(
            "E_{l} = {e} exceeds I = {}",
            m.i_xy
        )));
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    pub base: LogBase,
    pub block_depth: usize,
    pub word_budget: usize,
    pub assertions: Assertions,
    pub parameters: BTreeMap<String, f64>,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self {
            base: LogBase::Two,
            block_depth: DEFAULT_BLOCK_DEPTH,
            word_budget: DEFAULT_WORD_BUDGET,
            assertions: Assertions::default(),
            parameters: BTreeMap::new(),
        }
    }
}

/// Full pipeline: validate, compute every quantity in one base, classify.
pub fn analyze<T: Scalar>(model: &Hmm<T>, opts: &AnalyzeOptions) -> Result<AnalysisReport<T>> {
    let validation = hmm::validate(model, T::tau_stoch()).into_result()?;
    let mut warnings: Vec<String> = validation.warnings().map(|v| v.to_string()).collect();

    let base = opts.base;
    let qm = induce_quantum_model(model, base)?;
    let metrics = Metrics::compute(model, &qm, base)?;
    let c_q_diagonal = build_diagonal_construction(model, base)?.c_q_tilde;
    let holevo = holevo_report(&qm)?;

    let depth_cap = info::max_curve_depth(model.n_symbols(), opts.word_budget);
    let depth = opts.block_depth.min(depth_cap);
    if depth < opts.block_depth {
        warnings.push(format!(
            "block depth trimmed from {} to {depth} to stay within the word budget of {}",
            opts.block_depth, opts.word_budget
        ));
    }
    let curve = if depth > 0 {
        Some(info::excess_curve_with_budget(model, depth, base, opts.word_budget)?)
    } else {
        None
    };
    let exact = if opts.assertions.epsilon_machine && !model.is_flagged_not_epsilon_machine() {
        match info::excess_entropy_epsilon_machine(model, base) {
            Ok(e) => Some(e),
            Err(Error::NotUnifilar { state, symbol }) => {
                warnings.push(format!(
                    "asserted epsilon-machine is not unifilar (state `{}`, symbol `{}`); exact E not reported",
                    model.state_labels()[state],
                    model.symbol_labels()[symbol]
                ));
                None
            }
            Err(e) => return Err(e),
        }
    } else {
        None
    };

    classify(
        model,
        &qm,
        ReportInputs {
            metrics,
            c_q_diagonal,
            excess: ExcessSummary::from_curve(curve.as_ref(), exact),
            holevo,
            assertions: opts.assertions,
            parameters: opts.parameters.clone(),
            warnings,
        },
    )
}

impl<T: Scalar> AnalysisReport<T> {
    /// Aligned plain-text rendering.
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let unit = match self.base {
            LogBase::Two => "bits",
            LogBase::E => "nats",
        };
        let _ = writeln!(s, "model            {}", self.model);
        if !self.parameters.is_empty() {
            let ps: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(s, "parameters       {}", ps.join(" "));
        }
        let _ = writeln!(s, "states           {}", self.states.join(" "));
        let _ = writeln!(s, "symbols          {}", self.symbols.join(" "));
        let _ = writeln!(s, "units            {unit}");
        let _ = writeln!(s, "{:<17}{:.12}", self.h_mu_label, self.h_mu);
        let _ = writeln!(s, "{:<17}{:.12}", "I(X;Y)", self.i_xy);
        let _ = writeln!(s, "{:<17}{:.12}", "C_q", self.c_q);
        let _ = writeln!(s, "{:<17}{:.12}", "C_q diagonal", self.c_q_diagonal);
        if let Some(e) = self.excess.exact {
            let _ = writeln!(s, "{:<17}{:.12}", "E (exact)", e);
        }
        if let (Some(last), Some(inc)) = (self.excess.last, self.excess.last_increment) {
            let _ = writeln!(
                s,
                "{:<17}{:.12}  (last increment {:.3e})",
                format!("E_{}", self.excess.l_max),
                last,
                inc
            );
        }
        let spec: Vec<String> = self.spectrum.iter().map(|v| format!("{v:.9}")).collect();
        let _ = writeln!(s, "spectrum         {}", spec.join(" "));
        let _ = writeln!(s, "holevo gap       {:.3e}", self.holevo.gap);
        let _ = writeln!(s, "gram             {:?}", self.gram_class);
        let _ = writeln!(s, "case             {}", self.case_label);
        let _ = writeln!(s, "unifilar         {}", self.unifilar);
        if self.merging_witnesses.is_empty() {
            let _ = writeln!(s, "merging pairs    none");
        } else {
            let ws: Vec<String> = self
                .merging_witnesses
                .iter()
                .map(|w| format!("({}, {}, {}, {})", w.j, w.k, w.l, w.r))
                .collect();
            let _ = writeln!(s, "merging pairs    {}", ws.join(" "));
        }
        for w in &self.warnings {
            let _ = writeln!(s, "warning          {w}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn opts(em: bool) -> AnalyzeOptions {
        AnalyzeOptions {
            assertions: Assertions {
                epsilon_machine: em,
                minimal: false,
            },
            ..AnalyzeOptions::default()
        }
    }

    #[test]
    fn rnc_witness() {
        let w = merging_criterion(&catalog::rnc::<f64>(0.5, 0.7).unwrap());
        assert!(w.contains(&MergeWitness { j: 1, k: 2, l: 0, r: 0 }));
        assert!(merging_criterion(&catalog::rnc::<f64>(0.5, 0.0).unwrap()).is_empty());
    }

    #[test]
    fn coin_witness() {
        assert!(merging_criterion(&catalog::perturbed_coin_em::<f64>(1.0).unwrap()).is_empty());
        let w = merging_criterion(&catalog::perturbed_coin_em::<f64>(0.4).unwrap());
        assert!(w.contains(&MergeWitness { j: 0, k: 1, l: 0, r: 0 }));
    }

    #[test]
    fn rnc_cases() {
        let r = analyze(&catalog::rnc::<f64>(0.5, 0.0).unwrap(), &opts(true)).unwrap();
        assert_eq!(r.case_label, CaseLabel::I);
        assert!((r.i_xy - r.h_mu).abs() < 1e-9 && (r.c_q - r.h_mu).abs() < 1e-9);
        assert_eq!(r.h_mu_label, "C_epsilon");

        let r = analyze(&catalog::rnc::<f64>(0.5, 1.0).unwrap(), &opts(true)).unwrap();
        assert_eq!(r.case_label, CaseLabel::III);
        assert!((r.i_xy - r.c_q).abs() < 1e-9 && r.c_q < r.h_mu - 1e-6);
        assert_eq!(r.h_mu_label, "H(mu)");
        assert!(!r.warnings.is_empty());

        let r = analyze(&catalog::rnc::<f64>(0.5, 0.7).unwrap(), &opts(true)).unwrap();
        assert_eq!(r.case_label, CaseLabel::V);
        assert!(r.i_xy < r.c_q - 1e-6 && r.c_q < r.h_mu - 1e-6);
        assert_eq!(r.gram_class, GramClass::General);
        assert!((r.excess.exact.unwrap() - r.i_xy).abs() < 1e-12);
    }

    #[test]
    fn impossible_cases_oracle() {
        for (p, q) in [(0.5, 0.7), (0.5, 0.0), (0.5, 1.0)] {
            let m = catalog::rnc::<f64>(p, q).unwrap();
            let qm = induce_quantum_model(&m, LogBase::Two).unwrap();
            assert!(assert_impossible_cases(&Metrics::compute(&m, &qm, LogBase::Two).unwrap()));
        }
        let fake = Metrics {
            h_mu: 1.5,
            i_xy: 1.0,
            c_q: 1.5,
            fractional_overlap: true,
        };
        assert!(!assert_impossible_cases(&fake));
    }

    #[test]
    fn single_state_all_zero() {
        let t = crate::linalg::Mat::from_rows(&[vec![1.0]]).unwrap();
        let m = Hmm::from_matrices("one", vec![t], None).unwrap();
        let r = analyze(&m, &AnalyzeOptions::default()).unwrap();
        assert_eq!((r.h_mu, r.i_xy, r.c_q, r.c_q_diagonal), (0.0, 0.0, 0.0, 0.0));
        assert_eq!(r.case_label, CaseLabel::I);
    }

    #[test]
    fn four_symbol_depth_trimmed() {
        let r = analyze(&catalog::four_symbol::<f64>(), &AnalyzeOptions::default()).unwrap();
        assert_eq!(r.excess.l_max, 5);
        assert!(r.warnings.iter().any(|w| w.contains("trimmed")));
        assert!(r.render_text().contains("case             v"));
    }

    #[test]
    fn json_field_names() {
        let r = analyze(&catalog::rnc::<f64>(0.5, 0.7).unwrap(), &opts(false)).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        for key in ["h_mu", "i_xy", "c_q", "c_q_diagonal", "case_label", "gram_class", "merging_witnesses"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["case_label"], "v");
    }
}
