//! Finite transition-emitting hidden Markov models.
//!
//! A model with `n` internal states over an alphabet of `m` symbols is a set
//! of `m` substochastic `n × n` matrices. `T[r][(i, j)]` is the probability of
//! moving from state `i` to state `j` while emitting symbol `r` (rows are the
//! FROM state), so the stationary distribution is a left eigenvector of
//! `A = Σ_r T[r]`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::{LogBase, Scalar};

/// Default cap on `m^L` for exact word enumeration.
pub const DEFAULT_WORD_BUDGET: usize = 1 << 22;

const STATIONARY_MAX_ITERATIONS: usize = 1_000_000;
const STATIONARY_AGREEMENT: f64 = 1e-9;

/// Where the initial distribution of a model came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialSource {
    Supplied,
    Stationary,
}

#[derive(Debug, Clone)]
pub struct Hmm<T> {
    name: String,
    state_labels: Vec<String>,
    symbol_labels: Vec<String>,
    transitions: Vec<Mat<T>>,
    initial: Vec<T>,
    initial_source: InitialSource,
    not_epsilon_machine: bool,
}

impl<T: Scalar> Hmm<T> {
    /// Build a model, computing the stationary distribution when `initial` is `None`.
    ///
    /// Only structural problems (inconsistent dimensions, empty alphabets) are
    /// errors here; use [`validate`] for the probabilistic invariants.
    pub fn new(
        name: impl Into<String>,
        state_labels: Vec<String>,
        symbol_labels: Vec<String>,
        transitions: Vec<Mat<T>>,
        initial: Option<Vec<T>>,
    ) -> Result<Self> {
        let n = state_labels.len();
        let m = symbol_labels.len();
        if n == 0 {
            return Err(Error::Dimension("model needs at least one state".into()));
        }
        if m == 0 {
            return Err(Error::Dimension("model needs at least one symbol".into()));
        }
        if transitions.len() != m {
            return Err(Error::Dimension(format!(
                "{} transition matrices for {m} symbols",
                transitions.len()
            )));
        }
        for (r, t) in transitions.iter().enumerate() {
            if t.rows() != n || t.cols() != n {
                return Err(Error::Dimension(format!(
                    "transition matrix for symbol `{}` is {}x{}, expected {n}x{n}",
                    symbol_labels[r],
                    t.rows(),
                    t.cols()
                )));
            }
        }
        let (initial, initial_source) = match initial {
            Some(mu) => {
                if mu.len() != n {
                    return Err(Error::Dimension(format!(
                        "initial distribution has {} entries for {n} states",
                        mu.len()
                    )));
                }
                (mu, InitialSource::Supplied)
            }
            None => (stationary_of(&transitions)?, InitialSource::Stationary),
        };
        Ok(Self {
            name: name.into(),
            state_labels,
            symbol_labels,
            transitions,
            initial,
            initial_source,
            not_epsilon_machine: false,
        })
    }

    /// Convenience constructor with labels `0, 1, …` for states and symbols.
    pub fn from_matrices(name: impl Into<String>, transitions: Vec<Mat<T>>, initial: Option<Vec<T>>) -> Result<Self> {
        let n = transitions.first().map_or(0, Mat::rows);
        let m = transitions.len();
        Self::new(
            name,
            (0..n).map(|i| i.to_string()).collect(),
            (0..m).map(|r| r.to_string()).collect(),
            transitions,
            initial,
        )
    }

    /// Mark the model as known not to be an epsilon-machine.
    pub fn flag_not_epsilon_machine(mut self) -> Self {
        self.not_epsilon_machine = true;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n_states(&self) -> usize {
        self.state_labels.len()
    }

    pub fn n_symbols(&self) -> usize {
        self.symbol_labels.len()
    }

    pub fn state_labels(&self) -> &[String] {
        &self.state_labels
    }

    pub fn symbol_labels(&self) -> &[String] {
        &self.symbol_labels
    }

    pub fn transitions(&self) -> &[Mat<T>] {
        &self.transitions
    }

    /// `T[r][(i, j)]`.
    #[inline]
    pub fn t(&self, r: usize, i: usize, j: usize) -> T {
        self.transitions[r][(i, j)]
    }

    pub fn initial(&self) -> &[T] {
        &self.initial
    }

    pub fn initial_source(&self) -> InitialSource {
        self.initial_source
    }

    pub fn is_flagged_not_epsilon_machine(&self) -> bool {
        self.not_epsilon_machine
    }

    /// The state-to-state stochastic matrix `Σ_r T[r]`.
    pub fn state_transition_matrix(&self) -> Mat<T> {
        summed(&self.transitions)
    }

    /// Unifilar: each (state, symbol) pair has at most one successor above `τ_zero`.
    /// Returns the first offending pair otherwise.
    pub fn unifilarity_violation(&self) -> Option<(usize, usize)> {
        let n = self.n_states();
        for i in 0..n {
            for r in 0..self.n_symbols() {
                let successors = (0..n).filter(|&j| self.t(r, i, j) > T::tau_zero()).count();
                if successors > 1 {
                    return Some((i, r));
                }
            }
        }
        None
    }

    pub fn is_unifilar(&self) -> bool {
        self.unifilarity_violation().is_none()
    }

    /// Same matrices with a different initial distribution.
    pub fn with_initial(&self, initial: Vec<T>) -> Result<Self> {
        if initial.len() != self.n_states() {
            return Err(Error::Dimension(format!(
                "initial distribution has {} entries for {} states",
                initial.len(),
                self.n_states()
            )));
        }
        Ok(Self {
            initial,
            initial_source: InitialSource::Supplied,
            ..self.clone()
        })
    }

    pub fn render_word(&self, word: &[usize]) -> String {
        render_symbols(&self.symbol_labels, word)
    }
}

/// Render symbol indices: labels are concatenated when every label is a
/// single character, comma separated otherwise.
pub fn render_symbols(labels: &[String], word: &[usize]) -> String {
    let single = labels.iter().all(|l| l.chars().count() == 1);
    let parts = word.iter().map(|&s| labels[s].as_str());
    if single {
        parts.collect()
    } else {
        parts.collect::<Vec<_>>().join(",")
    }
}

fn summed<T: Scalar>(transitions: &[Mat<T>]) -> Mat<T> {
    let n = transitions[0].rows();
    transitions.iter().fold(Mat::zeros(n, n), |acc, t| acc.add(t))
}

// ---------------------------------------------------------------------------
// Validation

/// One violated model invariant.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// A transition probability outside `[0, 1]`.
    EntryOutOfRange { symbol: usize, from: usize, to: usize, value: f64 },
    /// `Σ_r Σ_j T[r][i][j]` differs from 1.
    SubstochasticRow { state: usize, row_sum: f64 },
    InitialNegative { state: usize, value: f64 },
    InitialNotNormalized { sum: f64 },
    /// `μ A ≠ μ`; reported once, at the state with the largest residual.
    NonInvariantInitial { state: usize, residual: f64 },
}

impl Violation {
    /// Non-invariant initial distributions are tolerated with a warning.
    pub fn is_warning(&self) -> bool {
        matches!(self, Violation::NonInvariantInitial { .. })
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::EntryOutOfRange { symbol, from, to, value } => {
                write!(f, "entry out of range: T[{symbol}][{from}][{to}] = {value}")
            }
            Violation::SubstochasticRow { state, row_sum } => {
                write!(f, "substochastic row: state {state} has total outgoing mass {row_sum}")
            }
            Violation::InitialNegative { state, value } => {
                write!(f, "initial distribution negative at state {state}: {value}")
            }
            Violation::InitialNotNormalized { sum } => {
                write!(f, "initial distribution sums to {sum}")
            }
            Violation::NonInvariantInitial { state, residual } => {
                write!(f, "non-invariant initial distribution: |(μA − μ)_{state}| = {residual:e}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub tolerance: f64,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    /// Any violation other than a non-invariant initial distribution.
    pub fn has_errors(&self) -> bool {
        self.violations.iter().any(|v| !v.is_warning())
    }

    pub fn errors(&self) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(|v| !v.is_warning())
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(|v| v.is_warning())
    }

    /// Turn fatal violations into an error.
    pub fn into_result(self) -> Result<Self> {
        if self.has_errors() {
            let msg = self.errors().map(ToString::to_string).collect::<Vec<_>>().join("; ");
            Err(Error::Validation(msg))
        } else {
            Ok(self)
        }
    }
}

/// Check every model invariant within `tol`.
pub fn validate<T: Scalar>(model: &Hmm<T>, tol: T) -> ValidationReport {
    let n = model.n_states();
    let mut violations = Vec::new();

    for (r, t) in model.transitions.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                let v = t[(i, j)];
                if !(v >= -tol && v <= T::one() + tol) {
                    violations.push(Violation::EntryOutOfRange {
                        symbol: r,
                        from: i,
                        to: j,
                        value: v.as_f64(),
                    });
                }
            }
        }
    }
    let a = model.state_transition_matrix();
    for i in 0..n {
        let s: T = a.row(i).iter().copied().sum();
        if !((s - T::one()).abs() <= tol) {
            violations.push(Violation::SubstochasticRow {
                state: i,
                row_sum: s.as_f64(),
            });
        }
    }

    let mu = &model.initial;
    for (i, &p) in mu.iter().enumerate() {
        if !(p >= -tol) {
            violations.push(Violation::InitialNegative {
                state: i,
                value: p.as_f64(),
            });
        }
    }
    let total: T = mu.iter().copied().sum();
    if !((total - T::one()).abs() <= tol) {
        violations.push(Violation::InitialNotNormalized { sum: total.as_f64() });
    }

    let image = a.left_mul(mu);
    let worst = image
        .iter()
        .zip(mu)
        .map(|(&x, &y)| (x - y).abs())
        .enumerate()
        .fold((0usize, T::zero()), |best, (i, d)| if d > best.1 { (i, d) } else { best });
    if worst.1 > tol {
        violations.push(Violation::NonInvariantInitial {
            state: worst.0,
            residual: worst.1.as_f64(),
        });
    }

    ValidationReport {
        tolerance: tol.as_f64(),
        violations,
    }
}

// ---------------------------------------------------------------------------
// Stationary distribution

/// Stationary distribution of `Σ_r T[r]`, recomputed from the matrices (the
/// model's own `initial` is ignored).
pub fn stationary_distribution<T: Scalar>(model: &Hmm<T>) -> Result<Vec<T>> {
    stationary_of(&model.transitions)
}

/// Power iteration on the lazy chain `(A + I) / 2`.
///
/// The lazy chain has the same stationary distributions as `A` but is
/// aperiodic, so iteration converges on periodic chains too. Uniqueness is
/// checked by restarting from every basis vector.
fn stationary_of<T: Scalar>(transitions: &[Mat<T>]) -> Result<Vec<T>> {
    let a = summed(transitions);
    let n = a.rows();
    let uniform = vec![T::one() / T::from_usize_lossy(n); n];
    let mu = lazy_power_iteration(&a, uniform)?;

    let agreement = T::lit(STATIONARY_AGREEMENT).max(T::tau_eig());
    for k in 0..n {
        let mut start = vec![T::zero(); n];
        start[k] = T::one();
        let limit = lazy_power_iteration(&a, start)?;
        let diff = limit
            .iter()
            .zip(&mu)
            .fold(T::zero(), |acc, (&x, &y)| acc.max((x - y).abs()));
        if diff > agreement {
            return Err(Error::NonUniqueStationary(format!(
                "iteration from state {k} converges to a different limit (max difference {:e})",
                diff.as_f64()
            )));
        }
    }
    Ok(mu)
}

fn lazy_power_iteration<T: Scalar>(a: &Mat<T>, mut x: Vec<T>) -> Result<Vec<T>> {
    let half = T::lit(0.5);
    let stop = T::tau_eig() * half;
    let mut delta = T::infinity();
    for _ in 0..STATIONARY_MAX_ITERATIONS {
        let ax = a.left_mul(&x);
        let mut next: Vec<T> = ax.iter().zip(&x).map(|(&y, &z)| half * (y + z)).collect();
        let total: T = next.iter().copied().sum();
        if !(total > T::zero()) {
            return Err(Error::InvalidDistribution(
                "state transition matrix annihilates the distribution".into(),
            ));
        }
        for v in &mut next {
            *v /= total;
        }
        delta = next
            .iter()
            .zip(&x)
            .fold(T::zero(), |acc, (&p, &q)| acc.max((p - q).abs()));
        x = next;
        if delta <= stop {
            for v in &mut x {
                if *v < T::zero() {
                    *v = T::zero();
                }
            }
            return Ok(x);
        }
    }
    Err(Error::NonConvergence {
        what: "stationary distribution power iteration",
        iterations: STATIONARY_MAX_ITERATIONS,
        residual: delta.as_f64(),
    })
}

// ---------------------------------------------------------------------------
// Words

/// Exact law of length-`L` words; only words with positive probability are stored.
#[derive(Debug, Clone, PartialEq)]
pub struct WordDistribution<T> {
    pub length: usize,
    pub base: LogBase,
    pub probs: BTreeMap<Vec<usize>, T>,
}

impl<T: Scalar> WordDistribution<T> {
    pub fn get(&self, word: &[usize]) -> T {
        self.probs.get(word).copied().unwrap_or_else(T::zero)
    }

    pub fn total(&self) -> T {
        self.probs.values().copied().sum()
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Block entropy `H_L` in this distribution's base.
    pub fn entropy(&self) -> T {
        self.probs.values().map(|&p| self.base.eta(p)).sum()
    }

    /// Sum out the last symbol.
    pub fn marginalize_last(&self) -> Self {
        self.marginalize(|w| w[..w.len() - 1].to_vec())
    }

    /// Sum out the first symbol.
    pub fn marginalize_first(&self) -> Self {
        self.marginalize(|w| w[1..].to_vec())
    }

    fn marginalize(&self, key: impl Fn(&[usize]) -> Vec<usize>) -> Self {
        assert!(self.length > 0, "cannot marginalize empty words");
        let mut probs = BTreeMap::new();
        for (w, &p) in &self.probs {
            *probs.entry(key(w)).or_insert_with(T::zero) += p;
        }
        Self {
            length: self.length - 1,
            base: self.base,
            probs,
        }
    }

    /// Relative frequencies of the overlapping length-`L` windows of `sequence`.
    pub fn empirical(sequence: &[usize], length: usize, base: LogBase) -> Self {
        let mut counts: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        if length > 0 && sequence.len() >= length {
            for w in sequence.windows(length) {
                *counts.entry(w.to_vec()).or_default() += 1;
            }
        }
        let total = T::from_usize_lossy(counts.values().sum::<usize>().max(1));
        let probs = counts
            .into_iter()
            .map(|(w, c)| (w, T::from_usize_lossy(c) / total))
            .collect();
        Self { length, base, probs }
    }

    /// Total-variation distance `½ Σ_w |P(w) − Q(w)|`.
    pub fn total_variation(&self, other: &Self) -> T {
        let mut sum = T::zero();
        for (w, &p) in &self.probs {
            sum += (p - other.get(w)).abs();
        }
        for (w, &q) in &other.probs {
            if !self.probs.contains_key(w) {
                sum += q.abs();
            }
        }
        sum * T::lit(0.5)
    }

    /// Largest pointwise difference over the union of supports.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for (w, &p) in &self.probs {
            worst = worst.max((p - other.get(w)).abs());
        }
        for (w, &q) in &other.probs {
            worst = worst.max((q - self.get(w)).abs());
        }
        worst
    }
}

pub(crate) fn check_budget(symbols: usize, length: usize, cap: usize) -> Result<()> {
    let words = u32::try_from(length)
        .ok()
        .and_then(|l| symbols.checked_pow(l))
        .filter(|&w| w <= cap);
    match words {
        Some(_) => Ok(()),
        None => Err(Error::BudgetExceeded { symbols, length, cap }),
    }
}

/// Depth-first expansion of all words up to `max_len`, pruning branches of
/// probability zero. `visit(word, p)` is called for every positive-probability
/// prefix of length `1..=max_len`.
pub(crate) fn for_each_word<T: Scalar>(model: &Hmm<T>, max_len: usize, mut visit: impl FnMut(&[usize], T)) {
    fn expand<T: Scalar>(
        model: &Hmm<T>,
        alpha: &[T],
        word: &mut Vec<usize>,
        max_len: usize,
        visit: &mut dyn FnMut(&[usize], T),
    ) {
        if word.len() == max_len {
            return;
        }
        for r in 0..model.n_symbols() {
            let next = model.transitions[r].left_mul(alpha);
            let p: T = next.iter().copied().sum();
            if p <= T::zero() {
                continue;
            }
            word.push(r);
            visit(word, p);
            expand(model, &next, word, max_len, visit);
            word.pop();
        }
    }
    let mut word = Vec::with_capacity(max_len);
    expand(model, &model.initial, &mut word, max_len, &mut visit);
}

/// Exact distribution of length-`length` words, `P(w) = μ T[w₁] ⋯ T[w_L] 1`.
pub fn word_distribution<T: Scalar>(model: &Hmm<T>, length: usize) -> Result<WordDistribution<T>> {
    word_distribution_with_budget(model, length, DEFAULT_WORD_BUDGET)
}

pub fn word_distribution_with_budget<T: Scalar>(
    model: &Hmm<T>,
    length: usize,
    cap: usize,
) -> Result<WordDistribution<T>> {
    if length == 0 {
        return Err(Error::Parameter("word length must be positive".into()));
    }
    check_budget(model.n_symbols(), length, cap)?;
    let mut probs = BTreeMap::new();
    for_each_word(model, length, |w, p| {
        if w.len() == length {
            probs.insert(w.to_vec(), p);
        }
    });
    Ok(WordDistribution {
        length,
        base: LogBase::default(),
        probs,
    })
}

// ---------------------------------------------------------------------------
// Sampling

/// A sampled run: `states[t]` is the state that emitted `symbols[t]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Trajectory {
    pub symbols: Vec<usize>,
    pub states: Vec<usize>,
}

/// Per-state cumulative table over `(next state, symbol)` pairs.
pub(crate) struct OutcomeTable {
    rows: Vec<Vec<(f64, usize, usize)>>,
}

impl OutcomeTable {
    pub(crate) fn new<T: Scalar>(model: &Hmm<T>) -> Self {
        let n = model.n_states();
        let rows = (0..n)
            .map(|i| {
                let mut acc = 0.0;
                let mut row = Vec::new();
                for j in 0..n {
                    for r in 0..model.n_symbols() {
                        let p = model.t(r, i, j).as_f64();
                        if p > 0.0 {
                            acc += p;
                            row.push((acc, j, r));
                        }
                    }
                }
                row
            })
            .collect();
        Self { rows }
    }

    /// Draw `(next state, symbol)` from state `i`.
    pub(crate) fn draw<R: Rng + ?Sized>(&self, i: usize, rng: &mut R) -> Option<(usize, usize)> {
        let row = &self.rows[i];
        let total = row.last()?.0;
        let u = rng.random::<f64>() * total;
        let k = row.partition_point(|&(c, _, _)| c <= u).min(row.len() - 1);
        Some((row[k].1, row[k].2))
    }
}

pub(crate) fn draw_index<T: Scalar, R: Rng + ?Sized>(weights: &[T], rng: &mut R) -> usize {
    let total: f64 = weights.iter().map(|w| w.as_f64().max(0.0)).sum();
    let u = rng.random::<f64>() * total;
    let mut acc = 0.0;
    let mut last_positive = 0;
    for (i, w) in weights.iter().enumerate() {
        let w = w.as_f64().max(0.0);
        if w > 0.0 {
            last_positive = i;
            acc += w;
            if u < acc {
                return i;
            }
        }
    }
    last_positive
}

/// Sample `steps` symbols, starting from a state drawn from `μ`.
pub fn sample<T: Scalar>(model: &Hmm<T>, steps: usize, seed: u64) -> Result<Trajectory> {
    validate(model, T::tau_stoch()).into_result()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = draw_index(&model.initial, &mut rng);
    Ok(run_from(model, start, steps, &mut rng))
}

/// Sample `steps` symbols from a fixed starting state.
pub fn sample_from<T: Scalar, R: Rng + ?Sized>(
    model: &Hmm<T>,
    start: usize,
    steps: usize,
    rng: &mut R,
) -> Result<Trajectory> {
    validate(model, T::tau_stoch()).into_result()?;
    if start >= model.n_states() {
        return Err(Error::Parameter(format!("start state {start} out of range")));
    }
    Ok(run_from(model, start, steps, rng))
}

fn run_from<T: Scalar, R: Rng + ?Sized>(model: &Hmm<T>, start: usize, steps: usize, rng: &mut R) -> Trajectory {
    let table = OutcomeTable::new(model);
    let mut state = start;
    let mut symbols = Vec::with_capacity(steps);
    let mut states = Vec::with_capacity(steps);
    for _ in 0..steps {
        // validated rows are never empty
        let (next, r) = table.draw(state, rng).expect("validated model has a nonzero row");
        states.push(state);
        symbols.push(r);
        state = next;
    }
    Trajectory { symbols, states }
}

// ---------------------------------------------------------------------------
// Merging

/// Merge states whose outgoing rows agree under every symbol (within `τ_zero`),
/// repeating until no duplicates remain.
pub fn merge_identical_states<T: Scalar>(model: &Hmm<T>) -> Hmm<T> {
    let mut current = model.clone();
    while let Some(merged) = merge_once(&current) {
        current = merged;
    }
    current
}

fn rows_identical<T: Scalar>(model: &Hmm<T>, i: usize, k: usize) -> bool {
    let n = model.n_states();
    model.transitions.iter().all(|t| (0..n).all(|j| (t[(i, j)] - t[(k, j)]).abs() <= T::tau_zero()))
}

fn merge_once<T: Scalar>(model: &Hmm<T>) -> Option<Hmm<T>> {
    let n = model.n_states();
    let mut class_of = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    for (i, class) in class_of.iter_mut().enumerate() {
        match reps.iter().position(|&rep| rows_identical(model, rep, i)) {
            Some(c) => *class = c,
            None => {
                *class = reps.len();
                reps.push(i);
            }
        }
    }
    if reps.len() == n {
        return None;
    }
    let k = reps.len();
    let transitions = model
        .transitions
        .iter()
        .map(|t| {
            let mut out = Mat::zeros(k, k);
            for (a, &rep) in reps.iter().enumerate() {
                for j in 0..n {
                    out[(a, class_of[j])] += t[(rep, j)];
                }
            }
            out
        })
        .collect();
    let mut initial = vec![T::zero(); k];
    for i in 0..n {
        initial[class_of[i]] += model.initial[i];
    }
    let single_char = model.state_labels.iter().all(|l| l.chars().count() == 1);
    let labels = (0..k)
        .map(|c| {
            let members: Vec<&str> = (0..n)
                .filter(|&i| class_of[i] == c)
                .map(|i| model.state_labels[i].as_str())
                .collect();
            if single_char {
                members.concat()
            } else {
                members.join("|")
            }
        })
        .collect();
    Some(Hmm {
        name: model.name.clone(),
        state_labels: labels,
        symbol_labels: model.symbol_labels.clone(),
        transitions,
        initial,
        initial_source: model.initial_source,
        not_epsilon_machine: false,
    })
}
