//! Shannon quantities: entropy, mutual information, the state-to-transition
//! channel of a model, and finite-depth excess entropy.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hmm::{self, check_budget, Hmm, DEFAULT_WORD_BUDGET};
use crate::linalg::Mat;
use crate::scalar::{LogBase, Scalar};

fn check_distribution<T: Scalar>(p: &[T], tol: T) -> Result<()> {
    if let Some((i, v)) = p.iter().enumerate().find(|(_, &v)| !(v >= T::zero() || v >= -tol)) {
        return Err(Error::InvalidDistribution(format!("entry {i} is negative ({v})")));
    }
    let total: T = p.iter().copied().sum();
    if !((total - T::one()).abs() <= tol) {
        return Err(Error::InvalidDistribution(format!("entries sum to {total}")));
    }
    Ok(())
}

/// `−Σ p log p`, skipping zero (and tolerated tiny negative) entries.
pub(crate) fn entropy_unchecked<T: Scalar>(p: impl IntoIterator<Item = T>, base: LogBase) -> T {
    p.into_iter().map(|x| base.eta(x)).sum()
}

/// Shannon entropy of a probability vector.
pub fn shannon_entropy<T: Scalar>(dist: &[T], base: LogBase) -> Result<T> {
    check_distribution(dist, T::tau_stoch())?;
    Ok(entropy_unchecked(dist.iter().copied(), base))
}

/// `I(X;Y) = H(X) + H(Y) − H(X,Y)` of a joint table (rows = X), clamped at 0.
pub fn mutual_information<T: Scalar>(joint: &Mat<T>, base: LogBase) -> Result<T> {
    check_distribution(joint.as_slice(), T::tau_stoch())?;
    let row_marginal = (0..joint.rows()).map(|i| joint.row(i).iter().copied().sum::<T>());
    let col_marginal = (0..joint.cols()).map(|j| (0..joint.rows()).map(|i| joint[(i, j)]).sum::<T>());
    let hx = entropy_unchecked(row_marginal, base);
    let hy = entropy_unchecked(col_marginal, base);
    let hxy = entropy_unchecked(joint.as_slice().iter().copied(), base);
    let mi = hx + hy - hxy;
    let floor = -T::lit(10.0) * T::tau_stoch();
    if mi < floor {
        return Err(Error::InternalConsistency(format!(
            "mutual information {mi} is negative beyond tolerance"
        )));
    }
    Ok(mi.max(T::zero()))
}

/// Classical channel from the current state `X` to the pair `Y = (next state, symbol)`.
///
/// Outputs are indexed `y = j · m + r`, the same ordering as the `|j⟩ ⊗ |r⟩`
/// basis of the induced quantum model.
#[derive(Debug, Clone)]
pub struct ChannelDistribution<T> {
    pub input: Vec<T>,
    /// `kernel[(i, j·m + r)] = T[r][i][j]`.
    pub kernel: Mat<T>,
}

impl<T: Scalar> ChannelDistribution<T> {
    pub fn from_model(model: &Hmm<T>) -> Self {
        let n = model.n_states();
        let m = model.n_symbols();
        let kernel = Mat::from_fn(n, n * m, |i, y| model.t(y % m, i, y / m));
        Self {
            input: model.initial().to_vec(),
            kernel,
        }
    }

    /// `p_i · T[r][i][j]`.
    pub fn joint(&self) -> Mat<T> {
        Mat::from_fn(self.kernel.rows(), self.kernel.cols(), |i, y| {
            self.input[i] * self.kernel[(i, y)]
        })
    }

    /// Output law `p̃_y`.
    pub fn output_distribution(&self) -> Vec<T> {
        self.kernel.left_mul(&self.input)
    }
}

/// `I(X;Y)` of the state-to-transition channel under the model's `μ`.
pub fn channel_mutual_information<T: Scalar>(model: &Hmm<T>, base: LogBase) -> Result<T> {
    hmm::validate(model, T::tau_stoch()).into_result()?;
    mutual_information(&ChannelDistribution::from_model(model).joint(), base)
}

/// Exact excess entropy of an epsilon-machine, read off the channel.
///
/// Only unifilarity is checked; whether the states are causal states is the
/// caller's assertion.
pub fn excess_entropy_epsilon_machine<T: Scalar>(model: &Hmm<T>, base: LogBase) -> Result<T> {
    if let Some((state, symbol)) = model.unifilarity_violation() {
        return Err(Error::NotUnifilar { state, symbol });
    }
    channel_mutual_information(model, base)
}

/// Block entropies `H_0 = 0, H_1, …, H_max_len` from one depth-first pass.
pub fn block_entropies<T: Scalar>(model: &Hmm<T>, max_len: usize, base: LogBase) -> Result<Vec<T>> {
    block_entropies_with_budget(model, max_len, base, DEFAULT_WORD_BUDGET)
}

pub fn block_entropies_with_budget<T: Scalar>(
    model: &Hmm<T>,
    max_len: usize,
    base: LogBase,
    cap: usize,
) -> Result<Vec<T>> {
    check_budget(model.n_symbols(), max_len, cap)?;
    let mut h = vec![T::zero(); max_len + 1];
    hmm::for_each_word(model, max_len, |w, p| h[w.len()] += base.eta(p));
    Ok(h)
}

/// Finite-depth excess entropy `E_L = 2 H_L − H_{2L}`, i.e. the mutual
/// information between adjacent length-`L` blocks of the stationary process.
#[derive(Debug, Clone, Serialize)]
pub struct ExcessCurve<T> {
    pub base: LogBase,
    pub l_max: usize,
    /// `(L, E_L)` for `L = 1..=l_max`.
    pub points: Vec<(usize, T)>,
}

impl<T: Scalar> ExcessCurve<T> {
    pub fn last(&self) -> T {
        self.points.last().map_or_else(T::zero, |p| p.1)
    }

    /// `|E_{L_max} − E_{L_max − 1}|`, the convergence diagnostic.
    pub fn last_increment(&self) -> T {
        match self.points.len() {
            0 => T::zero(),
            1 => self.points[0].1,
            k => (self.points[k - 1].1 - self.points[k - 2].1).abs(),
        }
    }

    pub fn value(&self, l: usize) -> Option<T> {
        self.points.iter().find(|p| p.0 == l).map(|p| p.1)
    }

    pub fn is_monotone(&self, slack: T) -> bool {
        self.points.windows(2).all(|w| w[1].1 + slack >= w[0].1)
    }
}

/// Excess-entropy curve up to `l_max` (needs words of length `2·l_max`).
pub fn excess_curve<T: Scalar>(model: &Hmm<T>, l_max: usize, base: LogBase) -> Result<ExcessCurve<T>> {
    excess_curve_with_budget(model, l_max, base, DEFAULT_WORD_BUDGET)
}

pub fn excess_curve_with_budget<T: Scalar>(
    model: &Hmm<T>,
    l_max: usize,
    base: LogBase,
    cap: usize,
) -> Result<ExcessCurve<T>> {
    if l_max == 0 {
        return Err(Error::Parameter("excess curve depth must be positive".into()));
    }
    hmm::validate(model, T::tau_stoch()).into_result()?;
    let h = block_entropies_with_budget(model, 2 * l_max, base, cap)?;
    let points = (1..=l_max)
        .map(|l| (l, (T::lit(2.0) * h[l] - h[2 * l]).max(T::zero())))
        .collect();
    Ok(ExcessCurve { base, l_max, points })
}

/// Largest `L` with `m^(2L)` inside the word budget.
pub fn max_curve_depth(n_symbols: usize, cap: usize) -> usize {
    let mut l = 0;
    while check_budget(n_symbols, 2 * (l + 1), cap).is_ok() {
        l += 1;
        if n_symbols <= 1 && l >= 64 {
            break;
        }
    }
    l
}
