//! Parameterized builders for the reference models.

use std::collections::BTreeMap;

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hmm::Hmm;
use crate::hqmm::GenericHqmm;
use crate::linalg::{CMat, Mat};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub min: f64,
    pub max: f64,
    pub min_inclusive: bool,
    pub default: f64,
}

impl ParamSpec {
    fn contains(&self, x: f64) -> bool {
        let above = if self.min_inclusive { x >= self.min } else { x > self.min };
        above && x <= self.max
    }

    fn describe(&self) -> String {
        let open = if self.min_inclusive { '[' } else { '(' };
        format!("{} ∈ {open}{}, {}]", self.name, self.min, self.max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryKind {
    Hmm,
    Hqmm,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub kind: EntryKind,
    pub params: &'static [ParamSpec],
    pub description: &'static str,
}

const EPS: ParamSpec = ParamSpec {
    name: "eps",
    min: 0.0,
    max: 1.0,
    min_inclusive: false,
    default: 0.5,
};
const P: ParamSpec = ParamSpec {
    name: "p",
    min: 0.0,
    max: 1.0,
    min_inclusive: true,
    default: 0.5,
};
const Q: ParamSpec = ParamSpec {
    name: "q",
    min: 0.0,
    max: 1.0,
    min_inclusive: true,
    default: 0.7,
};

pub const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        id: "perturbed-coin-em",
        kind: EntryKind::Hmm,
        params: &[EPS],
        description: "two-state Markov coin epsilon-machine, stays with probability (1+eps)/2",
    },
    CatalogEntry {
        id: "perturbed-coin-3state",
        kind: EntryKind::Hmm,
        params: &[EPS],
        description: "three-state non-unifilar HMM of the same process with initial (eps/2, eps/2, 1-eps)",
    },
    CatalogEntry {
        id: "rnc",
        kind: EntryKind::Hmm,
        params: &[P, Q],
        description: "random noisy copy, states A, B, C",
    },
    CatalogEntry {
        id: "rnc-merged",
        kind: EntryKind::Hmm,
        params: &[P],
        description: "random noisy copy at q = 1 with B and C merged into BC",
    },
    CatalogEntry {
        id: "four-symbol",
        kind: EntryKind::Hmm,
        params: &[],
        description: "four-state, four-symbol process with states U, D, R, L",
    },
    CatalogEntry {
        id: "monras-2level",
        kind: EntryKind::Hqmm,
        params: &[],
        description: "two-level quantum realization of the four-symbol process",
    },
];

pub fn entry(id: &str) -> Result<&'static CatalogEntry> {
    ENTRIES
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownCatalogEntry(id.to_string()))
}

#[derive(Debug, Clone)]
pub enum CatalogModel<T> {
    Hmm(Hmm<T>),
    Hqmm(GenericHqmm<T>),
}

impl<T> CatalogModel<T> {
    pub fn into_hmm(self) -> Result<Hmm<T>> {
        match self {
            CatalogModel::Hmm(m) => Ok(m),
            CatalogModel::Hqmm(_) => Err(Error::Parameter("catalog entry is a quantum model, not an HMM".into())),
        }
    }

    pub fn into_hqmm(self) -> Result<GenericHqmm<T>> {
        match self {
            CatalogModel::Hqmm(h) => Ok(h),
            CatalogModel::Hmm(_) => Err(Error::Parameter("catalog entry is an HMM, not a quantum model".into())),
        }
    }
}

/// Fill in defaults and check ranges. Unknown names are rejected.
pub fn resolve_params(entry: &CatalogEntry, params: &BTreeMap<String, f64>) -> Result<BTreeMap<String, f64>> {
    if let Some(unknown) = params.keys().find(|k| !entry.params.iter().any(|p| p.name == k.as_str())) {
        return Err(Error::Parameter(format!(
            "`{}` takes no parameter `{unknown}` (accepted: {})",
            entry.id,
            entry.params.iter().map(|p| p.name).collect::<Vec<_>>().join(", ")
        )));
    }
    let mut out = BTreeMap::new();
    for spec in entry.params {
        let v = params.get(spec.name).copied().unwrap_or(spec.default);
        if !spec.contains(v) {
            return Err(Error::Parameter(format!(
                "`{}`: {} = {v} violates {}",
                entry.id,
                spec.name,
                spec.describe()
            )));
        }
        out.insert(spec.name.to_string(), v);
    }
    Ok(out)
}

/// Build a catalog model by id.
pub fn build<T: Scalar>(id: &str, params: &BTreeMap<String, f64>) -> Result<CatalogModel<T>> {
    let e = entry(id)?;
    let p = resolve_params(e, params)?;
    Ok(match e.id {
        "perturbed-coin-em" => CatalogModel::Hmm(perturbed_coin_em(p["eps"])?),
        "perturbed-coin-3state" => CatalogModel::Hmm(perturbed_coin_3state(p["eps"])?),
        "rnc" => CatalogModel::Hmm(rnc(p["p"], p["q"])?),
        "rnc-merged" => CatalogModel::Hmm(rnc_merged(p["p"])?),
        "four-symbol" => CatalogModel::Hmm(four_symbol()),
        "monras-2level" => CatalogModel::Hqmm(monras_2level()),
        other => return Err(Error::UnknownCatalogEntry(other.to_string())),
    })
}

fn check(spec: &ParamSpec, x: f64) -> Result<()> {
    if spec.contains(x) {
        Ok(())
    } else {
        Err(Error::Parameter(format!("{} = {x} violates {}", spec.name, spec.describe())))
    }
}

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn mat<T: Scalar>(rows: &[&[f64]]) -> Mat<T> {
    Mat::from_fn(rows.len(), rows[0].len(), |i, j| T::lit(rows[i][j]))
}

fn vec_of<T: Scalar>(xs: &[f64]) -> Vec<T> {
    xs.iter().map(|&x| T::lit(x)).collect()
}

fn fmt_param(x: f64) -> String {
    format!("{x}")
}

/// Markov coin epsilon-machine, `0 < eps ≤ 1`.
pub fn perturbed_coin_em<T: Scalar>(eps: f64) -> Result<Hmm<T>> {
    check(&EPS, eps)?;
    let stay = 0.5 * (1.0 + eps);
    let flip = 0.5 * (1.0 - eps);
    Hmm::new(
        format!("perturbed-coin-em(eps={})", fmt_param(eps)),
        labels(&["0", "1"]),
        labels(&["0", "1"]),
        vec![mat(&[&[stay, 0.0], &[flip, 0.0]]), mat(&[&[0.0, flip], &[0.0, stay]])],
        Some(vec_of(&[0.5, 0.5])),
    )
}

/// Three-state generator of the same process, `0 < eps ≤ 1`.
pub fn perturbed_coin_3state<T: Scalar>(eps: f64) -> Result<Hmm<T>> {
    check(&EPS, eps)?;
    let m = Hmm::new(
        format!("perturbed-coin-3state(eps={})", fmt_param(eps)),
        labels(&["0", "1", "2"]),
        labels(&["0", "1"]),
        vec![
            mat(&[&[eps, 0.0, 1.0 - eps], &[0.0, 0.0, 0.0], &[eps / 2.0, 0.0, (1.0 - eps) / 2.0]]),
            mat(&[&[0.0, 0.0, 0.0], &[0.0, eps, 1.0 - eps], &[0.0, eps / 2.0, (1.0 - eps) / 2.0]]),
        ],
        Some(vec_of(&[eps / 2.0, eps / 2.0, 1.0 - eps])),
    )?;
    Ok(m.flag_not_epsilon_machine())
}

/// Random noisy copy, `0 ≤ p, q ≤ 1`, with `μ = (1, p, 1−p)/2`.
pub fn rnc<T: Scalar>(p: f64, q: f64) -> Result<Hmm<T>> {
    check(&P, p)?;
    check(&Q, q)?;
    let m = Hmm::new(
        format!("rnc(p={},q={})", fmt_param(p), fmt_param(q)),
        labels(&["A", "B", "C"]),
        labels(&["0", "1"]),
        vec![
            mat(&[&[0.0, p, 0.0], &[1.0, 0.0, 0.0], &[q, 0.0, 0.0]]),
            mat(&[&[0.0, 0.0, 1.0 - p], &[0.0, 0.0, 0.0], &[1.0 - q, 0.0, 0.0]]),
        ],
        Some(vec_of(&[0.5, p / 2.0, (1.0 - p) / 2.0])),
    )?;
    Ok(if q == 1.0 { m.flag_not_epsilon_machine() } else { m })
}

/// RnC at `q = 1` with the duplicate states merged.
pub fn rnc_merged<T: Scalar>(p: f64) -> Result<Hmm<T>> {
    check(&P, p)?;
    Hmm::new(
        format!("rnc-merged(p={})", fmt_param(p)),
        labels(&["A", "BC"]),
        labels(&["0", "1"]),
        vec![mat(&[&[0.0, p], &[1.0, 0.0]]), mat(&[&[0.0, 1.0 - p], &[0.0, 0.0]])],
        Some(vec_of(&[0.5, 0.5])),
    )
}

fn four_symbol_matrices<T: Scalar>() -> Vec<Mat<T>> {
    let z = [0.0; 4];
    vec![
        mat(&[&[0.5, 0.0, 0.0, 0.0], &z, &[0.25, 0.0, 0.0, 0.0], &[0.25, 0.0, 0.0, 0.0]]),
        mat(&[&z, &[0.0, 0.5, 0.0, 0.0], &[0.0, 0.25, 0.0, 0.0], &[0.0, 0.25, 0.0, 0.0]]),
        mat(&[&[0.0, 0.0, 0.25, 0.0], &[0.0, 0.0, 0.25, 0.0], &[0.0, 0.0, 0.5, 0.0], &z]),
        mat(&[&[0.0, 0.0, 0.0, 0.25], &[0.0, 0.0, 0.0, 0.25], &z, &[0.0, 0.0, 0.0, 0.5]]),
    ]
}

/// Four-state, four-symbol process; symbol `r` always leads to state `r`.
pub fn four_symbol<T: Scalar>() -> Hmm<T> {
    Hmm::new(
        "four-symbol",
        labels(&["U", "D", "R", "L"]),
        labels(&["0", "1", "2", "3"]),
        four_symbol_matrices(),
        Some(vec_of(&[0.25; 4])),
    )
    .expect("static four-symbol model is well formed")
}

/// Whether `model` has exactly the four-symbol transition matrices.
pub fn is_four_symbol<T: Scalar>(model: &Hmm<T>) -> bool {
    model.n_states() == 4
        && model.n_symbols() == 4
        && model
            .transitions()
            .iter()
            .zip(four_symbol_matrices::<T>())
            .all(|(a, b)| a.max_abs_diff(&b) <= T::tau_zero())
}

/// Two-level model: `K_r = |v_r⟩⟨v_r| / √2` for `v = ↑, ↓, +, −`, `ρ = I/2`.
pub fn monras_2level<T: Scalar>() -> GenericHqmm<T> {
    let c = |x: f64| Complex::new(T::lit(x), T::zero());
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let vectors = [[c(1.0), c(0.0)], [c(0.0), c(1.0)], [c(h), c(h)], [c(h), c(-h)]];
    let kraus = vectors
        .iter()
        .map(|v| vec![CMat::outer(v, v).scale(T::lit(h))])
        .collect();
    GenericHqmm::new(
        "monras-2level",
        labels(&["0", "1", "2", "3"]),
        kraus,
        CMat::identity(2).scale(T::lit(0.5)),
    )
    .expect("static two-level model is well formed")
}
