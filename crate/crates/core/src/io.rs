//! JSON model files.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hmm::Hmm;
use crate::linalg::Mat;
use crate::scalar::Scalar;

/// On-disk form of an [`Hmm`]. `transitions` maps each symbol label to an
/// `n×n` array whose rows are the from-states.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub name: String,
    pub symbols: Vec<String>,
    pub states: Vec<String>,
    pub transitions: BTreeMap<String, Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub not_epsilon_machine: bool,
}

impl ModelFile {
    pub fn from_model<T: Scalar>(model: &Hmm<T>) -> Self {
        let transitions = model
            .symbol_labels()
            .iter()
            .zip(model.transitions())
            .map(|(label, t)| {
                let rows = t
                    .to_rows()
                    .into_iter()
                    .map(|row| row.into_iter().map(|x| x.as_f64()).collect())
                    .collect();
                (label.clone(), rows)
            })
            .collect();
        Self {
            name: model.name().to_string(),
            symbols: model.symbol_labels().to_vec(),
            states: model.state_labels().to_vec(),
            transitions,
            initial: Some(model.initial().iter().map(|x| x.as_f64()).collect()),
            not_epsilon_machine: model.is_flagged_not_epsilon_machine(),
        }
    }

    pub fn to_model<T: Scalar>(&self) -> Result<Hmm<T>> {
        if let Some(extra) = self.transitions.keys().find(|k| !self.symbols.contains(k)) {
            return Err(Error::Format(format!("transitions given for undeclared symbol `{extra}`")));
        }
        let n = self.states.len();
        let mut mats = Vec::with_capacity(self.symbols.len());
        for s in &self.symbols {
            let rows = self
                .transitions
                .get(s)
                .ok_or_else(|| Error::Format(format!("no transition matrix for symbol `{s}`")))?;
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::Format(format!(
                    "transition matrix for symbol `{s}` must be {n}x{n}"
                )));
            }
            mats.push(Mat::from_fn(n, n, |i, j| T::lit(rows[i][j])));
        }
        let initial = self
            .initial
            .as_ref()
            .map(|v| v.iter().map(|&x| T::lit(x)).collect());
        let model = Hmm::new(self.name.clone(), self.states.clone(), self.symbols.clone(), mats, initial)?;
        Ok(if self.not_epsilon_machine {
            model.flag_not_epsilon_machine()
        } else {
            model
        })
    }
}

pub fn parse_model<T: Scalar>(json: &str) -> Result<Hmm<T>> {
    serde_json::from_str::<ModelFile>(json)?.to_model()
}

pub fn load_model<T: Scalar>(path: impl AsRef<Path>) -> Result<Hmm<T>> {
    parse_model(&std::fs::read_to_string(path)?)
}

pub fn model_to_json<T: Scalar>(model: &Hmm<T>) -> Result<String> {
    Ok(serde_json::to_string_pretty(&ModelFile::from_model(model))?)
}

pub fn save_model<T: Scalar>(model: &Hmm<T>, path: impl AsRef<Path>) -> Result<()> {
    let mut s = model_to_json(model)?;
    s.push('\n');
    std::fs::write(path, s)?;
    Ok(())
}
