//! Loss functions and the negative-gradient targets each new tree fits.
//!
//! Conventions:
//! - Squared loss is `0.5 * (yhat - y)^2`, so the target is the plain
//!   residual `y - yhat` and a leaf-mean fit minimizes leaf squared error.
//! - Logistic loss is the sigmoid loss `1 / (1 + exp(lambda * y * yhat))`
//!   over labels in {-1, +1}.
//! - The ranking gradient is pairwise: for every in-query pair with
//!   differing grades, the higher-relevance doc is pushed up and the lower
//!   pushed down by `swap_delta * lambda / (1 + exp(lambda * (s_hi - s_lo)))`.

use serde::{Deserialize, Serialize};

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::metrics::QueryRanking;

/// Selects the loss driving training and its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LossKind {
    Squared,
    Logistic {
        lambda: f64,
    },
    LambdaRank {
        lambda: f64,
        /// NDCG truncation used inside the training gradient; `None` means
        /// untruncated within each query.
        truncation: Option<usize>,
    },
}

impl LossKind {
    pub fn name(&self) -> &'static str {
        match self {
            LossKind::Squared => "squared",
            LossKind::Logistic { .. } => "logistic",
            LossKind::LambdaRank { .. } => "lambdarank",
        }
    }

    /// Parameter-range checks that need no dataset.
    pub fn validate(&self) -> Result<()> {
        match self {
            LossKind::Squared => Ok(()),
            LossKind::Logistic { lambda } | LossKind::LambdaRank { lambda, .. } => {
                if !(lambda.is_finite() && *lambda > 0.0) {
                    return Err(Error::Config(format!(
                        "loss lambda must be a positive real, got {lambda}"
                    )));
                }
                if let LossKind::LambdaRank {
                    truncation: Some(0),
                    ..
                } = self
                {
                    return Err(Error::Config("ndcg truncation must be at least 1".into()));
                }
                Ok(())
            }
        }
    }

    /// Label-domain and grouping requirements against a concrete dataset.
    pub fn validate_for(&self, dataset: &Dataset) -> Result<()> {
        self.validate()?;
        match self {
            LossKind::Squared => Ok(()),
            LossKind::Logistic { .. } => {
                if let Some((i, &y)) = dataset
                    .labels()
                    .iter()
                    .enumerate()
                    .find(|(_, &y)| y != 1.0 && y != -1.0)
                {
                    return Err(Error::Domain(format!(
                        "row {i}: logistic loss needs labels in {{-1, +1}}, got {y}"
                    )));
                }
                Ok(())
            }
            LossKind::LambdaRank { .. } => {
                if dataset.query_groups().is_none() {
                    return Err(Error::Mismatch(
                        "lambdarank loss needs query-grouped data (qid)".into(),
                    ));
                }
                // Grade range/integrality is enforced by the Dataset invariant.
                Ok(())
            }
        }
    }
}

/// Numerically stable logistic sigmoid.
#[inline]
pub(crate) fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// Per-point squared loss `0.5 * (yhat - y)^2`.
#[inline]
pub fn squared_loss_at(y: f64, yhat: f64) -> f64 {
    0.5 * (yhat - y) * (yhat - y)
}

/// Negative gradient of the squared loss: the residual.
#[inline]
pub fn squared_target_at(y: f64, yhat: f64) -> f64 {
    y - yhat
}

/// Per-point sigmoid loss `1 / (1 + exp(lambda * y * yhat))`.
#[inline]
pub fn logistic_loss_at(lambda: f64, y: f64, yhat: f64) -> f64 {
    sigmoid(-lambda * y * yhat)
}

/// Negative gradient of the sigmoid loss:
/// `lambda * y * exp(z) / (1 + exp(z))^2` with `z = lambda * y * yhat`.
#[inline]
pub fn logistic_target_at(lambda: f64, y: f64, yhat: f64) -> f64 {
    let z = lambda * y * yhat;
    lambda * y * sigmoid(z) * sigmoid(-z)
}

fn check_predictions(dataset: &Dataset, predictions: &[f64]) -> Result<()> {
    if predictions.len() != dataset.n_rows() {
        return Err(Error::Mismatch(format!(
            "{} predictions for {} rows",
            predictions.len(),
            dataset.n_rows()
        )));
    }
    Ok(())
}

/// The per-point targets `-L'_x(prediction)` that the next tree fits.
pub fn negative_gradient(
    loss: &LossKind,
    dataset: &Dataset,
    predictions: &[f64],
) -> Result<Vec<f64>> {
    check_predictions(dataset, predictions)?;
    loss.validate_for(dataset)?;
    let labels = dataset.labels();
    match loss {
        LossKind::Squared => Ok(labels
            .iter()
            .zip(predictions)
            .map(|(&y, &p)| squared_target_at(y, p))
            .collect()),
        LossKind::Logistic { lambda } => Ok(labels
            .iter()
            .zip(predictions)
            .map(|(&y, &p)| logistic_target_at(*lambda, y, p))
            .collect()),
        LossKind::LambdaRank { lambda, truncation } => {
            let groups = dataset.query_groups().unwrap();
            let mut targets = vec![0.0; dataset.n_rows()];
            for range in groups.iter() {
                let start = range.start;
                let m = range.len();
                let rels: Vec<u32> = labels[range.clone()].iter().map(|&y| y as u32).collect();
                let scores = &predictions[range];
                let k = truncation.unwrap_or(m);
                let ranking = QueryRanking::new(&rels, scores, k);
                for a in 0..m {
                    for b in (a + 1)..m {
                        if rels[a] == rels[b] {
                            continue;
                        }
                        let (hi, lo) = if rels[a] > rels[b] { (a, b) } else { (b, a) };
                        let s = ranking.swap_delta(&rels, a, b, k);
                        let c = s * lambda / (1.0 + (lambda * (scores[hi] - scores[lo])).exp());
                        targets[start + hi] += c;
                        targets[start + lo] -= c;
                    }
                }
            }
            Ok(targets)
        }
    }
}

/// Mean per-point loss; for ranking this is the surrogate
/// `1 - mean NDCG@truncation` (the pairwise gradient has no primal loss).
pub fn loss_value(loss: &LossKind, dataset: &Dataset, predictions: &[f64]) -> Result<f64> {
    check_predictions(dataset, predictions)?;
    loss.validate_for(dataset)?;
    let labels = dataset.labels();
    match loss {
        LossKind::Squared => {
            let sum: f64 = labels
                .iter()
                .zip(predictions)
                .map(|(&y, &p)| squared_loss_at(y, p))
                .sum();
            Ok(sum / labels.len() as f64)
        }
        LossKind::Logistic { lambda } => {
            let sum: f64 = labels
                .iter()
                .zip(predictions)
                .map(|(&y, &p)| logistic_loss_at(*lambda, y, p))
                .sum();
            Ok(sum / labels.len() as f64)
        }
        LossKind::LambdaRank { truncation, .. } => {
            let groups = dataset.query_groups().unwrap();
            let mut sum = 0.0;
            for range in groups.iter() {
                let m = range.len();
                let rels: Vec<u32> = labels[range.clone()].iter().map(|&y| y as u32).collect();
                let scores = &predictions[range];
                let k = truncation.unwrap_or(m);
                let ranking = QueryRanking::new(&rels, scores, k);
                sum += ranking.ndcg_value(&rels, k);
            }
            Ok(1.0 - sum / groups.n_groups() as f64)
        }
    }
}
