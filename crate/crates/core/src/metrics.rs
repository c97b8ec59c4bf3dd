//! Task-level evaluation: regression error, classification accuracy and
//! recall, and NDCG with the pairwise swap deltas the ranking gradient uses.

use crate::data::MAX_RELEVANCE_GRADE;
use crate::error::{Error, Result};

/// One query's documents: integer relevance grades plus model scores.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedQuery {
    relevances: Vec<u32>,
    scores: Vec<f64>,
}

impl RankedQuery {
    pub fn new(relevances: Vec<u32>, scores: Vec<f64>) -> Result<Self> {
        if relevances.is_empty() || relevances.len() != scores.len() {
            return Err(Error::Mismatch(format!(
                "query with {} grades and {} scores",
                relevances.len(),
                scores.len()
            )));
        }
        if let Some(&g) = relevances.iter().find(|&&g| g > MAX_RELEVANCE_GRADE) {
            return Err(Error::Domain(format!(
                "relevance grade {g} above the maximum {MAX_RELEVANCE_GRADE}"
            )));
        }
        Ok(RankedQuery { relevances, scores })
    }

    pub fn len(&self) -> usize {
        self.relevances.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires at least one doc
    }

    pub fn relevances(&self) -> &[u32] {
        &self.relevances
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }
}

/// Exponential gain `2^rel - 1`. Exact for grades up to 31.
#[inline]
fn gain(rel: u32) -> f64 {
    ((1u64 << rel) - 1) as f64
}

/// Log discount for 0-based rank position `pos`.
#[inline]
fn discount(pos: usize) -> f64 {
    1.0 / ((pos + 2) as f64).log2()
}

/// Document indices sorted by descending score; score ties keep ascending
/// original index (stable sort).
fn rank_order(scores: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].partial_cmp(&scores[a]).unwrap());
    order
}

fn dcg_of_order(relevances: &[u32], order: &[usize], k: usize) -> f64 {
    let mut dcg = 0.0;
    for (pos, &doc) in order.iter().take(k).enumerate() {
        dcg += gain(relevances[doc]) * discount(pos);
    }
    dcg
}

fn ideal_dcg(relevances: &[u32], k: usize) -> f64 {
    let mut sorted = relevances.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut dcg = 0.0;
    for (pos, &rel) in sorted.iter().take(k).enumerate() {
        dcg += gain(rel) * discount(pos);
    }
    dcg
}

/// Precomputed ranking of one query, shared across the O(n^2) pair loop of
/// the ranking gradient.
pub(crate) struct QueryRanking {
    order: Vec<usize>,
    /// position of each doc in `order`
    position: Vec<usize>,
    idcg: f64,
}

impl QueryRanking {
    pub(crate) fn new(relevances: &[u32], scores: &[f64], k: usize) -> Self {
        let order = rank_order(scores);
        let mut position = vec![0usize; order.len()];
        for (pos, &doc) in order.iter().enumerate() {
            position[doc] = pos;
        }
        let idcg = ideal_dcg(relevances, k);
        QueryRanking { order, position, idcg }
    }

    pub(crate) fn ndcg_value(&self, relevances: &[u32], k: usize) -> f64 {
        if self.idcg == 0.0 {
            return 1.0;
        }
        dcg_of_order(relevances, &self.order, k) / self.idcg
    }

    /// |NDCG(current) - NDCG(docs i and j exchanged in rank position)|.
    pub(crate) fn swap_delta(&self, relevances: &[u32], i: usize, j: usize, k: usize) -> f64 {
        if self.idcg == 0.0 {
            return 0.0;
        }
        let mut swapped = self.order.clone();
        swapped.swap(self.position[i], self.position[j]);
        let before = dcg_of_order(relevances, &self.order, k) / self.idcg;
        let after = dcg_of_order(relevances, &swapped, k) / self.idcg;
        (before - after).abs()
    }
}

/// NDCG truncated at rank `k`. Queries whose ideal DCG is zero (all grades
/// zero) score 1.0 so they do not penalize averages.
pub fn ndcg_at_k(query: &RankedQuery, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain("ndcg truncation must be at least 1".into()));
    }
    let ranking = QueryRanking::new(query.relevances(), query.scores(), k);
    Ok(ranking.ndcg_value(query.relevances(), k))
}

/// Absolute NDCG@k change from exchanging the rank positions of docs `i`
/// and `j`.
pub fn ndcg_swap_delta(query: &RankedQuery, i: usize, j: usize, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain("ndcg truncation must be at least 1".into()));
    }
    let n = query.len();
    if i >= n || j >= n || i == j {
        return Err(Error::Domain(format!(
            "invalid swap pair ({i}, {j}) for a query of {n} docs"
        )));
    }
    let ranking = QueryRanking::new(query.relevances(), query.scores(), k);
    Ok(ranking.swap_delta(query.relevances(), i, j, k))
}

fn check_paired(labels: &[f64], predictions: &[f64]) -> Result<()> {
    if labels.is_empty() {
        return Err(Error::Mismatch("empty label/prediction vectors".into()));
    }
    if labels.len() != predictions.len() {
        return Err(Error::Mismatch(format!(
            "{} labels vs {} predictions",
            labels.len(),
            predictions.len()
        )));
    }
    Ok(())
}

/// Mean squared error.
pub fn mse(labels: &[f64], predictions: &[f64]) -> Result<f64> {
    check_paired(labels, predictions)?;
    let sum: f64 = labels
        .iter()
        .zip(predictions)
        .map(|(&y, &p)| (p - y) * (p - y))
        .sum();
    Ok(sum / labels.len() as f64)
}

/// Root mean squared error.
pub fn rmse(labels: &[f64], predictions: &[f64]) -> Result<f64> {
    Ok(mse(labels, predictions)?.sqrt())
}

/// Classification quality under the sign rule (score >= 0 predicts +1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassificationReport {
    pub accuracy: f64,
    /// `None` when the data has no positive labels (recall undefined).
    pub recall: Option<f64>,
}

/// Accuracy and recall for labels in {-1, +1} scored by a real-valued model.
pub fn accuracy_and_recall(labels: &[f64], scores: &[f64]) -> Result<ClassificationReport> {
    check_paired(labels, scores)?;
    if let Some((i, &y)) = labels.iter().enumerate().find(|(_, &y)| y != 1.0 && y != -1.0) {
        return Err(Error::Domain(format!(
            "row {i}: classification label {y} is not in {{-1, +1}}"
        )));
    }
    let mut correct = 0usize;
    let mut positives = 0usize;
    let mut true_positives = 0usize;
    for (&y, &s) in labels.iter().zip(scores) {
        let predicted = if s >= 0.0 { 1.0 } else { -1.0 };
        if predicted == y {
            correct += 1;
        }
        if y == 1.0 {
            positives += 1;
            if predicted == 1.0 {
                true_positives += 1;
            }
        }
    }
    let recall = if positives == 0 {
        None
    } else {
        Some(true_positives as f64 / positives as f64)
    };
    Ok(ClassificationReport {
        accuracy: correct as f64 / labels.len() as f64,
        recall,
    })
}
