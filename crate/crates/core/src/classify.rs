//! k-nearest-neighbor classification and regression over any dissimilarity,
//! plus the accuracy and cluster purity metrics.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{invalid_input, Error, Result};
use crate::measures::Dissimilarity;

/// Samples with a parallel list of class labels.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset<T> {
    samples: Vec<T>,
    labels: Vec<String>,
}

impl<T> LabeledDataset<T> {
    pub fn new(samples: Vec<T>, labels: Vec<String>) -> Result<Self> {
        if samples.len() != labels.len() {
            return Err(invalid_input(format!(
                "{} samples but {} labels",
                samples.len(),
                labels.len()
            )));
        }
        Ok(Self { samples, labels })
    }

    pub fn samples(&self) -> &[T] {
        &self.samples
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, &str)> {
        self.samples.iter().zip(self.labels.iter().map(String::as_str))
    }
}

fn check_k(k: usize, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidState("training set is empty".into()));
    }
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("k must be in [1, {n}], got {k}")));
    }
    Ok(())
}

/// Indices and distances of the `k` nearest entries, closest first and
/// lower index first on equal distance.
pub fn nearest_neighbors(distances: &[f64], k: usize) -> Vec<(usize, f64)> {
    let by_distance = |a: &(usize, f64), b: &(usize, f64)| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0));
    let mut order: Vec<(usize, f64)> = distances.iter().copied().enumerate().collect();
    if k == 0 {
        return Vec::new();
    }
    if k < order.len() {
        order.select_nth_unstable_by(k - 1, by_distance);
        order.truncate(k);
    }
    order.sort_by(by_distance);
    order
}

/// Majority vote among neighbors. Vote ties go to the smaller summed
/// distance, then to the lexicographically smaller label.
pub fn vote<'a>(neighbors: impl IntoIterator<Item = (&'a str, f64)>) -> Option<&'a str> {
    let mut tally: BTreeMap<&str, (usize, f64)> = BTreeMap::new();
    for (label, d) in neighbors {
        let entry = tally.entry(label).or_insert((0, 0.0));
        entry.0 += 1;
        entry.1 += d;
    }
    tally
        .into_iter()
        .min_by(|(la, (ca, sa)), (lb, (cb, sb))| {
            cb.cmp(ca).then(sa.total_cmp(sb)).then(la.cmp(lb))
        })
        .map(|(label, _)| label)
}

/// Classifies from a precomputed row of query-to-training distances.
pub fn knn_vote_from_distances<'a>(distances: &[f64], labels: &'a [String], k: usize) -> Result<&'a str> {
    check_k(k, labels.len())?;
    if distances.len() != labels.len() {
        return Err(invalid_input("distance row must be parallel to training labels"));
    }
    let neighbors = nearest_neighbors(distances, k);
    Ok(vote(neighbors.iter().map(|&(i, d)| (labels[i].as_str(), d))).expect("k >= 1"))
}

pub fn knn_classify<'a, T, D>(train: &'a LabeledDataset<T>, query: &T, k: usize, d: &D) -> Result<&'a str>
where
    D: Dissimilarity<T> + ?Sized,
{
    check_k(k, train.len())?;
    let distances: Vec<f64> = train.samples.iter().map(|x| d.dissimilarity(query, x)).collect();
    knn_vote_from_distances(&distances, &train.labels, k)
}

pub fn knn_regress<T, D>(train: &[T], targets: &[f64], query: &T, k: usize, d: &D) -> Result<f64>
where
    D: Dissimilarity<T> + ?Sized,
{
    check_k(k, train.len())?;
    if targets.len() != train.len() {
        return Err(invalid_input("targets must be parallel to training samples"));
    }
    let distances: Vec<f64> = train.iter().map(|x| d.dissimilarity(query, x)).collect();
    let neighbors = nearest_neighbors(&distances, k);
    Ok(neighbors.iter().map(|&(i, _)| targets[i]).sum::<f64>() / k as f64)
}

/// A trained k-NN classifier. Learning just stores the training set.
#[derive(Debug, Clone)]
pub struct KnnClassifier<T, D> {
    k: usize,
    dissimilarity: D,
    train: LabeledDataset<T>,
}

impl<T, D> KnnClassifier<T, D>
where
    T: Sync,
    D: Dissimilarity<T>,
{
    pub fn learn(train: LabeledDataset<T>, k: usize, dissimilarity: D) -> Result<Self> {
        check_k(k, train.len())?;
        Ok(Self {
            k,
            dissimilarity,
            train,
        })
    }

    pub fn predict(&self, query: &T) -> Result<String> {
        knn_classify(&self.train, query, self.k, &self.dissimilarity).map(str::to_owned)
    }

    /// Classifies every query; queries are processed in parallel.
    pub fn predict_all(&self, queries: &[T]) -> Result<Vec<String>> {
        queries.par_iter().map(|q| self.predict(q)).collect()
    }
}

/// Fraction of positions where `predicted` equals `truth`.
pub fn accuracy<L: PartialEq>(predicted: &[L], truth: &[L]) -> Result<f64> {
    if predicted.len() != truth.len() {
        return Err(invalid_input(format!(
            "{} predictions for {} labels",
            predicted.len(),
            truth.len()
        )));
    }
    if truth.is_empty() {
        return Err(invalid_input("cannot score an empty prediction set"));
    }
    let hits = predicted.iter().zip(truth).filter(|(p, t)| p == t).count();
    Ok(hits as f64 / truth.len() as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct QualityReport {
    /// Purity of every non-empty cluster, in cluster index order.
    pub per_cluster_purity: Vec<f64>,
    /// The worst purity.
    pub overall: f64,
}

/// Cluster purity: majority-class count over cluster size. Empty clusters are
/// skipped; the overall index is the minimum purity.
pub fn cluster_quality<L: Ord>(cluster_labels: &[usize], truth: &[L]) -> Result<QualityReport> {
    if cluster_labels.len() != truth.len() {
        return Err(invalid_input("truth labels must be parallel to the partition"));
    }
    let k = cluster_labels.iter().max().map_or(0, |m| m + 1);
    let mut counts: Vec<BTreeMap<&L, usize>> = vec![BTreeMap::new(); k];
    for (&c, t) in cluster_labels.iter().zip(truth) {
        *counts[c].entry(t).or_default() += 1;
    }
    let per_cluster_purity: Vec<f64> = counts
        .iter()
        .filter(|m| !m.is_empty())
        .map(|m| {
            let size: usize = m.values().sum();
            *m.values().max().unwrap() as f64 / size as f64
        })
        .collect();
    let overall = per_cluster_purity.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(QualityReport {
        overall: if per_cluster_purity.is_empty() { 0.0 } else { overall },
        per_cluster_purity,
    })
}
