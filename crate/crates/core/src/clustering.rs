//! Generic k-means and BSAS clustering.
//!
//! Both algorithms only talk to samples through a [`Representative`], which
//! carries its own dissimilarity. Any (sample, representative, dissimilarity)
//! combination therefore works: points with centroids, sequences with MinSOD
//! over DTW, labeled graphs with MinSOD over a graph matcher, ...

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{invalid_input, invalid_param, Result};
use crate::measures::Point;
use crate::representatives::Representative;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Initializer {
    /// Seed representative `i` with sample `i`.
    #[default]
    FirstK,
    /// Seed with `k` distinct samples drawn uniformly.
    RandomK,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KMeansConfig {
    pub k: usize,
    pub max_iterations: usize,
    pub initializer: Initializer,
    pub seed: u64,
}

impl KMeansConfig {
    pub fn new(k: usize) -> Self {
        Self {
            k,
            max_iterations: 100,
            initializer: Initializer::FirstK,
            seed: 0,
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(invalid_input("cannot cluster an empty dataset"));
        }
        if self.k == 0 || self.k > n {
            return Err(invalid_param(format!(
                "k must be in [1, {n}], got {}",
                self.k
            )));
        }
        if self.max_iterations == 0 {
            return Err(invalid_param("max_iterations must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BsasConfig {
    /// Dissimilarity threshold for opening a new cluster.
    pub theta: f64,
    /// Maximum number of clusters.
    pub max_clusters: usize,
}

/// Cluster labels for every sample together with the final representatives.
#[derive(Debug, Clone)]
pub struct Partition<R> {
    pub labels: Vec<usize>,
    pub representatives: Vec<R>,
    pub iterations: usize,
    /// Whether labels stabilized before the iteration cap.
    pub converged: bool,
}

impl<R> Partition<R> {
    pub fn k(&self) -> usize {
        self.representatives.len()
    }

    /// Sample indices grouped by cluster.
    pub fn clusters(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.representatives.len()];
        for (i, &l) in self.labels.iter().enumerate() {
            out[l].push(i);
        }
        out
    }
}

pub fn initialize<T, R>(data: &[T], config: &KMeansConfig, prototype: &R) -> Result<Vec<R>>
where
    R: Representative<T>,
{
    config.validate(data.len())?;
    let seeds: Vec<usize> = match config.initializer {
        Initializer::FirstK => (0..config.k).collect(),
        Initializer::RandomK => {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            sample(&mut rng, data.len(), config.k).into_vec()
        }
    };
    seeds
        .into_iter()
        .enumerate()
        .map(|(i, s)| prototype.rebuild(i as u64, std::iter::once(&data[s])))
        .collect()
}

/// Nearest representative for every sample, lowest index on ties.
pub fn assign<T, R>(data: &[T], representatives: &[R]) -> Result<Vec<usize>>
where
    T: Sync,
    R: Representative<T>,
{
    data.par_iter()
        .map(|x| nearest(x, representatives).map(|(i, _)| i))
        .collect()
}

fn nearest<T, R: Representative<T>>(x: &T, representatives: &[R]) -> Result<(usize, f64)> {
    let mut best = (0, f64::INFINITY);
    for (i, r) in representatives.iter().enumerate() {
        let d = r.distance(x)?;
        if d < best.1 {
            best = (i, d);
        }
    }
    Ok(best)
}

/// Gives every empty cluster the sample lying farthest from its own
/// representative, taken from a cluster that can spare one.
fn repair_empty<T, R: Representative<T>>(
    data: &[T],
    representatives: &[R],
    labels: &mut [usize],
) -> Result<()> {
    let mut sizes = vec![0usize; representatives.len()];
    for &l in labels.iter() {
        sizes[l] += 1;
    }
    for cluster in 0..representatives.len() {
        if sizes[cluster] > 0 {
            continue;
        }
        let mut pick: Option<(usize, f64)> = None;
        for (j, x) in data.iter().enumerate() {
            if sizes[labels[j]] < 2 {
                continue;
            }
            let d = representatives[labels[j]].distance(x)?;
            if pick.is_none_or(|(_, best)| d > best) {
                pick = Some((j, d));
            }
        }
        let (j, _) = pick.expect("k <= n leaves a cluster with a spare sample");
        sizes[labels[j]] -= 1;
        sizes[cluster] += 1;
        labels[j] = cluster;
    }
    Ok(())
}

fn update<T, R: Representative<T>>(data: &[T], labels: &[usize], prototype: &R, k: usize) -> Result<Vec<R>> {
    (0..k)
        .map(|c| {
            let members = labels
                .iter()
                .zip(data)
                .filter(|(&l, _)| l == c)
                .map(|(_, x)| x);
            prototype.rebuild(c as u64, members)
        })
        .collect()
}

pub fn kmeans<T, R>(data: &[T], config: &KMeansConfig, prototype: &R) -> Result<Partition<R>>
where
    T: Sync,
    R: Representative<T>,
{
    kmeans_observed(data, config, prototype, |_, _, _| {})
}

/// [`kmeans`], calling `observer(iteration, labels, representatives)` after
/// every update step.
pub fn kmeans_observed<T, R, F>(
    data: &[T],
    config: &KMeansConfig,
    prototype: &R,
    mut observer: F,
) -> Result<Partition<R>>
where
    T: Sync,
    R: Representative<T>,
    F: FnMut(usize, &[usize], &[R]),
{
    let mut representatives = initialize(data, config, prototype)?;
    let mut previous: Option<Vec<usize>> = None;

    for iteration in 1..=config.max_iterations {
        let mut labels = assign(data, &representatives)?;
        repair_empty(data, &representatives, &mut labels)?;
        if previous.as_ref() == Some(&labels) {
            return Ok(Partition {
                labels,
                representatives,
                iterations: iteration,
                converged: true,
            });
        }
        representatives = update(data, &labels, prototype, config.k)?;
        observer(iteration, &labels, &representatives);
        previous = Some(labels);
    }

    Ok(Partition {
        labels: previous.expect("at least one iteration ran"),
        representatives,
        iterations: config.max_iterations,
        converged: false,
    })
}

/// Basic sequential algorithmic scheme: one pass in presentation order.
pub fn bsas<T, R>(data: &[T], config: &BsasConfig, prototype: &R) -> Result<Partition<R>>
where
    R: Representative<T>,
{
    if data.is_empty() {
        return Err(invalid_input("cannot cluster an empty dataset"));
    }
    if !(config.theta > 0.0) {
        return Err(invalid_param(format!("theta must be positive, got {}", config.theta)));
    }
    if config.max_clusters == 0 {
        return Err(invalid_param("max_clusters must be at least 1"));
    }

    let mut representatives = vec![prototype.rebuild(0, std::iter::once(&data[0]))?];
    let mut labels = vec![0];
    for x in &data[1..] {
        let (near, d) = nearest(x, &representatives)?;
        let target = if d < config.theta || representatives.len() == config.max_clusters {
            representatives[near].insert(x)?;
            near
        } else {
            let id = representatives.len();
            representatives.push(prototype.rebuild(id as u64, std::iter::once(x))?);
            id
        };
        labels.push(target);
    }
    Ok(Partition {
        labels,
        representatives,
        iterations: 1,
        converged: true,
    })
}

/// Within-cluster sum of squared Euclidean distances to the given centroids.
pub fn wcss(data: &[Point], labels: &[usize], centroids: &[Point]) -> Result<f64> {
    if data.len() != labels.len() {
        return Err(invalid_input("labels must be parallel to data"));
    }
    let mut total = 0.0;
    for (x, &l) in data.iter().zip(labels) {
        let c = centroids
            .get(l)
            .ok_or_else(|| invalid_input(format!("label {l} has no centroid")))?;
        if c.dim() != x.dim() {
            return Err(invalid_input("dimension mismatch against centroid"));
        }
        total += x.iter().zip(c.iter()).map(|(a, b)| (a - b) * (a - b)).sum::<f64>();
    }
    Ok(total)
}
