//! Seeded synthetic benchmarks: two-class Gaussian sequence sets and a graded
//! family of two-class labeled-graph classification problems.
//!
//! Class `c` of either generator is labeled `"0"` or `"1"`. Sequence sets
//! alternate between the classes (`0, 1, 0, 1, ...`), so a first-k
//! initialization sees one sample of each; graph sets are shuffled under the
//! seed.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::classify::LabeledDataset;
use crate::error::{invalid_param, Result};
use crate::graphs::{Edge, LabeledGraph};
use crate::measures::{Point, Sequence};

pub const CLASS_LABELS: [&str; 2] = ["0", "1"];

/// Class means placed symmetrically about `center` along the main diagonal,
/// `separation` apart.
fn class_means(center: f64, separation: f64, dim: usize) -> [Vec<f64>; 2] {
    let offset = separation / 2.0 / (dim as f64).sqrt();
    [vec![center - offset; dim], vec![center + offset; dim]]
}

fn gaussian_point(rng: &mut impl Rng, mean: &[f64], noise: &Normal<f64>, clamp: Option<(f64, f64)>) -> Point {
    let coords = mean
        .iter()
        .map(|m| {
            let v = m + noise.sample(rng);
            match clamp {
                Some((lo, hi)) => v.clamp(lo, hi),
                None => v,
            }
        })
        .collect();
    Point::new(coords).expect("finite Gaussian draw")
}

#[derive(Debug, Clone, PartialEq)]
pub struct SequenceProblemSpec {
    pub per_class_count: usize,
    pub dim: usize,
    pub length_range: RangeInclusive<usize>,
    /// Euclidean distance between the two class means.
    pub mean_separation: f64,
    /// Per-coordinate variance of the spherical covariance.
    pub variance: f64,
    pub seed: u64,
}

impl Default for SequenceProblemSpec {
    fn default() -> Self {
        Self::easy(0)
    }
}

impl SequenceProblemSpec {
    /// Classes that MinSOD clusters cleanly unless the cache is tiny.
    pub fn easy(seed: u64) -> Self {
        Self {
            per_class_count: 150,
            dim: 5,
            length_range: 20..=40,
            mean_separation: 2.2,
            variance: 1.0,
            seed,
        }
    }

    /// Same means as [`easy`](Self::easy) with more overlap.
    pub fn hard(seed: u64) -> Self {
        Self {
            variance: 1.5,
            ..Self::easy(seed)
        }
    }

    pub fn preset(name: &str, seed: u64) -> Option<Self> {
        match name {
            "easy" => Some(Self::easy(seed)),
            "hard" => Some(Self::hard(seed)),
            _ => None,
        }
    }

    pub fn class_means(&self) -> [Vec<f64>; 2] {
        class_means(0.0, self.mean_separation, self.dim)
    }

    fn validate(&self) -> Result<()> {
        if self.per_class_count == 0 || self.dim == 0 {
            return Err(invalid_param("per-class count and dimension must be positive"));
        }
        if self.length_range.is_empty() || *self.length_range.start() == 0 {
            return Err(invalid_param("sequence lengths must be a non-empty range of positive values"));
        }
        if !(self.mean_separation.is_finite() && self.mean_separation >= 0.0) {
            return Err(invalid_param("mean separation must be finite and nonnegative"));
        }
        if !(self.variance.is_finite() && self.variance > 0.0) {
            return Err(invalid_param("variance must be finite and positive"));
        }
        Ok(())
    }
}

pub fn gen_sequences(spec: &SequenceProblemSpec) -> Result<LabeledDataset<Sequence>> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let noise = Normal::new(0.0, spec.variance.sqrt()).map_err(|e| invalid_param(e.to_string()))?;
    let means = spec.class_means();

    let classes: Vec<usize> = (0..2 * spec.per_class_count).map(|i| i % 2).collect();
    let mut samples = Vec::with_capacity(classes.len());
    for &c in &classes {
        let len = rng.random_range(spec.length_range.clone());
        let items = (0..len).map(|_| gaussian_point(&mut rng, &means[c], &noise, None)).collect();
        samples.push(Sequence::new(items)?);
    }
    let labels = classes.iter().map(|&c| CLASS_LABELS[c].to_owned()).collect();
    LabeledDataset::new(samples, labels)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphProblemSpec {
    /// Difficulty step in `1..=instance_count`; higher is easier.
    pub instance_index: usize,
    pub instance_count: usize,
    /// Graphs per set; must be even so classes balance exactly.
    pub per_set_count: usize,
    pub order: usize,
    pub size_range: RangeInclusive<usize>,
    pub label_dim: usize,
    /// Class-mean separation reached at the last instance.
    pub max_separation: f64,
    /// Per-coordinate standard deviation of the label Gaussians.
    pub label_sigma: f64,
    /// Probability that a walk step jumps to a uniform vertex instead of a
    /// nearby one.
    pub jump_prob: f64,
    pub seed: u64,
}

impl Default for GraphProblemSpec {
    fn default() -> Self {
        Self {
            instance_index: 1,
            instance_count: 15,
            per_set_count: 300,
            order: 30,
            size_range: 40..=75,
            label_dim: 5,
            max_separation: 0.25,
            label_sigma: 0.2,
            jump_prob: 0.3,
            seed: 0,
        }
    }
}

impl GraphProblemSpec {
    pub fn instance(index: usize, seed: u64) -> Self {
        Self {
            instance_index: index,
            seed,
            ..Self::default()
        }
    }

    /// Class-mean separation of this instance: linear in the index.
    pub fn separation(&self) -> f64 {
        self.max_separation * self.instance_index as f64 / self.instance_count as f64
    }

    pub fn class_means(&self) -> [Vec<f64>; 2] {
        class_means(0.5, self.separation(), self.label_dim)
    }

    fn validate(&self) -> Result<()> {
        if self.instance_count == 0 || !(1..=self.instance_count).contains(&self.instance_index) {
            return Err(invalid_param(format!(
                "instance index must be in 1..={}, got {}",
                self.instance_count, self.instance_index
            )));
        }
        if self.per_set_count == 0 || !self.per_set_count.is_multiple_of(2) {
            return Err(invalid_param("per-set count must be positive and even"));
        }
        if self.order < 2 || self.label_dim == 0 {
            return Err(invalid_param("order must be at least 2 and label dimension positive"));
        }
        let max_size = self.order * (self.order - 1) / 2;
        if self.size_range.is_empty() || *self.size_range.end() > max_size {
            return Err(invalid_param(format!(
                "size range must be non-empty and at most {max_size} for order {}",
                self.order
            )));
        }
        if !(self.max_separation.is_finite() && self.max_separation >= 0.0) {
            return Err(invalid_param("maximum separation must be finite and nonnegative"));
        }
        if !(self.label_sigma.is_finite() && self.label_sigma > 0.0) {
            return Err(invalid_param("label sigma must be finite and positive"));
        }
        if !(0.0..=1.0).contains(&self.jump_prob) {
            return Err(invalid_param("jump probability must be in [0, 1]"));
        }
        Ok(())
    }
}

/// Simple undirected topology from a seeded first-order Markov walk: each
/// step moves to a vertex at offset ±1..±3 from the current one, or with
/// `jump_prob` to a uniform vertex, and the traversed pair becomes an edge
/// unless already present. Stops once `size` edges exist.
fn markov_walk_topology(rng: &mut impl Rng, order: usize, size: usize, jump_prob: f64) -> Vec<(usize, usize)> {
    let mut present = vec![false; order * order];
    let mut edges = Vec::with_capacity(size);
    let mut current = rng.random_range(0..order);
    while edges.len() < size {
        let next = if rng.random_bool(jump_prob) {
            rng.random_range(0..order)
        } else {
            let step = rng.random_range(1..=3.min(order - 1));
            if rng.random_bool(0.5) {
                (current + step) % order
            } else {
                (current + order - step) % order
            }
        };
        if next != current {
            let (u, v) = (current.min(next), current.max(next));
            if !present[u * order + v] {
                present[u * order + v] = true;
                edges.push((u, v));
            }
        }
        current = next;
    }
    edges
}

fn gen_graph_set(spec: &GraphProblemSpec, rng: &mut ChaCha8Rng) -> Result<LabeledDataset<LabeledGraph>> {
    let noise = Normal::new(0.0, spec.label_sigma).map_err(|e| invalid_param(e.to_string()))?;
    let means = spec.class_means();
    let mut classes: Vec<usize> = (0..2)
        .flat_map(|c| std::iter::repeat_n(c, spec.per_set_count / 2))
        .collect();
    classes.shuffle(rng);

    let unit = Some((0.0, 1.0));
    let mut graphs = Vec::with_capacity(classes.len());
    for &c in &classes {
        let size = rng.random_range(spec.size_range.clone());
        let topology = markov_walk_topology(rng, spec.order, size, spec.jump_prob);
        let vertices = (0..spec.order)
            .map(|_| gaussian_point(rng, &means[c], &noise, unit))
            .collect();
        let edges = topology
            .into_iter()
            .map(|(source, target)| Edge {
                source,
                target,
                label: gaussian_point(rng, &means[c], &noise, unit),
            })
            .collect();
        graphs.push(LabeledGraph::new(vertices, edges, false)?);
    }
    let labels = classes.iter().map(|&c| CLASS_LABELS[c].to_owned()).collect();
    LabeledDataset::new(graphs, labels)
}

/// Training, validation and test sets of one problem instance. Each set
/// draws from its own random stream, so the three are independent and
/// regenerating any instance does not depend on the others.
pub fn gen_graph_instance(
    spec: &GraphProblemSpec,
) -> Result<(
    LabeledDataset<LabeledGraph>,
    LabeledDataset<LabeledGraph>,
    LabeledDataset<LabeledGraph>,
)> {
    spec.validate()?;
    let mut sets = (0..3u64).map(|set| {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        rng.set_stream(spec.instance_index as u64 * 3 + set);
        gen_graph_set(spec, &mut rng)
    });
    let train = sets.next().expect("three sets")?;
    let validation = sets.next().expect("three sets")?;
    let test = sets.next().expect("three sets")?;
    Ok((train, validation, test))
}
