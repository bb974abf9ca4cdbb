//! A classic generational genetic algorithm and its use for tuning graph
//! edit weights against k-NN validation accuracy.
//!
//! Operators: binary tournament selection, one-point crossover, per-gene
//! uniform-reset mutation and elitism.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::classify::{accuracy, knn_vote_from_distances, LabeledDataset};
use crate::error::{invalid_input, invalid_param, Result};
use crate::graphs::{GedWeights, LabeledGraph, Matcher, PairSummary};

/// Shape of the individuals: real genes in `[0, 1]` or integer genes in
/// `0..alphabet`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenomeSpec {
    Real { length: usize },
    Discrete { length: usize, alphabet: u32 },
}

impl GenomeSpec {
    pub fn len(&self) -> usize {
        match *self {
            GenomeSpec::Real { length } | GenomeSpec::Discrete { length, .. } => length,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn random(&self, rng: &mut impl Rng) -> Genome {
        match *self {
            GenomeSpec::Real { length } => Genome::Real((0..length).map(|_| rng.random::<f64>()).collect()),
            GenomeSpec::Discrete { length, alphabet } => {
                Genome::Discrete((0..length).map(|_| rng.random_range(0..alphabet)).collect())
            }
        }
    }

    pub fn admits(&self, genome: &Genome) -> bool {
        match (*self, genome) {
            (GenomeSpec::Real { length }, Genome::Real(g)) => {
                g.len() == length && g.iter().all(|v| (0.0..=1.0).contains(v))
            }
            (GenomeSpec::Discrete { length, alphabet }, Genome::Discrete(g)) => {
                g.len() == length && g.iter().all(|v| *v < alphabet)
            }
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Genome {
    Real(Vec<f64>),
    Discrete(Vec<u32>),
}

impl Genome {
    pub fn len(&self) -> usize {
        match self {
            Genome::Real(g) => g.len(),
            Genome::Discrete(g) => g.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn as_real(&self) -> Option<&[f64]> {
        match self {
            Genome::Real(g) => Some(g),
            Genome::Discrete(_) => None,
        }
    }

    pub fn as_discrete(&self) -> Option<&[u32]> {
        match self {
            Genome::Discrete(g) => Some(g),
            Genome::Real(_) => None,
        }
    }

    fn crossover(&self, other: &Genome, cut: usize) -> (Genome, Genome) {
        fn splice<T: Clone>(a: &[T], b: &[T], cut: usize) -> (Vec<T>, Vec<T>) {
            let left = a[..cut].iter().chain(&b[cut..]).cloned().collect();
            let right = b[..cut].iter().chain(&a[cut..]).cloned().collect();
            (left, right)
        }
        match (self, other) {
            (Genome::Real(a), Genome::Real(b)) => {
                let (l, r) = splice(a, b, cut);
                (Genome::Real(l), Genome::Real(r))
            }
            (Genome::Discrete(a), Genome::Discrete(b)) => {
                let (l, r) = splice(a, b, cut);
                (Genome::Discrete(l), Genome::Discrete(r))
            }
            _ => unreachable!("population shares one genome kind"),
        }
    }

    fn mutate(&mut self, spec: &GenomeSpec, prob: f64, rng: &mut impl Rng) {
        match (self, *spec) {
            (Genome::Real(g), GenomeSpec::Real { .. }) => {
                for v in g.iter_mut() {
                    if rng.random_bool(prob) {
                        *v = rng.random::<f64>();
                    }
                }
            }
            (Genome::Discrete(g), GenomeSpec::Discrete { alphabet, .. }) => {
                for v in g.iter_mut() {
                    if rng.random_bool(prob) {
                        *v = rng.random_range(0..alphabet);
                    }
                }
            }
            _ => unreachable!("population shares one genome kind"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaConfig {
    pub population_size: usize,
    pub generations: usize,
    pub crossover_prob: f64,
    /// Per-gene probability of a uniform reset.
    pub mutation_prob: f64,
    pub elite_count: usize,
    pub seed: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population_size: 30,
            generations: 50,
            crossover_prob: 0.9,
            mutation_prob: 0.1,
            elite_count: 1,
            seed: 0,
        }
    }
}

impl GaConfig {
    fn validate(&self) -> Result<()> {
        if self.population_size == 0 || self.generations == 0 {
            return Err(invalid_param("population size and generations must be positive"));
        }
        for (name, p) in [("crossover", self.crossover_prob), ("mutation", self.mutation_prob)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(invalid_param(format!("{name} probability must be in [0, 1], got {p}")));
            }
        }
        if self.elite_count >= self.population_size {
            return Err(invalid_param("elite count must be smaller than the population"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaOutcome {
    pub best: Genome,
    pub best_fitness: f64,
    /// Best fitness in the population: entry 0 is the initial population,
    /// entry `g` the population after generation `g`.
    pub history: Vec<f64>,
}

fn fitness_key(f: f64) -> f64 {
    if f.is_nan() {
        f64::NEG_INFINITY
    } else {
        f
    }
}

fn evaluate<F>(genomes: Vec<Genome>, fitness: &F) -> Vec<(Genome, f64)>
where
    F: Fn(&Genome) -> f64 + Sync,
{
    let scores: Vec<f64> = genomes.par_iter().map(|g| fitness_key(fitness(g))).collect();
    genomes.into_iter().zip(scores).collect()
}

fn best_of(population: &[(Genome, f64)]) -> usize {
    // Highest fitness, earliest index on ties.
    let mut best = 0;
    for (i, (_, f)) in population.iter().enumerate() {
        if *f > population[best].1 {
            best = i;
        }
    }
    best
}

/// Maximizes `fitness` over genomes of shape `spec`.
pub fn ga_run<F>(config: &GaConfig, spec: GenomeSpec, fitness: F) -> Result<GaOutcome>
where
    F: Fn(&Genome) -> f64 + Sync,
{
    ga_run_seeded(config, spec, Vec::new(), fitness)
}

/// [`ga_run`] with `injected` individuals placed in the initial population
/// ahead of the random ones.
pub fn ga_run_seeded<F>(config: &GaConfig, spec: GenomeSpec, injected: Vec<Genome>, fitness: F) -> Result<GaOutcome>
where
    F: Fn(&Genome) -> f64 + Sync,
{
    config.validate()?;
    if spec.is_empty() {
        return Err(invalid_param("genome length must be positive"));
    }
    if let GenomeSpec::Discrete { alphabet: 0, .. } = spec {
        return Err(invalid_param("alphabet must be non-empty"));
    }
    if injected.len() > config.population_size {
        return Err(invalid_param("more injected individuals than population slots"));
    }
    if injected.iter().any(|g| !spec.admits(g)) {
        return Err(invalid_input("injected genome does not match the genome spec"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut initial = injected;
    while initial.len() < config.population_size {
        initial.push(spec.random(&mut rng));
    }
    let mut population = evaluate(initial, &fitness);
    let mut history = vec![population[best_of(&population)].1];

    for _ in 0..config.generations {
        let mut ranked: Vec<usize> = (0..population.len()).collect();
        ranked.sort_by(|&a, &b| population[b].1.total_cmp(&population[a].1).then(a.cmp(&b)));
        let elites: Vec<(Genome, f64)> = ranked[..config.elite_count]
            .iter()
            .map(|&i| population[i].clone())
            .collect();

        let slots = config.population_size - elites.len();
        let mut offspring = Vec::with_capacity(slots + 1);
        while offspring.len() < slots {
            let a = tournament(&population, &mut rng);
            let b = tournament(&population, &mut rng);
            let (mut c1, mut c2) = if spec.len() > 1 && rng.random_bool(config.crossover_prob) {
                let cut = rng.random_range(1..spec.len());
                population[a].0.crossover(&population[b].0, cut)
            } else {
                (population[a].0.clone(), population[b].0.clone())
            };
            c1.mutate(&spec, config.mutation_prob, &mut rng);
            c2.mutate(&spec, config.mutation_prob, &mut rng);
            offspring.push(c1);
            offspring.push(c2);
        }
        offspring.truncate(slots);

        population = elites;
        population.extend(evaluate(offspring, &fitness));
        history.push(population[best_of(&population)].1);
    }

    let (best, best_fitness) = population.swap_remove(best_of(&population));
    Ok(GaOutcome {
        best,
        best_fitness,
        history,
    })
}

fn tournament(population: &[(Genome, f64)], rng: &mut impl Rng) -> usize {
    let a = rng.random_range(0..population.len());
    let b = rng.random_range(0..population.len());
    if population[b].1 > population[a].1 {
        b
    } else {
        a
    }
}

/// Maps real genes in `[0, 1]` to edit weights for `matcher`. All-zero
/// genes have no valid weighting and yield `None`.
pub fn decode_weights(matcher: &Matcher, genes: &[f64]) -> Option<GedWeights> {
    if genes.len() != matcher.weight_count() {
        return None;
    }
    GedWeights::from_slice(genes).ok()
}

#[derive(Debug, Clone, PartialEq)]
pub struct TuningOutcome {
    pub weights: GedWeights,
    pub validation_accuracy: f64,
    pub history: Vec<f64>,
}

/// Validation-by-training distance table, precomputed where the matcher
/// allows it.
struct DistanceTable<'a> {
    matcher: Matcher,
    train: &'a LabeledDataset<LabeledGraph>,
    queries: &'a LabeledDataset<LabeledGraph>,
    summaries: Option<Vec<Vec<PairSummary>>>,
}

impl<'a> DistanceTable<'a> {
    fn new(matcher: Matcher, train: &'a LabeledDataset<LabeledGraph>, queries: &'a LabeledDataset<LabeledGraph>) -> Self {
        let summaries = queries
            .samples()
            .par_iter()
            .map(|q| {
                train
                    .samples()
                    .iter()
                    .map(|t| matcher.precompute(q, t))
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>();
        Self {
            matcher,
            train,
            queries,
            summaries,
        }
    }

    fn row(&self, q: usize, w: &GedWeights) -> Vec<f64> {
        match &self.summaries {
            Some(rows) if rows[q].iter().all(|s| s.supports(w)) => rows[q].iter().map(|s| s.evaluate(w)).collect(),
            _ => {
                let query = &self.queries.samples()[q];
                self.train
                    .samples()
                    .iter()
                    .map(|t| self.matcher.distance(query, t, w))
                    .collect()
            }
        }
    }

    fn accuracy(&self, w: &GedWeights, k: usize) -> Result<f64> {
        let predicted = (0..self.queries.len())
            .map(|q| knn_vote_from_distances(&self.row(q, w), self.train.labels(), k).map(str::to_owned))
            .collect::<Result<Vec<_>>>()?;
        accuracy(&predicted, self.queries.labels())
    }
}

/// Precomputed validation-by-training table for repeated weight tuning, e.g.
/// over several `k`.
pub struct WeightTuner<'a> {
    table: DistanceTable<'a>,
}

impl<'a> WeightTuner<'a> {
    pub fn new(
        train: &'a LabeledDataset<LabeledGraph>,
        validation: &'a LabeledDataset<LabeledGraph>,
        matcher: Matcher,
    ) -> Result<Self> {
        if train.is_empty() || validation.is_empty() {
            return Err(invalid_input("training and validation sets must be non-empty"));
        }
        Ok(Self {
            table: DistanceTable::new(matcher, train, validation),
        })
    }

    /// Validation accuracy of fixed weights.
    pub fn accuracy(&self, weights: &GedWeights, k: usize) -> Result<f64> {
        self.check_k(k)?;
        self.table.accuracy(weights, k)
    }

    fn check_k(&self, k: usize) -> Result<()> {
        let n = self.table.train.len();
        if k == 0 || k > n {
            return Err(invalid_param(format!("k must be in [1, {n}], got {k}")));
        }
        Ok(())
    }

    /// Runs the genetic algorithm; fitness is the k-NN validation accuracy.
    /// The all-ones weighting is part of the initial population.
    pub fn tune(&self, k: usize, config: &GaConfig) -> Result<TuningOutcome> {
        self.check_k(k)?;
        let matcher = self.table.matcher;
        let spec = GenomeSpec::Real {
            length: matcher.weight_count(),
        };
        let baseline = Genome::Real(vec![1.0; matcher.weight_count()]);
        let outcome = ga_run_seeded(config, spec, vec![baseline], |g| {
            let genes = g.as_real().expect("real-coded genome");
            match decode_weights(&matcher, genes) {
                Some(w) => self.table.accuracy(&w, k).unwrap_or(0.0),
                None => 0.0,
            }
        })?;
        let genes = outcome.best.as_real().expect("real-coded genome");
        let weights = decode_weights(&matcher, genes).unwrap_or_else(GedWeights::ones);
        Ok(TuningOutcome {
            weights,
            validation_accuracy: outcome.best_fitness,
            history: outcome.history,
        })
    }
}

/// Tunes the matcher's edit weights against k-NN accuracy on `validation`
/// with `train` as the reference set. See [`WeightTuner::tune`].
pub fn tune_ged_weights(
    train: &LabeledDataset<LabeledGraph>,
    validation: &LabeledDataset<LabeledGraph>,
    matcher: Matcher,
    k: usize,
    config: &GaConfig,
) -> Result<TuningOutcome> {
    WeightTuner::new(train, validation, matcher)?.tune(k, config)
}

/// k-NN accuracy of `queries` against `train` under fixed weights.
pub fn knn_accuracy(
    train: &LabeledDataset<LabeledGraph>,
    queries: &LabeledDataset<LabeledGraph>,
    matcher: Matcher,
    weights: &GedWeights,
    k: usize,
) -> Result<f64> {
    let predicted = queries
        .samples()
        .par_iter()
        .map(|q| {
            let row: Vec<f64> = train.samples().iter().map(|t| matcher.distance(q, t, weights)).collect();
            knn_vote_from_distances(&row, train.labels(), k).map(str::to_owned)
        })
        .collect::<Result<Vec<_>>>()?;
    accuracy(&predicted, queries.labels())
}
