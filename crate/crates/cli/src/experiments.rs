//! The two benchmark experiments: MinSOD cache-size sweep on sequence
//! clustering and k-NN graph classification across difficulty instances.

use std::time::Instant;

use patrec::classify::{cluster_quality, LabeledDataset};
use patrec::clustering::{kmeans, Initializer, KMeansConfig};
use patrec::graphs::{GedWeights, LabeledGraph, Matcher};
use patrec::measures::{Dtw, Euclidean};
use patrec::optimize::{knn_accuracy, GaConfig, WeightTuner};
use patrec::representatives::MinSod;
use patrec::{Result, Sequence};
use rayon::prelude::*;

use crate::results::ResultRow;

pub const CLUSTER_EXPERIMENT: &str = "cluster-seq";
pub const CLASSIFY_EXPERIMENT: &str = "classify-graphs";

#[derive(Debug, Clone, PartialEq)]
pub struct CacheSweep {
    pub cache_from: usize,
    pub cache_to: usize,
    pub repeats: usize,
    pub seed: u64,
}

impl Default for CacheSweep {
    fn default() -> Self {
        Self {
            cache_from: 50,
            cache_to: 1,
            repeats: 5,
            seed: 0,
        }
    }
}

impl CacheSweep {
    /// Cache sizes in sweep order, stepping by one toward `cache_to`.
    pub fn sizes(&self) -> Vec<usize> {
        if self.cache_from >= self.cache_to {
            (self.cache_to..=self.cache_from).rev().collect()
        } else {
            (self.cache_from..=self.cache_to).collect()
        }
    }
}

/// Worst-cluster purity of one 2-means run with MinSOD(DTW) representatives,
/// seeded with the first two samples.
pub fn cluster_quality_run(data: &LabeledDataset<Sequence>, cache: usize, seed: u64) -> Result<f64> {
    let prototype = MinSod::new(cache, Dtw::new(Euclidean), seed)?;
    let config = KMeansConfig {
        initializer: Initializer::FirstK,
        seed,
        ..KMeansConfig::new(2)
    };
    let partition = kmeans(data.samples(), &config, &prototype)?;
    Ok(cluster_quality(&partition.labels, data.labels())?.overall)
}

/// One row per cache size with mean, min and max quality over the repeats.
/// Repeat `r` clusters `datasets[r]` (or the single dataset given) with
/// MinSOD seed `sweep.seed + r`.
pub fn cluster_sequences(
    datasets: &[LabeledDataset<Sequence>],
    variant: &str,
    sweep: &CacheSweep,
    timing: bool,
) -> Result<Vec<ResultRow>> {
    if sweep.repeats == 0 || sweep.cache_from == 0 || sweep.cache_to == 0 {
        return Err(patrec::Error::InvalidParameter(
            "cache sizes and repeats must be positive".into(),
        ));
    }
    if datasets.len() != 1 && datasets.len() != sweep.repeats {
        return Err(patrec::Error::InvalidParameter(format!(
            "expected one dataset or one per repeat ({}), got {}",
            sweep.repeats,
            datasets.len()
        )));
    }
    let cells: Vec<(usize, u64)> = sweep
        .sizes()
        .into_iter()
        .flat_map(|cache| (0..sweep.repeats as u64).map(move |r| (cache, r)))
        .collect();
    let outcomes = cells
        .par_iter()
        .map(|&(cache, r)| {
            let start = Instant::now();
            let data = &datasets[r as usize % datasets.len()];
            let q = cluster_quality_run(data, cache, sweep.seed.wrapping_add(r))?;
            Ok((q, start.elapsed().as_secs_f64()))
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(sweep
        .sizes()
        .into_iter()
        .zip(outcomes.chunks(sweep.repeats))
        .map(|(cache, runs)| {
            let qs: Vec<f64> = runs.iter().map(|r| r.0).collect();
            ResultRow {
                experiment: CLUSTER_EXPERIMENT.into(),
                variant: variant.into(),
                param: cache,
                k: 2,
                seed: sweep.seed,
                repeats: sweep.repeats,
                metric: qs.iter().sum::<f64>() / qs.len() as f64,
                metric_min: qs.iter().copied().fold(f64::INFINITY, f64::min),
                metric_max: qs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                seconds: timing.then(|| runs.iter().map(|r| r.1).sum()),
            }
        })
        .collect())
}

pub struct GraphInstance {
    pub index: usize,
    pub train: LabeledDataset<LabeledGraph>,
    pub validation: LabeledDataset<LabeledGraph>,
    pub test: LabeledDataset<LabeledGraph>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassifySettings {
    pub ks: Vec<usize>,
    pub matcher: Matcher,
    /// Weight tuning configuration; `None` keeps all weights at one.
    pub tuning: Option<GaConfig>,
    pub seed: u64,
}

pub fn variant_name(matcher: &Matcher, tuned: bool) -> String {
    if tuned {
        format!("{}-tuned", matcher.name())
    } else {
        matcher.name().to_owned()
    }
}

/// One row per (instance, k), in instance order then `ks` order. The tuning
/// seed of instance `i` is `seed + i`.
pub fn classify_graphs(instance: &GraphInstance, settings: &ClassifySettings, timing: bool) -> Result<Vec<ResultRow>> {
    let tuner = match &settings.tuning {
        Some(_) => Some(WeightTuner::new(&instance.train, &instance.validation, settings.matcher)?),
        None => None,
    };
    let mut rows = Vec::with_capacity(settings.ks.len());
    for &k in &settings.ks {
        let start = Instant::now();
        let weights = match (&tuner, &settings.tuning) {
            (Some(tuner), Some(config)) => {
                let config = GaConfig {
                    seed: settings.seed.wrapping_add(instance.index as u64),
                    ..config.clone()
                };
                tuner.tune(k, &config)?.weights
            }
            _ => GedWeights::ones(),
        };
        let accuracy = knn_accuracy(&instance.train, &instance.test, settings.matcher, &weights, k)?;
        rows.push(ResultRow {
            experiment: CLASSIFY_EXPERIMENT.into(),
            variant: variant_name(&settings.matcher, settings.tuning.is_some()),
            param: instance.index,
            k,
            seed: settings.seed,
            repeats: 1,
            metric: accuracy,
            metric_min: accuracy,
            metric_max: accuracy,
            seconds: timing.then(|| start.elapsed().as_secs_f64()),
        });
    }
    Ok(rows)
}
