//! Comma-separated experiment results and their summary statistics.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

/// One result line. Sequence clustering rows aggregate the repeats of one
/// cache size (`param`); graph classification rows hold one
/// (instance, k) cell, with `metric_min == metric_max == metric`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub experiment: String,
    /// Preset name for clustering, matcher name (plus `-tuned`) for
    /// classification.
    pub variant: String,
    /// Cache size or instance index.
    pub param: usize,
    pub k: usize,
    /// Base seed; repeat `r` ran with `seed + r`.
    pub seed: u64,
    pub repeats: usize,
    pub metric: f64,
    pub metric_min: f64,
    pub metric_max: f64,
    /// Wall-clock seconds, only filled in when timing is requested.
    pub seconds: Option<f64>,
}

pub fn write_results<W: Write>(rows: &[ResultRow], out: W) -> csv::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn read_results<R: Read>(input: R) -> Result<Vec<ResultRow>, String> {
    let mut reader = csv::Reader::from_reader(input);
    let mut rows = Vec::new();
    for (i, record) in reader.deserialize::<ResultRow>().enumerate() {
        let row = record.map_err(|e| format!("row {}: {e}", i + 1))?;
        if !(0.0..=1.0).contains(&row.metric) {
            return Err(format!("row {}: metric {} outside [0, 1]", i + 1, row.metric));
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Ranks starting at 1, ties sharing their average rank.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        let rank = (start + end + 1) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = rank;
        }
        start = end;
    }
    ranks
}

fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx).powi(2);
        syy += (b - my).powi(2);
    }
    if sxx == 0.0 || syy == 0.0 {
        None
    } else {
        Some(sxy / (sxx * syy).sqrt())
    }
}

/// Spearman rank correlation; `None` when fewer than two points or either
/// side is constant.
pub fn spearman(x: &[f64], y: &[f64]) -> Option<f64> {
    if x.len() != y.len() || x.len() < 2 {
        return None;
    }
    pearson(&average_ranks(x), &average_ranks(y))
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupSummary {
    pub experiment: String,
    pub variant: String,
    pub k: usize,
    /// `(param, mean metric, min, max)` sorted by param.
    pub per_param: Vec<(usize, f64, f64, f64)>,
    pub spearman: Option<f64>,
}

/// Groups rows by (experiment, variant, k) and correlates param with the
/// per-param mean metric.
pub fn summarize(rows: &[ResultRow]) -> Vec<GroupSummary> {
    let mut groups: BTreeMap<(String, String, usize), BTreeMap<usize, Vec<&ResultRow>>> = BTreeMap::new();
    for row in rows {
        groups
            .entry((row.experiment.clone(), row.variant.clone(), row.k))
            .or_default()
            .entry(row.param)
            .or_default()
            .push(row);
    }
    groups
        .into_iter()
        .map(|((experiment, variant, k), params)| {
            let per_param: Vec<(usize, f64, f64, f64)> = params
                .into_iter()
                .map(|(param, rows)| {
                    let mean = rows.iter().map(|r| r.metric).sum::<f64>() / rows.len() as f64;
                    let min = rows.iter().map(|r| r.metric_min).fold(f64::INFINITY, f64::min);
                    let max = rows.iter().map(|r| r.metric_max).fold(f64::NEG_INFINITY, f64::max);
                    (param, mean, min, max)
                })
                .collect();
            let xs: Vec<f64> = per_param.iter().map(|p| p.0 as f64).collect();
            let ys: Vec<f64> = per_param.iter().map(|p| p.1).collect();
            GroupSummary {
                experiment,
                variant,
                k,
                spearman: spearman(&xs, &ys),
                per_param,
            }
        })
        .collect()
}
