//! Experiment harness: dataset generation, the sequence clustering and graph
//! classification benchmarks, and result evaluation.

pub mod commands;
pub mod experiments;
pub mod results;
