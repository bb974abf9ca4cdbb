//! Generic pattern recognition over structured data.
//!
//! The crate is organised around three pluggable concepts:
//!
//! * [`Dissimilarity`](measures::Dissimilarity): a nonnegative comparison of
//!   two objects of the same domain (vectors, sequences, labeled graphs, ...).
//! * [`Representative`](representatives::Representative): a summary of a
//!   cluster that can be compared against a sample, e.g. the centroid or the
//!   cache-bounded MinSOD element.
//! * Algorithms that are written once against those traits: generic k-means
//!   and BSAS clustering, k-NN classification and regression, graph matching
//!   and a genetic optimizer used to tune matching weights.
//!
//! The [`synthgen`] module produces the seeded benchmark datasets and
//! [`formats`] reads and writes them as plain text.

pub mod classify;
pub mod clustering;
mod error;
pub mod formats;
pub mod graphs;
pub mod measures;
pub mod optimize;
pub mod representatives;
pub mod synthgen;

pub use error::{Error, Result};
pub use measures::{Dissimilarity, Point, Sequence};
