//! Dissimilarity and similarity functions.
//!
//! Every dissimilarity implements [`Dissimilarity`] for the object domain it
//! understands. The trait methods assume well-formed operands (for instance
//! points of equal dimension); the free functions of the same name validate
//! their inputs and report an [`Error`] instead.

mod dtw;
mod kernels;

pub use dtw::{dtw, Dtw};
pub use kernels::{
    kernel_from_dissimilarity, vector_kernel, DissimilarityKernel, KernelKind, VectorKernel,
};

use std::ops::Deref;

use crate::error::{invalid_input, invalid_param, Error, Result};

/// A nonnegative comparison `d(a, b)` between two objects of one domain.
///
/// Implementations shipped with this crate satisfy `d(a, a) = 0`. Symmetry
/// and the triangle inequality are not part of the contract.
pub trait Dissimilarity<T: ?Sized>: Send + Sync {
    fn dissimilarity(&self, a: &T, b: &T) -> f64;
}

impl<T: ?Sized, F> Dissimilarity<T> for F
where
    F: Fn(&T, &T) -> f64 + Send + Sync,
{
    fn dissimilarity(&self, a: &T, b: &T) -> f64 {
        self(a, b)
    }
}

/// A finite real-valued vector of dimension at least one.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(invalid_input("point must have at least one coordinate"));
        }
        if let Some(bad) = coords.iter().find(|c| !c.is_finite()) {
            return Err(invalid_input(format!("non-finite coordinate {bad}")));
        }
        Ok(Self(coords))
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        Self(vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for Point {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = Error;

    fn try_from(coords: Vec<f64>) -> Result<Self> {
        Point::new(coords)
    }
}

/// A non-empty ordered list of points sharing one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Sequence(Vec<Point>);

impl Sequence {
    pub fn new(items: Vec<Point>) -> Result<Self> {
        let Some(first) = items.first() else {
            return Err(invalid_input("sequence must contain at least one item"));
        };
        let dim = first.dim();
        if items.iter().any(|p| p.dim() != dim) {
            return Err(invalid_input("sequence items have mixed dimensions"));
        }
        Ok(Self(items))
    }

    pub fn items(&self) -> &[Point] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.0[0].dim()
    }
}

fn check_dims(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() != b.len() {
        return Err(invalid_input(format!(
            "dimension mismatch: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    Ok(())
}

pub fn euclidean(a: &[f64], b: &[f64]) -> Result<f64> {
    check_dims(a, b)?;
    Ok(euclidean_unchecked(a, b))
}

#[inline]
fn euclidean_unchecked(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub fn minkowski(a: &[f64], b: &[f64], p: f64) -> Result<f64> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(invalid_param(format!("Minkowski order must be >= 1, got {p}")));
    }
    check_dims(a, b)?;
    Ok(minkowski_unchecked(a, b, p))
}

fn minkowski_unchecked(a: &[f64], b: &[f64], p: f64) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs().powf(p))
        .sum::<f64>()
        .powf(p.recip())
}

/// Number of differing positions between two `{0, 1}` vectors.
pub fn hamming(a: &[u8], b: &[u8]) -> Result<usize> {
    if a.len() != b.len() {
        return Err(invalid_input(format!(
            "length mismatch: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    if let Some(bad) = a.iter().chain(b).find(|&&v| v > 1) {
        return Err(invalid_input(format!("non-binary entry {bad}")));
    }
    Ok(a.iter().zip(b).filter(|(x, y)| x != y).count())
}

/// Unit-cost edit distance (insertions, deletions, substitutions).
pub fn levenshtein<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    if a.is_empty() {
        return b.len();
    }
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut curr = vec![0; b.len() + 1];
    for (i, x) in a.iter().enumerate() {
        curr[0] = i + 1;
        for (j, y) in b.iter().enumerate() {
            let substitution = prev[j] + usize::from(x != y);
            curr[j + 1] = substitution.min(prev[j + 1] + 1).min(curr[j] + 1);
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    prev[b.len()]
}

/// Zero for equal objects, one otherwise.
pub fn delta<T: PartialEq + ?Sized>(a: &T, b: &T) -> f64 {
    if a == b {
        0.0
    } else {
        1.0
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Euclidean;

impl Dissimilarity<[f64]> for Euclidean {
    fn dissimilarity(&self, a: &[f64], b: &[f64]) -> f64 {
        euclidean_unchecked(a, b)
    }
}

impl Dissimilarity<Point> for Euclidean {
    fn dissimilarity(&self, a: &Point, b: &Point) -> f64 {
        euclidean_unchecked(a, b)
    }
}

/// Euclidean distance divided by `sqrt(dim)`, so that labels living in the
/// unit hypercube compare within `[0, 1]`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ScaledEuclidean;

impl Dissimilarity<Point> for ScaledEuclidean {
    fn dissimilarity(&self, a: &Point, b: &Point) -> f64 {
        euclidean_unchecked(a, b) / (a.dim() as f64).sqrt()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Minkowski {
    p: f64,
}

impl Minkowski {
    pub fn new(p: f64) -> Result<Self> {
        if !(p >= 1.0) || !p.is_finite() {
            return Err(invalid_param(format!("Minkowski order must be >= 1, got {p}")));
        }
        Ok(Self { p })
    }

    pub fn order(&self) -> f64 {
        self.p
    }
}

impl Dissimilarity<Point> for Minkowski {
    fn dissimilarity(&self, a: &Point, b: &Point) -> f64 {
        minkowski_unchecked(a, b, self.p)
    }
}

impl Dissimilarity<[f64]> for Minkowski {
    fn dissimilarity(&self, a: &[f64], b: &[f64]) -> f64 {
        minkowski_unchecked(a, b, self.p)
    }
}

/// `|a - b|` on scalars.
#[derive(Debug, Clone, Copy, Default)]
pub struct AbsoluteDifference;

impl Dissimilarity<f64> for AbsoluteDifference {
    fn dissimilarity(&self, a: &f64, b: &f64) -> f64 {
        (a - b).abs()
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Hamming;

impl Dissimilarity<[u8]> for Hamming {
    fn dissimilarity(&self, a: &[u8], b: &[u8]) -> f64 {
        a.iter().zip(b).filter(|(x, y)| x != y).count() as f64
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Levenshtein;

impl<T: PartialEq + Sync> Dissimilarity<[T]> for Levenshtein {
    fn dissimilarity(&self, a: &[T], b: &[T]) -> f64 {
        levenshtein(a, b) as f64
    }
}

impl Dissimilarity<str> for Levenshtein {
    fn dissimilarity(&self, a: &str, b: &str) -> f64 {
        let a: Vec<char> = a.chars().collect();
        let b: Vec<char> = b.chars().collect();
        levenshtein(&a, &b) as f64
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Delta;

impl<T: PartialEq + ?Sized> Dissimilarity<T> for Delta {
    fn dissimilarity(&self, a: &T, b: &T) -> f64 {
        delta(a, b)
    }
}
