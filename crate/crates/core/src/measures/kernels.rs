use std::marker::PhantomData;

use super::Dissimilarity;
use crate::error::{invalid_input, invalid_param, Result};

/// Similarity kernels built on top of an arbitrary (symmetric) dissimilarity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelKind {
    /// `exp(-d^2 / (2 sigma^2))`
    Rbf { sigma: f64 },
    /// `exp(-d / sigma)`
    Laplacian { sigma: f64 },
    /// `exp(-d / (2 sigma^2))`
    Exponential { sigma: f64 },
    /// `1 - d^2 / (d^2 + c)`
    RationalQuadratic { c: f64 },
}

impl KernelKind {
    fn validate(&self) -> Result<()> {
        let (name, value) = match *self {
            KernelKind::Rbf { sigma } => ("sigma", sigma),
            KernelKind::Laplacian { sigma } => ("sigma", sigma),
            KernelKind::Exponential { sigma } => ("sigma", sigma),
            KernelKind::RationalQuadratic { c } => ("c", c),
        };
        if !(value > 0.0) || !value.is_finite() {
            return Err(invalid_param(format!("kernel {name} must be positive, got {value}")));
        }
        Ok(())
    }

    /// Maps a dissimilarity value to a similarity.
    pub fn apply(&self, d: f64) -> f64 {
        match *self {
            KernelKind::Rbf { sigma } => (-d * d / (2.0 * sigma * sigma)).exp(),
            KernelKind::Laplacian { sigma } => (-d / sigma).exp(),
            KernelKind::Exponential { sigma } => (-d / (2.0 * sigma * sigma)).exp(),
            KernelKind::RationalQuadratic { c } => {
                let d2 = d * d;
                if d2.is_infinite() {
                    0.0
                } else {
                    1.0 - d2 / (d2 + c)
                }
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct DissimilarityKernel<T: ?Sized, D> {
    kind: KernelKind,
    dissimilarity: D,
    _domain: PhantomData<fn(&T)>,
}

impl<T: ?Sized, D: Dissimilarity<T>> DissimilarityKernel<T, D> {
    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    pub fn similarity(&self, a: &T, b: &T) -> f64 {
        self.kind.apply(self.dissimilarity.dissimilarity(a, b))
    }
}

pub fn kernel_from_dissimilarity<T: ?Sized, D: Dissimilarity<T>>(
    kind: KernelKind,
    dissimilarity: D,
) -> Result<DissimilarityKernel<T, D>> {
    kind.validate()?;
    Ok(DissimilarityKernel {
        kind,
        dissimilarity,
        _domain: PhantomData,
    })
}

/// Kernels defined directly on real vectors through the inner product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VectorKernel {
    Cosine,
    /// `(<a, b> + c)^degree`
    Polynomial { c: f64, degree: i32 },
    /// `tanh(alpha <a, b> + c)`
    Tanh { alpha: f64, c: f64 },
}

pub fn vector_kernel(kind: VectorKernel, a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(invalid_input(format!(
            "dimension mismatch: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    match kind {
        VectorKernel::Cosine => {
            let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
            let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
            if na == 0.0 || nb == 0.0 {
                return Err(invalid_input("cosine kernel of a zero vector"));
            }
            Ok((dot / (na * nb)).clamp(-1.0, 1.0))
        }
        VectorKernel::Polynomial { c, degree } => {
            if degree < 1 {
                return Err(invalid_param(format!("polynomial degree must be >= 1, got {degree}")));
            }
            Ok((dot + c).powi(degree))
        }
        VectorKernel::Tanh { alpha, c } => Ok((alpha * dot + c).tanh()),
    }
}
