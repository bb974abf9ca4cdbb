use super::{Dissimilarity, Point, Sequence};
use crate::error::{invalid_input, Result};

/// Unconstrained, unnormalized dynamic time warping.
///
/// Returns the minimal accumulated `core` cost over monotone warping paths
/// with steps `(1,0)`, `(0,1)` and `(1,1)` that align both first and both
/// last elements.
pub fn dtw<T, D>(a: &[T], b: &[T], core: &D) -> Result<f64>
where
    D: Dissimilarity<T> + ?Sized,
{
    if a.is_empty() || b.is_empty() {
        return Err(invalid_input("DTW operands must be non-empty"));
    }
    Ok(dtw_unchecked(a, b, core))
}

fn dtw_unchecked<T, D>(a: &[T], b: &[T], core: &D) -> f64
where
    D: Dissimilarity<T> + ?Sized,
{
    let m = b.len();
    let mut prev = vec![f64::INFINITY; m];
    let mut curr = vec![0.0; m];

    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            let best = match (i, j) {
                (0, 0) => 0.0,
                (0, _) => curr[j - 1],
                (_, 0) => prev[0],
                _ => prev[j].min(prev[j - 1]).min(curr[j - 1]),
            };
            curr[j] = core.dissimilarity(x, y) + best;
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    prev[m - 1]
}

/// [`dtw`] as a [`Dissimilarity`] over sequences, parameterized by the core
/// measure applied to sequence items.
#[derive(Debug, Clone, Copy, Default)]
pub struct Dtw<D> {
    core: D,
}

impl<D> Dtw<D> {
    pub fn new(core: D) -> Self {
        Self { core }
    }

    pub fn core(&self) -> &D {
        &self.core
    }
}

impl<D: Dissimilarity<Point>> Dissimilarity<Sequence> for Dtw<D> {
    fn dissimilarity(&self, a: &Sequence, b: &Sequence) -> f64 {
        dtw_unchecked(a.items(), b.items(), &self.core)
    }
}

/// Empty slices compare at `0` with each other and at `+inf` with anything
/// else; use [`dtw`] to reject them instead.
impl<T, D: Dissimilarity<T>> Dissimilarity<[T]> for Dtw<D> {
    fn dissimilarity(&self, a: &[T], b: &[T]) -> f64 {
        match (a.is_empty(), b.is_empty()) {
            (true, true) => 0.0,
            (true, false) | (false, true) => f64::INFINITY,
            _ => dtw_unchecked(a, b, &self.core),
        }
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{Euclidean, Point};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn seq(rows: &[&[f64]]) -> Sequence {
        Sequence::new(rows.iter().map(|r| Point::new(r.to_vec()).unwrap()).collect()).unwrap()
    }

    #[test]
    fn identical_sequences_cost_nothing() {
        let s = seq(&[&[0.0, 1.0], &[2.0, 3.0], &[4.0, 4.5]]);
        assert_eq!(Dtw::new(Euclidean).dissimilarity(&s, &s), 0.0);
    }

    #[test]
    fn repeated_prefix_warps_for_free() {
        let a = seq(&[&[0.0], &[0.0], &[1.0]]);
        let b = seq(&[&[0.0], &[1.0]]);
        assert_eq!(Dtw::new(Euclidean).dissimilarity(&a, &b), 0.0);
        assert_eq!(oracle::dtw_paths(a.items(), b.items(), &Euclidean), 0.0);
    }

    #[test]
    fn empty_operands_are_rejected() {
        let empty: [f64; 0] = [];
        let core = |x: &f64, y: &f64| (x - y).abs();
        assert!(dtw(&empty, &[1.0], &core).is_err());
        assert_eq!(Dtw::new(core).dissimilarity(&empty[..], &empty[..]), 0.0);
    }

    #[test]
    fn hand_computed_scalar_case() {
        // Path (0,0),(1,1),(2,1),(3,2): 0 + 1 + 0 + 1.
        let core = |x: &f64, y: &f64| (x - y).abs();
        let a = [1.0, 2.0, 3.0, 4.0];
        let b = [1.0, 3.0, 5.0];
        assert_eq!(dtw(&a, &b, &core).unwrap(), 2.0);
    }

    fn scalar_seq() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-5.0..5.0f64, 1..=6)
    }

    proptest! {
        #[test]
        fn matches_path_enumeration(a in scalar_seq(), b in scalar_seq()) {
            let core = |x: &f64, y: &f64| (x - y).abs();
            let fast = dtw(&a, &b, &core).unwrap();
            let slow = oracle::dtw_paths(&a, &b, &core);
            assert_relative_eq!(fast, slow, max_relative = 1e-9, epsilon = 1e-12);
        }

        #[test]
        fn symmetric_and_nonnegative(a in scalar_seq(), b in scalar_seq()) {
            let core = |x: &f64, y: &f64| (x - y).abs();
            let ab = dtw(&a, &b, &core).unwrap();
            let ba = dtw(&b, &a, &core).unwrap();
            prop_assert!(ab >= 0.0);
            prop_assert!((ab - ba).abs() <= 1e-12);
            prop_assert_eq!(dtw(&a, &a, &core).unwrap(), 0.0);
        }
    }
}
