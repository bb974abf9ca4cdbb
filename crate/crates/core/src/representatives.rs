//! Cluster representatives: the `R(C)` operator of generic k-means.
//!
//! A representative summarizes the samples inserted into it and compares
//! itself against new samples through its own dissimilarity. Two are
//! provided: [`Centroid`] (the running mean of real vectors) and [`MinSod`]
//! (the cache-bounded minimum-sum-of-distances element, usable on any domain).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid_input, invalid_param, Error, Result};
use crate::measures::{Dissimilarity, Euclidean, Point};

pub trait Representative<T>: Send + Sync {
    /// A fresh empty state with the same configuration. `stream` selects an
    /// independent random stream for stochastic representatives.
    fn spawn(&self, stream: u64) -> Self
    where
        Self: Sized;

    fn insert(&mut self, x: &T) -> Result<()>;

    /// The current representative element.
    fn value(&self) -> Result<T>;

    /// Dissimilarity between `x` and the current representative element.
    fn distance(&self, x: &T) -> Result<f64>;

    /// Number of samples inserted since creation.
    fn count(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.count() == 0
    }

    /// A fresh state equivalent to inserting `members` in order.
    fn rebuild<'a, I>(&self, stream: u64, members: I) -> Result<Self>
    where
        Self: Sized,
        T: 'a,
        I: IntoIterator<Item = &'a T>,
    {
        let mut state = self.spawn(stream);
        for x in members {
            state.insert(x)?;
        }
        Ok(state)
    }
}

/// Arithmetic mean of the inserted points.
#[derive(Debug, Clone)]
pub struct Centroid<D = Euclidean> {
    running_sum: Vec<f64>,
    count: usize,
    mean: Option<Point>,
    dissimilarity: D,
}

impl Centroid<Euclidean> {
    pub fn euclidean() -> Self {
        Self::new(Euclidean)
    }
}

impl<D> Centroid<D> {
    pub fn new(dissimilarity: D) -> Self {
        Self {
            running_sum: Vec::new(),
            count: 0,
            mean: None,
            dissimilarity,
        }
    }

    pub fn mean(&self) -> Option<&Point> {
        self.mean.as_ref()
    }
}

impl<D: Dissimilarity<Point> + Clone> Representative<Point> for Centroid<D> {
    fn spawn(&self, _stream: u64) -> Self {
        Self::new(self.dissimilarity.clone())
    }

    fn insert(&mut self, x: &Point) -> Result<()> {
        if self.count == 0 {
            self.running_sum = x.coords().to_vec();
        } else {
            if x.dim() != self.running_sum.len() {
                return Err(invalid_input(format!(
                    "centroid of dimension {} cannot absorb a point of dimension {}",
                    self.running_sum.len(),
                    x.dim()
                )));
            }
            for (s, v) in self.running_sum.iter_mut().zip(x.coords()) {
                *s += v;
            }
        }
        self.count += 1;
        let n = self.count as f64;
        self.mean = Some(Point::new(self.running_sum.iter().map(|s| s / n).collect())?);
        Ok(())
    }

    fn value(&self) -> Result<Point> {
        self.mean.clone().ok_or(Error::EmptyRepresentative)
    }

    fn distance(&self, x: &Point) -> Result<f64> {
        let mean = self.mean.as_ref().ok_or(Error::EmptyRepresentative)?;
        if mean.dim() != x.dim() {
            return Err(invalid_input("dimension mismatch against centroid"));
        }
        Ok(self.dissimilarity.dissimilarity(x, mean))
    }

    fn count(&self) -> usize {
        self.count
    }
}

#[derive(Debug, Clone)]
struct Slot<T> {
    sample: T,
    /// Global insertion stamp, used to break argmin ties.
    stamp: u64,
    /// Sum of dissimilarities to every other cached sample.
    sod: f64,
}

/// Minimum-sum-of-distances representative over a bounded cache.
///
/// While fewer than `capacity` samples have been inserted the representative
/// is the exact MinSOD element of everything seen. Past that point every
/// insertion first evicts one cached sample: two distinct slots are drawn
/// uniformly and the one farther from the current representative (the first
/// drawn on ties) is discarded.
///
/// Pairwise dissimilarities among cached samples are memoized, so each
/// insertion costs one dissimilarity evaluation per cached sample. The
/// dissimilarity is assumed symmetric; each pair is evaluated once.
#[derive(Debug, Clone)]
pub struct MinSod<T, D> {
    capacity: usize,
    dissimilarity: D,
    seed: u64,
    rng: ChaCha8Rng,
    slots: Vec<Slot<T>>,
    /// Row-major `capacity x capacity` table of pairwise dissimilarities.
    pairwise: Vec<f64>,
    current: Option<usize>,
    inserted: usize,
}

fn stream_seed(seed: u64, stream: u64) -> u64 {
    seed ^ stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

impl<T, D> MinSod<T, D> {
    pub fn new(capacity: usize, dissimilarity: D, seed: u64) -> Result<Self> {
        if capacity == 0 {
            return Err(invalid_param("MinSOD cache size must be at least 1"));
        }
        Ok(Self::with_stream(capacity, dissimilarity, seed, 0))
    }

    fn with_stream(capacity: usize, dissimilarity: D, seed: u64, stream: u64) -> Self {
        Self {
            capacity,
            dissimilarity,
            seed,
            rng: ChaCha8Rng::seed_from_u64(stream_seed(seed, stream)),
            slots: Vec::with_capacity(capacity),
            pairwise: vec![0.0; capacity * capacity],
            current: None,
            inserted: 0,
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Cached samples in slot order.
    pub fn cache(&self) -> impl Iterator<Item = &T> {
        self.slots.iter().map(|s| &s.sample)
    }

    pub fn cache_len(&self) -> usize {
        self.slots.len()
    }

    /// Incrementally maintained sums of distances, parallel to [`cache`](Self::cache).
    pub fn sums_of_distances(&self) -> Vec<f64> {
        self.slots.iter().map(|s| s.sod).collect()
    }

    pub fn representative(&self) -> Option<&T> {
        self.current.map(|i| &self.slots[i].sample)
    }

    fn pair(&self, i: usize, j: usize) -> f64 {
        self.pairwise[i * self.capacity + j]
    }

    fn set_pair(&mut self, i: usize, j: usize, v: f64) {
        self.pairwise[i * self.capacity + j] = v;
        self.pairwise[j * self.capacity + i] = v;
    }

    fn pick_victim(&mut self) -> usize {
        let n = self.slots.len();
        if n == 1 {
            return 0;
        }
        let first = self.rng.random_range(0..n);
        let mut second = self.rng.random_range(0..n - 1);
        if second >= first {
            second += 1;
        }
        let rep = self.current.expect("a full cache has a representative");
        if self.pair(first, rep) >= self.pair(second, rep) {
            first
        } else {
            second
        }
    }

    fn refresh_current(&mut self) {
        self.current = self
            .slots
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.sod.total_cmp(&b.sod).then(a.stamp.cmp(&b.stamp)))
            .map(|(i, _)| i);
    }
}

impl<T, D> MinSod<T, D>
where
    T: Clone,
    D: Dissimilarity<T>,
{
    fn store(&mut self, slot: usize, x: &T) {
        let stamp = self.inserted as u64;
        let mut sod = 0.0;
        for j in 0..self.slots.len() {
            if j == slot {
                continue;
            }
            let d = self.dissimilarity.dissimilarity(&self.slots[j].sample, x);
            self.set_pair(slot, j, d);
            self.slots[j].sod += d;
            sod += d;
        }
        self.set_pair(slot, slot, 0.0);
        let entry = Slot {
            sample: x.clone(),
            stamp,
            sod,
        };
        if slot == self.slots.len() {
            self.slots.push(entry);
        } else {
            self.slots[slot] = entry;
        }
    }

    fn evict(&mut self, victim: usize) {
        for j in 0..self.slots.len() {
            if j != victim {
                let d = self.pair(victim, j);
                self.slots[j].sod -= d;
            }
        }
    }
}

impl<T, D> Representative<T> for MinSod<T, D>
where
    T: Clone + Send + Sync,
    D: Dissimilarity<T> + Clone,
{
    fn spawn(&self, stream: u64) -> Self {
        Self::with_stream(self.capacity, self.dissimilarity.clone(), self.seed, stream)
    }

    fn insert(&mut self, x: &T) -> Result<()> {
        let slot = if self.slots.len() < self.capacity {
            self.slots.len()
        } else {
            let victim = self.pick_victim();
            self.evict(victim);
            victim
        };
        self.store(slot, x);
        self.inserted += 1;
        self.refresh_current();
        Ok(())
    }

    fn value(&self) -> Result<T> {
        self.representative().cloned().ok_or(Error::EmptyRepresentative)
    }

    fn distance(&self, x: &T) -> Result<f64> {
        let rep = self.representative().ok_or(Error::EmptyRepresentative)?;
        Ok(self.dissimilarity.dissimilarity(x, rep))
    }

    fn count(&self) -> usize {
        self.inserted
    }
}

/// Exhaustive MinSOD: the element minimizing the summed dissimilarity to all
/// other elements, earliest index on ties. Quadratic in the set size.
pub fn minsod_exhaustive<T, D: Dissimilarity<T> + ?Sized>(set: &[T], d: &D) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, xi) in set.iter().enumerate() {
        let mut sod = 0.0;
        for (j, xj) in set.iter().enumerate() {
            if i != j {
                sod += d.dissimilarity(xj, xi);
            }
        }
        if best.is_none_or(|(_, b)| sod < b) {
            best = Some((i, sod));
        }
    }
    best.map(|(i, _)| i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::AbsoluteDifference;
    use proptest::prelude::*;

    fn pt(c: &[f64]) -> Point {
        Point::new(c.to_vec()).unwrap()
    }

    fn scalar_minsod(capacity: usize, seed: u64) -> MinSod<f64, AbsoluteDifference> {
        MinSod::new(capacity, AbsoluteDifference, seed).unwrap()
    }

    #[test]
    fn under_capacity_keeps_everything() {
        let mut m = scalar_minsod(10, 0);
        for x in [1.0, 2.0, 3.0] {
            m.insert(&x).unwrap();
        }
        assert_eq!(m.cache().copied().collect::<Vec<_>>(), vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn picks_minimum_sum_of_distances() {
        let m = scalar_minsod(100, 0).rebuild(0, &[1.0, 2.0, 10.0]).unwrap();
        assert_eq!(m.value().unwrap(), 2.0);
        assert_eq!(m.sums_of_distances(), vec![10.0, 9.0, 17.0]);
    }

    #[test]
    fn symmetric_set_centers_on_zero() {
        let m = scalar_minsod(5, 0).rebuild(0, &[-3.0, 0.0, 3.0]).unwrap();
        assert_eq!(m.value().unwrap(), 0.0);
    }

    #[test]
    fn ties_go_to_earliest_insertion() {
        let m = scalar_minsod(5, 0).rebuild(0, &[4.0, 2.0]).unwrap();
        assert_eq!(m.value().unwrap(), 4.0);
    }

    #[test]
    fn singleton_and_empty() {
        let empty = scalar_minsod(3, 0);
        assert_eq!(empty.value(), Err(Error::EmptyRepresentative));
        assert_eq!(empty.distance(&1.0), Err(Error::EmptyRepresentative));
        let one = empty.rebuild(0, &[7.5]).unwrap();
        assert_eq!(one.value().unwrap(), 7.5);
        assert_eq!(one.distance(&7.5).unwrap(), 0.0);
        assert_eq!(one.distance(&9.0).unwrap(), AbsoluteDifference.dissimilarity(&9.0, &7.5));
        assert!(MinSod::<f64, _>::new(0, AbsoluteDifference, 0).is_err());
    }

    #[test]
    fn unit_cache_always_holds_the_latest_sample() {
        let mut m = scalar_minsod(1, 3);
        for x in [5.0, -1.0, 8.0, 2.0] {
            m.insert(&x).unwrap();
            assert_eq!(m.cache_len(), 1);
            assert_eq!(m.value().unwrap(), x);
        }
    }

    #[test]
    fn centroid_examples() {
        let c = Centroid::euclidean().rebuild(0, &[pt(&[0.0, 0.0]), pt(&[2.0, 2.0])]).unwrap();
        assert_eq!(c.value().unwrap(), pt(&[1.0, 1.0]));
        assert_eq!(c.distance(&pt(&[4.0, 5.0])).unwrap(), 5.0);
        assert_eq!(c.distance(&pt(&[1.0, 1.0])).unwrap(), 0.0);

        let mut c = Centroid::euclidean();
        assert_eq!(c.value(), Err(Error::EmptyRepresentative));
        c.insert(&pt(&[1.0, 2.0])).unwrap();
        assert!(matches!(c.insert(&pt(&[1.0])), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn rebuild_of_nothing_is_empty() {
        let c = Centroid::euclidean().rebuild(0, std::iter::empty()).unwrap();
        assert!(c.is_empty());
        let m = scalar_minsod(4, 0).rebuild(0, &[]).unwrap();
        assert!(m.is_empty());
        assert!(m.representative().is_none());
    }

    fn recomputed_sods(m: &MinSod<f64, AbsoluteDifference>) -> Vec<f64> {
        let cache: Vec<f64> = m.cache().copied().collect();
        cache
            .iter()
            .map(|x| cache.iter().map(|y| (x - y).abs()).sum())
            .collect()
    }

    proptest! {
        #[test]
        fn matches_exhaustive_when_cache_fits(set in prop::collection::vec(-100.0..100.0f64, 1..40)) {
            let m = scalar_minsod(set.len(), 1).rebuild(0, &set).unwrap();
            let i = minsod_exhaustive(&set, &AbsoluteDifference).unwrap();
            prop_assert_eq!(m.value().unwrap(), set[i]);
        }

        #[test]
        fn bounded_cache_bookkeeping(
            set in prop::collection::vec(-100.0..100.0f64, 1..80),
            capacity in 1usize..12,
            seed in any::<u64>(),
        ) {
            let mut m = scalar_minsod(capacity, seed);
            for x in &set {
                m.insert(x).unwrap();
                prop_assert!(m.cache_len() <= capacity);
                let rep = m.value().unwrap();
                prop_assert!(m.cache().any(|c| *c == rep));
                for (inc, full) in m.sums_of_distances().iter().zip(recomputed_sods(&m)) {
                    prop_assert!((inc - full).abs() <= 1e-9 * full.abs().max(1.0));
                }
            }
            let again = scalar_minsod(capacity, seed).rebuild(0, &set).unwrap();
            let replay = m.spawn(0).rebuild(0, &set).unwrap();
            prop_assert_eq!(again.cache().collect::<Vec<_>>(), replay.cache().collect::<Vec<_>>());
            prop_assert_eq!(again.value().unwrap(), replay.value().unwrap());
        }

        #[test]
        fn centroid_is_order_invariant(mut pts in prop::collection::vec(prop::collection::vec(-5.0..5.0f64, 3), 1..20)) {
            let as_points = |v: &Vec<Vec<f64>>| v.iter().map(|c| pt(c)).collect::<Vec<_>>();
            let forward = Centroid::euclidean().rebuild(0, &as_points(&pts)).unwrap().value().unwrap();
            pts.reverse();
            let backward = Centroid::euclidean().rebuild(0, &as_points(&pts)).unwrap().value().unwrap();
            for (a, b) in forward.iter().zip(backward.iter()) {
                prop_assert!((a - b).abs() < 1e-12);
            }
        }
    }
}
