use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{hungarian, invert_mapping, EditBreakdown, GedWeights, LabeledGraph};
use crate::error::{invalid_input, Error, Result};
use crate::measures::{Dissimilarity, Point, ScaledEuclidean};

/// Largest combined order accepted by [`exact_ged`].
pub const EXACT_GED_MAX_ORDER: usize = 12;

impl GedWeights {
    /// Weights for the reverse transformation (`g2` into `g1`).
    fn reversed(&self) -> GedWeights {
        GedWeights {
            v_ins: self.v_del,
            v_del: self.v_ins,
            e_ins: self.e_del,
            e_del: self.e_ins,
            ..*self
        }
    }
}

/// Upper bound on the cost of any edit path between graphs of these orders
/// and sizes when label dissimilarities lie in `[0, 1]`. Used to normalize
/// matcher outputs into `[0, 1]`.
pub fn max_edit_cost(w: &GedWeights, orders: (usize, usize), sizes: (usize, usize)) -> f64 {
    w.max_vertex() * (orders.0 + orders.1) as f64 + w.max_edge() * (sizes.0 + sizes.1) as f64
}

fn normalize(cost: f64, w: &GedWeights, g1: &LabeledGraph, g2: &LabeledGraph) -> f64 {
    let norm = max_edit_cost(w, (g1.order(), g2.order()), (g1.size(), g2.size()));
    if norm > 0.0 {
        (cost / norm).clamp(0.0, 1.0)
    } else {
        0.0
    }
}

struct ExactSearch<'a, DE: ?Sized> {
    g1: &'a LabeledGraph,
    g2: &'a LabeledGraph,
    w: &'a GedWeights,
    de: &'a DE,
    /// Weighted substitution cost, `n1 x n2`.
    sub: Vec<f64>,
    /// Admissible bound on the vertex cost of vertices `i..n1`.
    suffix_bound: Vec<f64>,
    mapping: Vec<Option<usize>>,
    used: Vec<bool>,
    best: f64,
}

impl<DE: Dissimilarity<Point> + ?Sized> ExactSearch<'_, DE> {
    fn edge_pair_cost(&self, x: usize, y: usize) -> f64 {
        let e1 = self.g1.edge_label(x, y);
        let e2 = match (self.mapping[x], self.mapping[y]) {
            (Some(a), Some(b)) => self.g2.edge_label(a, b),
            _ => None,
        };
        match (e1, e2) {
            (Some(l1), Some(l2)) => self.w.e_sub * self.de.dissimilarity(l1, l2),
            (Some(_), None) => self.w.e_del,
            (None, Some(_)) => self.w.e_ins,
            (None, None) => 0.0,
        }
    }

    /// Cost added by fixing vertex `i`, given vertices `0..i` are fixed.
    fn step_cost(&self, i: usize) -> f64 {
        let n2 = self.g2.order();
        let mut cost = match self.mapping[i] {
            Some(a) => self.sub[i * n2 + a],
            None => self.w.v_del,
        };
        for j in 0..i {
            cost += self.edge_pair_cost(i, j);
            if self.g1.is_directed() {
                cost += self.edge_pair_cost(j, i);
            }
        }
        cost
    }

    fn completion_cost(&self) -> f64 {
        let unused = self.used.iter().filter(|u| !**u).count();
        let dangling = self
            .g2
            .edges()
            .iter()
            .filter(|e| !self.used[e.source] || !self.used[e.target])
            .count();
        unused as f64 * self.w.v_ins + dangling as f64 * self.w.e_ins
    }

    fn search(&mut self, i: usize, partial: f64) {
        if partial + self.suffix_bound[i] >= self.best {
            return;
        }
        if i == self.g1.order() {
            self.best = self.best.min(partial + self.completion_cost());
            return;
        }
        for a in 0..self.g2.order() {
            if self.used[a] {
                continue;
            }
            self.used[a] = true;
            self.mapping[i] = Some(a);
            let step = self.step_cost(i);
            self.search(i + 1, partial + step);
            self.used[a] = false;
        }
        self.mapping[i] = None;
        let step = self.step_cost(i);
        self.search(i + 1, partial + step);
    }
}

/// Optimal graph edit distance by branch-and-bound over vertex assignments.
pub fn exact_ged<DV, DE>(g1: &LabeledGraph, g2: &LabeledGraph, w: &GedWeights, dv: &DV, de: &DE) -> Result<f64>
where
    DV: Dissimilarity<Point> + ?Sized,
    DE: Dissimilarity<Point> + ?Sized,
{
    if g1.order() + g2.order() > EXACT_GED_MAX_ORDER {
        return Err(Error::ResourceLimit(format!(
            "exact GED supports combined order up to {EXACT_GED_MAX_ORDER}, got {}",
            g1.order() + g2.order()
        )));
    }
    if g1.is_directed() != g2.is_directed() {
        return Err(invalid_input("cannot match a directed graph against an undirected one"));
    }
    let (n1, n2) = (g1.order(), g2.order());
    let mut sub = vec![0.0; n1 * n2];
    for i in 0..n1 {
        for a in 0..n2 {
            sub[i * n2 + a] = w.v_sub * dv.dissimilarity(g1.vertex_label(i), g2.vertex_label(a));
        }
    }
    let mut suffix_bound = vec![0.0; n1 + 1];
    for i in (0..n1).rev() {
        let cheapest = sub[i * n2..(i + 1) * n2].iter().copied().fold(w.v_del, f64::min);
        suffix_bound[i] = suffix_bound[i + 1] + cheapest;
    }
    let mut search = ExactSearch {
        g1,
        g2,
        w,
        de,
        sub,
        suffix_bound,
        mapping: vec![None; n1],
        used: vec![false; n2],
        best: f64::INFINITY,
    };
    search.search(0, 0.0);
    Ok(search.best)
}

/// Greedy matching of `iterated` vertices (visited in `order`) onto the
/// still-free vertices of `other`. Returns `iterated -> other`.
fn greedy<DV: Dissimilarity<Point> + ?Sized>(
    iterated: &LabeledGraph,
    other: &LabeledGraph,
    order: &[usize],
    substitution_weighted: bool,
    dv: &DV,
) -> Vec<Option<usize>> {
    let mut mapping = vec![None; iterated.order()];
    let mut free = vec![true; other.order()];
    let mut remaining = other.order();
    for &i in order {
        if remaining == 0 {
            break;
        }
        let mut best: Option<(usize, f64)> = None;
        for (j, _) in free.iter().enumerate().filter(|(_, f)| **f) {
            let key = if substitution_weighted {
                dv.dissimilarity(iterated.vertex_label(i), other.vertex_label(j))
            } else {
                0.0
            };
            if best.is_none_or(|(_, b)| key < b) {
                best = Some((j, key));
            }
        }
        let (j, _) = best.expect("a free vertex remains");
        free[j] = false;
        remaining -= 1;
        mapping[i] = Some(j);
    }
    mapping
}

/// Candidate `g1 -> g2` mappings produced by the greedy matcher: the smaller
/// graph is iterated; for equal orders both directions are tried.
fn greedy_candidates<DV: Dissimilarity<Point> + ?Sized>(
    g1: &LabeledGraph,
    g2: &LabeledGraph,
    order1: &[usize],
    order2: &[usize],
    substitution_weighted: bool,
    dv: &DV,
) -> Vec<Vec<Option<usize>>> {
    let forward = || greedy(g1, g2, order1, substitution_weighted, dv);
    let backward = || invert_mapping(&greedy(g2, g1, order2, substitution_weighted, dv), g1.order());
    match g1.order().cmp(&g2.order()) {
        std::cmp::Ordering::Less => vec![forward()],
        std::cmp::Ordering::Greater => vec![backward()],
        std::cmp::Ordering::Equal => vec![forward(), backward()],
    }
}

/// The greedy (best-match-first) vertex assignment, iterating the smaller
/// graph in index order; returned as a `g1 -> g2` mapping.
pub fn bmf_assignment<DV: Dissimilarity<Point> + ?Sized>(
    g1: &LabeledGraph,
    g2: &LabeledGraph,
    w: &GedWeights,
    dv: &DV,
) -> Vec<Option<usize>> {
    let order1: Vec<usize> = (0..g1.order()).collect();
    let order2: Vec<usize> = (0..g2.order()).collect();
    greedy_candidates(g1, g2, &order1, &order2, w.v_sub > 0.0, dv).swap_remove(0)
}

fn bmf_breakdowns<DV, DE>(
    g1: &LabeledGraph,
    g2: &LabeledGraph,
    order1: &[usize],
    order2: &[usize],
    substitution_weighted: bool,
    dv: &DV,
    de: &DE,
) -> Vec<EditBreakdown>
where
    DV: Dissimilarity<Point> + ?Sized,
    DE: Dissimilarity<Point> + ?Sized,
{
    greedy_candidates(g1, g2, order1, order2, substitution_weighted, dv)
        .iter()
        .map(|m| EditBreakdown::new(g1, g2, m, dv, de))
        .collect()
}

fn min_cost(breakdowns: &[EditBreakdown], w: &GedWeights) -> f64 {
    breakdowns.iter().map(|b| b.cost(w)).fold(f64::INFINITY, f64::min)
}

/// Best-match-first GED: the cost of the greedy assignment's edit path.
/// Symmetric whenever insertion and deletion weights coincide.
pub fn bmf<DV, DE>(g1: &LabeledGraph, g2: &LabeledGraph, w: &GedWeights, dv: &DV, de: &DE) -> f64
where
    DV: Dissimilarity<Point> + ?Sized,
    DE: Dissimilarity<Point> + ?Sized,
{
    let order1: Vec<usize> = (0..g1.order()).collect();
    let order2: Vec<usize> = (0..g2.order()).collect();
    min_cost(&bmf_breakdowns(g1, g2, &order1, &order2, w.v_sub > 0.0, dv, de), w)
}

/// Iteration orders for every sBMF run. Run 0 is the identity order; run `r`
/// shuffles with a generator seeded from `seed + r`.
fn shuffled_orders(n: usize, shuffles: usize, seed: u64) -> Vec<Vec<usize>> {
    (0..shuffles.max(1))
        .map(|r| {
            let mut order: Vec<usize> = (0..n).collect();
            if r > 0 {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(r as u64));
                order.shuffle(&mut rng);
            }
            order
        })
        .collect()
}

fn sbmf_breakdowns<DV, DE>(
    g1: &LabeledGraph,
    g2: &LabeledGraph,
    shuffles: usize,
    seed: u64,
    substitution_weighted: bool,
    dv: &DV,
    de: &DE,
) -> Vec<Vec<EditBreakdown>>
where
    DV: Dissimilarity<Point> + ?Sized,
    DE: Dissimilarity<Point> + ?Sized,
{
    let orders1 = shuffled_orders(g1.order(), shuffles, seed);
    let orders2 = shuffled_orders(g2.order(), shuffles, seed);
    orders1
        .iter()
        .zip(&orders2)
        .map(|(o1, o2)| bmf_breakdowns(g1, g2, o1, o2, substitution_weighted, dv, de))
        .collect()
}

/// Cost of every sBMF run (see [`sbmf`]).
pub fn sbmf_runs<DV, DE>(
    g1: &LabeledGraph,
    g2: &LabeledGraph,
    shuffles: usize,
    seed: u64,
    w: &GedWeights,
    dv: &DV,
    de: &DE,
) -> Vec<f64>
where
    DV: Dissimilarity<Point> + ?Sized,
    DE: Dissimilarity<Point> + ?Sized,
{
    sbmf_breakdowns(g1, g2, shuffles, seed, w.v_sub > 0.0, dv, de)
        .iter()
        .map(|b| min_cost(b, w))
        .collect()
}

/// Shuffled BMF: the lowest cost over `shuffles` greedy runs, each visiting
/// the iterated graph's vertices in a different order. The first run uses
/// the identity order, so the result never exceeds [`bmf`]. `shuffles = 0`
/// is treated as one run.
pub fn sbmf<DV, DE>(
    g1: &LabeledGraph,
    g2: &LabeledGraph,
    shuffles: usize,
    seed: u64,
    w: &GedWeights,
    dv: &DV,
    de: &DE,
) -> f64
where
    DV: Dissimilarity<Point> + ?Sized,
    DE: Dissimilarity<Point> + ?Sized,
{
    sbmf_runs(g1, g2, shuffles, seed, w, dv, de)
        .into_iter()
        .fold(f64::INFINITY, f64::min)
}

/// Normalized BMF in `[0, 1]`, usually run with [`GedWeights::three`].
/// Label dissimilarities must lie in `[0, 1]` for the bound to hold.
pub fn twec<DV, DE>(g1: &LabeledGraph, g2: &LabeledGraph, w: &GedWeights, dv: &DV, de: &DE) -> f64
where
    DV: Dissimilarity<Point> + ?Sized,
    DE: Dissimilarity<Point> + ?Sized,
{
    normalize(bmf(g1, g2, w, dv, de), w, g1, g2)
}

/// Optimal vertex assignment with insertion and deletion slots, solved by
/// the Hungarian method. Returned as a `g1 -> g2` mapping.
pub fn hged_assignment<DV: Dissimilarity<Point> + ?Sized>(
    g1: &LabeledGraph,
    g2: &LabeledGraph,
    w: &GedWeights,
    dv: &DV,
) -> Vec<Option<usize>> {
    let (n1, n2) = (g1.order(), g2.order());
    let n = n1 + n2;
    let forbidden = 1.0 + (n as f64) * (w.v_sub + w.v_ins + w.v_del);
    let mut cost = vec![0.0; n * n];
    for i in 0..n1 {
        for j in 0..n2 {
            cost[i * n + j] = w.v_sub * dv.dissimilarity(g1.vertex_label(i), g2.vertex_label(j));
        }
        for k in 0..n1 {
            cost[i * n + n2 + k] = if k == i { w.v_del } else { forbidden };
        }
    }
    for k in 0..n2 {
        for j in 0..n2 {
            cost[(n1 + k) * n + j] = if k == j { w.v_ins } else { forbidden };
        }
    }
    hungarian::solve(n, &cost)[..n1]
        .iter()
        .map(|&c| (c < n2).then_some(c))
        .collect()
}

/// GED approximation from the optimal vertex assignment, normalized into
/// `[0, 1]` like [`twec`].
pub fn hged<DV, DE>(g1: &LabeledGraph, g2: &LabeledGraph, w: &GedWeights, dv: &DV, de: &DE) -> f64
where
    DV: Dissimilarity<Point> + ?Sized,
    DE: Dissimilarity<Point> + ?Sized,
{
    let forward = hged_assignment(g1, g2, w, dv);
    let backward = invert_mapping(&hged_assignment(g2, g1, &w.reversed(), dv), g1.order());
    let cost = [forward, backward]
        .iter()
        .map(|m| EditBreakdown::new(g1, g2, m, dv, de).cost(w))
        .fold(f64::INFINITY, f64::min);
    normalize(cost, w, g1, g2)
}

/// The graph matchers available to the classification harness. Vertex and
/// edge labels are compared with [`ScaledEuclidean`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Matcher {
    /// Unnormalized BMF with six weights.
    Pd6w,
    /// Normalized BMF with three weights.
    Twec,
    /// Shuffled BMF with six weights.
    Sbmf { shuffles: usize, seed: u64 },
    /// Normalized Hungarian-assignment GED with six weights.
    Hged,
}

impl Matcher {
    pub const NAMES: [&'static str; 4] = ["twec", "pd6w", "sbmf", "hged"];

    pub fn parse(name: &str, shuffles: usize, seed: u64) -> Option<Self> {
        match name {
            "twec" => Some(Matcher::Twec),
            "pd6w" => Some(Matcher::Pd6w),
            "sbmf" => Some(Matcher::Sbmf { shuffles, seed }),
            "hged" => Some(Matcher::Hged),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Matcher::Pd6w => "pd6w",
            Matcher::Twec => "twec",
            Matcher::Sbmf { .. } => "sbmf",
            Matcher::Hged => "hged",
        }
    }

    /// Length of the weight vector this matcher is tuned over.
    pub fn weight_count(&self) -> usize {
        match self {
            Matcher::Twec => 3,
            _ => 6,
        }
    }

    pub fn distance(&self, g1: &LabeledGraph, g2: &LabeledGraph, w: &GedWeights) -> f64 {
        let d = &ScaledEuclidean;
        match *self {
            Matcher::Pd6w => bmf(g1, g2, w, d, d),
            Matcher::Twec => twec(g1, g2, w, d, d),
            Matcher::Sbmf { shuffles, seed } => sbmf(g1, g2, shuffles, seed, w, d, d),
            Matcher::Hged => hged(g1, g2, w, d, d),
        }
    }

    /// Weight-independent summary of a pair, when the matcher's assignment
    /// does not depend on the weights (any positive substitution weight
    /// yields the same greedy assignment). `None` for [`Matcher::Hged`].
    pub fn precompute(&self, g1: &LabeledGraph, g2: &LabeledGraph) -> Option<PairSummary> {
        let d = &ScaledEuclidean;
        let candidates = match *self {
            Matcher::Pd6w | Matcher::Twec => {
                let o1: Vec<usize> = (0..g1.order()).collect();
                let o2: Vec<usize> = (0..g2.order()).collect();
                bmf_breakdowns(g1, g2, &o1, &o2, true, d, d)
            }
            Matcher::Sbmf { shuffles, seed } => sbmf_breakdowns(g1, g2, shuffles, seed, true, d, d)
                .into_iter()
                .flatten()
                .collect(),
            Matcher::Hged => return None,
        };
        Some(PairSummary {
            candidates,
            orders: (g1.order(), g2.order()),
            sizes: (g1.size(), g2.size()),
            normalized: matches!(self, Matcher::Twec),
        })
    }
}

/// Precomputed edit breakdowns for one graph pair; see [`Matcher::precompute`].
#[derive(Debug, Clone, PartialEq)]
pub struct PairSummary {
    candidates: Vec<EditBreakdown>,
    orders: (usize, usize),
    sizes: (usize, usize),
    normalized: bool,
}

impl PairSummary {
    /// Whether [`evaluate`](Self::evaluate) reproduces the matcher under `w`.
    pub fn supports(&self, w: &GedWeights) -> bool {
        w.v_sub > 0.0
    }

    pub fn evaluate(&self, w: &GedWeights) -> f64 {
        let cost = min_cost(&self.candidates, w);
        if !self.normalized {
            return cost;
        }
        let norm = max_edit_cost(w, self.orders, self.sizes);
        if norm > 0.0 {
            (cost / norm).clamp(0.0, 1.0)
        } else {
            0.0
        }
    }
}

/// A matcher with fixed weights, usable wherever a graph dissimilarity is
/// expected (k-NN, MinSOD, ...).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatcherDissimilarity {
    pub matcher: Matcher,
    pub weights: GedWeights,
}

impl Dissimilarity<LabeledGraph> for MatcherDissimilarity {
    fn dissimilarity(&self, a: &LabeledGraph, b: &LabeledGraph) -> f64 {
        self.matcher.distance(a, b, &self.weights)
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::testing::{random_graph, random_graph_sized, random_weights};
    use crate::graphs::Edge;
    use rand::{Rng, SeedableRng};

    fn p(v: f64) -> Point {
        Point::new(vec![v]).unwrap()
    }

    fn vertices(labels: &[f64]) -> LabeledGraph {
        LabeledGraph::new(labels.iter().map(|&v| p(v)).collect(), vec![], false).unwrap()
    }

    const D: ScaledEuclidean = ScaledEuclidean;

    #[test]
    fn identical_graphs_cost_nothing() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            let g = random_graph(&mut rng, 30, 0.12, 5);
            let w = random_weights(&mut rng);
            assert_eq!(bmf(&g, &g, &w, &D, &D), 0.0);
            assert_eq!(twec(&g, &g, &w, &D, &D), 0.0);
            assert_eq!(hged(&g, &g, &w, &D, &D), 0.0);
            assert_eq!(sbmf(&g, &g, 4, 3, &w, &D, &D), 0.0);
            let small = random_graph(&mut rng, 5, 0.5, 5);
            assert_eq!(exact_ged(&small, &small, &w, &D, &D).unwrap(), 0.0);
        }
    }

    #[test]
    fn single_vertex_cases() {
        let w = GedWeights::new(0.7, 0.2, 0.3, 1.0, 1.0, 1.0).unwrap();
        let one = vertices(&[0.25]);
        let empty = LabeledGraph::empty(false);
        assert_eq!(exact_ged(&one, &empty, &w, &D, &D).unwrap(), 0.3);
        assert_eq!(bmf(&one, &empty, &w, &D, &D), 0.3);
        let other = vertices(&[0.75]);
        assert!((bmf(&one, &other, &w, &D, &D) - 0.7 * 0.5).abs() < 1e-15);
    }

    #[test]
    fn exact_ged_guards_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = random_graph(&mut rng, 7, 0.3, 2);
        let b = random_graph(&mut rng, 6, 0.3, 2);
        assert!(matches!(
            exact_ged(&a, &b, &GedWeights::ones(), &D, &D),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn exact_matches_permutation_oracle_and_bounds_bmf() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..60 {
            let g1 = random_graph_sized(&mut rng, 0..=4, 0.5, 2);
            let g2 = random_graph_sized(&mut rng, 0..=4, 0.5, 2);
            let w = random_weights(&mut rng);
            let exact = exact_ged(&g1, &g2, &w, &D, &D).unwrap();
            let oracle = oracle::ged_by_permutation(&g1, &g2, &w, &D);
            assert!((exact - oracle).abs() <= 1e-12 * oracle.max(1.0), "{exact} vs {oracle}");
            let greedy = bmf(&g1, &g2, &w, &D, &D);
            assert!(greedy >= exact - 1e-12);
            let runs = sbmf_runs(&g1, &g2, 5, 9, &w, &D, &D);
            assert_eq!(runs[0], greedy);
            let worst = runs.iter().copied().fold(0.0, f64::max);
            assert!(worst >= greedy);
            assert!(sbmf(&g1, &g2, 5, 9, &w, &D, &D) <= greedy);
        }
    }

    #[test]
    fn sbmf_with_many_shuffles_finds_best_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let g1 = random_graph(&mut rng, 3, 0.6, 2);
            let g2 = random_graph(&mut rng, 3, 0.6, 2);
            let w = random_weights(&mut rng);
            let best = oracle::best_greedy_over_orders(&g1, &g2, &w, &D);
            // 6 orders per graph: 200 draws cover every pairing of shared
            // permutations with overwhelming probability.
            let s = sbmf(&g1, &g2, 200, 11, &w, &D, &D);
            assert!(s >= best - 1e-12);
            assert!(s <= bmf(&g1, &g2, &w, &D, &D));
        }
        assert_eq!(
            sbmf(&vertices(&[0.1, 0.9]), &vertices(&[0.8, 0.2]), 1, 0, &GedWeights::ones(), &D, &D),
            bmf(&vertices(&[0.1, 0.9]), &vertices(&[0.8, 0.2]), &GedWeights::ones(), &D, &D)
        );
    }

    #[test]
    fn twec_single_vertex_trace() {
        let one = vertices(&[0.4]);
        let empty = LabeledGraph::empty(false);
        let w = GedWeights::three(1.0, 0.2, 0.5).unwrap();
        // One deletion at w_id over a normalizer of max(w_v, w_id) * 1.
        assert_eq!(twec(&one, &empty, &w, &D, &D), 0.5);
        let w = GedWeights::three(0.5, 0.5, 0.8).unwrap();
        assert_eq!(twec(&one, &empty, &w, &D, &D), 1.0);
        assert_eq!(twec(&empty, &empty, &w, &D, &D), 0.0);
        assert_eq!(hged(&empty, &empty, &w, &D, &D), 0.0);
    }

    #[test]
    fn hungarian_beats_greedy_on_adversarial_pair() {
        let g1 = vertices(&[0.5, 0.0]);
        let g2 = vertices(&[0.45, 1.0]);
        let w = GedWeights::ones();
        let greedy = bmf(&g1, &g2, &w, &D, &D);
        assert!((greedy - 1.05).abs() < 1e-12);
        let exact = exact_ged(&g1, &g2, &w, &D, &D).unwrap();
        assert!((exact - 0.95).abs() < 1e-12);
        let optimal = EditBreakdown::new(&g1, &g2, &hged_assignment(&g1, &g2, &w, &D), &D, &D).cost(&w);
        assert!((optimal - 0.95).abs() < 1e-12);
        assert!(hged(&g1, &g2, &w, &D, &D) < twec(&g1, &g2, &w, &D, &D));
    }

    #[test]
    fn hungarian_vertex_cost_never_exceeds_greedy() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..100 {
            let g1 = random_graph_sized(&mut rng, 1..9, 0.3, 3);
            let g2 = random_graph_sized(&mut rng, 1..9, 0.3, 3);
            let w = random_weights(&mut rng);
            let h = EditBreakdown::new(&g1, &g2, &hged_assignment(&g1, &g2, &w, &D), &D, &D);
            let b = EditBreakdown::new(&g1, &g2, &bmf_assignment(&g1, &g2, &w, &D), &D, &D);
            assert!(h.vertex_cost(&w) <= b.vertex_cost(&w) + 1e-12);
        }
    }

    #[test]
    fn symmetric_under_symmetric_weights() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let g1 = random_graph_sized(&mut rng, 1..12, 0.3, 5);
            let g2 = random_graph_sized(&mut rng, 1..12, 0.3, 5);
            let w = GedWeights::three(rng.random_range(0.1..1.0), rng.random_range(0.1..1.0), rng.random_range(0.1..1.0)).unwrap();
            for f in [bmf::<ScaledEuclidean, ScaledEuclidean>, twec, hged] {
                let ab = f(&g1, &g2, &w, &D, &D);
                let ba = f(&g2, &g1, &w, &D, &D);
                assert!((ab - ba).abs() < 1e-12, "{ab} vs {ba}");
            }
        }
    }

    #[test]
    fn normalized_matchers_stay_in_unit_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100 {
            let g1 = random_graph_sized(&mut rng, 0..15, 0.3, 5);
            let g2 = random_graph_sized(&mut rng, 0..15, 0.3, 5);
            let w = random_weights(&mut rng);
            for v in [twec(&g1, &g2, &w, &D, &D), hged(&g1, &g2, &w, &D, &D)] {
                assert!((0.0..=1.0).contains(&v));
            }
        }
    }

    #[test]
    fn precomputed_summaries_reproduce_matchers() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let matchers = [Matcher::Pd6w, Matcher::Twec, Matcher::Sbmf { shuffles: 3, seed: 5 }];
        for _ in 0..30 {
            let g1 = random_graph_sized(&mut rng, 1..10, 0.3, 5);
            let g2 = random_graph_sized(&mut rng, 1..10, 0.3, 5);
            let w = random_weights(&mut rng);
            for m in matchers {
                let summary = m.precompute(&g1, &g2).unwrap();
                assert!(summary.supports(&w));
                assert_eq!(summary.evaluate(&w), m.distance(&g1, &g2, &w));
            }
            assert!(Matcher::Hged.precompute(&g1, &g2).is_none());
        }
        let zero_sub = GedWeights::new(0.0, 1.0, 1.0, 1.0, 1.0, 1.0).unwrap();
        let g = vertices(&[0.1]);
        assert!(!Matcher::Pd6w.precompute(&g, &g).unwrap().supports(&zero_sub));
    }

    #[test]
    fn directed_edges_are_matched_by_orientation() {
        let e = |s, t| Edge {
            source: s,
            target: t,
            label: p(0.5),
        };
        let a = LabeledGraph::new(vec![p(0.0), p(1.0)], vec![e(0, 1)], true).unwrap();
        let b = LabeledGraph::new(vec![p(0.0), p(1.0)], vec![e(1, 0)], true).unwrap();
        let w = GedWeights::ones();
        assert_eq!(exact_ged(&a, &b, &w, &D, &D).unwrap(), 2.0);
        assert_eq!(bmf(&a, &b, &w, &D, &D), 2.0);
        let undirected = LabeledGraph::new(vec![p(0.0), p(1.0)], vec![e(0, 1)], false).unwrap();
        assert!(exact_ged(&a, &undirected, &w, &D, &D).is_err());
    }

    #[test]
    fn matcher_names_round_trip() {
        for name in Matcher::NAMES {
            assert_eq!(Matcher::parse(name, 2, 0).unwrap().name(), name);
        }
        assert!(Matcher::parse("gc", 1, 0).is_none());
        assert_eq!(Matcher::Twec.weight_count(), 3);
        assert_eq!(Matcher::Hged.weight_count(), 6);
    }
}
