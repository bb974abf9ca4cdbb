//! Labeled graphs and graph matching.
//!
//! Edit-distance matchers share one cost model: substituting a vertex (edge)
//! costs its substitution weight times the label dissimilarity, inserting or
//! deleting costs a flat weight, and edge operations are induced by the
//! vertex assignment. [`EditBreakdown`] holds the weight-free totals of an
//! assignment so that its cost can be re-evaluated for any [`GedWeights`].

mod ged;
mod hungarian;
mod matrices;

pub use ged::{
    bmf, bmf_assignment, exact_ged, hged, hged_assignment, max_edit_cost, sbmf, sbmf_runs, twec,
    Matcher, MatcherDissimilarity, PairSummary, EXACT_GED_MAX_ORDER,
};
pub use matrices::{matrix_representation, tensor_product, MatrixKind, SquareMatrix};

use crate::error::{invalid_input, invalid_param, Result};
use crate::measures::{Dissimilarity, Point};

const NO_EDGE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub label: Point,
}

/// A simple graph whose vertices and edges carry real-vector labels.
///
/// Undirected edges are stored once with `source <= target`. Self-loops and
/// repeated `(source, target)` pairs are rejected.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledGraph {
    vertex_labels: Vec<Point>,
    edges: Vec<Edge>,
    directed: bool,
    /// Dense `n x n` lookup from vertex pair to edge index.
    lookup: Vec<u32>,
}

impl LabeledGraph {
    pub fn new(vertex_labels: Vec<Point>, edges: Vec<Edge>, directed: bool) -> Result<Self> {
        let n = vertex_labels.len();
        if let Some(first) = vertex_labels.first() {
            if vertex_labels.iter().any(|p| p.dim() != first.dim()) {
                return Err(invalid_input("vertex labels have mixed dimensions"));
            }
        }
        if let Some(first) = edges.first() {
            if edges.iter().any(|e| e.label.dim() != first.label.dim()) {
                return Err(invalid_input("edge labels have mixed dimensions"));
            }
        }
        let mut lookup = vec![NO_EDGE; n * n];
        let mut stored = Vec::with_capacity(edges.len());
        for mut e in edges {
            if e.source >= n || e.target >= n {
                return Err(invalid_input(format!(
                    "edge ({}, {}) out of range for order {n}",
                    e.source, e.target
                )));
            }
            if e.source == e.target {
                return Err(invalid_input(format!("self-loop on vertex {}", e.source)));
            }
            if !directed && e.source > e.target {
                std::mem::swap(&mut e.source, &mut e.target);
            }
            let slot = e.source * n + e.target;
            if lookup[slot] != NO_EDGE {
                return Err(invalid_input(format!(
                    "duplicate edge ({}, {})",
                    e.source, e.target
                )));
            }
            let id = stored.len() as u32;
            lookup[slot] = id;
            if !directed {
                lookup[e.target * n + e.source] = id;
            }
            stored.push(e);
        }
        Ok(Self {
            vertex_labels,
            edges: stored,
            directed,
            lookup,
        })
    }

    pub fn empty(directed: bool) -> Self {
        Self {
            vertex_labels: Vec::new(),
            edges: Vec::new(),
            directed,
            lookup: Vec::new(),
        }
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.vertex_labels.len()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn vertex_labels(&self) -> &[Point] {
        &self.vertex_labels
    }

    pub fn vertex_label(&self, v: usize) -> &Point {
        &self.vertex_labels[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Label of the edge from `u` to `v` (either orientation when undirected).
    pub fn edge_label(&self, u: usize, v: usize) -> Option<&Point> {
        let n = self.order();
        match self.lookup[u * n + v] {
            NO_EDGE => None,
            id => Some(&self.edges[id as usize].label),
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.lookup[u * self.order() + v] != NO_EDGE
    }
}

/// Edit-operation weights.
///
/// The six-weight scheme sets every operation independently. The
/// three-weight scheme (`w_v`, `w_e`, `w_id`) uses `w_v` and `w_e` for vertex
/// and edge substitution and `w_id` for every insertion and deletion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GedWeights {
    v_sub: f64,
    v_ins: f64,
    v_del: f64,
    e_sub: f64,
    e_ins: f64,
    e_del: f64,
}

impl GedWeights {
    pub fn new(v_sub: f64, v_ins: f64, v_del: f64, e_sub: f64, e_ins: f64, e_del: f64) -> Result<Self> {
        let all = [v_sub, v_ins, v_del, e_sub, e_ins, e_del];
        if all.iter().any(|w| !(*w >= 0.0) || !w.is_finite()) {
            return Err(invalid_param(format!("edit weights must be finite and nonnegative: {all:?}")));
        }
        if all.iter().all(|w| *w == 0.0) {
            return Err(invalid_param("at least one edit weight must be positive"));
        }
        Ok(Self {
            v_sub,
            v_ins,
            v_del,
            e_sub,
            e_ins,
            e_del,
        })
    }

    pub fn from_slice(w: &[f64]) -> Result<Self> {
        match *w {
            [v_sub, v_ins, v_del, e_sub, e_ins, e_del] => Self::new(v_sub, v_ins, v_del, e_sub, e_ins, e_del),
            [w_v, w_e, w_id] => Self::three(w_v, w_e, w_id),
            _ => Err(invalid_param(format!("expected 3 or 6 weights, got {}", w.len()))),
        }
    }

    pub fn three(w_v: f64, w_e: f64, w_id: f64) -> Result<Self> {
        Self::new(w_v, w_id, w_id, w_e, w_id, w_id)
    }

    pub fn ones() -> Self {
        Self::new(1.0, 1.0, 1.0, 1.0, 1.0, 1.0).expect("unit weights are valid")
    }

    pub fn v_sub(&self) -> f64 {
        self.v_sub
    }
    pub fn v_ins(&self) -> f64 {
        self.v_ins
    }
    pub fn v_del(&self) -> f64 {
        self.v_del
    }
    pub fn e_sub(&self) -> f64 {
        self.e_sub
    }
    pub fn e_ins(&self) -> f64 {
        self.e_ins
    }
    pub fn e_del(&self) -> f64 {
        self.e_del
    }

    pub fn as_array(&self) -> [f64; 6] {
        [self.v_sub, self.v_ins, self.v_del, self.e_sub, self.e_ins, self.e_del]
    }

    fn max_vertex(&self) -> f64 {
        self.v_sub.max(self.v_ins).max(self.v_del)
    }

    fn max_edge(&self) -> f64 {
        self.e_sub.max(self.e_ins).max(self.e_del)
    }
}

/// Weight-free totals of the edit path induced by a vertex assignment.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EditBreakdown {
    /// Sum of label dissimilarities over substituted vertex pairs.
    pub vertex_substitution: f64,
    pub vertex_insertions: usize,
    pub vertex_deletions: usize,
    /// Sum of label dissimilarities over substituted edge pairs.
    pub edge_substitution: f64,
    pub edge_insertions: usize,
    pub edge_deletions: usize,
}

impl EditBreakdown {
    /// Totals for transforming `g1` into `g2` when vertex `i` of `g1` maps to
    /// `mapping[i]` in `g2` (or is deleted when `None`). The mapping must be
    /// injective.
    pub fn new<DV, DE>(g1: &LabeledGraph, g2: &LabeledGraph, mapping: &[Option<usize>], dv: &DV, de: &DE) -> Self
    where
        DV: Dissimilarity<Point> + ?Sized,
        DE: Dissimilarity<Point> + ?Sized,
    {
        debug_assert_eq!(mapping.len(), g1.order());
        let mut out = EditBreakdown::default();
        let mut matched = 0;
        for (i, m) in mapping.iter().enumerate() {
            match *m {
                Some(j) => {
                    out.vertex_substitution += dv.dissimilarity(g1.vertex_label(i), g2.vertex_label(j));
                    matched += 1;
                }
                None => out.vertex_deletions += 1,
            }
        }
        out.vertex_insertions = g2.order() - matched;

        let mut substituted = 0;
        for e in g1.edges() {
            let image = match (mapping[e.source], mapping[e.target]) {
                (Some(a), Some(b)) => g2.edge_label(a, b),
                _ => None,
            };
            match image {
                Some(label) => {
                    out.edge_substitution += de.dissimilarity(&e.label, label);
                    substituted += 1;
                }
                None => out.edge_deletions += 1,
            }
        }
        out.edge_insertions = g2.size() - substituted;
        out
    }

    pub fn vertex_cost(&self, w: &GedWeights) -> f64 {
        w.v_sub * self.vertex_substitution
            + w.v_ins * self.vertex_insertions as f64
            + w.v_del * self.vertex_deletions as f64
    }

    pub fn edge_cost(&self, w: &GedWeights) -> f64 {
        w.e_sub * self.edge_substitution + w.e_ins * self.edge_insertions as f64 + w.e_del * self.edge_deletions as f64
    }

    pub fn cost(&self, w: &GedWeights) -> f64 {
        self.vertex_cost(w) + self.edge_cost(w)
    }
}

/// Inverts an injective `g2 -> g1` mapping into the `g1 -> g2` direction.
pub(crate) fn invert_mapping(mapping: &[Option<usize>], n1: usize) -> Vec<Option<usize>> {
    let mut out = vec![None; n1];
    for (j, m) in mapping.iter().enumerate() {
        if let Some(i) = *m {
            out[i] = Some(j);
        }
    }
    out
}
