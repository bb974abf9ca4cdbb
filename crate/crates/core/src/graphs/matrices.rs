use super::LabeledGraph;
use crate::error::{invalid_input, Result};
use crate::measures::Point;

/// Dense row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }
}

/// Weighted adjacency of the direct (tensor) product graph.
///
/// Product vertex `(u1, u2)` has index `u1 * n2 + u2`. The entry between
/// `(u1, u2)` and `(v1, v2)` is non-zero only when both `u1 -> v1` and
/// `u2 -> v2` are edges, and then equals
/// `edge_sim(e1, e2) * vertex_sim(u1, u2) * vertex_sim(v1, v2)`.
pub fn tensor_product<VS, ES>(g1: &LabeledGraph, g2: &LabeledGraph, vertex_sim: VS, edge_sim: ES) -> SquareMatrix
where
    VS: Fn(&Point, &Point) -> f64,
    ES: Fn(&Point, &Point) -> f64,
{
    let n2 = g2.order();
    let mut out = SquareMatrix::zeros(g1.order() * n2);
    let orientations = |g: &LabeledGraph| -> Vec<(usize, usize, Point)> {
        g.edges()
            .iter()
            .flat_map(|e| {
                let forward = (e.source, e.target, e.label.clone());
                if g.is_directed() {
                    vec![forward]
                } else {
                    vec![forward, (e.target, e.source, e.label.clone())]
                }
            })
            .collect()
    };
    let arcs1 = orientations(g1);
    let arcs2 = orientations(g2);
    for (u1, v1, l1) in &arcs1 {
        for (u2, v2, l2) in &arcs2 {
            let weight = edge_sim(l1, l2)
                * vertex_sim(g1.vertex_label(*u1), g2.vertex_label(*u2))
                * vertex_sim(g1.vertex_label(*v1), g2.vertex_label(*v2));
            out.set(u1 * n2 + u2, v1 * n2 + v2, weight);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    Adjacency,
    /// Row-normalized adjacency `D^-1 A`.
    Transition,
    /// `D - A`.
    Laplacian,
}

/// Matrix representation of the topology; `D` holds out-degrees.
pub fn matrix_representation(g: &LabeledGraph, kind: MatrixKind) -> Result<SquareMatrix> {
    let n = g.order();
    let mut adjacency = SquareMatrix::zeros(n);
    for e in g.edges() {
        adjacency.set(e.source, e.target, 1.0);
        if !g.is_directed() {
            adjacency.set(e.target, e.source, 1.0);
        }
    }
    let degree: Vec<f64> = (0..n).map(|i| adjacency.row(i).iter().sum()).collect();
    match kind {
        MatrixKind::Adjacency => Ok(adjacency),
        MatrixKind::Transition => {
            if let Some(v) = degree.iter().position(|d| *d == 0.0) {
                return Err(invalid_input(format!("vertex {v} has no outgoing edge")));
            }
            let mut t = adjacency;
            for (i, d) in degree.iter().enumerate() {
                for j in 0..n {
                    t.set(i, j, t.get(i, j) / d);
                }
            }
            Ok(t)
        }
        MatrixKind::Laplacian => {
            let mut l = SquareMatrix::zeros(n);
            for i in 0..n {
                for j in 0..n {
                    let diag = if i == j { degree[i] } else { 0.0 };
                    l.set(i, j, diag - adjacency.get(i, j));
                }
            }
            Ok(l)
        }
    }
}
