//! Weighted Laplacians `S_L(G)`: assembly from positive edge weights, trace
//! normalization, the centering projector `H = I - J/n`, the default basis `P`
//! of `{1}^⊥`, and the two per-edge basis matrices.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::spectral::{numerical_rank, SymmetricMatrix};

/// Smallest weight accepted by the solvers; `S_L(G)` needs strictly negative edge entries.
pub const WEIGHT_FLOOR: f64 = 1e-9;

/// A graph together with strictly positive weights, one per edge in `graph.edges()` order.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedLaplacian {
    graph: Graph,
    weights: Vec<f64>,
}

impl WeightedLaplacian {
    pub fn new(graph: Graph, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != graph.edge_count() {
            return Err(Error::WeightCount {
                expected: graph.edge_count(),
                got: weights.len(),
            });
        }
        if let Some((i, w)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !(w.is_finite() && **w > 0.0))
        {
            let (a, b) = graph.edges()[i];
            return Err(Error::InvalidWeight(format!(
                "weight {w} on edge {{{}, {}}} must be a positive finite number",
                a + 1,
                b + 1
            )));
        }
        Ok(Self { graph, weights })
    }

    /// Unit weights on every edge (the combinatorial Laplacian).
    pub fn unit(graph: Graph) -> Self {
        let weights = vec![1.0; graph.edge_count()];
        Self { graph, weights }
    }

    /// Reads the graph and weights off a matrix in `S_L(G)`.
    ///
    /// Off-diagonal entries below `-tol` are edges and entries within `tol` of
    /// zero are non-edges, where `tol = 1e-12 · max|m_ij|`. Positive off-diagonal
    /// entries and nonzero row sums are rejected.
    pub fn from_matrix(m: &DMatrix<f64>) -> Result<Self> {
        let sym = SymmetricMatrix::new(m.clone())?;
        let n = sym.order();
        let scale = sym.amax().max(1.0);
        let tol = 1e-12 * scale;
        let mut pairs = Vec::new();
        let mut weights = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = sym[(i, j)];
                if v < -tol {
                    pairs.push((i, j));
                    weights.push(-v);
                } else if v > tol {
                    return Err(Error::PatternMismatch(format!(
                        "positive off-diagonal entry {v} at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        for i in 0..n {
            let row_sum: f64 = sym.row(i).sum();
            if row_sum.abs() > 1e-9 * scale {
                return Err(Error::PatternMismatch(format!(
                    "row {} sums to {row_sum}, expected 0",
                    i + 1
                )));
            }
        }
        // pairs are generated in lexicographic order, matching Graph's edge order
        let graph = Graph::new(n, &pairs)?;
        Self::new(graph, weights)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Same graph, new weights.
    pub fn with_weights(&self, weights: Vec<f64>) -> Result<Self> {
        Self::new(self.graph.clone(), weights)
    }

    /// The assembled matrix `A`.
    pub fn matrix(&self) -> SymmetricMatrix {
        assemble_unchecked(&self.graph, &self.weights)
    }

    /// `tr(A) = 2 · Σ w`.
    pub fn trace(&self) -> f64 {
        2.0 * self.weights.iter().sum::<f64>()
    }

    /// Multiplies every weight by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        self.with_weights(self.weights.iter().map(|w| w * c).collect())
    }
}

/// Assembles `A` with `a_ij = -w_ij` on edges and the diagonal equal to the negated
/// off-diagonal row sum, so `A·1 = 0` holds exactly.
pub fn assemble(g: &Graph, w: &[f64]) -> Result<SymmetricMatrix> {
    let wl = WeightedLaplacian::new(g.clone(), w.to_vec())?;
    Ok(wl.matrix())
}

pub(crate) fn assemble_unchecked(g: &Graph, w: &[f64]) -> SymmetricMatrix {
    let n = g.n();
    let mut a = DMatrix::zeros(n, n);
    for (&(i, j), &wij) in g.edges().iter().zip(w) {
        a[(i, j)] = -wij;
        a[(j, i)] = -wij;
    }
    for i in 0..n {
        let off: f64 = (0..n).filter(|&j| j != i).map(|j| a[(i, j)]).sum();
        a[(i, i)] = -off;
    }
    SymmetricMatrix::symmetrized(a)
}

/// Rescales the weights so that `tr(A) = 2m`.
pub fn normalize_trace(wl: &WeightedLaplacian) -> Result<WeightedLaplacian> {
    let m = wl.graph().edge_count();
    let trace = wl.trace();
    if m == 0 || trace <= 0.0 {
        return Err(Error::InvalidGraph(
            "trace normalization needs at least one edge".into(),
        ));
    }
    wl.scaled(2.0 * m as f64 / trace)
}

fn check_pair(n: usize, e: Edge) -> Result<()> {
    let (i, j) = e;
    if i == j || i >= n || j >= n {
        return Err(Error::InvalidGraph(format!(
            "pair ({}, {}) is not a valid pair on {n} vertices",
            i + 1,
            j + 1
        )));
    }
    Ok(())
}

/// `E_e`: zero except ones at `(i, j)` and `(j, i)`.
pub fn pattern_basis(n: usize, e: Edge) -> Result<SymmetricMatrix> {
    check_pair(n, e)?;
    let mut m = DMatrix::zeros(n, n);
    m[(e.0, e.1)] = 1.0;
    m[(e.1, e.0)] = 1.0;
    Ok(SymmetricMatrix::symmetrized(m))
}

/// Laplacian of the single edge `e` with unit weight: `[[1, -1], [-1, 1]]` on `{i, j}`.
pub fn edge_basis(n: usize, e: Edge) -> Result<SymmetricMatrix> {
    check_pair(n, e)?;
    let mut m = DMatrix::zeros(n, n);
    m[(e.0, e.0)] = 1.0;
    m[(e.1, e.1)] = 1.0;
    m[(e.0, e.1)] = -1.0;
    m[(e.1, e.0)] = -1.0;
    Ok(SymmetricMatrix::symmetrized(m))
}

/// `n x (n-1)` matrix whose column `i` is `e_1 - e_{i+1}`.
pub fn default_p(n: usize) -> Result<DMatrix<f64>> {
    if n < 2 {
        return Err(Error::Dimension("default P needs n >= 2".into()));
    }
    let mut p = DMatrix::zeros(n, n - 1);
    for c in 0..n - 1 {
        p[(0, c)] = 1.0;
        p[(c + 1, c)] = -1.0;
    }
    Ok(p)
}

/// Checks that `p` is `n x (n-1)`, annihilates `1` from the left and has full column rank.
pub fn validate_p(p: &DMatrix<f64>, n: usize) -> Result<()> {
    if p.nrows() != n || p.ncols() + 1 != n {
        return Err(Error::InvalidBasis(format!(
            "expected {n}x{}, got {}x{}",
            n.saturating_sub(1),
            p.nrows(),
            p.ncols()
        )));
    }
    let ones = DVector::from_element(n, 1.0);
    let drift = (p.transpose() * ones).amax();
    let scale = p.amax().max(1.0);
    if drift > 1e-10 * scale {
        return Err(Error::InvalidBasis(format!(
            "columns are not orthogonal to the all-ones vector (1ᵀP up to {drift:.3e})"
        )));
    }
    let rank = numerical_rank(p, None).rank;
    if rank != n - 1 {
        return Err(Error::InvalidBasis(format!(
            "rank {rank}, expected {}",
            n - 1
        )));
    }
    Ok(())
}

/// The centering projector `H = I - J/n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    h: DMatrix<f64>,
}

impl Projector {
    pub fn new(n: usize) -> Self {
        let h = DMatrix::from_fn(n, n, |i, j| {
            let d = if i == j { 1.0 } else { 0.0 };
            d - 1.0 / n as f64
        });
        Self { h }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.h
    }

    /// `H X H`.
    pub fn sandwich(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        &self.h * x * &self.h
    }
}

/// Serialized form: `{"n":4,"edges":[[1,2],[2,3],[3,4]],"weights":[0.5,1.0,1.5]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedLaplacianJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub weights: Vec<f64>,
}

impl From<&WeightedLaplacian> for WeightedLaplacianJson {
    fn from(wl: &WeightedLaplacian) -> Self {
        WeightedLaplacianJson {
            n: wl.n(),
            edges: wl
                .graph()
                .edges()
                .iter()
                .map(|&(a, b)| [a + 1, b + 1])
                .collect(),
            weights: wl.weights().to_vec(),
        }
    }
}

impl TryFrom<WeightedLaplacianJson> for WeightedLaplacian {
    type Error = Error;

    /// Weights follow the listed edge order, which may differ from the sorted order.
    fn try_from(j: WeightedLaplacianJson) -> Result<Self> {
        if j.weights.len() != j.edges.len() {
            return Err(Error::WeightCount {
                expected: j.edges.len(),
                got: j.weights.len(),
            });
        }
        let pairs: Vec<Edge> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        let graph = Graph::from_one_based(j.n, &pairs)?;
        let mut weights = vec![0.0; graph.edge_count()];
        for (e, &w) in j.edges.iter().zip(&j.weights) {
            let idx = graph
                .edge_index(e[0] - 1, e[1] - 1)
                .expect("edge present after construction");
            weights[idx] = w;
        }
        WeightedLaplacian::new(graph, weights)
    }
}
