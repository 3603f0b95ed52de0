//! Strong spectral properties.
//!
//! The SSPWL of `A ∈ S_L(G)` is tested twice: through the row rank of the
//! verification matrix `Ψ` (one row per non-edge) and through the rank of the
//! sum of the two tangent spaces `span{E_e : e ∈ E}` and `{AK - KA : K skew, K1 = 0}`
//! inside `{Y symmetric : Y1 = 0}`. The two answers must agree; a disagreement or
//! a rank decision close to the tolerance is reported as indeterminate.
//!
//! The same tangent-sum test is provided for the SSP of a symmetric matrix in
//! `S(G)` and for the nSSP of a square matrix with a zero-nonzero pattern.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::laplacian::{default_p, edge_basis, pattern_basis, validate_p, WeightedLaplacian};
use crate::spectral::{
    binomial, cluster_eigenvalues, left_kernel, numerical_rank, numerical_rank_scaled,
    right_kernel, spectral_norm, sym_eigen, RankResult,
};

/// Which strong property a report refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Property {
    #[serde(rename = "SSPWL")]
    Sspwl,
    #[serde(rename = "SSP")]
    Ssp,
    #[serde(rename = "nSSP")]
    Nssp,
}

/// Outcome of a strong-property test.
///
/// `strong` is equivalent to `verification_rank == required_rank`. In the weak
/// case `witness` is a unit-Frobenius matrix certifying the failure and
/// `kernel_basis` lists an orthonormal basis of all such certificates.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub property: Property,
    pub verification_rank: usize,
    pub required_rank: usize,
    pub strong: bool,
    /// The rank decision is within a factor 10 of the tolerance, or the two
    /// independent methods disagree.
    pub indeterminate: bool,
    /// `σ_r / tol` for the smallest retained singular value.
    pub margin: f64,
    pub tolerance: f64,
    pub singular_values: Vec<f64>,
    pub witness: Option<DMatrix<f64>>,
    pub kernel_basis: Vec<DMatrix<f64>>,
    pub psi: Option<DMatrix<f64>>,
}

impl VerificationReport {
    fn from_rank(property: Property, rank: &RankResult, required: usize) -> Self {
        VerificationReport {
            property,
            verification_rank: rank.rank,
            required_rank: required,
            strong: rank.rank == required,
            indeterminate: near_decision(rank),
            margin: rank.margin(),
            tolerance: rank.tolerance,
            singular_values: rank.singular_values.clone(),
            witness: None,
            kernel_basis: Vec::new(),
            psi: None,
        }
    }
}

/// Either the smallest retained or the largest dropped singular value lies within
/// a factor 10 of the tolerance.
pub(crate) fn near_decision(rank: &RankResult) -> bool {
    rank.near_threshold()
        || rank
            .largest_dropped()
            .is_some_and(|s| s > rank.tolerance / 10.0)
}

/// Options for [`has_sspwl_with`].
#[derive(Debug, Clone, Default)]
pub struct SspwlOptions {
    /// Basis of `{1}^⊥` used for `Ψ`; the default has columns `e_1 - e_{i+1}`.
    pub basis: Option<DMatrix<f64>>,
    /// Absolute rank tolerance replacing the relative default.
    pub tol: Option<f64>,
}

/// Tangent-space dimensions of the map `(B, K) ↦ B + AK - KA`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangentDims {
    pub dim_fb: usize,
    pub dim_fk: usize,
    pub dim_sum: usize,
    /// `C(n, 2)`, the dimension of `{Y symmetric : Y1 = 0}`.
    pub dim_w: usize,
    /// `C(m_1, 2) + Σ_{i>=2} C(m_i + 1, 2)` from the clustered multiplicities.
    pub predicted_fk_perp: Option<usize>,
    /// Eigenvalue multiplicities in ascending eigenvalue order.
    pub multiplicities: Option<Vec<usize>>,
}

impl TangentDims {
    /// `dim_w - predicted_fk_perp`.
    pub fn predicted_fk(&self) -> Option<usize> {
        self.predicted_fk_perp.map(|p| self.dim_w - p)
    }
}

/// Strict upper triangle of a square matrix in row-major order.
pub(crate) fn strict_upper(m: &DMatrix<f64>) -> Vec<f64> {
    let n = m.nrows();
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            out.push(m[(i, j)]);
        }
    }
    out
}

/// Upper triangle including the diagonal, row-major.
fn upper(m: &DMatrix<f64>) -> Vec<f64> {
    let n = m.nrows();
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            out.push(m[(i, j)]);
        }
    }
    out
}

fn rows_to_matrix(rows: &[Vec<f64>], cols: usize) -> DMatrix<f64> {
    DMatrix::from_fn(rows.len(), cols, |r, c| rows[r][c])
}

fn commutator(a: &DMatrix<f64>, x: &DMatrix<f64>) -> DMatrix<f64> {
    a * x - x * a
}

/// `K_ij = u_i u_jᵀ - u_j u_iᵀ` with `u_i = e_i - e_n`, `i < j < n - 1` (0-based).
/// Each satisfies `K·1 = 0`.
pub fn skew_basis_fixing_ones(n: usize) -> Vec<DMatrix<f64>> {
    let mut out = Vec::new();
    if n < 3 {
        return out;
    }
    let u = |i: usize| {
        let mut v = nalgebra::DVector::zeros(n);
        v[i] = 1.0;
        v[n - 1] = -1.0;
        v
    };
    for i in 0..n - 1 {
        for j in i + 1..n - 1 {
            let (ui, uj) = (u(i), u(j));
            out.push(&ui * uj.transpose() - &uj * ui.transpose());
        }
    }
    out
}

/// `X = Σ c_i E_{e_i}` scaled to unit Frobenius norm with the first nonzero coefficient positive.
fn witness_from_coeffs(n: usize, pairs: &[Edge], c: &[f64]) -> DMatrix<f64> {
    let cmax = c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let sign = c
        .iter()
        .find(|v| v.abs() > 1e-9 * cmax)
        .map_or(1.0, |v| v.signum());
    let mut x = DMatrix::zeros(n, n);
    for (&(i, j), &ci) in pairs.iter().zip(c) {
        x[(i, j)] = sign * ci;
        x[(j, i)] = sign * ci;
    }
    let norm = x.norm();
    if norm > 0.0 {
        x /= norm;
    }
    x
}

fn normalized_sign(mut x: DMatrix<f64>) -> DMatrix<f64> {
    let norm = x.norm();
    if norm > 0.0 {
        x /= norm;
    }
    let xmax = x.amax();
    if let Some(v) = x.iter().find(|v| v.abs() > 1e-9 * xmax) {
        if *v < 0.0 {
            x = -x;
        }
    }
    x
}

/// `Ψ`: row `r` is the strict upper triangle of `Pᵀ(A E_e - E_e A)P` for the
/// `r`-th non-edge `e` in lexicographic order.
pub fn verification_matrix(
    a: &WeightedLaplacian,
    p: Option<&DMatrix<f64>>,
) -> Result<DMatrix<f64>> {
    let n = a.n();
    let non_edges = a.graph().complement();
    let cols = binomial(n.saturating_sub(1), 2);
    if n < 2 {
        return Ok(DMatrix::zeros(0, 0));
    }
    let p = match p {
        Some(p) => {
            validate_p(p, n)?;
            p.clone()
        }
        None => default_p(n)?,
    };
    let am = a.matrix();
    let mut rows = Vec::with_capacity(non_edges.edge_count());
    for &e in non_edges.edges() {
        let ee = pattern_basis(n, e)?;
        let c = commutator(am.as_matrix(), ee.as_matrix());
        rows.push(strict_upper(&(p.transpose() * c * &p)));
    }
    Ok(rows_to_matrix(&rows, cols))
}

/// SSPWL test through `Ψ` with the default basis and tolerance.
pub fn has_sspwl(a: &WeightedLaplacian) -> Result<VerificationReport> {
    has_sspwl_with(a, &SspwlOptions::default())
}

pub fn has_sspwl_with(a: &WeightedLaplacian, opts: &SspwlOptions) -> Result<VerificationReport> {
    let n = a.n();
    let psi = verification_matrix(a, opts.basis.as_ref())?;
    let required = psi.nrows();
    let rank = if n < 2 {
        numerical_rank(&psi, None)
    } else {
        let p_norm = match &opts.basis {
            Some(p) => spectral_norm(p),
            None => (n as f64).sqrt(),
        };
        match opts.tol {
            Some(t) => numerical_rank(&psi, Some(t)),
            None => numerical_rank_scaled(&psi, a.matrix().norm() * p_norm * p_norm),
        }
    };
    let mut report = VerificationReport::from_rank(Property::Sspwl, &rank, required);
    if !report.strong {
        let non_edges = a.graph().complement();
        let kernel = left_kernel(&psi, rank.rank);
        report.kernel_basis = kernel
            .column_iter()
            .map(|c| witness_from_coeffs(n, non_edges.edges(), c.as_slice()))
            .collect();
        report.witness = report.kernel_basis.first().cloned();
    }
    if opts.tol.is_none() {
        let (primal_strong, _) = tangent_sum_check(a)?;
        if primal_strong != report.strong {
            report.indeterminate = true;
        }
    }
    report.psi = Some(psi);
    Ok(report)
}

fn tangent_ranks(a: &WeightedLaplacian) -> (RankResult, usize, usize) {
    let n = a.n();
    let am = a.matrix();
    let scale = am.norm();
    let scale = if scale > 0.0 { scale } else { 1.0 };
    let t1: Vec<Vec<f64>> = a
        .graph()
        .edges()
        .iter()
        .map(|&e| strict_upper(edge_basis(n, e).expect("edge of the graph").as_matrix()))
        .collect();
    let t2: Vec<Vec<f64>> = skew_basis_fixing_ones(n)
        .iter()
        .map(|k| {
            let c = am.as_matrix() * k - k * am.as_matrix();
            strict_upper(&(c / scale))
        })
        .collect();
    let cols = binomial(n, 2);
    let r1 = numerical_rank_scaled(&rows_to_matrix(&t1, cols), 1.0).rank;
    let r2 = numerical_rank_scaled(&rows_to_matrix(&t2, cols), 1.0).rank;
    let stacked: Vec<Vec<f64>> = t1.into_iter().chain(t2).collect();
    let sum = numerical_rank_scaled(&rows_to_matrix(&stacked, cols), 1.0);
    (sum, r1, r2)
}

fn multiplicities(a: &WeightedLaplacian) -> Result<Vec<usize>> {
    let am = a.matrix();
    let eig = sym_eigen(&am)?;
    let norm = eig.values.last().map_or(0.0, |v| v.abs());
    Ok(cluster_eigenvalues(&eig.values, norm)?
        .iter()
        .map(|c| c.multiplicity)
        .collect())
}

fn predicted_perp(mult: &[usize]) -> usize {
    mult.iter()
        .enumerate()
        .map(|(i, &m)| {
            if i == 0 {
                binomial(m, 2)
            } else {
                binomial(m + 1, 2)
            }
        })
        .sum()
}

/// Primal SSPWL test: strong iff `dim(T1 + T2) = C(n, 2)`.
pub fn tangent_sum_check(a: &WeightedLaplacian) -> Result<(bool, TangentDims)> {
    let n = a.n();
    let (sum, dim_fb, dim_fk) = tangent_ranks(a);
    let mult = multiplicities(a).ok();
    let dims = TangentDims {
        dim_fb,
        dim_fk,
        dim_sum: sum.rank,
        dim_w: binomial(n, 2),
        predicted_fk_perp: mult.as_deref().map(predicted_perp),
        multiplicities: mult,
    };
    Ok((dims.dim_sum == dims.dim_w, dims))
}

/// Tangent dimensions with the multiplicity prediction; requires a connected graph
/// and unambiguous eigenvalue clusters.
pub fn tangent_dims(a: &WeightedLaplacian) -> Result<TangentDims> {
    if !a.graph().is_connected() {
        return Err(Error::Disconnected);
    }
    let mult = multiplicities(a)?;
    let (_, mut dims) = tangent_sum_check(a)?;
    dims.predicted_fk_perp = Some(predicted_perp(&mult));
    dims.multiplicities = Some(mult);
    Ok(dims)
}

/// Weakness of a star with the given leaf weights: some pair agrees to `1e-10` relative.
pub fn star_weak_predicate(w: &[f64]) -> Result<bool> {
    if let Some(bad) = w.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
        return Err(Error::InvalidWeight(format!("{bad} is not positive")));
    }
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if (w[i] - w[j]).abs() <= 1e-10 * w[i].max(w[j]) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// The weak matrix on `K_n - {1, n}`: vertices `1` and `n` are joined to every inner
/// vertex by weight `alpha` and the inner vertices carry `B + 2αI`.
pub fn weak_form_kne(n: usize, alpha: f64, b: &WeightedLaplacian) -> Result<WeightedLaplacian> {
    if n < 4 {
        return Err(Error::UnsupportedFamily {
            name: "complete_minus_edge weak form".into(),
            n,
        });
    }
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::InvalidWeight(format!(
            "alpha = {alpha} must be positive"
        )));
    }
    if *b.graph() != Graph::complete(n - 2)? {
        return Err(Error::PatternMismatch(format!(
            "B must be weighted on K_{}",
            n - 2
        )));
    }
    let g = crate::graph::named_family(crate::graph::Family::CompleteMinusEdge, n)?;
    let weights = g
        .edges()
        .iter()
        .map(|&(i, j)| {
            if i == 0 || j == n - 1 {
                alpha
            } else {
                let k = b
                    .graph()
                    .edge_index(i - 1, j - 1)
                    .expect("inner pair is an edge of K_{n-2}");
                b.weights()[k]
            }
        })
        .collect();
    WeightedLaplacian::new(g, weights)
}

fn check_pattern(a: &DMatrix<f64>, g: &Graph) -> Result<()> {
    let n = g.n();
    if a.nrows() != n || a.ncols() != n {
        return Err(Error::Dimension(format!(
            "matrix is {}x{} but the graph has {n} vertices",
            a.nrows(),
            a.ncols()
        )));
    }
    for i in 0..n {
        for j in i + 1..n {
            let nonzero = a[(i, j)] != 0.0;
            if nonzero != g.has_edge(i, j) {
                return Err(Error::PatternMismatch(format!(
                    "entry ({}, {}) = {} disagrees with the graph",
                    i + 1,
                    j + 1,
                    a[(i, j)]
                )));
            }
        }
    }
    Ok(())
}

/// SSP test for a symmetric `A ∈ S(G)`: strong iff
/// `span{E_ii, E_e : e ∈ E} + {AK - KA : K skew}` is all symmetric matrices.
///
/// The witness solves the dual problem: `X` supported on non-edges with `AX = XA`.
pub fn has_ssp(a: &DMatrix<f64>, g: &Graph) -> Result<VerificationReport> {
    crate::spectral::SymmetricMatrix::new(a.clone())?;
    check_pattern(a, g)?;
    let n = g.n();
    let scale = if a.norm() > 0.0 { a.norm() } else { 1.0 };
    let mut rows = Vec::new();
    for i in 0..n {
        let mut d = DMatrix::zeros(n, n);
        d[(i, i)] = 1.0;
        rows.push(upper(&d));
    }
    for &e in g.edges() {
        rows.push(upper(pattern_basis(n, e)?.as_matrix()));
    }
    for (i, j) in crate::graph::all_pairs(n) {
        let mut k = DMatrix::zeros(n, n);
        k[(i, j)] = 1.0;
        k[(j, i)] = -1.0;
        rows.push(upper(&(commutator(a, &k) / scale)));
    }
    let required = binomial(n + 1, 2);
    let rank = numerical_rank_scaled(&rows_to_matrix(&rows, required), 1.0);
    let mut report = VerificationReport::from_rank(Property::Ssp, &rank, required);

    let non_edges = g.complement();
    let dual: Vec<Vec<f64>> = non_edges
        .edges()
        .iter()
        .map(|&e| {
            let ee = pattern_basis(n, e).expect("valid pair");
            strict_upper(&(commutator(a, ee.as_matrix()) / scale))
        })
        .collect();
    let phi = rows_to_matrix(&dual, binomial(n, 2));
    let dual_rank = numerical_rank_scaled(&phi, 1.0);
    let deficiency = non_edges.edge_count() - dual_rank.rank;
    if deficiency != required - rank.rank || near_decision(&dual_rank) {
        report.indeterminate = true;
    }
    if !report.strong {
        report.kernel_basis = left_kernel(&phi, dual_rank.rank)
            .column_iter()
            .map(|c| witness_from_coeffs(n, non_edges.edges(), c.as_slice()))
            .collect();
        report.witness = report.kernel_basis.first().cloned();
    }
    Ok(report)
}

/// Zero-nonzero pattern of a square matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroNonzeroPattern {
    n: usize,
    mask: Vec<bool>,
}

impl ZeroNonzeroPattern {
    /// `mask` is row-major with `n * n` entries.
    pub fn new(n: usize, mask: Vec<bool>) -> Result<Self> {
        if mask.len() != n * n {
            return Err(Error::Dimension(format!(
                "mask has {} entries, expected {}",
                mask.len(),
                n * n
            )));
        }
        Ok(Self { n, mask })
    }

    pub fn of_matrix(m: &DMatrix<f64>) -> Self {
        let n = m.nrows();
        let mask = (0..n * n).map(|k| m[(k / n, k % n)] != 0.0).collect();
        Self { n, mask }
    }

    pub fn full(n: usize) -> Self {
        Self {
            n,
            mask: vec![true; n * n],
        }
    }

    pub fn diagonal(n: usize) -> Self {
        Self {
            n,
            mask: (0..n * n).map(|k| k / n == k % n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.mask[i * self.n + j]
    }

    /// Nonzero positions in row-major order.
    pub fn positions(&self) -> Vec<(usize, usize)> {
        (0..self.n * self.n)
            .filter(|&k| self.mask[k])
            .map(|k| (k / self.n, k % self.n))
            .collect()
    }

    pub fn check_conforms(&self, a: &DMatrix<f64>) -> Result<()> {
        if a.nrows() != self.n || a.ncols() != self.n {
            return Err(Error::Dimension(format!(
                "matrix is {}x{}, pattern is {n}x{n}",
                a.nrows(),
                a.ncols(),
                n = self.n
            )));
        }
        for i in 0..self.n {
            for j in 0..self.n {
                if (a[(i, j)] != 0.0) != self.contains(i, j) {
                    return Err(Error::PatternMismatch(format!(
                        "entry ({}, {}) = {} does not conform to the pattern",
                        i + 1,
                        j + 1,
                        a[(i, j)]
                    )));
                }
            }
        }
        Ok(())
    }
}

/// nSSP test: strong iff `span{E_ij : (i,j) in pattern} + {AL - LA}` is all of `n x n`.
///
/// The witness is the normal direction `X`, zero on the pattern, with `AᵀX = XAᵀ`.
pub fn nssp_tangent_check(
    a: &DMatrix<f64>,
    pattern: &ZeroNonzeroPattern,
) -> Result<VerificationReport> {
    pattern.check_conforms(a)?;
    let n = pattern.n();
    let scale = if a.norm() > 0.0 { a.norm() } else { 1.0 };
    let unit = |i: usize, j: usize| {
        let mut e = DMatrix::zeros(n, n);
        e[(i, j)] = 1.0;
        e
    };
    let mut rows: Vec<Vec<f64>> = pattern
        .positions()
        .into_iter()
        .map(|(i, j)| unit(i, j).as_slice().to_vec())
        .collect();
    for i in 0..n {
        for j in 0..n {
            let c = commutator(a, &unit(i, j)) / scale;
            rows.push(c.as_slice().to_vec());
        }
    }
    let stack = rows_to_matrix(&rows, n * n);
    let rank = numerical_rank_scaled(&stack, 1.0);
    let mut report = VerificationReport::from_rank(Property::Nssp, &rank, n * n);
    if !report.strong {
        report.kernel_basis = right_kernel(&stack, rank.rank)
            .column_iter()
            .map(|c| normalized_sign(DMatrix::from_column_slice(n, n, c.as_slice())))
            .collect();
        report.witness = report.kernel_basis.first().cloned();
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named_family, Family};
    use crate::laplacian::Projector;

    fn p4_example() -> WeightedLaplacian {
        WeightedLaplacian::new(named_family(Family::Path, 4).unwrap(), vec![0.5, 1.0, 1.5]).unwrap()
    }

    fn kne_example() -> WeightedLaplacian {
        let m = DMatrix::from_row_slice(
            4,
            4,
            &[
                4.0, 0.0, -3.0, -1.0, 0.0, 4.0, -3.0, -1.0, -3.0, -3.0, 7.0, -1.0, -1.0, -1.0,
                -1.0, 3.0,
            ],
        );
        WeightedLaplacian::from_matrix(&m).unwrap()
    }

    #[test]
    fn psi_of_path_example() {
        let psi = verification_matrix(&p4_example(), None).unwrap();
        let expected =
            DMatrix::from_row_slice(3, 3, &[2.5, -0.5, -3.5, -1.5, 0.5, 2.5, 1.5, 0.5, -0.5]);
        assert!((psi - expected).amax() < 1e-12);
    }

    #[test]
    fn path_example_is_weak_with_expected_witness() {
        let r = has_sspwl(&p4_example()).unwrap();
        assert!(!r.strong);
        assert!(!r.indeterminate);
        assert_eq!(r.verification_rank, 2);
        let x = r.witness.unwrap();
        let s = 26f64.sqrt() * 2f64.sqrt();
        assert!((x[(0, 2)] - 3.0 / s).abs() < 1e-9);
        assert!((x[(0, 3)] - 4.0 / s).abs() < 1e-9);
        assert!((x[(1, 3)] + 1.0 / s).abs() < 1e-9);
        let a = p4_example().matrix().into_inner();
        let h = Projector::new(4);
        assert!(h.sandwich(&(&a * &x - &x * &a)).norm() < 1e-8 * a.norm());
    }

    #[test]
    fn psi_determinant_on_path() {
        // weights (x, z, y) on edges 12, 23, 34
        let wl =
            WeightedLaplacian::new(named_family(Family::Path, 4).unwrap(), vec![1.0, 2.0, 1.0])
                .unwrap();
        let det = verification_matrix(&wl, None).unwrap().determinant();
        assert!(det.abs() < 1e-12);
        let wl = wl.with_weights(vec![1.0, 2.0, 2.0]).unwrap();
        let det = verification_matrix(&wl, None).unwrap().determinant();
        assert!((det + 4.0).abs() < 1e-12);
    }

    #[test]
    fn complete_minus_edge_example_is_strong() {
        let a = kne_example();
        assert_eq!(a.graph().edge_count(), 5);
        let r = has_sspwl(&a).unwrap();
        assert!(r.strong && !r.indeterminate);
        assert!(tangent_sum_check(&a).unwrap().0);
    }

    #[test]
    fn complete_graph_has_empty_psi() {
        let a = WeightedLaplacian::unit(Graph::complete(4).unwrap());
        let psi = verification_matrix(&a, None).unwrap();
        assert_eq!(psi.shape(), (0, 3));
        assert!(has_sspwl(&a).unwrap().strong);
        let (strong, dims) = tangent_sum_check(&a).unwrap();
        assert!(strong);
        assert_eq!((dims.dim_fb, dims.dim_fk, dims.dim_sum), (6, 0, 6));
        assert_eq!(dims.predicted_fk(), Some(0));
    }

    #[test]
    fn disconnected_is_weak() {
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        let a = WeightedLaplacian::new(g, vec![1.0, 2.0]).unwrap();
        assert!(!has_sspwl(&a).unwrap().strong);
        assert!(!tangent_sum_check(&a).unwrap().0);
        assert!(matches!(tangent_dims(&a), Err(Error::Disconnected)));
    }

    #[test]
    fn path_tangent_dims() {
        let d = tangent_dims(&p4_example()).unwrap();
        assert_eq!((d.dim_fb, d.dim_fk, d.dim_sum, d.dim_w), (3, 3, 5, 6));
        assert_eq!(d.predicted_fk(), Some(3));
    }

    #[test]
    fn skew_basis_is_independent() {
        for n in 3..7 {
            let basis = skew_basis_fixing_ones(n);
            assert_eq!(basis.len(), binomial(n - 1, 2));
            let rows: Vec<Vec<f64>> = basis.iter().map(strict_upper).collect();
            let r = numerical_rank(&rows_to_matrix(&rows, binomial(n, 2)), None);
            assert_eq!(r.rank, basis.len());
            for k in &basis {
                assert!((k * nalgebra::DVector::from_element(n, 1.0)).norm() == 0.0);
            }
        }
    }

    #[test]
    fn star_predicate() {
        assert!(!star_weak_predicate(&[1.0, 2.0, 3.0]).unwrap());
        assert!(star_weak_predicate(&[1.0, 1.0, 2.0]).unwrap());
        assert!(!star_weak_predicate(&[5.0]).unwrap());
        assert!(star_weak_predicate(&[1.0, -1.0]).is_err());
        let star = named_family(Family::Star, 4).unwrap();
        for w in [[1.0, 2.0, 3.0], [1.0, 1.0, 2.0]] {
            let a = WeightedLaplacian::new(star.clone(), w.to_vec()).unwrap();
            assert_eq!(
                has_sspwl(&a).unwrap().strong,
                !star_weak_predicate(&w).unwrap()
            );
        }
    }

    #[test]
    fn kne_weak_form() {
        let b = WeightedLaplacian::new(Graph::complete(2).unwrap(), vec![3.0]).unwrap();
        let a = weak_form_kne(4, 1.0, &b).unwrap();
        assert!(!has_sspwl(&a).unwrap().strong);
        let eig = sym_eigen(&a.matrix()).unwrap();
        for (v, e) in eig.values.iter().zip([0.0, 2.0, 4.0, 8.0]) {
            assert!((v - e).abs() < 1e-9);
        }
        let mut w = a.weights().to_vec();
        w[0] *= 1.01;
        assert!(has_sspwl(&a.with_weights(w).unwrap()).unwrap().strong);
        assert!(weak_form_kne(3, 1.0, &b).is_err());
        assert!(weak_form_kne(4, 0.0, &b).is_err());
    }

    #[test]
    fn ssp_examples() {
        let empty = Graph::empty(3).unwrap();
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&[1.0, 2.0, 3.0]));
        assert!(has_ssp(&d, &empty).unwrap().strong);
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&[1.0, 1.0, 2.0]));
        let r = has_ssp(&d, &empty).unwrap();
        assert!(!r.strong && !r.indeterminate);
        let x = r.witness.unwrap();
        let s = 0.5f64.sqrt();
        assert!((x[(0, 1)] - s).abs() < 1e-12 && (x[(1, 0)] - s).abs() < 1e-12);
        let full = DMatrix::from_fn(3, 3, |i, j| if i == j { 2.0 } else { 1.0 });
        assert!(has_ssp(&full, &Graph::complete(3).unwrap()).unwrap().strong);
        assert!(matches!(
            has_ssp(&full, &empty),
            Err(Error::PatternMismatch(_))
        ));
    }

    #[test]
    fn nssp_examples() {
        let m = DMatrix::from_row_slice(3, 3, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0]);
        assert!(
            nssp_tangent_check(&m, &ZeroNonzeroPattern::full(3))
                .unwrap()
                .strong
        );
        let r =
            nssp_tangent_check(&DMatrix::identity(2, 2), &ZeroNonzeroPattern::diagonal(2)).unwrap();
        assert!(!r.strong);
        assert_eq!(r.verification_rank, 2);
        assert_eq!(r.kernel_basis.len(), 2);
        let bad = nssp_tangent_check(&m, &ZeroNonzeroPattern::diagonal(3));
        assert!(matches!(bad, Err(Error::PatternMismatch(_))));
    }
}
