//! Dense numerical primitives: symmetric eigendecomposition, tolerance-based rank,
//! characteristic-polynomial coefficients `s_k` and their gradients, the cofactor
//! polynomial, minimal-polynomial degree and the exponential of a skew matrix.
//!
//! `s_k(M)` is the sum of all `k x k` principal minors of `M`, so that
//! `det(M - xI) = sum_k s_k(M) (-x)^(n-k)`. Its gradient `∇s_k` treats the
//! `(i, j)` and `(j, i)` entries as independent variables.

use std::ops::Deref;

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};

/// Safety factor applied to the unit-roundoff rank threshold.
pub const RANK_SAFETY: f64 = 100.0;

/// Relative gap below which two eigenvalues are treated as one.
pub const CLUSTER_GAP: f64 = 1e-8;

/// Largest order accepted by [`principal_minor_sum_bruteforce`].
pub const BRUTE_FORCE_MAX_ORDER: usize = 12;

const SYMMETRY_TOL: f64 = 1e-12;

/// A real symmetric matrix. Symmetry is exact: inputs are symmetrized on ingest.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix(DMatrix<f64>);

impl SymmetricMatrix {
    /// Accepts `m` when its largest asymmetry `|m_ij - m_ji|` is below `1e-12`.
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Dimension(format!(
                "expected a square matrix, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        let asym = max_asymmetry(&m);
        if asym >= SYMMETRY_TOL {
            return Err(Error::NotSymmetric(asym));
        }
        Ok(Self::symmetrized(m))
    }

    /// Replaces `m` by `(m + mᵀ)/2` without any check.
    pub fn symmetrized(m: DMatrix<f64>) -> Self {
        let t = m.transpose();
        Self((m + t) * 0.5)
    }

    pub fn from_diagonal(d: &[f64]) -> Self {
        Self(DMatrix::from_diagonal(&DVector::from_column_slice(d)))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    pub fn order(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<f64> {
        self.0
    }

    /// Spectral norm, i.e. the largest eigenvalue magnitude.
    pub fn spectral_norm(&self) -> f64 {
        if self.order() == 0 {
            return 0.0;
        }
        self.0
            .clone()
            .singular_values()
            .iter()
            .fold(0.0f64, |acc, &s| acc.max(s))
    }
}

impl Deref for SymmetricMatrix {
    type Target = DMatrix<f64>;

    fn deref(&self) -> &DMatrix<f64> {
        &self.0
    }
}

pub(crate) fn max_asymmetry(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            worst = worst.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    worst
}

/// Eigenvalues in ascending order with matching orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct SymEigen {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

pub fn sym_eigen(a: &SymmetricMatrix) -> Result<SymEigen> {
    let n = a.order();
    if n == 0 {
        return Ok(SymEigen {
            values: Vec::new(),
            vectors: DMatrix::zeros(0, 0),
        });
    }
    let eig = SymmetricEigen::try_new(a.as_matrix().clone(), f64::EPSILON, 10_000)
        .ok_or(Error::EigenNonConvergence)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(SymEigen { values, vectors })
}

/// Outcome of a numerical rank decision.
#[derive(Debug, Clone, PartialEq)]
pub struct RankResult {
    pub rank: usize,
    /// Singular values in descending order.
    pub singular_values: Vec<f64>,
    pub tolerance: f64,
}

impl RankResult {
    /// Smallest singular value counted in the rank, if any.
    pub fn smallest_retained(&self) -> Option<f64> {
        self.rank.checked_sub(1).map(|i| self.singular_values[i])
    }

    /// Largest singular value below the threshold, if any.
    pub fn largest_dropped(&self) -> Option<f64> {
        self.singular_values.get(self.rank).copied()
    }

    /// The smallest retained singular value lies within a factor 10 of the tolerance.
    pub fn near_threshold(&self) -> bool {
        self.smallest_retained()
            .is_some_and(|s| s < 10.0 * self.tolerance)
    }

    /// `σ_r / tol`, or infinity when the rank is zero.
    pub fn margin(&self) -> f64 {
        match self.smallest_retained() {
            Some(s) if self.tolerance > 0.0 => s / self.tolerance,
            Some(_) => f64::INFINITY,
            None => f64::INFINITY,
        }
    }
}

/// `max(rows, cols) · scale · ε · RANK_SAFETY`.
pub fn rank_tolerance(rows: usize, cols: usize, scale: f64) -> f64 {
    rows.max(cols) as f64 * scale * f64::EPSILON * RANK_SAFETY
}

/// Singular values in descending order together with the matching left vectors.
fn sorted_svd(m: &DMatrix<f64>, want_u: bool) -> (Vec<f64>, Option<DMatrix<f64>>) {
    let svd = m.clone().svd(want_u, false);
    let k = svd.singular_values.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let values = order.iter().map(|&i| svd.singular_values[i]).collect();
    let u = svd
        .u
        .map(|u| DMatrix::from_fn(u.nrows(), k, |r, c| u[(r, order[c])]));
    (values, u)
}

/// Rank of `m` with the relative threshold `max(m, n) · σ_max · ε · 100`,
/// or with `override_tol` as an absolute threshold.
pub fn numerical_rank(m: &DMatrix<f64>, override_tol: Option<f64>) -> RankResult {
    rank_impl(m, override_tol, 0.0)
}

/// Like [`numerical_rank`], but the relative threshold uses `max(σ_max, reference)`.
///
/// `reference` is the magnitude the entries would have in a generic instance,
/// so that a matrix which is zero up to rounding is not promoted to full rank.
pub fn numerical_rank_scaled(m: &DMatrix<f64>, reference: f64) -> RankResult {
    rank_impl(m, None, reference)
}

fn rank_impl(m: &DMatrix<f64>, override_tol: Option<f64>, reference: f64) -> RankResult {
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 {
        return RankResult {
            rank: 0,
            singular_values: Vec::new(),
            tolerance: override_tol.unwrap_or(0.0),
        };
    }
    let (values, _) = sorted_svd(m, false);
    let sigma_max = values.first().copied().unwrap_or(0.0);
    let tolerance =
        override_tol.unwrap_or_else(|| rank_tolerance(rows, cols, sigma_max.max(reference)));
    let rank = values.iter().filter(|&&s| s > tolerance).count();
    RankResult {
        rank,
        singular_values: values,
        tolerance,
    }
}

/// Orthonormal basis (as columns) of `{y : yᵀ m = 0}`, using the rank decision `rank`.
pub fn left_kernel(m: &DMatrix<f64>, rank: usize) -> DMatrix<f64> {
    let (rows, cols) = m.shape();
    if rows == 0 {
        return DMatrix::zeros(0, 0);
    }
    if cols == 0 {
        return DMatrix::identity(rows, rows);
    }
    // Zero padding makes the thin U square without changing the nonzero spectrum.
    let mut padded = DMatrix::zeros(rows, cols + rows);
    padded.view_mut((0, 0), (rows, cols)).copy_from(m);
    let (_, u) = sorted_svd(&padded, true);
    let u = u.expect("left vectors requested");
    u.columns(rank, rows - rank).into_owned()
}

/// Orthonormal basis (as columns) of `{x : m x = 0}`.
pub fn right_kernel(m: &DMatrix<f64>, rank: usize) -> DMatrix<f64> {
    left_kernel(&m.transpose(), rank)
}

/// Elementary symmetric functions `e_0..e_len` of `values`.
pub fn elementary_symmetric(values: &[f64]) -> Vec<f64> {
    let mut e = vec![0.0; values.len() + 1];
    e[0] = 1.0;
    for (count, &v) in values.iter().enumerate() {
        for k in (1..=count + 1).rev() {
            e[k] += v * e[k - 1];
        }
    }
    e
}

/// Characteristic coefficients `s_1..s_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffVector(Vec<f64>);

impl CoeffVector {
    pub fn from_eigenvalues(values: &[f64]) -> Self {
        let e = elementary_symmetric(values);
        Self(e[1..].to_vec())
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    /// `s_k` for `0 <= k <= n`, with `s_0 = 1`.
    pub fn s(&self, k: usize) -> f64 {
        if k == 0 {
            1.0
        } else {
            self.0[k - 1]
        }
    }

    /// `s_1..s_n` as a slice.
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// `s_k = e_k(eigenvalues)` for `k = 1..n`.
pub fn char_coeffs(a: &SymmetricMatrix) -> Result<CoeffVector> {
    let eig = sym_eigen(a)?;
    Ok(CoeffVector::from_eigenvalues(&eig.values))
}

/// Sum of all `k x k` principal minors, enumerated directly.
pub fn principal_minor_sum_bruteforce(m: &DMatrix<f64>, k: usize) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::Dimension(
            "principal minors need a square matrix".into(),
        ));
    }
    let n = m.nrows();
    if n > BRUTE_FORCE_MAX_ORDER {
        return Err(Error::TooLarge {
            n,
            max: BRUTE_FORCE_MAX_ORDER,
        });
    }
    if k == 0 {
        return Ok(1.0);
    }
    if k > n {
        return Ok(0.0);
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut total = 0.0;
    loop {
        let sub = DMatrix::from_fn(k, k, |r, c| m[(idx[r], idx[c])]);
        total += sub.determinant();
        // advance to the next k-subset in lexicographic order
        let mut pos = k;
        while pos > 0 && idx[pos - 1] == n - k + pos - 1 {
            pos -= 1;
        }
        if pos == 0 {
            break;
        }
        idx[pos - 1] += 1;
        for q in pos..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
    Ok(total)
}

/// `∇s_1(A)..∇s_n(A)` from the spectral form
/// `∇s_k = Σ_i e_{k-1}(λ without λ_i) v_i v_iᵀ`.
pub fn grad_s_all(a: &SymmetricMatrix) -> Result<Vec<SymmetricMatrix>> {
    let n = a.order();
    let eig = sym_eigen(a)?;
    let mut grads = vec![DMatrix::zeros(n, n); n];
    let mut others = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n {
        others.clear();
        others.extend(
            eig.values
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &v)| v),
        );
        let e = elementary_symmetric(&others);
        let v = eig.vectors.column(i);
        let outer = v * v.transpose();
        for (k, g) in grads.iter_mut().enumerate() {
            *g += &outer * e[k];
        }
    }
    Ok(grads
        .into_iter()
        .map(SymmetricMatrix::symmetrized)
        .collect())
}

/// `∇s_k(A)` for `1 <= k <= n`.
pub fn grad_s(a: &SymmetricMatrix, k: usize) -> Result<SymmetricMatrix> {
    let n = a.order();
    if k == 0 || k > n {
        return Err(Error::Dimension(format!("k = {k} outside 1..={n}")));
    }
    Ok(grad_s_all(a)?.swap_remove(k - 1))
}

/// Cofactor matrix `X^cof`, the transpose of the adjugate.
pub fn cofactor_matrix(m: &DMatrix<f64>) -> DMatrix<f64> {
    let n = m.nrows();
    if n == 1 {
        return DMatrix::from_element(1, 1, 1.0);
    }
    DMatrix::from_fn(n, n, |i, j| {
        let minor = m.clone().remove_row(i).remove_column(j);
        let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
        sign * minor.determinant()
    })
}

/// Coefficient matrices `C_1..C_n` with `(M - xI)^cof = Σ_k C_k (-x)^(n-k)`.
///
/// The cofactor matrix is sampled at `n` Chebyshev nodes on `[-‖M‖, ‖M‖]` and
/// every entry is interpolated by a polynomial of degree `n - 1`. `C_k = ∇s_k(M)`.
pub fn cofactor_poly(m: &DMatrix<f64>) -> Result<Vec<DMatrix<f64>>> {
    if !m.is_square() {
        return Err(Error::Dimension(
            "cofactor polynomial needs a square matrix".into(),
        ));
    }
    let n = m.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let radius = m.norm().max(1.0);
    let nodes: Vec<f64> = (0..n)
        .map(|j| radius * ((2 * j + 1) as f64 * std::f64::consts::PI / (2 * n) as f64).cos())
        .collect();
    // Polynomial in t = -x / radius, degree n - 1.
    let vander = DMatrix::from_fn(n, n, |j, d| (-nodes[j] / radius).powi(d as i32));
    let mut samples = DMatrix::zeros(n, n * n);
    for (j, &x) in nodes.iter().enumerate() {
        let shifted = m - DMatrix::identity(n, n) * x;
        let cof = cofactor_matrix(&shifted);
        for (idx, v) in cof.iter().enumerate() {
            samples[(j, idx)] = *v;
        }
    }
    let lu = vander.lu();
    let coeffs = lu
        .solve(&samples)
        .ok_or_else(|| Error::Dimension("singular interpolation system".into()))?;
    // coefficient of t^d is C_{n-d} · radius^d
    let mut out = vec![DMatrix::zeros(n, n); n];
    for d in 0..n {
        let scale = radius.powi(d as i32);
        let k = n - d;
        out[k - 1] = DMatrix::from_iterator(n, n, coeffs.row(d).iter().map(|c| c / scale));
    }
    Ok(out)
}

/// Gradients of `s_1..s_n` for a general square matrix (via [`cofactor_poly`]).
pub fn grad_s_general(m: &DMatrix<f64>) -> Result<Vec<DMatrix<f64>>> {
    cofactor_poly(m)
}

/// Degree-consistent normalizer for `∇s_k`: `C(n-1, k-1) · ‖M‖₂^(k-1)`.
pub(crate) fn gradient_scale(n: usize, k: usize, norm: f64) -> f64 {
    let binom = binomial(n - 1, k - 1) as f64;
    let base = if norm > 0.0 { norm } else { 1.0 };
    binom * base.powi(k as i32 - 1)
}

/// Numerical rank of a list of matrices flattened into rows, each row divided
/// by `scales[i]` first.
pub(crate) fn stacked_rank(mats: &[DMatrix<f64>], scales: &[f64]) -> RankResult {
    if mats.is_empty() {
        return numerical_rank(&DMatrix::zeros(0, 0), None);
    }
    let len = mats[0].len();
    let stack = DMatrix::from_fn(mats.len(), len, |r, c| mats[r].as_slice()[c] / scales[r]);
    numerical_rank_scaled(&stack, 1.0)
}

/// Numerical rank of `{I, M, ..., M^(n-1)}` flattened to vectors.
pub fn minimal_poly_degree(m: &DMatrix<f64>) -> usize {
    krylov_rank(m).rank
}

pub(crate) fn krylov_rank(m: &DMatrix<f64>) -> RankResult {
    let n = m.nrows();
    let norm = spectral_norm(m);
    let base = if norm > 0.0 { norm } else { 1.0 };
    let mut powers = Vec::with_capacity(n);
    let mut scales = Vec::with_capacity(n);
    let mut p = DMatrix::identity(n, n);
    for k in 0..n {
        powers.push(p.clone());
        scales.push(base.powi(k as i32));
        p = &p * m;
    }
    stacked_rank(&powers, &scales)
}

/// Rank of `{∇s_1, ..., ∇s_n}` with degree-consistent scaling.
pub fn gradient_span_rank(m: &DMatrix<f64>) -> Result<usize> {
    let grads = grad_s_general(m)?;
    let n = m.nrows();
    let norm = spectral_norm(m);
    let scales: Vec<f64> = (1..=n).map(|k| gradient_scale(n, k, norm)).collect();
    Ok(stacked_rank(&grads, &scales).rank)
}

pub(crate) fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone()
        .singular_values()
        .iter()
        .fold(0.0f64, |acc, &s| acc.max(s))
}

/// `exp(K)` for skew-symmetric `K`, by scaling and squaring a truncated Taylor series.
pub fn skew_exp(k: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if !k.is_square() {
        return Err(Error::Dimension("skew_exp needs a square matrix".into()));
    }
    let dev = (k + k.transpose()).norm();
    if dev >= 1e-12 {
        return Err(Error::NotSkewSymmetric(dev));
    }
    let n = k.nrows();
    let norm = k.norm();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scaled = k / 2f64.powi(squarings);
    let mut result = DMatrix::identity(n, n);
    let mut term = DMatrix::identity(n, n);
    for j in 1..=30 {
        term = &term * &scaled / j as f64;
        result += &term;
        if term.norm() < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    Ok(result)
}

/// A group of numerically equal eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cluster {
    pub value: f64,
    pub multiplicity: usize,
}

/// Gap threshold `1e-8 · (1 + norm)` used to decide eigenvalue multiplicities.
pub fn cluster_threshold(norm: f64) -> f64 {
    CLUSTER_GAP * (1.0 + norm)
}

/// Groups ascending eigenvalues whose consecutive gaps are below [`cluster_threshold`].
///
/// A gap within a factor 10 of the threshold is reported as ambiguous.
pub fn cluster_eigenvalues(values: &[f64], norm: f64) -> Result<Vec<Cluster>> {
    let threshold = cluster_threshold(norm);
    let mut clusters: Vec<(f64, usize)> = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        if i > 0 {
            let gap = v - values[i - 1];
            if gap > threshold / 10.0 && gap < threshold * 10.0 {
                return Err(Error::AmbiguousMultiplicity { gap, threshold });
            }
            if gap <= threshold {
                let last = clusters
                    .last_mut()
                    .expect("cluster exists after first value");
                last.0 += v;
                last.1 += 1;
                continue;
            }
        }
        clusters.push((v, 1));
    }
    Ok(clusters
        .into_iter()
        .map(|(sum, m)| Cluster {
            value: sum / m as f64,
            multiplicity: m,
        })
        .collect())
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}
