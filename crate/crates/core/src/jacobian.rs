//! The Jacobian Method: the matrix of inner products `⟨∇s_i, E⟩` between the
//! coefficient gradients and the basis directions of a pattern, its rank, and the
//! equivalences with the strong properties.
//!
//! For `A ∈ S_L(G)` the rows are `s_1..s_{n-1}` (since `s_n = 0` on `S_L(G)`)
//! and the columns are the edge directions `edge_basis(e)`.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::laplacian::{assemble_unchecked, WeightedLaplacian};
use crate::spectral::{
    cluster_eigenvalues, cofactor_poly, grad_s_all, gradient_scale, minimal_poly_degree,
    numerical_rank_scaled, spectral_norm, sym_eigen, RankResult, SymmetricMatrix,
};
use crate::strong::{has_ssp, has_sspwl, near_decision, nssp_tangent_check, ZeroNonzeroPattern};

/// Maximum number of pendant weights drawn per vertex in [`tree_strong_weights`].
pub const TREE_RETRIES: usize = 64;

/// A Jacobian matrix with its rank decision.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobianReport {
    pub jac: DMatrix<f64>,
    /// Indices `k` of the rows `s_k`.
    pub rows: Vec<usize>,
    /// Free entries, 0-based `(i, j)`; `(i, i)` is a diagonal unit.
    pub cols: Vec<(usize, usize)>,
    pub rank: usize,
    /// `rank == rows.len()`.
    pub full_rank: bool,
    pub det: Option<f64>,
    /// Distinct eigenvalues; for the nSSP variant, a minimal polynomial of degree `n`.
    pub distinct_eigs: bool,
    /// Verdict of the matching strong property (SSPWL, SSP or nSSP).
    pub strong: Option<bool>,
    /// The rank or multiplicity decision is within a factor 10 of its threshold.
    pub indeterminate: bool,
    pub singular_values: Vec<f64>,
    pub tolerance: f64,
}

/// The Laplacian-case equivalence: `full_rank ⇔ distinct_eigs ∧ sspwl`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceTriple {
    pub full_rank: bool,
    pub distinct_eigs: bool,
    pub sspwl: bool,
    /// Some rank or multiplicity decision was close to its threshold.
    pub indeterminate: bool,
}

impl EquivalenceTriple {
    pub fn consistent(&self) -> bool {
        self.full_rank == (self.distinct_eigs && self.sspwl)
    }
}

/// Eigenvalues are pairwise separated under the shared clustering policy.
/// The second flag reports an ambiguous gap.
fn distinct_spectrum(a: &SymmetricMatrix) -> Result<(bool, bool)> {
    let eig = sym_eigen(a)?;
    let norm = eig.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    match cluster_eigenvalues(&eig.values, norm) {
        Ok(c) => Ok((c.len() == a.order(), false)),
        Err(Error::AmbiguousMultiplicity { .. }) => Ok((false, true)),
        Err(e) => Err(e),
    }
}

/// Rank of `jac` after dividing row `r` by the typical size of `∇s_{rows[r]}`.
fn scaled_rank(jac: &DMatrix<f64>, rows: &[usize], n: usize, norm: f64) -> RankResult {
    let mut scaled = jac.clone();
    for (r, &k) in rows.iter().enumerate() {
        let s = gradient_scale(n, k, norm);
        scaled.row_mut(r).scale_mut(1.0 / s);
    }
    numerical_rank_scaled(&scaled, 1.0)
}

fn report(
    jac: DMatrix<f64>,
    rows: Vec<usize>,
    cols: Vec<(usize, usize)>,
    rank: RankResult,
    distinct_eigs: bool,
) -> JacobianReport {
    let det = (jac.nrows() == jac.ncols()).then(|| jac.determinant());
    JacobianReport {
        full_rank: rank.rank == rows.len(),
        indeterminate: near_decision(&rank),
        rank: rank.rank,
        det,
        distinct_eigs,
        strong: None,
        singular_values: rank.singular_values,
        tolerance: rank.tolerance,
        jac,
        rows,
        cols,
    }
}

/// `(n-1) x |E|` matrix `⟨∇s_i(A), edge_basis(e_j)⟩` for arbitrary nonnegative weights.
pub(crate) fn laplacian_jacobian_matrix(g: &Graph, w: &[f64]) -> Result<DMatrix<f64>> {
    let n = g.n();
    let a = assemble_unchecked(g, w);
    let grads = grad_s_all(&a)?;
    let rows = n.saturating_sub(1);
    Ok(DMatrix::from_fn(rows, g.edge_count(), |i, j| {
        let (p, q) = g.edges()[j];
        let gr = &grads[i];
        gr[(p, p)] + gr[(q, q)] - 2.0 * gr[(p, q)]
    }))
}

/// Jacobian of `w ↦ (s_1, ..., s_{n-1})` at a weighted Laplacian of a connected graph.
pub fn laplacian_jacobian(a: &WeightedLaplacian) -> Result<JacobianReport> {
    let g = a.graph();
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    let jac = laplacian_jacobian_matrix(g, a.weights())?;
    let am = a.matrix();
    let rows: Vec<usize> = (1..n).collect();
    let rank = scaled_rank(&jac, &rows, n, am.spectral_norm());
    let (distinct, ambiguous) = distinct_spectrum(&am)?;
    let sspwl = has_sspwl(a)?;
    let mut r = report(jac, rows, g.edges().to_vec(), rank, distinct);
    r.strong = Some(sspwl.strong);
    r.indeterminate |= ambiguous || sspwl.indeterminate;
    Ok(r)
}

/// `det J_A` of a star with leaf weights `w` in closed form:
/// `n! · Π_{i<j} (w_i - w_j)` where `n = w.len() + 1`.
pub fn star_jacobian_det(w: &[f64]) -> f64 {
    let n = w.len() + 1;
    let factorial: f64 = (1..=n).map(|k| k as f64).product();
    let mut prod = 1.0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            prod *= w[i] - w[j];
        }
    }
    factorial * prod
}

fn is_decisively_full(g: &Graph, w: &[f64]) -> Result<bool> {
    let a = WeightedLaplacian::new(g.clone(), w.to_vec())?;
    let jac = laplacian_jacobian_matrix(g, w)?;
    let rows: Vec<usize> = (1..g.n()).collect();
    let rank = scaled_rank(&jac, &rows, g.n(), a.matrix().spectral_norm());
    Ok(rank.rank == rows.len() && rank.margin() > 1e3)
}

/// Positive tree weights with a nonsingular Jacobian, built by attaching one leaf
/// at a time and drawing its weight away from the roots of the determinant.
pub fn tree_strong_weights(t: &Graph, seed: u64) -> Result<Vec<f64>> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    tree_weights_rec(t, &mut rng)
}

fn tree_weights_rec(t: &Graph, rng: &mut ChaCha8Rng) -> Result<Vec<f64>> {
    match t.n() {
        1 => return Ok(Vec::new()),
        2 => return Ok(vec![1.0]),
        _ => {}
    }
    let leaf = *t.leaves().last().expect("trees with n >= 2 have leaves");
    let nb = t.neighbors(leaf)[0];
    let pendant = t
        .edge_index(leaf, nb)
        .expect("leaf is incident to its neighbor");
    let sub = t.remove_vertex(leaf)?;
    let sub_w = tree_weights_rec(&sub, rng)?;
    let mean = sub_w.iter().sum::<f64>() / sub_w.len() as f64;
    let mut w = Vec::with_capacity(t.edge_count());
    w.extend_from_slice(&sub_w[..pendant]);
    w.push(0.0);
    w.extend_from_slice(&sub_w[pendant..]);
    for attempt in 0..TREE_RETRIES {
        let width = mean * 2f64.powf(attempt as f64 / 8.0);
        let eps: f64 = width * (1.0 - rng.random::<f64>());
        w[pendant] = eps;
        if is_decisively_full(t, &w)? {
            return Ok(w);
        }
    }
    Err(Error::RetryBudget(format!(
        "no pendant weight found for vertex {} after {TREE_RETRIES} draws",
        leaf + 1
    )))
}

/// Checks the block structure of `J_A` at pendant weight zero.
///
/// With the pendant column moved last, the last row must be `(0, ..., 0, c)` with
/// `c = n · Π(other weights)` and the leading block must equal the Jacobian of the
/// tree with the leaf removed, all to `1e-9` relative.
pub fn pendant_block_check(t: &Graph, w: &[f64], pendant_edge: usize) -> Result<bool> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    if w.len() != t.edge_count() {
        return Err(Error::WeightCount {
            expected: t.edge_count(),
            got: w.len(),
        });
    }
    let &(p, q) = t
        .edges()
        .get(pendant_edge)
        .ok_or_else(|| Error::InvalidGraph(format!("no edge with index {pendant_edge}")))?;
    let leaf = match (t.degree(p), t.degree(q)) {
        (1, _) => p,
        (_, 1) => q,
        _ => {
            return Err(Error::InvalidGraph(format!(
                "edge {{{}, {}}} is not pendant",
                p + 1,
                q + 1
            )))
        }
    };
    let n = t.n();
    if n < 3 {
        return Ok(true);
    }
    let mut w0 = w.to_vec();
    w0[pendant_edge] = 0.0;
    let jac = laplacian_jacobian_matrix(t, &w0)?;
    let others: Vec<f64> = w
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != pendant_edge)
        .map(|(_, &v)| v)
        .collect();
    let c = n as f64 * others.iter().product::<f64>();
    let order: Vec<usize> = (0..t.edge_count())
        .filter(|&k| k != pendant_edge)
        .chain(std::iter::once(pendant_edge))
        .collect();
    let reordered = DMatrix::from_fn(jac.nrows(), jac.ncols(), |i, j| jac[(i, order[j])]);
    let scale = reordered.amax().max(1.0);
    let last = n - 2;
    let mut ok = (reordered[(last, last)] - c).abs() <= 1e-9 * scale;
    for j in 0..last {
        ok &= reordered[(last, j)].abs() <= 1e-9 * scale;
    }
    let sub = t.remove_vertex(leaf)?;
    let sub_jac = laplacian_jacobian_matrix(&sub, &others)?;
    let lead = reordered.view((0, 0), (last, last));
    ok &= (lead - &sub_jac).amax() <= 1e-9 * scale;
    Ok(ok)
}

/// The three sides of the Laplacian equivalence for one matrix.
pub fn equivalence_check(a: &WeightedLaplacian) -> Result<EquivalenceTriple> {
    let r = laplacian_jacobian(a)?;
    Ok(EquivalenceTriple {
        full_rank: r.full_rank,
        distinct_eigs: r.distinct_eigs,
        sspwl: r.strong.unwrap_or(false),
        indeterminate: r.indeterminate,
    })
}

/// `n x (n + |E|)` Jacobian for `A ∈ S(G)`: diagonal units first, then the
/// two-ones pattern directions of the edges.
pub fn ssp_jacobian(a: &DMatrix<f64>, g: &Graph) -> Result<JacobianReport> {
    let ssp = has_ssp(a, g)?;
    let sym = SymmetricMatrix::new(a.clone())?;
    let n = g.n();
    let grads = grad_s_all(&sym)?;
    let mut cols: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
    cols.extend_from_slice(g.edges());
    let jac = DMatrix::from_fn(n, cols.len(), |k, c| {
        let (i, j) = cols[c];
        if i == j {
            grads[k][(i, i)]
        } else {
            2.0 * grads[k][(i, j)]
        }
    });
    let rows: Vec<usize> = (1..=n).collect();
    let rank = scaled_rank(&jac, &rows, n, sym.spectral_norm());
    let (distinct, ambiguous) = distinct_spectrum(&sym)?;
    let mut r = report(jac, rows, cols, rank, distinct);
    r.strong = Some(ssp.strong);
    r.indeterminate |= ambiguous || ssp.indeterminate;
    Ok(r)
}

/// `n x (#nonzeros)` Jacobian for a square matrix conforming to `pattern`.
pub fn nssp_jacobian(a: &DMatrix<f64>, pattern: &ZeroNonzeroPattern) -> Result<JacobianReport> {
    let nssp = nssp_tangent_check(a, pattern)?;
    let n = pattern.n();
    let grads = cofactor_poly(a)?;
    let cols: Vec<Edge> = pattern.positions();
    let jac = DMatrix::from_fn(n, cols.len(), |k, c| grads[k][cols[c]]);
    let rows: Vec<usize> = (1..=n).collect();
    let rank = scaled_rank(&jac, &rows, n, spectral_norm(a));
    let generic = minimal_poly_degree(a) == n;
    let mut r = report(jac, rows, cols, rank, generic);
    r.strong = Some(nssp.strong);
    r.indeterminate |= nssp.indeterminate;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named_family, Family};

    fn wl(family: Family, n: usize, w: &[f64]) -> WeightedLaplacian {
        WeightedLaplacian::new(named_family(family, n).unwrap(), w.to_vec()).unwrap()
    }

    fn close(a: &DMatrix<f64>, b: &[f64]) -> bool {
        a.iter()
            .zip(DMatrix::from_row_slice(a.nrows(), a.ncols(), b).iter())
            .all(|(x, y)| (x - y).abs() < 1e-9 * (1.0 + y.abs()))
    }

    #[test]
    fn path_three() {
        let r = laplacian_jacobian(&wl(Family::Path, 3, &[1.0, 2.0])).unwrap();
        assert!(close(&r.jac, &[2.0, 2.0, 6.0, 3.0]));
        assert!((r.det.unwrap() + 6.0).abs() < 1e-9);
        assert!(r.full_rank);
    }

    #[test]
    fn star_five_rows() {
        let w = [1.0, 2.0, 3.0, 5.0];
        let r = laplacian_jacobian(&wl(Family::Star, 5, &w)).unwrap();
        for j in 0..4 {
            assert!((r.jac[(0, j)] - 2.0).abs() < 1e-12);
            let others: f64 = (0..4).filter(|&k| k != j).map(|k| w[k]).product();
            assert!((r.jac[(3, j)] - 5.0 * others).abs() < 1e-9 * others);
        }
    }

    #[test]
    fn star_determinant_closed_form() {
        let r = laplacian_jacobian(&wl(Family::Star, 4, &[1.0, 2.0, 3.0])).unwrap();
        assert!(close(
            &r.jac,
            &[2.0, 2.0, 2.0, 15.0, 12.0, 9.0, 24.0, 12.0, 8.0]
        ));
        assert!((r.det.unwrap() + 48.0).abs() < 1e-9);
        assert_eq!(star_jacobian_det(&[1.0, 2.0, 3.0]), -48.0);
        assert_eq!(star_jacobian_det(&[1.0, 1.0, 2.0]), 0.0);
        assert_eq!(star_jacobian_det(&[2.0, 1.0]), 6.0);
        assert_eq!(star_jacobian_det(&[1.0, 2.0, 3.0, 4.0]), 1440.0);
    }

    #[test]
    fn tree_weights_small_cases() {
        let p2 = named_family(Family::Path, 2).unwrap();
        assert_eq!(tree_strong_weights(&p2, 0).unwrap(), vec![1.0]);
        let p3 = named_family(Family::Path, 3).unwrap();
        let w = tree_strong_weights(&p3, 1).unwrap();
        assert!((w[0] - w[1]).abs() > 1e-6);
        assert!(matches!(
            tree_strong_weights(&named_family(Family::Cycle, 4).unwrap(), 0),
            Err(Error::NotATree)
        ));
    }

    #[test]
    fn pendant_blocks() {
        let p3 = named_family(Family::Path, 3).unwrap();
        assert!(pendant_block_check(&p3, &[1.5, 0.7], 1).unwrap());
        let jac = laplacian_jacobian_matrix(&p3, &[1.5, 0.0]).unwrap();
        assert!((jac[(1, 1)] - 4.5).abs() < 1e-12 && jac[(1, 0)].abs() < 1e-12);
        let p4 = named_family(Family::Path, 4).unwrap();
        assert!(pendant_block_check(&p4, &[1.0, 2.0, 9.0], 2).unwrap());
        assert!(pendant_block_check(&p4, &[1.0, 2.0, 9.0], 0).unwrap());
        assert!(pendant_block_check(&p4, &[1.0, 2.0, 9.0], 1).is_err());
        let jac = laplacian_jacobian_matrix(&p4, &[1.0, 2.0, 0.0]).unwrap();
        assert!((jac[(2, 2)] - 8.0).abs() < 1e-12);
        let star = named_family(Family::Star, 4).unwrap();
        assert!(pendant_block_check(&star, &[1.0, 2.0, 4.0], 2).unwrap());
        let jac = laplacian_jacobian_matrix(&star, &[1.0, 2.0, 0.0]).unwrap();
        assert!((jac[(2, 2)] - 8.0).abs() < 1e-12);
    }

    #[test]
    fn equivalence_examples() {
        let e = equivalence_check(&wl(Family::Path, 4, &[0.5, 1.0, 1.5])).unwrap();
        assert_eq!(
            (e.full_rank, e.distinct_eigs, e.sspwl),
            (false, true, false)
        );
        let k4 = WeightedLaplacian::unit(Graph::complete(4).unwrap());
        let e = equivalence_check(&k4).unwrap();
        assert_eq!(
            (e.full_rank, e.distinct_eigs, e.sspwl),
            (false, false, true)
        );
        let e = equivalence_check(&wl(Family::Star, 4, &[1.0, 2.0, 3.0])).unwrap();
        assert_eq!((e.full_rank, e.distinct_eigs, e.sspwl), (true, true, true));
        assert!(e.consistent());
    }

    #[test]
    fn ssp_jacobian_examples() {
        let (a, b, c, d, e, f) = (1.0, 2.0, 3.0, 5.0, -1.0, 4.0);
        let m = DMatrix::from_row_slice(3, 3, &[a, b, c, b, d, e, c, e, f]);
        let r = ssp_jacobian(&m, &Graph::complete(3).unwrap()).unwrap();
        let col_b = r.cols.iter().position(|&p| p == (0, 1)).unwrap();
        assert!(r.jac[(0, col_b)].abs() < 1e-12);
        assert!((r.jac[(1, col_b)] + 2.0 * b).abs() < 1e-9);
        assert!((r.jac[(2, col_b)] - (2.0 * e * c - 2.0 * b * f)).abs() < 1e-9);

        let empty = Graph::empty(3).unwrap();
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&[1.0, 2.0, 3.0]));
        let r = ssp_jacobian(&d, &empty).unwrap();
        assert!(close(
            &r.jac,
            &[1.0, 1.0, 1.0, 5.0, 4.0, 3.0, 6.0, 3.0, 2.0]
        ));
        assert!(r.full_rank);
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&[1.0, 1.0, 2.0]));
        assert!(!ssp_jacobian(&d, &empty).unwrap().full_rank);
    }

    #[test]
    fn nssp_jacobian_examples() {
        let m = DMatrix::from_row_slice(3, 3, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0]);
        let r = nssp_jacobian(&m, &ZeroNonzeroPattern::full(3)).unwrap();
        assert_eq!(minimal_poly_degree(&m), 3);
        assert!(r.full_rank && r.distinct_eigs);
        let r = nssp_jacobian(&DMatrix::identity(2, 2), &ZeroNonzeroPattern::full(2));
        // the identity does not conform to the full pattern
        assert!(r.is_err());
        let i2 = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 1.0]);
        let r = nssp_jacobian(&i2, &ZeroNonzeroPattern::diagonal(2)).unwrap();
        assert_eq!(r.rank, 1);
        let d = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 2.0]);
        let r = nssp_jacobian(&d, &ZeroNonzeroPattern::diagonal(2)).unwrap();
        assert!(r.full_rank);
    }

    #[test]
    fn row_omission_is_sound() {
        let a = wl(Family::Cycle, 5, &[1.0, 0.3, 2.0, 1.7, 0.9]);
        let g = grad_s_all(&a.matrix()).unwrap();
        let last = &g[4];
        for &(p, q) in a.graph().edges() {
            let v = last[(p, q)] * -2.0 + last[(p, p)] + last[(q, q)];
            assert!(v.abs() < 1e-9 * last.amax());
        }
    }
}
