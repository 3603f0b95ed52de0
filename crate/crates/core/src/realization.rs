//! Constructive spectrum realization in weight space.
//!
//! The unknowns are the edge weights and the equations are `s_k(A(w)) = t_k`,
//! `k = 1..n-1`, where `t_k` are the elementary symmetric functions of the target
//! nonzero eigenvalues. Each Gauss-Newton step is the minimum-norm least-squares
//! step, so the same solver handles the square case (realizing a nearby spectrum on
//! the same graph) and the underdetermined case (moving a spectrum onto a supergraph).

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::jacobian::laplacian_jacobian_matrix;
use crate::laplacian::{assemble_unchecked, WeightedLaplacian, WEIGHT_FLOOR};
use crate::spectral::{elementary_symmetric, numerical_rank_scaled, sym_eigen};
use crate::strong::{has_sspwl, VerificationReport};

/// A Laplacian spectrum `0 = λ_1 <= λ_2 <= ... <= λ_n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumTarget {
    eigenvalues: Vec<f64>,
}

impl SpectrumTarget {
    /// Sorts the eigenvalues; the smallest must be zero and none may be negative.
    pub fn new(mut eigenvalues: Vec<f64>) -> Result<Self> {
        if eigenvalues.is_empty() {
            return Err(Error::InvalidSpectrum("empty spectrum".into()));
        }
        if eigenvalues.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidSpectrum("non-finite eigenvalue".into()));
        }
        eigenvalues.sort_by(f64::total_cmp);
        if eigenvalues[0] != 0.0 {
            return Err(Error::InvalidSpectrum(format!(
                "smallest eigenvalue is {}, expected 0",
                eigenvalues[0]
            )));
        }
        Ok(Self { eigenvalues })
    }

    /// `{0} ∪ nonzero`.
    pub fn from_nonzero(nonzero: &[f64]) -> Result<Self> {
        if nonzero.iter().any(|&v| v <= 0.0) {
            return Err(Error::InvalidSpectrum(
                "nonzero part must be positive".into(),
            ));
        }
        let mut all = vec![0.0];
        all.extend_from_slice(nonzero);
        Self::new(all)
    }

    /// Spectrum of an assembled Laplacian, with the smallest eigenvalue set to zero.
    pub fn of(a: &WeightedLaplacian) -> Result<Self> {
        let mut values = sym_eigen(&a.matrix())?.values;
        values[0] = 0.0;
        Ok(Self {
            eigenvalues: values,
        })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(self.eigenvalues.iter().map(|v| v * c).collect())
    }
}

/// `t_k = e_k(λ_2, ..., λ_n)` for `k = 1..n-1`.
pub fn s_target(spectrum: &SpectrumTarget) -> Vec<f64> {
    elementary_symmetric(&spectrum.eigenvalues[1..])[1..].to_vec()
}

/// Solver settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealizeOptions {
    /// Largest relative change of the scaled coefficients per homotopy stage.
    pub max_hop: f64,
    /// Gauss-Newton iterations per homotopy stage.
    pub max_iter: usize,
    /// Step halvings before a stage is declared stalled.
    pub max_halvings: usize,
    pub weight_floor: f64,
    /// Final residual bound is `tol · (1 + ‖t‖)`.
    pub tol: f64,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        RealizeOptions {
            max_hop: 0.2,
            max_iter: 100,
            max_halvings: 30,
            weight_floor: WEIGHT_FLOOR,
            tol: 1e-10,
        }
    }
}

/// Outcome of a successful solve.
#[derive(Debug, Clone, PartialEq)]
pub struct RealizationResult {
    pub weighted: WeightedLaplacian,
    /// `‖s(w) - t‖` in the raw coefficients.
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    pub final_report: VerificationReport,
}

impl RealizationResult {
    pub fn weights(&self) -> &[f64] {
        self.weighted.weights()
    }
}

/// `s_1..s_{n-1}` at the given weights.
fn coefficients(g: &Graph, w: &[f64]) -> Result<Vec<f64>> {
    let eig = sym_eigen(&assemble_unchecked(g, w))?;
    let e = elementary_symmetric(&eig.values);
    Ok(e[1..g.n()].to_vec())
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Newton state for one graph and one coefficient scale `σ`.
struct Solver<'a> {
    g: &'a Graph,
    sigma: f64,
    opts: &'a RealizeOptions,
    iterations: usize,
}

enum Stall {
    Floor(Vec<f64>),
    Rank(Vec<f64>),
    Budget(f64),
}

impl Solver<'_> {
    fn scaled_residual(&self, s: &[f64], goal: &[f64]) -> Vec<f64> {
        s.iter()
            .zip(goal)
            .enumerate()
            .map(|(k, (a, b))| (a - b) / self.sigma.powi(k as i32 + 1))
            .collect()
    }

    /// Runs Gauss-Newton toward `goal` until the scaled residual is below `stop`.
    fn solve_stage(
        &mut self,
        w: &mut Vec<f64>,
        goal: &[f64],
        stop: f64,
    ) -> std::result::Result<f64, Stall> {
        let s = coefficients(self.g, w).map_err(|_| Stall::Budget(f64::NAN))?;
        let mut r = self.scaled_residual(&s, goal);
        let mut rn = norm(&r);
        for _ in 0..self.opts.max_iter {
            if rn <= stop {
                return Ok(rn);
            }
            self.iterations += 1;
            let mut jac = laplacian_jacobian_matrix(self.g, w).map_err(|_| Stall::Budget(rn))?;
            for k in 0..jac.nrows() {
                jac.row_mut(k)
                    .scale_mut(1.0 / self.sigma.powi(k as i32 + 1));
            }
            let step = min_norm_step(&jac, &r);
            let mut alpha = 1.0;
            let mut hit_floor = false;
            let mut accepted = None;
            for _ in 0..=self.opts.max_halvings {
                let trial: Vec<f64> = w.iter().zip(&step).map(|(a, d)| a + alpha * d).collect();
                if trial.iter().any(|&x| x < self.opts.weight_floor) {
                    hit_floor = true;
                } else if let Ok(s) = coefficients(self.g, &trial) {
                    let rt = self.scaled_residual(&s, goal);
                    let rtn = norm(&rt);
                    if rtn < rn {
                        accepted = Some((trial, rt, rtn));
                        break;
                    }
                }
                alpha *= 0.5;
            }
            match accepted {
                Some((trial, rt, rtn)) => {
                    *w = trial;
                    r = rt;
                    rn = rtn;
                }
                None => {
                    // no descent left: close enough for the eigenvalue polish
                    if rn <= stop * 1e3 {
                        return Ok(rn);
                    }
                    let rank = numerical_rank_scaled(&jac, 1.0);
                    if rank.rank < jac.nrows().min(jac.ncols()) {
                        return Err(Stall::Rank(w.clone()));
                    }
                    if hit_floor {
                        return Err(Stall::Floor(w.clone()));
                    }
                    return Err(Stall::Budget(rn));
                }
            }
        }
        if rn <= stop {
            Ok(rn)
        } else {
            Err(Stall::Budget(rn))
        }
    }
}

/// `δ = -J⁺ r` through the SVD, dropping singular values below `1e-12 · σ_max`.
fn min_norm_step(jac: &DMatrix<f64>, r: &[f64]) -> Vec<f64> {
    let svd = jac.clone().svd(true, true);
    let smax = svd.singular_values.iter().fold(0.0f64, |m, &s| m.max(s));
    let rhs = DVector::from_column_slice(r);
    match svd.solve(&rhs, 1e-12 * smax) {
        Ok(x) => x.iter().map(|v| -v).collect(),
        Err(_) => vec![0.0; jac.ncols()],
    }
}

fn stall_error(stall: Stall) -> Error {
    match stall {
        Stall::Floor(weights) => Error::WeightFloor { weights },
        Stall::Rank(weights) => Error::RankDeficientIterate { weights },
        Stall::Budget(residual) => Error::IterationBudget { residual },
    }
}

/// Relative size of the deterministic kick applied to a start whose Jacobian
/// cannot make progress.
const KICK: f64 = 1e-3;

fn spectrum_at(g: &Graph, w: &[f64]) -> std::result::Result<Vec<f64>, Stall> {
    let mut v = sym_eigen(&assemble_unchecked(g, w))
        .map_err(|_| Stall::Budget(f64::NAN))?
        .values;
    v[0] = 0.0;
    Ok(v)
}

/// Homotopy over sorted spectra plus Gauss-Newton in coefficient space, then a
/// Gauss-Newton polish directly on the eigenvalues.
fn solve(
    g: &Graph,
    start: Vec<f64>,
    target: &[f64],
    opts: &RealizeOptions,
) -> std::result::Result<(Vec<f64>, f64, usize), Stall> {
    match solve_from(g, start.clone(), target, opts) {
        Err(Stall::Rank(_)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            let kicked: Vec<f64> = start
                .iter()
                .map(|w| w * (1.0 + KICK * (2.0 * rng.random::<f64>() - 1.0)))
                .collect();
            solve_from(g, kicked, target, opts)
        }
        other => other,
    }
}

fn solve_from(
    g: &Graph,
    start: Vec<f64>,
    target: &[f64],
    opts: &RealizeOptions,
) -> std::result::Result<(Vec<f64>, f64, usize), Stall> {
    let n = g.n();
    let t = elementary_symmetric(&target[1..])[1..].to_vec();
    let sigma = if n > 1 && t[0] > 0.0 {
        t[0] / (n - 1) as f64
    } else {
        1.0
    };
    let mut solver = Solver {
        g,
        sigma,
        opts,
        iterations: 0,
    };
    let lambda0 = spectrum_at(g, &start)?;
    let diff: Vec<f64> = lambda0.iter().zip(target).map(|(a, b)| a - b).collect();
    let distance = norm(&diff) / norm(target).max(f64::MIN_POSITIVE);
    let stages = ((distance / opts.max_hop).ceil() as usize).max(1);
    let raw_tol = opts.tol * (1.0 + norm(&t));
    // the polish below takes over from here
    let final_stop = 1e-8;
    let mut w = start;
    if distance > 0.0 {
        for stage in 1..=stages {
            let theta = stage as f64 / stages as f64;
            let goal_spec: Vec<f64> = lambda0
                .iter()
                .zip(target)
                .map(|(a, b)| a + theta * (b - a))
                .collect();
            let goal = elementary_symmetric(&goal_spec[1..])[1..].to_vec();
            let stop = if stage == stages { final_stop } else { 1e-6 };
            solver.solve_stage(&mut w, &goal, stop)?;
        }
        solver.iterations += polish_eigenvalues(g, &mut w, target, opts);
    }
    let s = coefficients(g, &w).map_err(|_| Stall::Budget(f64::NAN))?;
    let residual = norm(&s.iter().zip(&t).map(|(a, b)| a - b).collect::<Vec<_>>());
    if residual > raw_tol {
        return Err(Stall::Budget(residual));
    }
    Ok((w, residual, solver.iterations))
}

/// Gauss-Newton on `λ_2..λ_n` with `∂λ_i/∂w_e = (v_i[a] - v_i[b])²`.
///
/// Coefficient residuals resolve a multiple eigenvalue only to the square root of
/// their accuracy; this step recovers full accuracy. Returns the iteration count.
fn polish_eigenvalues(g: &Graph, w: &mut Vec<f64>, target: &[f64], opts: &RealizeOptions) -> usize {
    let evaluate = |w: &[f64]| -> Option<(Vec<f64>, DMatrix<f64>)> {
        let eig = sym_eigen(&assemble_unchecked(g, w)).ok()?;
        let r: Vec<f64> = eig.values[1..]
            .iter()
            .zip(&target[1..])
            .map(|(a, b)| a - b)
            .collect();
        Some((r, eig.vectors))
    };
    let stop = 1e-14 * (1.0 + norm(target));
    let Some((mut r, mut vecs)) = evaluate(w) else {
        return 0;
    };
    let mut iterations = 0;
    for _ in 0..opts.max_iter {
        let rn = norm(&r);
        if rn <= stop {
            break;
        }
        let jac = DMatrix::from_fn(r.len(), g.edge_count(), |i, e| {
            let (a, b) = g.edges()[e];
            (vecs[(a, i + 1)] - vecs[(b, i + 1)]).powi(2)
        });
        let step = min_norm_step(&jac, &r);
        let mut alpha = 1.0;
        let mut accepted = false;
        for _ in 0..=opts.max_halvings {
            let trial: Vec<f64> = w.iter().zip(&step).map(|(a, d)| a + alpha * d).collect();
            if trial.iter().all(|&x| x >= opts.weight_floor) {
                if let Some((rt, vt)) = evaluate(&trial) {
                    if norm(&rt) < rn {
                        *w = trial;
                        r = rt;
                        vecs = vt;
                        accepted = true;
                        break;
                    }
                }
            }
            alpha *= 0.5;
        }
        if !accepted {
            break;
        }
        iterations += 1;
    }
    iterations
}

fn finish(g: &Graph, w: Vec<f64>, residual: f64, iterations: usize) -> Result<RealizationResult> {
    let weighted = WeightedLaplacian::new(g.clone(), w)?;
    let final_report = has_sspwl(&weighted)?;
    Ok(RealizationResult {
        weighted,
        residual,
        iterations,
        converged: true,
        final_report,
    })
}

/// Finds weights on `g` whose Laplacian has the target spectrum, starting from a
/// strong matrix near it.
pub fn realize_spectrum(
    g: &Graph,
    target: &SpectrumTarget,
    start: &WeightedLaplacian,
    opts: &RealizeOptions,
) -> Result<RealizationResult> {
    if start.graph() != g {
        return Err(Error::PatternMismatch(
            "start matrix lives on a different graph".into(),
        ));
    }
    if target.n() != g.n() {
        return Err(Error::Dimension(format!(
            "target has {} eigenvalues for {} vertices",
            target.n(),
            g.n()
        )));
    }
    if !has_sspwl(start)?.strong {
        return Err(Error::NotStrong);
    }
    let (w, residual, iterations) =
        solve(g, start.weights().to_vec(), target.eigenvalues(), opts).map_err(stall_error)?;
    finish(g, w, residual, iterations)
}

/// Moves the spectrum of a strong `a` onto the supergraph `h`, seeding every new
/// edge with weight `eps`.
pub fn transfer_to_supergraph(
    a: &WeightedLaplacian,
    h: &Graph,
    eps: f64,
    opts: &RealizeOptions,
) -> Result<RealizationResult> {
    if !a.graph().is_spanning_subgraph_of(h) {
        return Err(Error::PatternMismatch(
            "target graph does not contain the source graph".into(),
        ));
    }
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::InvalidWeight(format!(
            "eps = {eps} must be positive"
        )));
    }
    let report = has_sspwl(a)?;
    if !report.strong {
        return Err(Error::NotStrong);
    }
    if a.graph() == h {
        return Ok(RealizationResult {
            weighted: a.clone(),
            residual: 0.0,
            iterations: 0,
            converged: true,
            final_report: report,
        });
    }
    let start: Vec<f64> = h
        .edges()
        .iter()
        .map(|&(i, j)| match a.graph().edge_index(i, j) {
            Some(k) => a.weights()[k],
            None => eps,
        })
        .collect();
    let target = SpectrumTarget::of(a)?;
    match solve(h, start, target.eigenvalues(), opts) {
        Ok((w, residual, iterations)) => finish(h, w, residual, iterations),
        Err(Stall::Rank(weights)) => Err(Error::RankDeficientIterate { weights }),
        Err(_) => Err(Error::NotContracting {
            suggested_eps: eps / 10.0,
        }),
    }
}

/// Random draws tried by [`strong_start`] before falling back to a tree.
const START_DRAWS: usize = 16;

/// A strong matrix on a connected `g`: unit weights when they are strong, then
/// seeded weights in `[1/2, 2]`, then strong tree weights transferred onto `g`.
pub fn strong_start(g: &Graph, seed: u64) -> Result<WeightedLaplacian> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let unit = WeightedLaplacian::unit(g.clone());
    if has_sspwl(&unit)?.strong {
        return Ok(unit);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..START_DRAWS {
        let w = (0..g.edge_count())
            .map(|_| 2f64.powf(rng.random_range(-1.0..1.0)))
            .collect();
        let a = WeightedLaplacian::new(g.clone(), w)?;
        let r = has_sspwl(&a)?;
        if r.strong && !r.indeterminate {
            return Ok(a);
        }
    }
    let tree = g.spanning_tree()?;
    let w = crate::jacobian::tree_strong_weights(&tree, seed)?;
    let mut eps = 1e-2;
    let mut last = Error::RetryBudget("no transfer attempted".into());
    for _ in 0..4 {
        let a = WeightedLaplacian::new(tree.clone(), w.clone())?;
        match transfer_to_supergraph(&a, g, eps, &RealizeOptions::default()) {
            Ok(r) if r.final_report.strong => return Ok(r.weighted),
            Ok(_) => last = Error::NotStrong,
            Err(Error::NotContracting { suggested_eps }) => {
                last = Error::NotContracting { suggested_eps };
            }
            Err(e) => return Err(e),
        }
        eps /= 10.0;
    }
    Err(Error::RetryBudget(format!(
        "no strong start on {g}: {last}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named_family, Family};

    fn spectrum_of(a: &WeightedLaplacian) -> Vec<f64> {
        sym_eigen(&a.matrix()).unwrap().values
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
    fn targets() {
        let t = SpectrumTarget::new(vec![0.0, 2.0, 4.0, 8.0]).unwrap();
        assert_eq!(s_target(&t), vec![14.0, 56.0, 64.0]);
        let t = SpectrumTarget::new(vec![10.0, 0.0, 4.0, 4.0]).unwrap();
        assert_eq!(s_target(&t), vec![18.0, 96.0, 160.0]);
        let l = 1.5;
        let t = SpectrumTarget::from_nonzero(&[l, l, l]).unwrap();
        assert_eq!(s_target(&t), vec![3.0 * l, 3.0 * l * l, l * l * l]);
        assert!(SpectrumTarget::new(vec![0.1, 1.0]).is_err());
        assert!(SpectrumTarget::new(vec![-1.0, 0.0]).is_err());
    }

    #[test]
    fn identity_target_takes_no_iterations() {
        let g = named_family(Family::Path, 4).unwrap();
        let start = WeightedLaplacian::new(g.clone(), vec![1.0, 2.5, 0.7]).unwrap();
        let t = SpectrumTarget::of(&start).unwrap();
        let r = realize_spectrum(&g, &t, &start, &RealizeOptions::default()).unwrap();
        assert_eq!(r.iterations, 0);
        assert_eq!(r.weights(), start.weights());
    }

    #[test]
    fn star_recovers_forward_spectrum() {
        let g = named_family(Family::Star, 4).unwrap();
        let start = WeightedLaplacian::new(g.clone(), vec![1.0, 2.0, 3.0]).unwrap();
        let truth = WeightedLaplacian::new(g.clone(), vec![1.1, 2.0, 2.9]).unwrap();
        let t = SpectrumTarget::of(&truth).unwrap();
        let r = realize_spectrum(&g, &t, &start, &RealizeOptions::default()).unwrap();
        assert!(r.converged);
        for (a, b) in spectrum_of(&r.weighted).iter().zip(t.eigenvalues()) {
            assert!((a - b).abs() <= 1e-8 * (1.0 + b.abs()));
        }
    }

    #[test]
    fn complete_graph_from_repeated_start() {
        let g = Graph::complete(4).unwrap();
        let start = WeightedLaplacian::unit(g.clone());
        let t = SpectrumTarget::new(vec![0.0, 3.9, 4.0, 4.1]).unwrap();
        let r = realize_spectrum(&g, &t, &start, &RealizeOptions::default()).unwrap();
        for (a, b) in spectrum_of(&r.weighted).iter().zip(t.eigenvalues()) {
            assert!((a - b).abs() <= 1e-8 * (1.0 + b.abs()));
        }
    }

    #[test]
    fn weak_start_is_rejected() {
        let g = named_family(Family::Path, 4).unwrap();
        let start = WeightedLaplacian::new(g.clone(), vec![0.5, 1.0, 1.5]).unwrap();
        let t = SpectrumTarget::of(&start).unwrap();
        assert!(matches!(
            realize_spectrum(&g, &t, &start, &RealizeOptions::default()),
            Err(Error::NotStrong)
        ));
    }

    #[test]
    fn transfer_kne_to_complete() {
        let a = kne_example();
        let h = Graph::complete(4).unwrap();
        let r = transfer_to_supergraph(&a, &h, 1e-3, &RealizeOptions::default()).unwrap();
        assert!(r.residual <= 1e-10);
        assert_eq!(r.weighted.graph(), &h);
        for (v, e) in spectrum_of(&r.weighted).iter().zip([0.0, 4.0, 4.0, 10.0]) {
            assert!((v - e).abs() <= 1e-8 * (1.0 + e));
        }
        assert!(r.final_report.strong);
    }

    #[test]
    fn strong_start_on_weak_unit_graph() {
        // unit weights on the 4-cycle are weak
        let g = named_family(Family::Cycle, 4).unwrap();
        assert!(
            !has_sspwl(&WeightedLaplacian::unit(g.clone()))
                .unwrap()
                .strong
        );
        let a = strong_start(&g, 0).unwrap();
        assert_eq!(a.graph(), &g);
        assert!(has_sspwl(&a).unwrap().strong);
    }

    #[test]
    fn transfer_to_same_graph_is_identity() {
        let a = kne_example();
        let r = transfer_to_supergraph(&a, a.graph(), 1e-3, &RealizeOptions::default()).unwrap();
        assert_eq!(r.weighted, a);
        assert_eq!(r.iterations, 0);
    }

    #[test]
    fn transfer_path_to_paw() {
        // the paw contains the path 1-2-3 plus {2,4}, {3,4}; use a path labeled to fit
        let path = Graph::new(4, &[(0, 1), (1, 3), (2, 3)]).unwrap();
        let w = crate::jacobian::tree_strong_weights(&path, 5).unwrap();
        let a = WeightedLaplacian::new(path, w).unwrap();
        let paw = named_family(Family::Paw, 4).unwrap();
        let r = transfer_to_supergraph(&a, &paw, 1e-3, &RealizeOptions::default()).unwrap();
        let before = spectrum_of(&a);
        for (v, e) in spectrum_of(&r.weighted).iter().zip(&before) {
            assert!((v - e).abs() <= 1e-8 * (1.0 + e));
        }
        assert!(r.final_report.strong);
    }
}
