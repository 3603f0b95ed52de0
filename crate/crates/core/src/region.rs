//! Spectral regions of the connected graphs on four vertices.
//!
//! Every matrix is normalized to `tr(A) = 2m`, so a spectrum `{0, λ2, λ3, λ4}`
//! is a point `(λ2, λ3)` with `λ4 = 2m - λ2 - λ3`. Weak matrices map onto the
//! boundary curves listed in [`BoundaryCurveSet`], and their coefficients
//! `(s2, s3)` satisfy the recorded polynomial relations.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{named_family, Family, Graph};
use crate::laplacian::{normalize_trace, WeightedLaplacian, WEIGHT_FLOOR};
use crate::optimize::{nelder_mead, NelderMeadOptions};
use crate::spectral::{char_coeffs, sym_eigen};
use crate::strong::{has_sspwl, has_sspwl_with, weak_form_kne, SspwlOptions};

/// Default number of starts for [`absolute_algebraic_connectivity`].
pub const AAC_MULTISTART: usize = 64;

/// Relative rank tolerance used to classify an optimizer output as weak.
/// The simplex method locates maximizers only to about `1e-7`.
pub const AAC_WEAK_RTOL: f64 = 1e-5;

/// Weight range for region sampling (log-uniform).
pub const REGION_WEIGHT_RANGE: (f64, f64) = (1e-2, 1e2);

/// Parameter range for weak-locus sampling (log-uniform).
pub const WEAK_PARAM_RANGE: (f64, f64) = (0.1, 10.0);

/// The six connected graphs on four vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family4 {
    /// Edges `12, 23, 34` with weights `x, z, y`.
    P4,
    /// Center 1; leaf weights `x, y, z`.
    Star,
    /// Edges `12, 23, 24, 34` with weights `x, y, w, z`.
    Paw,
    /// Edges `12, 14, 23, 34` with weights `x, w, y, z`.
    C4,
    /// `K4` minus `{1, 4}`.
    Kne,
    K4,
}

impl Family4 {
    pub const ALL: [Family4; 6] = [
        Family4::P4,
        Family4::Star,
        Family4::Paw,
        Family4::C4,
        Family4::Kne,
        Family4::K4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family4::P4 => "p4",
            Family4::Star => "star",
            Family4::Paw => "paw",
            Family4::C4 => "c4",
            Family4::Kne => "kne",
            Family4::K4 => "k4",
        }
    }

    pub fn graph(self) -> Graph {
        let (family, n) = match self {
            Family4::P4 => (Family::Path, 4),
            Family4::Star => (Family::Star, 4),
            Family4::Paw => (Family::Paw, 4),
            Family4::C4 => (Family::Cycle, 4),
            Family4::Kne => (Family::CompleteMinusEdge, 4),
            Family4::K4 => (Family::Complete, 4),
        };
        named_family(family, n).expect("order-4 families are valid")
    }

    /// `2m`, the trace after normalization.
    pub fn two_m(self) -> f64 {
        2.0 * self.graph().edge_count() as f64
    }

    /// The order-4 family whose canonical labeling equals `g`, if any.
    pub fn of_graph(g: &Graph) -> Option<Family4> {
        Family4::ALL.into_iter().find(|f| f.graph() == *g)
    }
}

impl fmt::Display for Family4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family4 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "p4" | "path" => Ok(Family4::P4),
            "star" | "k13" | "k1,3" => Ok(Family4::Star),
            "paw" => Ok(Family4::Paw),
            "c4" | "cycle" => Ok(Family4::C4),
            "kne" | "k4-e" | "k4e" | "complete_minus_edge" => Ok(Family4::Kne),
            "k4" | "complete" => Ok(Family4::K4),
            other => Err(Error::Parse(format!("unknown order-4 family '{other}'"))),
        }
    }
}

/// A bivariate polynomial `Σ c · a^i · b^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly2 {
    pub id: &'static str,
    /// `(c, i, j)`.
    pub terms: Vec<(f64, i32, i32)>,
}

impl Poly2 {
    fn new(id: &'static str, terms: &[(f64, i32, i32)]) -> Self {
        Self {
            id,
            terms: terms.to_vec(),
        }
    }

    pub fn eval(&self, a: f64, b: f64) -> f64 {
        self.terms
            .iter()
            .map(|&(c, i, j)| c * a.powi(i) * b.powi(j))
            .sum()
    }

    pub fn gradient(&self, a: f64, b: f64) -> (f64, f64) {
        let mut ga = 0.0;
        let mut gb = 0.0;
        for &(c, i, j) in &self.terms {
            if i > 0 {
                ga += c * i as f64 * a.powi(i - 1) * b.powi(j);
            }
            if j > 0 {
                gb += c * j as f64 * a.powi(i) * b.powi(j - 1);
            }
        }
        (ga, gb)
    }

    /// `|p| / ‖∇p‖`, a first-order distance to the zero set; `|p|` where `∇p` vanishes.
    pub fn normalized(&self, a: f64, b: f64) -> f64 {
        let v = self.eval(a, b).abs();
        let (ga, gb) = self.gradient(a, b);
        let g = ga.hypot(gb);
        if g > 1e-12 {
            v / g
        } else {
            v
        }
    }
}

/// The potential boundary curves in `(λ2, λ3)` and the coefficient relations in
/// `(s2, s3)` of one family.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryCurveSet {
    pub family: Family4,
    pub curves: Vec<Poly2>,
    pub relations: Vec<Poly2>,
    /// `λ2 = 0`, `λ2 = λ3` and `λ3 = λ4` (that is `λ2 + 2λ3 = 2m`).
    pub trivial: Vec<Poly2>,
}

impl BoundaryCurveSet {
    pub fn of(family: Family4) -> Self {
        let two_m = family.two_m();
        let r3 = 3f64.sqrt();
        let (curves, relations) = match family {
            Family4::P4 => (
                vec![
                    Poly2::new(
                        "p4_out",
                        &[
                            (-1.0, 2, 0),
                            (-1.0, 1, 1),
                            (6.0, 1, 0),
                            (1.0, 0, 2),
                            (-3.0, 0, 1),
                        ],
                    ),
                    Poly2::new(
                        "p4_in",
                        &[
                            (4.0, 6, 0),
                            (12.0, 5, 1),
                            (-72.0, 5, 0),
                            (-57.0, 4, 2),
                            (-54.0, 4, 1),
                            (459.0, 4, 0),
                            (-134.0, 3, 3),
                            (936.0, 3, 2),
                            (-594.0, 3, 1),
                            (-1188.0, 3, 0),
                            (-57.0, 2, 4),
                            (936.0, 2, 3),
                            (-4023.0, 2, 2),
                            (3564.0, 2, 1),
                            (972.0, 2, 0),
                            (12.0, 1, 5),
                            (-54.0, 1, 4),
                            (-594.0, 1, 3),
                            (3564.0, 1, 2),
                            (-3888.0, 1, 1),
                            (4.0, 0, 6),
                            (-72.0, 0, 5),
                            (459.0, 0, 4),
                            (-1188.0, 0, 3),
                            (972.0, 0, 2),
                        ],
                    ),
                ],
                vec![
                    Poly2::new(
                        "p4_s_a",
                        &[
                            (1.0, 3, 0),
                            (-9.0, 2, 0),
                            (-30.0, 1, 1),
                            (8.0, 0, 2),
                            (243.0, 0, 1),
                        ],
                    ),
                    Poly2::new(
                        "p4_s_b",
                        &[
                            (4.0, 3, 0),
                            (-27.0, 2, 0),
                            (-162.0, 1, 1),
                            (81.0, 0, 2),
                            (972.0, 0, 1),
                        ],
                    ),
                ],
            ),
            Family4::Star => (
                vec![
                    Poly2::new(
                        "star_a",
                        &[
                            (8.0, 2, 0),
                            (-1.0, 1, 1),
                            (-1.0, 0, 2),
                            (-12.0, 1, 0),
                            (6.0, 0, 1),
                        ],
                    ),
                    Poly2::new(
                        "star_b",
                        &[
                            (1.0, 2, 0),
                            (1.0, 1, 1),
                            (-8.0, 0, 2),
                            (-6.0, 1, 0),
                            (12.0, 0, 1),
                        ],
                    ),
                ],
                vec![Poly2::new(
                    "star_s",
                    &[
                        (64.0, 3, 0),
                        (-432.0, 2, 0),
                        (-1944.0, 1, 1),
                        (729.0, 0, 2),
                        (11664.0, 0, 1),
                    ],
                )],
            ),
            Family4::Paw => (
                vec![
                    Poly2::new(
                        "paw_a",
                        &[
                            (1.0, 1, 0),
                            (0.5 - r3 / 6.0, 0, 1),
                            (-4.0 + 4.0 * r3 / 3.0, 0, 0),
                        ],
                    ),
                    Poly2::new("paw_b", &[(1.0, 1, 0), (3.0 + r3, 0, 1), (-8.0, 0, 0)]),
                    Poly2::new("paw_c", &[(1.0, 1, 0), (-2.0 + r3, 0, 1)]),
                ],
                vec![Poly2::new(
                    "paw_s",
                    &[
                        (6.0, 3, 0),
                        (-64.0, 2, 0),
                        (-320.0, 1, 1),
                        (125.0, 0, 2),
                        (3072.0, 0, 1),
                    ],
                )],
            ),
            Family4::C4 => (
                vec![
                    Poly2::new("c4_a", &[(1.0, 1, 0), (-2.0, 0, 0)]),
                    Poly2::new("c4_b", &[(1.0, 0, 1), (-2.0, 0, 0)]),
                    Poly2::new("c4_c", &[(1.0, 1, 0), (1.0, 0, 1), (-4.0, 0, 0)]),
                ],
                vec![Poly2::new(
                    "c4_s",
                    &[
                        (8.0, 2, 0),
                        (-6.0, 1, 1),
                        (1.0, 0, 2),
                        (-224.0, 1, 0),
                        (88.0, 0, 1),
                        (1536.0, 0, 0),
                    ],
                )],
            ),
            Family4::Kne => (
                vec![
                    Poly2::new("kne_a", &[(1.0, 0, 1), (-2.0, 1, 0)]),
                    Poly2::new("kne_b", &[(3.0, 1, 0), (1.0, 0, 1), (-10.0, 0, 0)]),
                ],
                Vec::new(),
            ),
            Family4::K4 => (Vec::new(), Vec::new()),
        };
        let trivial = vec![
            Poly2::new("lambda2_zero", &[(1.0, 1, 0)]),
            Poly2::new("lambda2_eq_lambda3", &[(1.0, 1, 0), (-1.0, 0, 1)]),
            Poly2::new(
                "lambda3_eq_lambda4",
                &[(1.0, 1, 0), (2.0, 0, 1), (-two_m, 0, 0)],
            ),
        ];
        BoundaryCurveSet {
            family,
            curves,
            relations,
            trivial,
        }
    }
}

/// A normalized spectrum with its weak/strong tag.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionPoint {
    pub lambda2: f64,
    pub lambda3: f64,
    pub weak: bool,
    pub curve_residual: f64,
}

impl RegionPoint {
    pub fn lambda4(&self, two_m: f64) -> f64 {
        two_m - self.lambda2 - self.lambda3
    }
}

/// Smallest normalized residual over the family's boundary curves; infinite when
/// the family has none.
pub fn curve_residual(family: Family4, lambda2: f64, lambda3: f64) -> f64 {
    BoundaryCurveSet::of(family)
        .curves
        .iter()
        .map(|p| p.normalized(lambda2, lambda3))
        .fold(f64::INFINITY, f64::min)
}

/// Smallest `|relation(s2, s3)|` at the trace-normalized matrix.
pub fn s_relation_residual(family: Family4, a: &WeightedLaplacian) -> Result<f64> {
    let set = BoundaryCurveSet::of(family);
    if set.relations.is_empty() {
        return Err(Error::NoRelation(family.name().into()));
    }
    let (s2, s3) = s2_s3(a)?;
    Ok(set
        .relations
        .iter()
        .map(|p| p.eval(s2, s3).abs())
        .fold(f64::INFINITY, f64::min))
}

/// `(s2, s3)` of the trace-normalized matrix.
pub fn s2_s3(a: &WeightedLaplacian) -> Result<(f64, f64)> {
    let c = char_coeffs(&normalize_trace(a)?.matrix())?;
    Ok((c.s(2), c.s(3)))
}

fn check_family_graph(family: Family4, a: &WeightedLaplacian) -> Result<()> {
    if *a.graph() != family.graph() {
        return Err(Error::PatternMismatch(format!(
            "matrix graph {} is not the canonical {}",
            a.graph(),
            family
        )));
    }
    Ok(())
}

/// Normalizes, eigen-solves and tags one matrix of the family.
pub fn region_point(family: Family4, a: &WeightedLaplacian) -> Result<RegionPoint> {
    check_family_graph(family, a)?;
    let normalized = normalize_trace(a)?;
    let eig = sym_eigen(&normalized.matrix())?;
    let (lambda2, lambda3) = (eig.values[1], eig.values[2]);
    Ok(RegionPoint {
        lambda2,
        lambda3,
        weak: !has_sspwl(&normalized)?.strong,
        curve_residual: curve_residual(family, lambda2, lambda3),
    })
}

fn log_uniform(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    (lo.ln() + rng.random::<f64>() * (hi.ln() - lo.ln())).exp()
}

/// `count` random matrices of the family with log-uniform weights on `[1e-2, 1e2]`.
pub fn sample_region(family: Family4, count: usize, seed: u64) -> Result<Vec<RegionPoint>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = family.graph();
    (0..count)
        .map(|_| {
            let w = (0..g.edge_count())
                .map(|_| log_uniform(&mut rng, REGION_WEIGHT_RANGE))
                .collect();
            region_point(family, &WeightedLaplacian::new(g.clone(), w)?)
        })
        .collect()
}

/// Positive roots of `3z² - 3(x+y)z + 4xy = 0`, or `None` when they are complex.
pub fn p4_quadric_roots(x: f64, y: f64) -> Option<(f64, f64)> {
    let b = -3.0 * (x + y);
    let c = 4.0 * x * y;
    let disc = b * b - 12.0 * c;
    if disc < 0.0 {
        return None;
    }
    // b < 0, so -b + sqrt(disc) has no cancellation
    let q = -0.5 * (b - disc.sqrt());
    Some((c / q, q / 3.0))
}

/// The three quadrics in the paw weights `(x, y, w, z)` on edges `12, 23, 24, 34`
/// whose common zeros are the weak paw matrices.
pub fn paw_quadrics(x: f64, y: f64, w: f64, z: f64) -> [f64; 3] {
    [
        -4.0 * w * x + 4.0 * x * x + 3.0 * w * y - 4.0 * x * y + 3.0 * w * z - 4.0 * x * z
            + 3.0 * y * z,
        -3.0 * w * x + 2.0 * x * x + 3.0 * w * y - 2.0 * x * y + 3.0 * w * z - 4.0 * x * z
            + 3.0 * y * z,
        -2.0 * w * x + 2.0 * x * x + 3.0 * w * y - 3.0 * x * y + 3.0 * w * z - 4.0 * x * z
            + 3.0 * y * z,
    ]
}

/// `count` weak matrices of the family drawn from its explicit weak locus, with
/// parameters log-uniform on `[0.1, 10]`.
pub fn weak_locus_sample(
    family: Family4,
    count: usize,
    seed: u64,
) -> Result<Vec<WeightedLaplacian>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = family.graph();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut p = || log_uniform(&mut rng, WEAK_PARAM_RANGE);
        let w = match family {
            Family4::P4 => {
                // stored order (x, z, y)
                let (x, y, z) = (p(), p(), p());
                if rng.random::<bool>() {
                    vec![x, z, x]
                } else {
                    let Some((r1, r2)) = p4_quadric_roots(x, y) else {
                        continue;
                    };
                    let z = if rng.random::<bool>() { r1 } else { r2 };
                    vec![x, z, y]
                }
            }
            Family4::Star => {
                let (a, b) = (p(), p());
                let mut w = vec![a, a, b];
                let k = rng.random_range(0..3);
                w.swap(k, 2);
                w
            }
            Family4::Paw => {
                // stored order (x, y, w, z)
                let (y, z) = (p(), p());
                vec![1.5 * y, y, y, z]
            }
            Family4::C4 => {
                // stored order (x, w, y, z)
                let (a, b) = (p(), p());
                match rng.random_range(0..3) {
                    0 => vec![a, a, b, b],
                    1 => vec![b, a, a, b],
                    _ => vec![b, a, b, a],
                }
            }
            Family4::Kne => {
                let (alpha, beta) = (p(), p());
                let b = WeightedLaplacian::new(Graph::complete(2)?, vec![beta])?;
                out.push(weak_form_kne(4, alpha, &b)?);
                continue;
            }
            Family4::K4 => {
                return Err(Error::UnsupportedFamily {
                    name: "k4 weak locus (every matrix is strong)".into(),
                    n: 4,
                })
            }
        };
        out.push(WeightedLaplacian::new(g.clone(), w)?);
    }
    Ok(out)
}

/// Best value of `λ2` found under `tr(A) = 2m` and its maximizer.
#[derive(Debug, Clone, PartialEq)]
pub struct AacResult {
    pub value: f64,
    /// Trace-normalized maximizing weights (floored at the weight floor).
    pub weighted: WeightedLaplacian,
    /// Weak under the relaxed tolerance [`AAC_WEAK_RTOL`].
    pub weak: bool,
}

fn lambda2_normalized(g: &Graph, log_w: &[f64]) -> f64 {
    let w: Vec<f64> = log_w.iter().map(|u| u.exp().max(WEIGHT_FLOOR)).collect();
    let total: f64 = w.iter().sum();
    let scale = g.edge_count() as f64 / total;
    let w: Vec<f64> = w.iter().map(|x| x * scale).collect();
    let a = crate::laplacian::assemble_unchecked(g, &w);
    match sym_eigen(&a) {
        Ok(e) => e.values[1],
        Err(_) => f64::NAN,
    }
}

/// SSPWL verdict with the absolute tolerance `rtol · ‖A‖_F · ‖P‖²`.
pub fn weak_relaxed(a: &WeightedLaplacian, rtol: f64) -> Result<bool> {
    let n = a.n() as f64;
    let tol = rtol * a.matrix().norm() * n;
    Ok(!has_sspwl_with(
        a,
        &SspwlOptions {
            basis: None,
            tol: Some(tol),
        },
    )?
    .strong)
}

/// Multistart simplex maximization of `λ2` over positive weights with `tr(A) = 2m`.
pub fn absolute_algebraic_connectivity(
    g: &Graph,
    multistart: usize,
    seed: u64,
) -> Result<AacResult> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let m = g.edge_count();
    if m == 0 {
        return Err(Error::InvalidGraph(
            "single vertex has no algebraic connectivity".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let opts = NelderMeadOptions::default();
    let objective = |u: &[f64]| -lambda2_normalized(g, u);
    let mut best: Option<(f64, Vec<f64>)> = None;
    for _ in 0..multistart.max(1) {
        let x0: Vec<f64> = (0..m).map(|_| rng.random_range(-1.0..1.0)).collect();
        let mut run = nelder_mead(objective, &x0, &opts);
        for _ in 0..3 {
            run = nelder_mead(objective, &run.x, &opts);
        }
        if best.as_ref().is_none_or(|(v, _)| run.value < *v) {
            best = Some((run.value, run.x));
        }
    }
    let (_, u) = best.expect("at least one start");
    let w: Vec<f64> = u.iter().map(|x| x.exp().max(WEIGHT_FLOOR)).collect();
    let total: f64 = w.iter().sum();
    let w: Vec<f64> = w
        .iter()
        .map(|x| (x * m as f64 / total).max(WEIGHT_FLOOR))
        .collect();
    let weighted = WeightedLaplacian::new(g.clone(), w)?;
    let value = sym_eigen(&weighted.matrix())?.values[1];
    let weak = weak_relaxed(&weighted, AAC_WEAK_RTOL)?;
    Ok(AacResult {
        value,
        weighted,
        weak,
    })
}

/// Writes `lambda2,lambda3,weak,curve_residual` rows.
pub fn write_region_csv<W: Write>(points: &[RegionPoint], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["lambda2", "lambda3", "weak", "curve_residual"])?;
    for p in points {
        w.write_record([
            format!("{:.12}", p.lambda2),
            format!("{:.12}", p.lambda3),
            p.weak.to_string(),
            format!("{:.6e}", p.curve_residual),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// A traced point of a boundary curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub curve_id: String,
    pub lambda2: f64,
    pub lambda3: f64,
}

fn in_region(a: f64, b: f64, two_m: f64) -> bool {
    a >= 0.0 && a <= b && b <= two_m - a - b
}

/// Sign changes of `f` on a uniform grid over `[lo, hi]`, refined by bisection.
fn roots_on(f: impl Fn(f64) -> f64, lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    let mut out = Vec::new();
    let h = (hi - lo) / steps as f64;
    let mut x0 = lo;
    let mut f0 = f(x0);
    for k in 1..=steps {
        let x1 = lo + h * k as f64;
        let f1 = f(x1);
        if f0 == 0.0 {
            out.push(x0);
        } else if f0 * f1 < 0.0 {
            let (mut a, mut b, mut fa) = (x0, x1, f0);
            for _ in 0..60 {
                let mid = 0.5 * (a + b);
                let fm = f(mid);
                if fa * fm <= 0.0 {
                    b = mid;
                } else {
                    a = mid;
                    fa = fm;
                }
            }
            out.push(0.5 * (a + b));
        }
        x0 = x1;
        f0 = f1;
    }
    out
}

/// Traces every boundary curve of the family inside the feasible triangle by
/// sweeping both coordinates and solving for the other.
pub fn trace_curves(family: Family4, resolution: usize) -> Vec<CurvePoint> {
    let set = BoundaryCurveSet::of(family);
    let two_m = family.two_m();
    let a_max = two_m / 3.0;
    let b_max = two_m / 2.0;
    let mut out = Vec::new();
    for curve in set.curves.iter().chain(&set.trivial) {
        let mut pts: Vec<(f64, f64)> = Vec::new();
        for k in 0..=resolution {
            let a = a_max * k as f64 / resolution as f64;
            for b in roots_on(|b| curve.eval(a, b), 0.0, b_max, 4 * resolution) {
                pts.push((a, b));
            }
            let b = b_max * k as f64 / resolution as f64;
            for a in roots_on(|a| curve.eval(a, b), 0.0, a_max, 4 * resolution) {
                pts.push((a, b));
            }
        }
        pts.retain(|&(a, b)| in_region(a, b, two_m) || set.trivial.contains(curve));
        pts.retain(|&(a, b)| a >= -1e-12 && b >= a - 1e-12 && a + 2.0 * b <= two_m + 1e-9);
        pts.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
        pts.dedup_by(|x, y| (x.0 - y.0).abs() < 1e-12 && (x.1 - y.1).abs() < 1e-12);
        out.extend(pts.into_iter().map(|(a, b)| CurvePoint {
            curve_id: curve.id.to_string(),
            lambda2: a,
            lambda3: b,
        }));
    }
    out
}

/// Writes `curve_id,lambda2,lambda3` rows.
pub fn write_curve_csv<W: Write>(points: &[CurvePoint], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["curve_id", "lambda2", "lambda3"])?;
    for p in points {
        w.write_record([
            p.curve_id.clone(),
            format!("{:.12}", p.lambda2),
            format!("{:.12}", p.lambda3),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// A gnuplot script drawing the region samples over the traced curves.
pub fn gnuplot_script(family: Family4, region_csv: &str, curve_csv: &str) -> String {
    format!(
        "# spectral region of {family}, trace normalized to {two_m}\n\
         set datafile separator ','\n\
         set key outside\n\
         set xlabel 'lambda2'\n\
         set ylabel 'lambda3'\n\
         set size ratio -1\n\
         plot '{region_csv}' every ::1 using 1:($3 eq \"true\" ? 1/0 : $2) with points pt 7 ps 0.3 lc rgb 'blue' title 'strong', \\\n\
         \x20    '{region_csv}' every ::1 using 1:(strcol(3) eq \"true\" ? $2 : 1/0) with points pt 7 ps 0.3 lc rgb 'red' title 'weak', \\\n\
         \x20    '{curve_csv}' every ::1 using 2:3 with points pt 7 ps 0.2 lc rgb 'orange' title 'curves'\n",
        two_m = family.two_m()
    )
}
