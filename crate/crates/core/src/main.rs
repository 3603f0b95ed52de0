use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sspwl::error::{Error, Result};
use sspwl::graph::{named_family, Family, Graph};
use sspwl::io::{
    read_matrix_csv, to_json_string, GraphInput, JacobianJson, RealizationJson, ReportJson,
};
use sspwl::jacobian::{laplacian_jacobian, nssp_jacobian, ssp_jacobian};
use sspwl::laplacian::{WeightedLaplacian, WeightedLaplacianJson};
use sspwl::realization::{
    realize_spectrum, strong_start, transfer_to_supergraph, RealizeOptions, SpectrumTarget,
};
use sspwl::region::{
    absolute_algebraic_connectivity, gnuplot_script, sample_region, trace_curves, write_curve_csv,
    write_region_csv, Family4, AAC_MULTISTART,
};
use sspwl::selftest;
use sspwl::spectral::sym_eigen;
use sspwl::strong::{
    has_ssp, has_sspwl_with, nssp_tangent_check, tangent_dims, SspwlOptions, ZeroNonzeroPattern,
};

const DEFAULT_SEED: u64 = 20240601;

const EXIT_VALIDATION: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;
const EXIT_INDETERMINATE: u8 = 4;
const EXIT_SELFTEST_FAILED: u8 = 1;

/// Strong spectral property for weighted Laplacians: checks, Jacobians,
/// spectrum realization and order-4 spectral regions.
#[derive(Parser, Debug)]
#[command(name = "sspwl", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// SSPWL, SSP or nSSP report for a matrix or weighted graph (JSON).
    Check(MatrixArgs),
    /// Jacobian report for a matrix or weighted graph (JSON).
    Jacobian(MatrixArgs),
    /// Find weights on a graph realizing a target spectrum (JSON).
    Realize(RealizeArgs),
    /// Carry the spectrum of a strong matrix onto a supergraph (JSON).
    Transfer(TransferArgs),
    /// Sample the spectral region of an order-4 family (CSV).
    Region(RegionArgs),
    /// Trace the boundary curves of an order-4 family (CSV and gnuplot script).
    Boundary(BoundaryArgs),
    /// Maximize the algebraic connectivity under a fixed trace (JSON).
    Aac(AacArgs),
    /// Run the reproduction suite; exit 1 if any criterion fails.
    Selftest(SelftestArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum PropertyArg {
    Sspwl,
    Ssp,
    Nssp,
}

#[derive(Args, Debug)]
struct Source {
    /// Graph or weighted-Laplacian JSON with 1-based edges.
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
    /// Edge weights in the listed edge order, overriding the file's weights.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        value_name = "W1,W2,..."
    )]
    weights: Option<Vec<f64>>,
    /// Named family (path, star, cycle, complete, complete_minus_edge, paw, or an
    /// order-4 name such as p4, c4, kne, k4).
    #[arg(long, value_name = "NAME")]
    family: Option<String>,
    /// Order for a named family.
    #[arg(long, value_name = "N")]
    order: Option<usize>,
}

#[derive(Args, Debug)]
struct MatrixArgs {
    #[command(flatten)]
    source: Source,
    /// Dense matrix CSV (no header, row-major).
    #[arg(long, value_name = "FILE")]
    matrix: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "sspwl")]
    property: PropertyArg,
    /// Absolute rank tolerance (SSPWL only).
    #[arg(long, value_name = "X")]
    tol: Option<f64>,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RealizeArgs {
    #[command(flatten)]
    source: Source,
    /// Nonzero target eigenvalues `l2,...,ln`.
    #[arg(long, value_delimiter = ',', required = true, value_name = "L2,L3,...")]
    target: Vec<f64>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Final residual bound relative to `1 + ‖t‖`.
    #[arg(long, value_name = "X")]
    tol: Option<f64>,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TransferArgs {
    #[command(flatten)]
    source: Source,
    /// Supergraph JSON on the same vertex set.
    #[arg(long, value_name = "FILE")]
    supergraph: Option<PathBuf>,
    /// Named supergraph family of the same order.
    #[arg(long, value_name = "NAME")]
    supergraph_family: Option<String>,
    /// Initial weight of every new edge.
    #[arg(long, default_value_t = 1e-3)]
    eps: f64,
    #[arg(long, value_name = "X")]
    tol: Option<f64>,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RegionArgs {
    #[arg(long, value_name = "NAME")]
    family: String,
    #[arg(long, default_value_t = 1000)]
    count: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BoundaryArgs {
    #[arg(long, value_name = "NAME")]
    family: String,
    /// Grid resolution of the sweep.
    #[arg(long, default_value_t = 400)]
    count: usize,
    /// Curve CSV; the gnuplot script is written next to it with extension `.gp`.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Region CSV referenced by the script.
    #[arg(long, default_value = "region.csv", value_name = "FILE")]
    region_csv: String,
}

#[derive(Args, Debug)]
struct AacArgs {
    #[command(flatten)]
    source: Source,
    /// Number of simplex starts.
    #[arg(long, default_value_t = AAC_MULTISTART)]
    count: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    /// Also write the outcomes as JSON.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String> {
    Ok(fs::read_to_string(path)?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn emit_json<T: Serialize>(out: Option<&Path>, value: &T) -> Result<()> {
    emit(out, &to_json_string(value)?)
}

fn family_graph(name: &str, order: Option<usize>) -> Result<Graph> {
    if let Ok(family) = name.parse::<Family>() {
        let n = order.unwrap_or(4);
        return named_family(family, n);
    }
    let f4: Family4 = name.parse()?;
    if order.is_some_and(|n| n != 4) {
        return Err(Error::UnsupportedFamily {
            name: name.into(),
            n: order.unwrap_or(4),
        });
    }
    Ok(f4.graph())
}

impl Source {
    fn graph(&self) -> Result<Graph> {
        match (&self.graph, &self.family) {
            (Some(p), None) => GraphInput::parse(&read(p)?)?.graph(),
            (None, Some(name)) => family_graph(name, self.order),
            (Some(_), Some(_)) => Err(Error::Parse("give either --graph or --family".into())),
            (None, None) => Err(Error::Parse("--graph or --family is required".into())),
        }
    }

    /// The weighted Laplacian, or `None` when no weights are available.
    fn weighted(&self) -> Result<Option<WeightedLaplacian>> {
        match (&self.graph, &self.family) {
            (Some(p), None) => {
                let input = GraphInput::parse(&read(p)?)?;
                if self.weights.is_none() && input.weights.is_none() {
                    return Ok(None);
                }
                input.weighted(self.weights.as_deref()).map(Some)
            }
            _ => {
                let g = self.graph()?;
                match &self.weights {
                    Some(w) => WeightedLaplacian::new(g, w.clone()).map(Some),
                    None => Ok(None),
                }
            }
        }
    }

    fn require_weighted(&self) -> Result<WeightedLaplacian> {
        self.weighted()?.ok_or_else(|| {
            Error::InvalidWeight("weights are required (--weights or in the file)".into())
        })
    }
}

/// Exit code after a report is written.
fn verdict(indeterminate: bool) -> u8 {
    if indeterminate {
        EXIT_INDETERMINATE
    } else {
        0
    }
}

fn laplacian_input(args: &MatrixArgs) -> Result<WeightedLaplacian> {
    match &args.matrix {
        Some(p) => WeightedLaplacian::from_matrix(&read_matrix_csv(fs::File::open(p)?)?),
        None => args.source.require_weighted(),
    }
}

fn dense_input(args: &MatrixArgs) -> Result<nalgebra::DMatrix<f64>> {
    match &args.matrix {
        Some(p) => read_matrix_csv(fs::File::open(p)?),
        None => Ok(args.source.require_weighted()?.matrix().into_inner()),
    }
}

/// Graph of a symmetric matrix's off-diagonal nonzeros, unless one was given.
fn ssp_graph(args: &MatrixArgs, m: &nalgebra::DMatrix<f64>) -> Result<Graph> {
    if args.source.graph.is_some() || args.source.family.is_some() {
        return args.source.graph();
    }
    let n = m.nrows();
    let pairs: Vec<(usize, usize)> = sspwl::graph::all_pairs(n)
        .filter(|&(i, j)| m[(i, j)] != 0.0)
        .collect();
    Graph::new(n, &pairs)
}

fn run_check(args: &MatrixArgs) -> Result<u8> {
    let out = args.out.as_deref();
    let report = match args.property {
        PropertyArg::Sspwl => {
            let a = laplacian_input(args)?;
            let report = has_sspwl_with(
                &a,
                &SspwlOptions {
                    basis: None,
                    tol: args.tol,
                },
            )?;
            let dims = if a.graph().is_connected() {
                Some(tangent_dims(&a)?)
            } else {
                None
            };
            ReportJson::new(&report, dims)
        }
        PropertyArg::Ssp => {
            let m = dense_input(args)?;
            let g = ssp_graph(args, &m)?;
            ReportJson::new(&has_ssp(&m, &g)?, None)
        }
        PropertyArg::Nssp => {
            let m = dense_input(args)?;
            let pattern = ZeroNonzeroPattern::of_matrix(&m);
            ReportJson::new(&nssp_tangent_check(&m, &pattern)?, None)
        }
    };
    emit_json(out, &report)?;
    Ok(verdict(report.indeterminate))
}

fn run_jacobian(args: &MatrixArgs) -> Result<u8> {
    let report = match args.property {
        PropertyArg::Sspwl => laplacian_jacobian(&laplacian_input(args)?)?,
        PropertyArg::Ssp => {
            let m = dense_input(args)?;
            let g = ssp_graph(args, &m)?;
            ssp_jacobian(&m, &g)?
        }
        PropertyArg::Nssp => {
            let m = dense_input(args)?;
            nssp_jacobian(&m, &ZeroNonzeroPattern::of_matrix(&m))?
        }
    };
    emit_json(args.out.as_deref(), &JacobianJson::from(&report))?;
    Ok(verdict(report.indeterminate))
}

fn options(tol: Option<f64>) -> RealizeOptions {
    let mut opts = RealizeOptions::default();
    if let Some(t) = tol {
        opts.tol = t;
    }
    opts
}

fn spectrum(a: &WeightedLaplacian) -> Result<Vec<f64>> {
    Ok(sym_eigen(&a.matrix())?.values)
}

fn run_realize(args: &RealizeArgs) -> Result<u8> {
    let g = args.source.graph()?;
    let start = match args.source.weighted()? {
        Some(a) => a,
        None => strong_start(&g, args.seed)?,
    };
    let target = SpectrumTarget::from_nonzero(&args.target)?;
    let opts = options(args.tol);
    let r = realize_spectrum(&g, &target, &start, &opts)?;
    let json = RealizationJson::new(target.eigenvalues(), &opts, &r, spectrum(&r.weighted)?);
    emit_json(args.out.as_deref(), &json)?;
    Ok(verdict(r.final_report.indeterminate))
}

fn run_transfer(args: &TransferArgs) -> Result<u8> {
    let a = args.source.require_weighted()?;
    let h = match (&args.supergraph, &args.supergraph_family) {
        (Some(p), None) => GraphInput::parse(&read(p)?)?.graph()?,
        (None, Some(name)) => family_graph(name, Some(a.n()))?,
        _ => {
            return Err(Error::Parse(
                "exactly one of --supergraph or --supergraph-family is required".into(),
            ))
        }
    };
    let opts = options(args.tol);
    let r = transfer_to_supergraph(&a, &h, args.eps, &opts)?;
    let json = RealizationJson::new(&spectrum(&a)?, &opts, &r, spectrum(&r.weighted)?);
    emit_json(args.out.as_deref(), &json)?;
    Ok(verdict(r.final_report.indeterminate))
}

fn run_region(args: &RegionArgs) -> Result<u8> {
    let family: Family4 = args.family.parse()?;
    let points = sample_region(family, args.count, args.seed)?;
    let mut buf = Vec::new();
    write_region_csv(&points, &mut buf)?;
    emit(args.out.as_deref(), &String::from_utf8_lossy(&buf))?;
    Ok(0)
}

fn run_boundary(args: &BoundaryArgs) -> Result<u8> {
    let family: Family4 = args.family.parse()?;
    let points = trace_curves(family, args.count.max(1));
    let mut buf = Vec::new();
    write_curve_csv(&points, &mut buf)?;
    emit(args.out.as_deref(), &String::from_utf8_lossy(&buf))?;
    if let Some(out) = &args.out {
        let curve_name = out
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        fs::write(
            out.with_extension("gp"),
            gnuplot_script(family, &args.region_csv, &curve_name),
        )?;
    }
    Ok(0)
}

#[derive(Serialize)]
struct AacJson {
    value: f64,
    weak: bool,
    weighted: WeightedLaplacianJson,
    spectrum: Vec<f64>,
}

fn run_aac(args: &AacArgs) -> Result<u8> {
    let g = args.source.graph()?;
    let r = absolute_algebraic_connectivity(&g, args.count, args.seed)?;
    let json = AacJson {
        value: r.value,
        weak: r.weak,
        weighted: WeightedLaplacianJson::from(&r.weighted),
        spectrum: spectrum(&r.weighted)?,
    };
    emit_json(args.out.as_deref(), &json)?;
    Ok(0)
}

fn run_selftest(args: &SelftestArgs) -> Result<u8> {
    let outcomes = selftest::run_all();
    for o in &outcomes {
        println!("{}", o.line());
    }
    if let Some(p) = &args.out {
        fs::write(p, to_json_string(&outcomes)?)?;
    }
    Ok(if outcomes.iter().all(|o| o.pass) {
        0
    } else {
        EXIT_SELFTEST_FAILED
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check(a) => run_check(a),
        Command::Jacobian(a) => run_jacobian(a),
        Command::Realize(a) => run_realize(a),
        Command::Transfer(a) => run_transfer(a),
        Command::Region(a) => run_region(a),
        Command::Boundary(a) => run_boundary(a),
        Command::Aac(a) => run_aac(a),
        Command::Selftest(a) => run_selftest(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_numerical() {
                EXIT_NUMERICAL
            } else {
                EXIT_VALIDATION
            })
        }
    }
}
