//! File formats: matrix CSV, graph and weighted-Laplacian JSON, and the JSON
//! reports emitted by the command-line tool.

use std::io::{Read, Write};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphJson};
use crate::jacobian::JacobianReport;
use crate::laplacian::{WeightedLaplacian, WeightedLaplacianJson};
use crate::realization::{RealizationResult, RealizeOptions};
use crate::strong::{Property, TangentDims, VerificationReport};

/// Dense row-major rows of a matrix.
pub fn matrix_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

/// Inverse of [`matrix_rows`]; every row must have the same length.
pub fn rows_matrix(rows: &[Vec<f64>]) -> Result<DMatrix<f64>> {
    let ncols = rows.first().map_or(0, Vec::len);
    if let Some(bad) = rows.iter().position(|r| r.len() != ncols) {
        return Err(Error::Parse(format!(
            "row {} has {} entries, expected {ncols}",
            bad + 1,
            rows[bad].len()
        )));
    }
    Ok(DMatrix::from_row_iterator(
        rows.len(),
        ncols,
        rows.iter().flatten().copied(),
    ))
}

/// Reads plain CSV rows of decimal numbers, without a header.
pub fn read_matrix_csv<R: Read>(input: R) -> Result<DMatrix<f64>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(input);
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        let row = record
            .iter()
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("not a number: '{s}'")))
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    rows_matrix(&rows)
}

pub fn write_matrix_csv<W: Write>(m: &DMatrix<f64>, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    for row in m.row_iter() {
        w.write_record(row.iter().map(|x| format!("{x}")))?;
    }
    w.flush()?;
    Ok(())
}

/// Graph or weighted-Laplacian JSON; `weights` is optional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphInput {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
}

impl GraphInput {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn graph(&self) -> Result<Graph> {
        Graph::try_from(GraphJson {
            n: self.n,
            edges: self.edges.clone(),
        })
    }

    /// The weighted Laplacian with explicit weights (in listed edge order), or
    /// the file's own weights.
    pub fn weighted(&self, weights: Option<&[f64]>) -> Result<WeightedLaplacian> {
        let weights = match (weights, &self.weights) {
            (Some(w), _) => w.to_vec(),
            (None, Some(w)) => w.clone(),
            (None, None) => {
                return Err(Error::InvalidWeight(
                    "no weights given in the file or on the command line".into(),
                ))
            }
        };
        WeightedLaplacian::try_from(WeightedLaplacianJson {
            n: self.n,
            edges: self.edges.clone(),
            weights,
        })
    }
}

/// JSON view of a [`VerificationReport`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub property: Property,
    pub strong: bool,
    pub weak: bool,
    pub indeterminate: bool,
    pub verification_rank: usize,
    pub required_rank: usize,
    pub margin: f64,
    pub tolerance: f64,
    pub singular_values: Vec<f64>,
    pub witness: Option<Vec<Vec<f64>>>,
    pub kernel_dimension: usize,
    pub psi: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tangent_dims: Option<TangentDims>,
}

impl ReportJson {
    pub fn new(report: &VerificationReport, tangent_dims: Option<TangentDims>) -> Self {
        ReportJson {
            property: report.property,
            strong: report.strong,
            weak: !report.strong,
            indeterminate: report.indeterminate,
            verification_rank: report.verification_rank,
            required_rank: report.required_rank,
            margin: report.margin,
            tolerance: report.tolerance,
            singular_values: report.singular_values.clone(),
            witness: report.witness.as_ref().map(matrix_rows),
            kernel_dimension: report.kernel_basis.len(),
            psi: report.psi.as_ref().map(matrix_rows),
            tangent_dims,
        }
    }
}

/// JSON view of a [`JacobianReport`]; columns use 1-based labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JacobianJson {
    pub matrix: Vec<Vec<f64>>,
    pub rows: Vec<usize>,
    pub columns: Vec<[usize; 2]>,
    pub rank: usize,
    pub full_rank: bool,
    pub det: Option<f64>,
    pub distinct_eigenvalues: bool,
    pub strong: Option<bool>,
    pub indeterminate: bool,
    pub singular_values: Vec<f64>,
    pub tolerance: f64,
}

impl From<&JacobianReport> for JacobianJson {
    fn from(r: &JacobianReport) -> Self {
        JacobianJson {
            matrix: matrix_rows(&r.jac),
            rows: r.rows.clone(),
            columns: r.cols.iter().map(|&(i, j)| [i + 1, j + 1]).collect(),
            rank: r.rank,
            full_rank: r.full_rank,
            det: r.det,
            distinct_eigenvalues: r.distinct_eigs,
            strong: r.strong,
            indeterminate: r.indeterminate,
            singular_values: r.singular_values.clone(),
            tolerance: r.tolerance,
        }
    }
}

/// Input and outcome of a realization or transfer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealizationJson {
    pub target: Vec<f64>,
    pub options: RealizeOptions,
    pub result: WeightedLaplacianJson,
    pub achieved: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    pub strong: bool,
}

impl RealizationJson {
    pub fn new(
        target: &[f64],
        options: &RealizeOptions,
        result: &RealizationResult,
        achieved: Vec<f64>,
    ) -> Self {
        RealizationJson {
            target: target.to_vec(),
            options: options.clone(),
            result: WeightedLaplacianJson::from(&result.weighted),
            achieved,
            residual: result.residual,
            iterations: result.iterations,
            converged: result.converged,
            strong: result.final_report.strong,
        }
    }
}

/// Pretty JSON followed by a newline.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strong::has_sspwl;

    #[test]
    fn matrix_csv_round_trip() {
        let m = DMatrix::from_row_slice(2, 3, &[1.0, -0.5, 2.25, 0.0, 1e-17, 3.0]);
        let mut buf = Vec::new();
        write_matrix_csv(&m, &mut buf).unwrap();
        assert_eq!(read_matrix_csv(buf.as_slice()).unwrap(), m);
        assert!(read_matrix_csv("1,2\n3\n".as_bytes()).is_err());
        assert!(read_matrix_csv("1,x\n".as_bytes()).is_err());
        assert_eq!(
            read_matrix_csv(" 1 , 2 \n3,4\n".as_bytes()).unwrap()[(1, 0)],
            3.0
        );
    }

    #[test]
    fn graph_input_forms() {
        let g = GraphInput::parse(r#"{"n": 4, "edges": [[1,2],[2,3],[3,4]]}"#).unwrap();
        assert!(g.weighted(None).is_err());
        let a = g.weighted(Some(&[0.5, 1.0, 1.5])).unwrap();
        assert_eq!(a.weights(), &[0.5, 1.0, 1.5]);
        let w = GraphInput::parse(r#"{"n":3,"edges":[[2,3],[1,2]],"weights":[2.0,1.0]}"#).unwrap();
        assert_eq!(w.weighted(None).unwrap().weights(), &[1.0, 2.0]);
    }

    #[test]
    fn report_json_has_dense_rows() {
        let g = GraphInput::parse(r#"{"n":4,"edges":[[1,2],[2,3],[3,4]],"weights":[0.5,1,1.5]}"#)
            .unwrap();
        let r = has_sspwl(&g.weighted(None).unwrap()).unwrap();
        let j = ReportJson::new(&r, None);
        assert!(j.weak);
        assert_eq!(j.psi.as_ref().unwrap().len(), 3);
        assert_eq!(j.witness.as_ref().unwrap().len(), 4);
        let text = to_json_string(&j).unwrap();
        let back: ReportJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.property, Property::Sspwl);
    }
}
