//! The strong spectral property for symmetric matrices with a graph, and its
//! nonsymmetric analogue for zero-nonzero patterns, each against its Jacobian.

use nalgebra::DMatrix;
use sspwl::jacobian::{nssp_jacobian, ssp_jacobian};
use sspwl::strong::{has_ssp, nssp_tangent_check, ZeroNonzeroPattern};
use sspwl::{Graph, Result};

fn main() -> Result<()> {
    // adjacency of the 4-cycle: eigenvalues 2, 0, 0, -2
    let c4 = Graph::from_one_based(4, &[(1, 2), (2, 3), (3, 4), (1, 4)])?;
    let mut adj = DMatrix::zeros(4, 4);
    for &(i, j) in c4.edges() {
        adj[(i, j)] = 1.0;
        adj[(j, i)] = 1.0;
    }
    let r = has_ssp(&adj, &c4)?;
    let j = ssp_jacobian(&adj, &c4)?;
    println!(
        "C4 adjacency: SSP {}, Jacobian rank {} of {}, distinct eigenvalues {}",
        r.strong,
        j.rank,
        j.rows.len(),
        j.distinct_eigs
    );

    // a path with distinct diagonal
    let p3 = Graph::from_one_based(3, &[(1, 2), (2, 3)])?;
    let m = DMatrix::from_row_slice(3, 3, &[1.0, 1.0, 0.0, 1.0, 2.0, 1.0, 0.0, 1.0, 4.0]);
    let r = has_ssp(&m, &p3)?;
    let j = ssp_jacobian(&m, &p3)?;
    println!(
        "tridiagonal: SSP {}, Jacobian full rank {}",
        r.strong, j.full_rank
    );

    // companion matrix: cyclic, so the Jacobian over its pattern has full rank
    let comp = DMatrix::from_row_slice(3, 3, &[0.0, 0.0, 6.0, 1.0, 0.0, -11.0, 0.0, 1.0, 6.0]);
    let pattern = ZeroNonzeroPattern::of_matrix(&comp);
    let r = nssp_tangent_check(&comp, &pattern)?;
    let j = nssp_jacobian(&comp, &pattern)?;
    println!(
        "companion: nSSP {}, Jacobian full rank {}, minimal polynomial of degree n {}",
        r.strong, j.full_rank, j.distinct_eigs
    );

    let diag = DMatrix::from_row_slice(3, 3, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 2.0]);
    let pattern = ZeroNonzeroPattern::of_matrix(&diag);
    let r = nssp_tangent_check(&diag, &pattern)?;
    let j = nssp_jacobian(&diag, &pattern)?;
    println!(
        "diag(1, 1, 2): nSSP {}, Jacobian full rank {}, minimal polynomial of degree n {}",
        r.strong, j.full_rank, j.distinct_eigs
    );
    Ok(())
}
