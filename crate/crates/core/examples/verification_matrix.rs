//! Builds the verification matrix of a weighted path, finds the witness of its
//! failure, and confirms the verdict with the primal tangent-space test.

use sspwl::io::matrix_rows;
use sspwl::strong::tangent_dims;
use sspwl::{has_sspwl, named_family, tangent_sum_check, verification_matrix, Family};
use sspwl::{Result, WeightedLaplacian};

fn main() -> Result<()> {
    let path = named_family(Family::Path, 4)?;
    let a = WeightedLaplacian::new(path, vec![0.5, 1.0, 1.5])?;

    println!("Psi (rows: non-edges 13, 14, 24):");
    for row in matrix_rows(&verification_matrix(&a, None)?) {
        println!("  {row:?}");
    }

    let report = has_sspwl(&a)?;
    println!(
        "strong = {}, rank {} of {}, indeterminate = {}",
        report.strong, report.verification_rank, report.required_rank, report.indeterminate
    );
    if let Some(x) = &report.witness {
        let scale = 1.0 / x[(1, 3)].abs();
        println!(
            "witness on 13, 14, 24 scaled: ({:.6}, {:.6}, {:.6})",
            x[(0, 2)] * scale,
            x[(0, 3)] * scale,
            x[(1, 3)] * scale
        );
    }

    let (strong, _) = tangent_sum_check(&a)?;
    let dims = tangent_dims(&a)?;
    println!(
        "tangent test strong = {strong}; dim F_B = {}, dim F_K = {}, dim sum = {} of {}",
        dims.dim_fb, dims.dim_fk, dims.dim_sum, dims.dim_w
    );

    // moving one weight breaks the symmetry that made the matrix weak
    let b = a.with_weights(vec![0.5, 1.0, 1.4])?;
    println!("weights (0.5, 1, 1.4): strong = {}", has_sspwl(&b)?.strong);
    Ok(())
}
