//! Characteristic coefficients as sums of principal minors, their gradients
//! through the cofactor polynomial, and the weighted matrix-tree theorem.

use nalgebra::DMatrix;
use sspwl::spectral::{
    char_coeffs, grad_s, gradient_span_rank, minimal_poly_degree, principal_minor_sum_bruteforce,
};
use sspwl::{Graph, Result, SymmetricMatrix, WeightedLaplacian};

fn main() -> Result<()> {
    let tree = Graph::from_one_based(5, &[(1, 2), (1, 3), (3, 4), (3, 5)])?;
    let w = vec![0.5, 2.0, 1.5, 3.0];
    let a = WeightedLaplacian::new(tree, w.clone())?;
    let s = char_coeffs(&a.matrix())?;
    for k in 1..=5 {
        println!(
            "s_{k} = {:>12.6} (principal minors {:>12.6})",
            s.s(k),
            principal_minor_sum_bruteforce(&a.matrix(), k)?
        );
    }
    println!(
        "matrix-tree: s_4 = {:.6}, n * prod(w) = {:.6}",
        s.s(4),
        5.0 * w.iter().product::<f64>()
    );

    let m = SymmetricMatrix::new(DMatrix::from_row_slice(
        3,
        3,
        &[2.0, -1.0, 0.0, -1.0, 2.0, -1.0, 0.0, -1.0, 2.0],
    ))?;
    println!(
        "grad s_2 of the second-difference matrix:{:.6}",
        *grad_s(&m, 2)?
    );

    let repeated = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 1.0, 3.0]));
    println!(
        "diag(1, 1, 3): minimal polynomial degree {}, gradient span rank {}",
        minimal_poly_degree(&repeated),
        gradient_span_rank(&repeated)?
    );
    Ok(())
}
