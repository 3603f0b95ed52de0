//! Carries the spectrum {0, 4, 4, 10} of a strong matrix on K4 minus an edge
//! onto K4 itself by seeding the missing edge with a small weight.

use nalgebra::DMatrix;
use sspwl::spectral::sym_eigen;
use sspwl::{has_sspwl, transfer_to_supergraph, Graph, RealizeOptions, Result, WeightedLaplacian};

fn main() -> Result<()> {
    let m = DMatrix::from_row_slice(
        4,
        4,
        &[
            4.0, 0.0, -3.0, -1.0, //
            0.0, 4.0, -3.0, -1.0, //
            -3.0, -3.0, 7.0, -1.0, //
            -1.0, -1.0, -1.0, 3.0,
        ],
    );
    let a = WeightedLaplacian::from_matrix(&m)?;
    println!("source graph {} with weights {:?}", a.graph(), a.weights());
    println!("source strong = {}", has_sspwl(&a)?.strong);

    let k4 = Graph::complete(4)?;
    let r = transfer_to_supergraph(&a, &k4, 1e-3, &RealizeOptions::default())?;
    println!("target graph {}", r.weighted.graph());
    for (e, w) in r.weighted.graph().edges().iter().zip(r.weights()) {
        println!("  {}-{}: {w:.9}", e.0 + 1, e.1 + 1);
    }
    let spec = sym_eigen(&r.weighted.matrix())?.values;
    println!("spectrum {spec:.9?}");
    println!(
        "residual {:.2e} after {} iterations, strong = {}",
        r.residual, r.iterations, r.final_report.strong
    );
    Ok(())
}
