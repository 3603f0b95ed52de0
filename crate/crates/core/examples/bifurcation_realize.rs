//! Perturbs the spectrum of a strong matrix and solves for weights on the same
//! graph that realize the perturbed spectrum.

use sspwl::realization::strong_start;
use sspwl::spectral::sym_eigen;
use sspwl::{named_family, realize_spectrum, Family, RealizeOptions, Result, SpectrumTarget};

fn main() -> Result<()> {
    for (family, n) in [(Family::Path, 5), (Family::Cycle, 5), (Family::Paw, 4)] {
        let g = named_family(family, n)?;
        let start = strong_start(&g, 0)?;
        let base = sym_eigen(&start.matrix())?.values;
        let nonzero: Vec<f64> = base[1..]
            .iter()
            .enumerate()
            .map(|(i, v)| v * (1.0 + 0.01 * (i as f64 + 1.0)))
            .collect();
        let target = SpectrumTarget::from_nonzero(&nonzero)?;
        let r = realize_spectrum(&g, &target, &start, &RealizeOptions::default())?;
        let got = sym_eigen(&r.weighted.matrix())?.values;
        println!("{} on {n} vertices", family.name());
        println!("  start spectrum  {:.6?}", base);
        println!("  target spectrum {:.6?}", target.eigenvalues());
        println!("  realized        {:.6?}", got);
        println!("  weights         {:.6?}", r.weights());
        println!(
            "  residual {:.1e}, strong = {}",
            r.residual, r.final_report.strong
        );
    }
    Ok(())
}
