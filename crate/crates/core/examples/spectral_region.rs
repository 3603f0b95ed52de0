//! Samples the spectral region of each connected order-4 graph and checks that
//! weak matrices drawn from the explicit weak loci land on the boundary curves.

use sspwl::region::{
    region_point, s_relation_residual, sample_region, weak_locus_sample, write_region_csv,
};
use sspwl::{Family4, Result};

fn main() -> Result<()> {
    for family in Family4::ALL {
        let pts = sample_region(family, 2000, 7)?;
        let weak = pts.iter().filter(|p| p.weak).count();
        let (lo, hi) = pts.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), p| {
            (lo.min(p.lambda2), hi.max(p.lambda2))
        });
        print!(
            "{family:<5} 2m = {:>2}: lambda2 in [{lo:.3}, {hi:.3}], {weak} of 2000 random samples weak",
            family.two_m()
        );
        match weak_locus_sample(family, 100, 7) {
            Ok(samples) => {
                let mut worst = 0.0f64;
                let mut rel = None;
                for a in &samples {
                    worst = worst.max(region_point(family, a)?.curve_residual);
                    if let Ok(r) = s_relation_residual(family, a) {
                        rel = Some(rel.unwrap_or(0.0f64).max(r));
                    }
                }
                print!("; weak locus curve residual {worst:.1e}");
                if let Some(r) = rel {
                    print!(", relation residual {r:.1e}");
                }
                println!();
            }
            Err(_) => println!("; no weak locus"),
        }
    }

    let mut csv = Vec::new();
    write_region_csv(&sample_region(Family4::Paw, 3, 1)?, &mut csv)?;
    print!("{}", String::from_utf8_lossy(&csv));
    Ok(())
}
