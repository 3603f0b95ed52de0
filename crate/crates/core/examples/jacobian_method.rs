//! The Jacobian of the characteristic coefficients with respect to edge weights:
//! the star determinant, strong weights for trees, and the agreement between a
//! full-rank Jacobian and distinct eigenvalues with the strong property.

use sspwl::jacobian::{star_jacobian_det, tree_strong_weights};
use sspwl::{equivalence_check, laplacian_jacobian, named_family, Family, Graph};
use sspwl::{Result, WeightedLaplacian};

fn main() -> Result<()> {
    let star = named_family(Family::Star, 4)?;
    for w in [vec![1.0, 2.0, 3.0], vec![1.0, 2.0, 2.0]] {
        let r = laplacian_jacobian(&WeightedLaplacian::new(star.clone(), w.clone())?)?;
        println!(
            "star {w:?}: det J = {:.6}, closed form {:.6}, full rank = {}, strong = {:?}",
            r.det.unwrap_or(f64::NAN),
            star_jacobian_det(&w),
            r.full_rank,
            r.strong
        );
    }

    // a caterpillar: path 1-2-3-4 with pendant vertices on 2 and 3
    let tree = Graph::from_one_based(6, &[(1, 2), (2, 3), (3, 4), (2, 5), (3, 6)])?;
    let w = tree_strong_weights(&tree, 1)?;
    let a = WeightedLaplacian::new(tree, w)?;
    let t = equivalence_check(&a)?;
    println!(
        "tree weights {:.4?}: full rank {}, distinct eigenvalues {}, SSPWL {}",
        a.weights(),
        t.full_rank,
        t.distinct_eigs,
        t.sspwl
    );

    let c4 = WeightedLaplacian::unit(named_family(Family::Cycle, 4)?);
    let t = equivalence_check(&c4)?;
    println!(
        "unit 4-cycle: full rank {}, distinct eigenvalues {}, SSPWL {}, consistent {}",
        t.full_rank,
        t.distinct_eigs,
        t.sspwl,
        t.consistent()
    );
    Ok(())
}
