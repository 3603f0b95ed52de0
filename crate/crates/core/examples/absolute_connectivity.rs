//! Maximizes the algebraic connectivity of each order-4 graph under a fixed trace.

use sspwl::region::{absolute_algebraic_connectivity, Family4, AAC_MULTISTART};

fn main() -> sspwl::error::Result<()> {
    for family in Family4::ALL {
        let r = absolute_algebraic_connectivity(&family.graph(), AAC_MULTISTART, 0)?;
        let w: Vec<String> = r
            .weighted
            .weights()
            .iter()
            .map(|x| format!("{x:.6}"))
            .collect();
        println!(
            "{:<5} aac = {:.9}  weak = {:<5}  weights = [{}]",
            family,
            r.value,
            r.weak,
            w.join(", ")
        );
    }
    Ok(())
}
