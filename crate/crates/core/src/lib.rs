//! Strong spectral property for weighted Laplacian matrices: verification,
//! the Jacobian method, spectrum realization on supergraphs, and the spectral
//! regions of the connected graphs on four vertices.

pub mod error;
pub mod graph;
pub mod io;
pub mod jacobian;
pub mod laplacian;
pub mod optimize;
pub mod realization;
pub mod region;
pub mod selftest;
pub mod spectral;
pub mod strong;

pub use error::{Error, Result};
pub use graph::{named_family, Family, Graph};
pub use jacobian::{equivalence_check, laplacian_jacobian, JacobianReport};
pub use laplacian::WeightedLaplacian;
pub use realization::{realize_spectrum, transfer_to_supergraph, RealizeOptions, SpectrumTarget};
pub use region::Family4;
pub use spectral::SymmetricMatrix;
pub use strong::{has_sspwl, tangent_sum_check, verification_matrix, VerificationReport};
