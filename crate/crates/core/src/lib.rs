//! Spectral radius of the `A_α` tensor of a k-uniform hypergraph, with
//! degree-based lower bounds, exact combinatorial solvers for the vertex
//! sets those bounds use, and the direct-product transport checks.
//!
//! ```
//! use hyperalpha::{spectral_radius, Alpha, Hypergraph, DEFAULT_MAX_ITER};
//!
//! let g = Hypergraph::complete(5, 3).unwrap();
//! let r = spectral_radius(&g, Alpha::new(0.4).unwrap(), 1e-10, DEFAULT_MAX_ITER).unwrap();
//! assert!((r.rho - 6.0).abs() < 1e-9);
//! ```

pub mod bounds;
pub mod combinatorics;
pub mod error;
pub mod hypergraph;
pub mod numeric;
pub mod spectral;
pub mod tensor;
pub mod uhg;
pub mod verify;

pub use bounds::{BoundEvaluator, BoundKind, BoundReport, HOLDS_TOL};
pub use combinatorics::{SubsetKind, VertexSubset};
pub use error::{Error, Result};
pub use hypergraph::{Connectivity, DegreeProfile, Hypergraph};
pub use numeric::Rational;
pub use spectral::{
    check_laplacian_transport, check_product_rho, spectral_radius, spectral_radius_any, SpectralResult,
    DEFAULT_MAX_ITER, DEFAULT_TOL,
};
pub use tensor::{Alpha, KVector, TensorKind};
pub use verify::{VerifyConfig, VerifyRun};
