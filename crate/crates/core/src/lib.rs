//! Weighted Laplacians of abstract simplicial complexes.
//!
//! The crate builds coboundary matrices and the up, down and signless
//! Laplacians under arbitrary positive face weights, decides balance of the
//! incidence signed graph `B_i(K)` between `i`- and `(i+1)`-faces, and relates
//! the two through the largest eigenvalue: `λmax(L_i^up) ≤ λmax(Q_i^up)`, with
//! equality exactly when `B_i(K)` is balanced (for `(i+1)`-path connected
//! complexes). Wedge sums, joins, Cartesian products and motif duplication are
//! provided together with exact reduced Betti numbers.
//!
//! ```
//! use simplicial::{Orientation, SimplicialComplex, Weights, bound_report};
//!
//! // the path on three vertices: every quantity in the chain equals 3
//! let p3 = SimplicialComplex::from_facets(&[[0, 1], [1, 2]]).unwrap();
//! let r = bound_report(&p3, 0, &Weights::unit(&p3), &Orientation::canonical()).unwrap();
//! assert!(r.balanced && r.equality_holds && r.degree_bound_attained);
//! assert!((r.lambda_max_up - 3.0).abs() < 1e-9);
//! ```

pub mod chain;
pub mod complex;
pub mod constructions;
pub mod eigen;
pub mod error;
pub mod homology;
pub mod label;
pub mod signed_graph;
pub mod spectra;

pub use chain::{
    coboundary_matrix, degree, laplacian, signed_laplacian, CoboundaryMatrix, IncidenceSigns,
    LaplacianKind, LaplacianMatrix, Weights,
};
pub use complex::{incidence_sign, Face, Orientation, SimplicialComplex};
pub use constructions::{
    cartesian_product, closure, duplicate_motif, join, link, star, validate_i_motif, wedge_chain,
    wedge_sum, MotifSpec, WedgeSpec,
};
pub use eigen::{jacobi_eigen, SymmetricEigen};
pub use error::{Error, Result};
pub use homology::{betti_numbers, harmonic_dimension, is_acyclic, BettiVector};
pub use label::VertexLabel;
pub use signed_graph::{
    brute_force_balance, cycle_sign, incidence_signed_graph, is_balanced, switch, BalanceCertificate,
    Node, SignedEdge, SignedGraph,
};
pub use spectra::{
    bound_report, degree_sum_bound, dr_bound, eigenvalues, equality_report, hj_bound, lambda_max,
    BoundReport, Spectrum,
};
