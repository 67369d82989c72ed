//! Laplacians of directed hypergraphs and the heat semigroups they generate.
//!
//! Combinatorial objects (incidence matrices, Laplacians, degree counts) are
//! exact `i64`. Spectral and semigroup computations are generic over
//! [`Real`]; the aliases below fix `f64`, which is what the CLI uses.

pub mod classify;
pub mod duality;
pub mod fano;
pub mod hypergraph;
pub mod io;
pub mod matrix;
pub mod scalar;
pub mod semigroup;
pub mod spectra;
pub mod surgery;

pub use hypergraph::{
    builders, DegreeProfile, DirectedHypergraph, Hyperedge, HypergraphError, IncidenceMatrix,
    SymIntMatrix,
};
pub use matrix::{IntMatrix, Matrix};
pub use scalar::{Real, Tolerances};

/// Floating-point symmetric matrix.
pub type SymMatrix = Matrix<f64>;
pub type Spectrum = spectra::SpectralDecomposition<f64>;
pub type Bounds = spectra::SpectralBounds;
pub type HeatOperator = semigroup::HeatOperator<f64>;
pub type ThresholdReport = semigroup::ThresholdReport<f64>;
pub type ClassificationReport = classify::ClassificationReport<f64>;
pub type Tol = Tolerances<f64>;
