//! Dirichlet-form renormalization on finitely ramified fractal triples.
//!
//! The crate is `no_std` and only needs `alloc`. It covers
//!
//! * [`triple`]: validated fractal triples, the gasket family and the 20-cell
//!   ring triple;
//! * [`form`]: Dirichlet forms on the boundary, effective conductivities and
//!   pinned minimizers;
//! * [`renorm`]: the level-1 energy, harmonic extension and the trace map
//!   `Lambda_r`;
//! * [`eigenflow`]: normalized fixed-point iteration, weight-grid search and
//!   the certificates showing the ring triple has no self-similar energy.
//!
//! Everything is a pure function of immutable values.
#![no_std]
// `!(x > 0.0)` is used on purpose so that NaN fails the check
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod eigenflow;
pub mod error;
pub mod form;
mod network;
pub mod renorm;
pub mod triple;

pub use eigenflow::{
    certify_no_eigenform, iterate, rbar, residual, search_g_eigenform, GridConfig, IterationTrace,
    ObstructionCertificate, SearchReport,
};
pub use error::{Error, Result, Violation};
pub use form::{
    effective_conductivity, energy, harmonic_min, is_irreducible, pinned_minimizer, BoundaryFunction,
    ConductivityTable, DirichletForm, DEFAULT_TOL,
};
pub use renorm::{
    assemble_level1, effective_conductivity_level1, harmonic_extension, renormalize, Level1Form, WeightVector,
};
pub use triple::{
    build_counterexample, build_gasket, cell_adjacency, validate_triple, CellAdjacency, Counterexample, FractalTriple,
    RawTriple,
};
