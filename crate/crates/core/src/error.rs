use alloc::vec::Vec;
use core::fmt;

/// One failed check found while validating a candidate triple.
///
/// Vertex ids and indices are zero-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Structural problem that prevents the remaining checks from being meaningful.
    Shape(ShapeProblem),
    /// Boundary vertex `label` is not fixed by its own cell map.
    AxiomA { label: usize, found: usize },
    /// Cell `cell` hits boundary vertex `vertex` outside the reserved slot.
    AxiomB { cell: usize, vertex: usize },
    /// The union-of-cells graph has more than one component; `vertex` is not
    /// reachable from vertex 0.
    AxiomC { components: usize, vertex: usize },
    /// Cell `cell` maps two boundary labels to the same vertex.
    NotInjective { cell: usize, vertex: usize },
    /// Vertex `vertex` lies in no cell.
    CoverageGap { vertex: usize },
    /// Cell `cell` references `vertex`, which is not below `n_level1`.
    IdOutOfRange { cell: usize, vertex: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShapeProblem {
    TooFewBoundary(usize),
    TooFewCells { n_boundary: usize, n_cells: usize },
    CellCount { expected: usize, found: usize },
    CellLength { cell: usize, expected: usize, found: usize },
    Level1TooSmall { n_boundary: usize, n_level1: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape(p) => write!(f, "shape: {p}"),
            Violation::AxiomA { label, found } => {
                write!(f, "axiom a: cell {label} sends boundary label {label} to vertex {found}, not to itself")
            }
            Violation::AxiomB { cell, vertex } => {
                write!(f, "axiom b: boundary vertex {vertex} lies in cell {cell} outside its reserved slot")
            }
            Violation::AxiomC { components, vertex } => {
                write!(f, "axiom c: cell graph has {components} components; vertex {vertex} unreachable from vertex 0")
            }
            Violation::NotInjective { cell, vertex } => {
                write!(f, "cell {cell} is not injective: vertex {vertex} repeated")
            }
            Violation::CoverageGap { vertex } => write!(f, "vertex {vertex} lies in no cell"),
            Violation::IdOutOfRange { cell, vertex } => {
                write!(f, "cell {cell} references out-of-range vertex {vertex}")
            }
        }
    }
}

impl fmt::Display for ShapeProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeProblem::TooFewBoundary(n) => write!(f, "need at least 2 boundary vertices, got {n}"),
            ShapeProblem::TooFewCells { n_boundary, n_cells } => {
                write!(f, "need at least {n_boundary} cells, got {n_cells}")
            }
            ShapeProblem::CellCount { expected, found } => {
                write!(f, "declared {expected} cells but {found} were given")
            }
            ShapeProblem::CellLength { cell, expected, found } => {
                write!(f, "cell {cell} has {found} entries, expected {expected}")
            }
            ShapeProblem::Level1TooSmall { n_boundary, n_level1 } => {
                write!(f, "level-1 vertex count {n_level1} is smaller than boundary size {n_boundary}")
            }
        }
    }
}

/// Errors raised by the numerical and structural operations of this crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid fractal triple ({} violations)", .0.len())]
    InvalidTriple(Vec<Violation>),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("Dirichlet form is not irreducible")]
    ReducibleForm,
    #[error("negative conductance {value} for pair ({a}, {b})")]
    NegativeCoefficient { a: usize, b: usize, value: f64 },
    #[error("label {label} out of range for {n} boundary vertices")]
    LabelOutOfRange { label: usize, n: usize },
    #[error("pinned labels must differ (both are {0})")]
    SamePins(usize),
    #[error("weights must be strictly positive (entry {index} is {value})")]
    NonPositiveWeight { index: usize, value: f64 },
    #[error("empty input")]
    Empty,
    #[error("zero form has no normalization")]
    ZeroForm,
    #[error("operation is only defined on the 20-cell counterexample triple")]
    NotCounterexample,
    #[error("numerical failure: {0}")]
    NumericalFailure(&'static str),
    #[error("numerical failure at iteration step {step}: {source}")]
    IterationFailure {
        step: usize,
        #[source]
        source: alloc::boxed::Box<Error>,
    },
}

pub type Result<T> = core::result::Result<T, Error>;
