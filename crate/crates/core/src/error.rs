use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Error type shared by all modules.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("degree {degree} exceeds ambient dimension {dim}")]
    DegreeOverflow { degree: usize, dim: usize },
    #[error("multi-index {0:?} is not strictly increasing within 1..={1}")]
    BadMultiIndex(Vec<u8>, usize),
    #[error("ambient dimension {0} exceeds supported maximum {max}", max = crate::exterior::MAX_DIM)]
    DimTooLarge(usize),
    #[error("zero input where a nonzero {0} is required")]
    ZeroInput(&'static str),
    #[error("rank-deficient frame: vector {0} is dependent on its predecessors")]
    RankDeficient(usize),
    #[error("point {0:?} lies outside the declared region")]
    OutsideRegion(Vec<f64>),
    #[error("finite-difference stencil of radius {0} exits the declared region")]
    StencilExitsRegion(f64),
    #[error("objective returned a non-finite value")]
    NonFiniteObjective,
    #[error("form is not comass-one at the sample point: comass {0}")]
    ComassNotOne(f64),
    #[error("comass bound violated: {0}")]
    ComassViolation(f64),
    #[error("contact membership fails: pairing {0}")]
    NotContact(f64),
    #[error("{0}")]
    BadParameter(String),
    #[error("evaluation point {0:?} is not a grid node (grid-backed graph)")]
    OffGrid(Vec<f64>),
    #[error("point {0:?} is at or too near the declared singularity")]
    AtSingularity(Vec<f64>),
    #[error("solver did not converge: {0}")]
    NoConvergence(String),
    #[error("simplex {0} of degree {1} not present in the complex")]
    MissingSimplex(usize, usize),
    #[error("simplex has zero {0}-volume: vertices {1:?}")]
    DegenerateSimplex(usize, Vec<usize>),
    #[error("chain is not a cycle: boundary has {0} nonzero coefficients")]
    NotACycle(usize),
    #[error("no filling exists: the cycle is not a boundary in this complex")]
    Infeasible,
    #[error("problem size exceeds the supported limit: {0}")]
    SizeLimit(String),
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("resource limit reached: {0}")]
    ResourceLimit(String),
    #[error("input file is malformed: {0}")]
    Malformed(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}
