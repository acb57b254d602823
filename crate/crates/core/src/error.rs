use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(
        "enumeration budget exceeded: bounding box holds {box_points} points, budget is {budget}"
    )]
    BudgetExceeded { box_points: String, budget: u64 },
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("polytope contains no integral point")]
    EmptyHull,
    #[error("polytope is not full-dimensional (affine dimension {affine} in ambient {ambient})")]
    NotFullDimensional { affine: usize, ambient: usize },
    #[error("component {index} is not positive")]
    NonPositiveComponent { index: usize },
    #[error("dimension {d} out of range 1..={max}")]
    DimensionOutOfRange { d: usize, max: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("polytope is not lattice-free")]
    NotLatticeFree,
    #[error("leg vector does not have the required shape: {0}")]
    ShapeMismatch(String),
    #[error("witness verification failed: {0}")]
    WitnessVerificationFailed(String),
    #[error("reconstruction underdetermined: {0}")]
    ReconstructionUnderdetermined(String),
    #[error("parse error: {0}")]
    Parse(String),
}
