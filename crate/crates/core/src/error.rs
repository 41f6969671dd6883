use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite entry in {0}")]
    NonFinite(&'static str),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid system: {0}")]
    InvalidSystem(String),
    #[error("invalid weight vector: {0}")]
    InvalidWeights(String),
    #[error("invalid Gram matrix: {0}")]
    InvalidGram(String),
    #[error("invalid tolerance configuration: {0}")]
    InvalidTolerance(String),
    #[error("basis vectors are linearly dependent under the inner product")]
    DependentBasis,
    #[error("subspace counts differ ({0} vs {1})")]
    CountMismatch(usize, usize),
    #[error("subspace index {index} out of range 1..={count}")]
    IndexOutOfRange { index: usize, count: usize },

    #[error("expected a quadruple weight vector, got {0} tail entries")]
    NotQuadruple(usize),
    #[error("invalid family label: {0}")]
    InvalidLabel(String),
    #[error("degenerate parameter mu = {0}")]
    DegenerateParameter(String),
    #[error("invalid degenerate index pair ({0}, {1})")]
    InvalidIndices(usize, usize),
    #[error("dimension vector {0} is not (2;1,1,1,1)")]
    WrongDimension(String),
    #[error("anchor subspaces 1, 2, 4 are not pairwise distinct")]
    CoincidentAnchors,

    #[error("new character head {0} is not positive")]
    NonpositiveHead(f64),
    #[error("functor annihilates the system (zero kernel)")]
    Annihilated,
    #[error("subspaces do not span the ambient space")]
    NotSpanning,
    #[error("nonpositive weight: {0}")]
    NonpositiveWeight(String),
    #[error("orthoscalar residual {0:e} exceeds tolerance")]
    NotOrthoscalar(f64),

    #[error("not every subspace is one-dimensional")]
    NotLines,
    #[error("system is not a brick")]
    NotBrick,
    #[error("projection sum is numerically singular")]
    SingularSum,
    #[error("system shape is not one of the tabulated small systems")]
    UnknownShape,
    #[error("dimension {0} is not a discrete real root")]
    NotDiscreteRoot(String),
    #[error("character is not admissible: {0}")]
    InadmissibleCharacter(String),
    #[error("no isomorphism to the model system was found")]
    NoIsomorphism,
    #[error("solver failed: {0}")]
    SolverFailed(String),

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("projection images are not pairwise distinct")]
    DegenerateConfiguration,
    #[error("mu = {0} is forbidden (must avoid 0 and 1)")]
    ForbiddenMu(String),
}
