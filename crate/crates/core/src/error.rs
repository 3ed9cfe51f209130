use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} declared twice")]
    DuplicateVertex(String),
    #[error("edge {0}-{1} declared twice")]
    DuplicateEdge(String, String),
    #[error("loop at vertex {0}")]
    LoopEdge(String),
    #[error("edge {0}-{1} has label {2}; labels must be at least 2")]
    BadLabel(String, String, u32),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("vertex set is not spherical")]
    NotSpherical,
    #[error("coset enumeration supports rank at most 3, got {0}")]
    RankTooLarge(usize),
    #[error("vertex is not in the clique")]
    NotInClique,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharacterError {
    #[error("character is identically zero")]
    ZeroCharacter,
    #[error("odd edge {0}-{1} forces equal values")]
    OddEdgeMismatch(String, String),
    #[error("expected {expected} values, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("character is not discrete (integral up to scaling) as required")]
    NonDiscreteCharacter,
    #[error("residue {value} out of range for cyclic factor of order {order}")]
    BadResidue { value: i64, order: u64 },
    #[error("move precondition violated: {0}")]
    MovePreconditionViolated(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("character is not discrete")]
    NonDiscreteCharacter,
    #[error("cut is invalid: edge {0}-{1} crosses it without being dead")]
    CutInvalid(String, String),
    #[error("F_{p} has no element of order {order}")]
    NoRootOfUnity { p: u64, order: u64 },
    #[error("boundary of boundary is nonzero in degree {0}")]
    BoundaryNonZero(usize),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SigmaError {
    #[error("colouring is not valid on the cut: {0}")]
    ColouringInvalidOnCut(String),
    #[error("cut is invalid: edge {0}-{1} crosses it without being dead")]
    CutInvalid(String, String),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Character(#[from] CharacterError),
}
