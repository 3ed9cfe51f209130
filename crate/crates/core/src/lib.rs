//! Exact computation of living subgraphs, Sigma-invariant membership and
//! kernel homology for Artin groups given by labelled graphs.

pub mod algebra;
pub mod chain;
pub mod character;
pub mod coxeter;
pub mod error;
pub mod graph;
pub mod sigma;

pub use character::{Character, FiniteQuotient, LivingSubgraph};
pub use error::{ChainError, CharacterError, CoxeterError, GraphError, SigmaError};
pub use graph::LabeledGraph;
