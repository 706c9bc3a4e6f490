//! Weil algebras presented by monomial ideals, their elements and the
//! substitution morphisms between them.

mod algebra;
mod element;
mod morphism;
mod presentation;

pub use algebra::WeilAlgebra;
pub use element::{exponent_key, parse_exponent_key, ElementDoc, WeilElement};
pub use morphism::{oplus_all, WeilMorphism, WELL_DEFINED_TOLERANCE};
pub(crate) use morphism::embed_block;
pub use presentation::InfinitesimalPresentation;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WeilError {
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("variable {var} has no degree bound; the algebra would be infinite-dimensional")]
    InfiniteDimensional { var: usize },
    #[error("operands live in different Weil algebras")]
    AlgebraMismatch,
    #[error("expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("variable {var} out of range for {vars} variables")]
    VariableOutOfRange { var: usize, vars: usize },
    #[error("the ⊕ operation needs simplicial objects (all degree bounds 2)")]
    NotSimplicial,
    #[error("image of generator {var} has nonzero constant term")]
    NonzeroAugmentation { var: usize },
    #[error("morphism is not well defined: generator {generator} does not map to zero")]
    NotWellDefined { generator: String },
    #[error("cannot combine an empty list")]
    EmptyCombination,
    #[error("element with zero constant term is not invertible")]
    NotInvertible,
    #[error("malformed document: {0}")]
    Document(String),
}
