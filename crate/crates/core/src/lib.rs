//! Nilpotent-infinitesimal arithmetic and microcube differential forms on `R^m`.
//!
//! The crate is organized bottom-up:
//!
//! * [`weil`]: Weil algebras `R[X]/I` for monomial ideals `I`, their elements,
//!   tensor products, the `⊕` of simplicial objects and substitution morphisms.
//! * [`expr`]: expression trees for smooth maps, with a text parser.
//! * [`prolongation`]: evaluation of expressions over Weil scalars and the
//!   Euclidean structure of `R^m ⊗ W_D`.
//! * [`forms`]: microcubes, classical and microcube forms, the infinitesimal
//!   integral and the geometric exterior derivative.
//! * [`oracle`]: the classical coordinate exterior derivative, finite
//!   differences and the randomized law-checking harness.

pub mod expr;
pub mod forms;
pub mod oracle;
pub mod perm;
pub mod prolongation;
pub mod weil;
