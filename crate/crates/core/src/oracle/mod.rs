//! Independent ground truth for the exterior derivative and the randomized
//! law-checking harness.

mod classical;
pub mod corpus;
mod suite;
mod symbolic;

use thiserror::Error;

pub use classical::{classical_d, finite_difference_d, vector_calculus_views};
pub use suite::{law_names, run_suite, CheckReport, Law, LAWS};
pub use symbolic::{diff, gradient};

use crate::forms::FormError;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("form components are not symbolic")]
    NotSymbolic,
    #[error("no vector calculus view for degree {degree} forms on R^{dim} with {codim} components")]
    Unsupported { dim: usize, degree: usize, codim: usize },
    #[error("finite-difference step must be positive, got {0}")]
    Step(f64),
    #[error("unknown law `{0}`")]
    UnknownLaw(String),
    #[error(transparent)]
    Form(#[from] FormError),
}
