//! Differential forms on `R^m`, in their classical shape and as functions on
//! microcubes, together with the exterior derivative computed from
//! infinitesimal boundaries.

mod classical;
mod exterior;
mod form;
mod microcube;

use thiserror::Error;

pub use classical::{tuple_key, ClassicalForm, ClassicalFormDoc, ComponentFn, Components};
pub use exterior::{
    boundary_integral, derivative_report, exterior_derivative, face_sum, integral, DerivativeReport,
    HOMOGENEITY_TOLERANCE,
};
pub use form::{classical_to_microcube, microcube_to_classical, Evaluator, MicrocubeForm};
pub use microcube::{Microcube, MicrocubeDoc, RESTRICTION_TOLERANCE};

use crate::expr::EvalError;
use crate::prolongation::ProlongationError;
use crate::weil::WeilError;

#[derive(Debug, Error)]
pub enum FormError {
    #[error("malformed microcube: {0}")]
    Shape(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    Degree { expected: usize, found: usize },
    #[error("position {position} out of range for a cube of degree {degree}")]
    Position { position: usize, degree: usize },
    #[error("restrictions disagree by {deviation:e}")]
    RestrictionMismatch { deviation: f64 },
    #[error("boundary sum is not homogeneous: residual {residual:e}")]
    NotHomogeneous { residual: f64 },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Weil(#[from] WeilError),
    #[error("{0}")]
    Document(String),
}

impl From<ProlongationError> for FormError {
    fn from(e: ProlongationError) -> Self {
        match e {
            ProlongationError::Eval(e) => FormError::Eval(e),
            ProlongationError::Weil(e) => FormError::Weil(e),
            ProlongationError::Dimension(a, b) => FormError::Dimension { expected: a, found: b },
            other => FormError::Document(other.to_string()),
        }
    }
}
