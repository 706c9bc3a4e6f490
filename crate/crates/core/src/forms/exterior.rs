//! The infinitesimal integral `∫_γ ω` and the exterior derivative defined
//! by the alternating sum over faces
//!
//! ```text
//! ∫_γ dω = Σ_i (-1)^{i+1} D_0 ∫_{∂_i γ} ω
//! ```
//!
//! For `M = R^m` the extraction of `dω(γ)` from the right-hand side is a
//! read-off of the top coefficient, once the sum has been checked to be
//! `(n+1)`-homogeneous.

use std::sync::Arc;

use super::{FormError, Microcube, MicrocubeForm};
use crate::weil::WeilElement;

/// Bound on the non-top coefficients of the face sum.
pub const HOMOGENEITY_TOLERANCE: f64 = 1e-9;

/// `∫_γ ω ∈ E ⊗ W_{D^n}`: `ω(γ)` placed on the monomial `d_1 ... d_n`.
pub fn integral(omega: &MicrocubeForm, gamma: &Microcube) -> Result<Microcube, FormError> {
    let value = omega.evaluate(gamma)?;
    let mut coeffs = vec![vec![gamma.aux().zero(); omega.codim()]; 1 << gamma.degree()];
    *coeffs.last_mut().expect("at least one monomial") = value;
    Microcube::from_coeffs(gamma.degree(), gamma.aux(), coeffs)
}

/// `∫_{∂_i γ} ω` for a cube of degree `n+1` and face index `i` (zero-based).
///
/// The face cycle moves slot `i` last; the last infinitesimal is then
/// absorbed into the scalars, the integral is taken over that extension and
/// the result is spread back out over `W_{D^{n+1}}`.
pub fn boundary_integral(omega: &MicrocubeForm, gamma: &Microcube, i: usize) -> Result<Microcube, FormError> {
    if gamma.degree() != omega.degree() + 1 {
        return Err(FormError::Degree { expected: omega.degree() + 1, found: gamma.degree() });
    }
    let family = gamma.transpose_face(i)?.fold_last()?;
    integral(omega, &family)?.unfold_last(gamma.aux())
}

/// `Σ_i (-1)^{i+1} D_0 ∫_{∂_i γ} ω`.
pub fn face_sum(omega: &MicrocubeForm, gamma: &Microcube) -> Result<Microcube, FormError> {
    let mut total = Microcube::zero(gamma.degree(), omega.codim(), gamma.aux());
    for i in 0..gamma.degree() {
        let term = boundary_integral(omega, gamma, i)?.d0();
        let signed = if i % 2 == 0 { term } else { term.scale(-1.0) };
        total = total.try_add(&signed)?;
    }
    Ok(total)
}

/// Everything computed for `dω(γ)`.
#[derive(Clone, Debug)]
pub struct DerivativeReport {
    pub face_sum: Microcube,
    pub residual: f64,
    pub value: Vec<WeilElement>,
}

/// Computes the face sum, checks its homogeneity and extracts `dω(γ)`.
pub fn derivative_report(omega: &MicrocubeForm, gamma: &Microcube) -> Result<DerivativeReport, FormError> {
    let sum = face_sum(omega, gamma)?;
    let residual = sum.homogeneity_residual();
    if !(residual <= HOMOGENEITY_TOLERANCE) {
        return Err(FormError::NotHomogeneous { residual });
    }
    let value = sum.top().to_vec();
    Ok(DerivativeReport { face_sum: sum, residual, value })
}

/// The geometric exterior derivative `dω`, an `(n+1)`-form.
pub fn exterior_derivative(omega: &MicrocubeForm) -> MicrocubeForm {
    let inner = omega.clone();
    let eval = move |gamma: &Microcube| Ok(derivative_report(&inner, gamma)?.value);
    MicrocubeForm::new(omega.dim(), omega.degree() + 1, omega.codim(), Arc::new(eval))
}
