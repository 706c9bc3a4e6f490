use std::fmt;
use std::sync::Arc;

use super::{ClassicalForm, FormError, Microcube};
use crate::prolongation::WeilPoint;
use crate::weil::WeilElement;

pub type Evaluator = dyn Fn(&Microcube) -> Result<Vec<WeilElement>, FormError> + Send + Sync;

/// A differential form as a function on microcubes.
///
/// The evaluator must accept cubes over any auxiliary algebra and return
/// `codim` elements of that same algebra. Forms are compared by sampling,
/// never structurally.
#[derive(Clone)]
pub struct MicrocubeForm {
    dim: usize,
    degree: usize,
    codim: usize,
    eval: Arc<Evaluator>,
    classical: Option<Arc<ClassicalForm>>,
}

impl MicrocubeForm {
    pub fn new(dim: usize, degree: usize, codim: usize, eval: Arc<Evaluator>) -> Self {
        Self { dim, degree, codim, eval, classical: None }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn codim(&self) -> usize {
        self.codim
    }

    /// The classical form this one was built from, if any.
    pub fn classical(&self) -> Option<&ClassicalForm> {
        self.classical.as_deref()
    }

    pub fn evaluate(&self, gamma: &Microcube) -> Result<Vec<WeilElement>, FormError> {
        if gamma.degree() != self.degree {
            return Err(FormError::Degree { expected: self.degree, found: gamma.degree() });
        }
        if gamma.dim() != self.dim {
            return Err(FormError::Dimension { expected: self.dim, found: gamma.dim() });
        }
        let out = (self.eval)(gamma)?;
        if out.len() != self.codim {
            return Err(FormError::Dimension { expected: self.codim, found: out.len() });
        }
        if out.iter().any(|c| !c.algebra().same_as(gamma.aux())) {
            return Err(FormError::Weil(crate::weil::WeilError::AlgebraMismatch));
        }
        Ok(out)
    }

    /// Real-valued evaluation on a real cube.
    pub fn evaluate_real(&self, gamma: &Microcube) -> Result<Vec<f64>, FormError> {
        Ok(self.evaluate(gamma)?.iter().map(|c| c.augmentation()).collect())
    }
}

impl fmt::Debug for MicrocubeForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MicrocubeForm")
            .field("dim", &self.dim)
            .field("degree", &self.degree)
            .field("codim", &self.codim)
            .finish_non_exhaustive()
    }
}

/// `ω̃(γ) = ω_{π(γ)}(e_1^γ, ..., e_n^γ)`.
pub fn classical_to_microcube(omega: &ClassicalForm) -> MicrocubeForm {
    let form = Arc::new(omega.clone());
    let inner = Arc::clone(&form);
    let eval = move |gamma: &Microcube| {
        let x = WeilPoint::new(gamma.aux(), gamma.base().to_vec())?;
        let edges: Vec<Vec<WeilElement>> = (0..gamma.degree()).map(|i| gamma.edge(i).to_vec()).collect();
        inner.evaluate(&x, &edges)
    };
    MicrocubeForm {
        dim: omega.dim(),
        degree: omega.degree(),
        codim: omega.codim(),
        eval: Arc::new(eval),
        classical: Some(form),
    }
}

/// `ρ̲_x(a_1, ..., a_n) = ρ(i(x; a_1, ..., a_n))`, read off on coordinate
/// basis vectors.
pub fn microcube_to_classical(rho: &MicrocubeForm) -> ClassicalForm {
    let (dim, degree, codim) = (rho.dim(), rho.degree(), rho.codim());
    let rho = rho.clone();
    let components = move |x: &WeilPoint| {
        let aux = x.algebra();
        crate::perm::increasing_tuples(dim, degree)
            .iter()
            .map(|tuple| {
                let edges = tuple
                    .iter()
                    .map(|&i| {
                        (0..dim).map(|j| WeilElement::constant(aux, if i == j { 1.0 } else { 0.0 })).collect()
                    })
                    .collect();
                let gamma = Microcube::canonical_over(aux, x.coords().to_vec(), edges)?;
                rho.evaluate(&gamma)
            })
            .collect()
    };
    ClassicalForm::sampled(dim, degree, codim, Arc::new(components))
}
