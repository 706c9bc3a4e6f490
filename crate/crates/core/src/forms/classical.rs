use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::FormError;
use crate::expr::{parse_expression, Expr};
use crate::perm::{increasing_tuples, Permutation};
use crate::prolongation::{eval_over_weil, WeilPoint};
use crate::weil::{WeilAlgebra, WeilElement};

/// Component values at a point: one entry per increasing tuple (in
/// [`increasing_tuples`] order), each a vector of `codim` scalars.
pub type ComponentFn = dyn Fn(&WeilPoint) -> Result<Vec<Vec<WeilElement>>, FormError> + Send + Sync;

#[derive(Clone)]
pub enum Components {
    /// Expressions keyed by strictly increasing zero-based index tuples;
    /// absent tuples are zero.
    Symbolic(BTreeMap<Vec<usize>, Vec<Expr>>),
    /// Components known only through evaluation.
    Sampled(Arc<ComponentFn>),
}

/// `x ↦ Σ_I ω_I(x) dx^I` with values in `R^codim`.
#[derive(Clone)]
pub struct ClassicalForm {
    dim: usize,
    degree: usize,
    codim: usize,
    components: Components,
}

impl ClassicalForm {
    pub fn symbolic(
        dim: usize,
        degree: usize,
        codim: usize,
        components: BTreeMap<Vec<usize>, Vec<Expr>>,
    ) -> Result<Self, FormError> {
        for (tuple, exprs) in &components {
            if tuple.len() != degree || tuple.windows(2).any(|w| w[0] >= w[1]) || tuple.iter().any(|&i| i >= dim) {
                return Err(FormError::Document(format!(
                    "{} is not an increasing {degree}-tuple of coordinates 1..{dim}",
                    tuple_key(tuple)
                )));
            }
            if exprs.len() != codim {
                return Err(FormError::Dimension { expected: codim, found: exprs.len() });
            }
            if let Some(e) = exprs.iter().find(|e| e.arity() > dim) {
                return Err(FormError::Document(format!("component `{e}` uses more than {dim} variables")));
            }
        }
        Ok(Self { dim, degree, codim, components: Components::Symbolic(components) })
    }

    pub fn sampled(dim: usize, degree: usize, codim: usize, f: Arc<ComponentFn>) -> Self {
        Self { dim, degree, codim, components: Components::Sampled(f) }
    }

    /// The zero form.
    pub fn zero(dim: usize, degree: usize, codim: usize) -> Self {
        Self { dim, degree, codim, components: Components::Symbolic(BTreeMap::new()) }
    }

    /// A scalar-valued 0-form.
    pub fn function(dim: usize, f: Expr) -> Result<Self, FormError> {
        Self::symbolic(dim, 0, 1, [(Vec::new(), vec![f])].into_iter().collect())
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

    pub fn components(&self) -> &Components {
        &self.components
    }

    pub fn symbolic_components(&self) -> Option<&BTreeMap<Vec<usize>, Vec<Expr>>> {
        match &self.components {
            Components::Symbolic(c) => Some(c),
            Components::Sampled(_) => None,
        }
    }

    pub fn tuples(&self) -> Vec<Vec<usize>> {
        increasing_tuples(self.dim, self.degree)
    }

    /// Component values at `x`, whose coordinates may be Weil elements.
    pub fn component_values(&self, x: &WeilPoint) -> Result<Vec<Vec<WeilElement>>, FormError> {
        if x.dim() != self.dim {
            return Err(FormError::Dimension { expected: self.dim, found: x.dim() });
        }
        match &self.components {
            Components::Symbolic(map) => self
                .tuples()
                .iter()
                .map(|t| match map.get(t) {
                    Some(exprs) => exprs.iter().map(|e| Ok(eval_over_weil(e, x)?)).collect(),
                    None => Ok(vec![x.algebra().zero(); self.codim]),
                })
                .collect(),
            Components::Sampled(f) => f(x),
        }
    }

    pub fn component_values_real(&self, x: &[f64]) -> Result<Vec<Vec<f64>>, FormError> {
        let p = WeilPoint::constant(&WeilAlgebra::reals(), x);
        Ok(self
            .component_values(&p)?
            .into_iter()
            .map(|v| v.into_iter().map(|c| c.augmentation()).collect())
            .collect())
    }

    /// `ω_x(a_1, ..., a_n) = Σ_I ω_I(x) det[a_{i_s}^{I_t}]`.
    pub fn evaluate(&self, x: &WeilPoint, edges: &[Vec<WeilElement>]) -> Result<Vec<WeilElement>, FormError> {
        if edges.len() != self.degree {
            return Err(FormError::Degree { expected: self.degree, found: edges.len() });
        }
        if let Some(e) = edges.iter().find(|e| e.len() != self.dim) {
            return Err(FormError::Dimension { expected: self.dim, found: e.len() });
        }
        let alg = x.algebra();
        let values = self.component_values(x)?;
        let perms = Permutation::all(self.degree);
        let mut out = vec![alg.zero(); self.codim];
        for (tuple, comp) in self.tuples().iter().zip(values) {
            if comp.iter().all(|c| c.is_zero()) {
                continue;
            }
            let det = minor(edges, tuple, &perms, alg);
            for (o, c) in out.iter_mut().zip(&comp) {
                *o = &*o + &(c * &det);
            }
        }
        Ok(out)
    }

    pub fn evaluate_real(&self, x: &[f64], edges: &[Vec<f64>]) -> Result<Vec<f64>, FormError> {
        let r = WeilAlgebra::reals();
        let p = WeilPoint::constant(&r, x);
        let e: Vec<Vec<WeilElement>> =
            edges.iter().map(|a| a.iter().map(|&v| WeilElement::constant(&r, v)).collect()).collect();
        Ok(self.evaluate(&p, &e)?.into_iter().map(|c| c.augmentation()).collect())
    }

    pub fn to_doc(&self) -> Option<ClassicalFormDoc> {
        let map = self.symbolic_components()?;
        Some(ClassicalFormDoc {
            dim: self.dim,
            degree: self.degree,
            codim: self.codim,
            components: map
                .iter()
                .map(|(t, es)| (tuple_key(t), es.iter().map(|e| e.to_string()).collect()))
                .collect(),
        })
    }

    pub fn from_doc(doc: &ClassicalFormDoc) -> Result<Self, FormError> {
        let mut components = BTreeMap::new();
        for (key, exprs) in &doc.components {
            let tuple = parse_tuple_key(key)?;
            let parsed = exprs
                .iter()
                .map(|s| parse_expression(s).map_err(|e| FormError::Document(format!("component {key}: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            if components.insert(tuple, parsed).is_some() {
                return Err(FormError::Document(format!("duplicate component {key}")));
            }
        }
        Self::symbolic(doc.dim, doc.degree, doc.codim, components)
    }

    pub fn from_json(text: &str) -> Result<Self, FormError> {
        let doc: ClassicalFormDoc = serde_json::from_str(text).map_err(|e| FormError::Document(e.to_string()))?;
        Self::from_doc(&doc)
    }
}

impl fmt::Debug for ClassicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = f.debug_struct("ClassicalForm");
        s.field("dim", &self.dim).field("degree", &self.degree).field("codim", &self.codim);
        match &self.components {
            Components::Symbolic(map) => s.field("components", map),
            Components::Sampled(_) => s.field("components", &"<sampled>"),
        }
        .finish()
    }
}

/// Determinant of the rows `tuple` of the `m × n` edge matrix.
fn minor(edges: &[Vec<WeilElement>], tuple: &[usize], perms: &[Permutation], alg: &Arc<WeilAlgebra>) -> WeilElement {
    let mut det = alg.zero();
    for p in perms {
        let term = (0..tuple.len()).fold(alg.one(), |acc, s| &acc * &edges[s][tuple[p.apply(s)]]);
        det = if p.sign() > 0 { &det + &term } else { &det - &term };
    }
    det
}

/// One-based `"i1,i2,..."`; the 0-form component is `""`.
pub fn tuple_key(t: &[usize]) -> String {
    t.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn parse_tuple_key(key: &str) -> Result<Vec<usize>, FormError> {
    if key.trim().is_empty() {
        return Ok(Vec::new());
    }
    key.split(',')
        .map(|s| match s.trim().parse::<usize>() {
            Ok(i) if i >= 1 => Ok(i - 1),
            _ => Err(FormError::Document(format!("bad component key {key:?}"))),
        })
        .collect()
}

/// `{"dim": m, "degree": n, "codim": k, "components": {"i1,i2,...": ["expr", ...]}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassicalFormDoc {
    pub dim: usize,
    pub degree: usize,
    #[serde(default = "one")]
    pub codim: usize,
    pub components: BTreeMap<String, Vec<String>>,
}

fn one() -> usize {
    1
}
