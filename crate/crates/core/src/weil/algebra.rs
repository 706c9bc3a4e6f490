use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::{InfinitesimalPresentation, WeilElement, WeilError};

/// Finite-dimensional quotient `R[X] / I` by a monomial ideal, with its
/// standard-monomial basis.
///
/// The basis is ordered graded-lexicographically: total degree ascending,
/// then exponent vectors descending lexicographically within a degree, so
/// the constant monomial sits at position 0 and `x1` precedes `x2`.
#[derive(Debug)]
pub struct WeilAlgebra {
    presentation: InfinitesimalPresentation,
    basis: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    // For each basis position `a`, the pairs `(b, c)` with `e_a * e_b = e_c`.
    table: Vec<Vec<(usize, usize)>>,
    nilpotency: u32,
}

impl WeilAlgebra {
    /// Builds the algebra for a presentation.
    pub fn new(presentation: InfinitesimalPresentation) -> Self {
        let bounds = presentation.bounds().to_vec();
        let mut basis = Vec::new();
        let mut e = vec![0u32; bounds.len()];
        loop {
            if !presentation.kills(&e) {
                basis.push(e.clone());
            }
            // odometer over the box 0 <= e_i < k_i
            let mut i = 0;
            loop {
                if i == e.len() {
                    break;
                }
                e[i] += 1;
                if e[i] < bounds[i] {
                    break;
                }
                e[i] = 0;
                i += 1;
            }
            if i == e.len() {
                break;
            }
        }
        basis.sort_by(|a, b| degree(a).cmp(&degree(b)).then_with(|| b.cmp(a)));
        let index: HashMap<Vec<u32>, usize> = basis.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let table = basis
            .iter()
            .map(|a| {
                basis
                    .iter()
                    .enumerate()
                    .filter_map(|(j, b)| {
                        let c: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                        index.get(&c).map(|&k| (j, k))
                    })
                    .collect()
            })
            .collect();
        let nilpotency = basis.iter().map(|e| degree(e)).max().unwrap_or(0) + 1;
        Self { presentation, basis, index, table, nilpotency }
    }

    /// Shared, memoized instance for a presentation.
    pub fn shared(presentation: &InfinitesimalPresentation) -> Arc<Self> {
        static CACHE: OnceLock<Mutex<HashMap<InfinitesimalPresentation, Arc<WeilAlgebra>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(a) = cache.lock().expect("algebra cache poisoned").get(presentation) {
            return Arc::clone(a);
        }
        let built = Arc::new(Self::new(presentation.clone()));
        let mut guard = cache.lock().expect("algebra cache poisoned");
        Arc::clone(guard.entry(presentation.clone()).or_insert(built))
    }

    /// The real numbers as the zero-variable Weil algebra.
    pub fn reals() -> Arc<Self> {
        Self::shared(&InfinitesimalPresentation::point())
    }

    /// `W_{D^n}`.
    pub fn cube(n: usize) -> Arc<Self> {
        Self::shared(&InfinitesimalPresentation::cube(n))
    }

    /// Tensor product: variables juxtaposed, ideal generators united.
    pub fn tensor(a: &Self, b: &Self) -> Arc<Self> {
        Self::shared(&a.presentation.tensor(&b.presentation))
    }

    pub fn presentation(&self) -> &InfinitesimalPresentation {
        &self.presentation
    }

    pub fn num_vars(&self) -> usize {
        self.presentation.num_vars()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn index_of(&self, exponents: &[u32]) -> Option<usize> {
        self.index.get(exponents).copied()
    }

    /// Smallest `N` with `ν^N = 0` for every nilpotent `ν`.
    pub fn nilpotency_index(&self) -> u32 {
        self.nilpotency
    }

    pub(crate) fn products_of(&self, a: usize) -> &[(usize, usize)] {
        &self.table[a]
    }

    /// Structural equality of algebras (same normalized presentation),
    /// short-circuiting on shared instances.
    pub fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || self.presentation == other.presentation
    }

    pub fn zero(self: &Arc<Self>) -> WeilElement {
        WeilElement::zero(self)
    }

    pub fn one(self: &Arc<Self>) -> WeilElement {
        WeilElement::constant(self, 1.0)
    }

    /// The generator `x_{var+1}` (zero-based `var`).
    pub fn var(self: &Arc<Self>, var: usize) -> Result<WeilElement, WeilError> {
        let mut e = vec![0; self.num_vars()];
        *e.get_mut(var).ok_or(WeilError::VariableOutOfRange { var: var + 1, vars: self.num_vars() })? = 1;
        Ok(self.monomial(&e, 1.0))
    }

    /// `c * x^e`, zero when `x^e` lies in the ideal.
    pub fn monomial(self: &Arc<Self>, exponents: &[u32], c: f64) -> WeilElement {
        let mut out = self.zero();
        if let Some(i) = self.index_of(exponents) {
            out.coeffs_mut()[i] = c;
        }
        out
    }

    /// Human-readable name of a basis monomial; a lone variable is named `x`.
    pub fn monomial_name(&self, pos: usize) -> String {
        let e = &self.basis[pos];
        let single = e.len() == 1;
        let factors: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| {
                let v = if single { "x".to_string() } else { format!("x{}", i + 1) };
                if k == 1 { v } else { format!("{v}^{k}") }
            })
            .collect();
        if factors.is_empty() { "1".into() } else { factors.join("*") }
    }
}

fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

impl fmt::Display for WeilAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.dim()).map(|i| self.monomial_name(i)).collect();
        write!(f, "dim {}, basis {}", self.dim(), names.join(", "))
    }
}

impl PartialEq for WeilAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.presentation == other.presentation
    }
}
