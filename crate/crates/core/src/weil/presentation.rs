//! Monomial-ideal presentations of infinitesimal objects.
//!
//! A presentation describes `R[X_1, ..., X_n] / I` where `I` is generated by
//! the pure powers `X_i^{k_i}` and by square-free products `X_{i_1}...X_{i_k}`.
//! Variable indices are zero-based in memory and one-based in documents and
//! display output.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::WeilError;

/// Presentation of a finite-dimensional Weil algebra by a monomial ideal.
///
/// The vanishing-product set is kept minimal under divisibility, so two
/// presentations describing the same ideal compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InfinitesimalPresentation {
    bounds: Vec<u32>,
    products: BTreeSet<Vec<usize>>,
}

impl InfinitesimalPresentation {
    /// Builds a presentation. `products` use zero-based variable indices.
    pub fn new(bounds: Vec<u32>, products: impl IntoIterator<Item = Vec<usize>>) -> Result<Self, WeilError> {
        let n = bounds.len();
        if let Some((var, &k)) = bounds.iter().enumerate().find(|(_, &k)| k < 2) {
            return Err(WeilError::InvalidPresentation(format!(
                "degree bound {k} for variable {} must be at least 2",
                var + 1
            )));
        }
        let mut set = BTreeSet::new();
        for p in products {
            if p.is_empty() {
                return Err(WeilError::InvalidPresentation("empty vanishing product".into()));
            }
            if let Some(&bad) = p.iter().find(|&&i| i >= n) {
                return Err(WeilError::InvalidPresentation(format!(
                    "vanishing product refers to variable {} but there are only {n}",
                    bad + 1
                )));
            }
            if p.windows(2).any(|w| w[0] >= w[1]) {
                return Err(WeilError::InvalidPresentation(format!(
                    "vanishing product {} is not strictly increasing",
                    one_based(&p)
                )));
            }
            set.insert(p);
        }
        Ok(Self { bounds, products: minimize(set) })
    }

    /// The zero-variable presentation of `R` itself.
    pub fn point() -> Self {
        Self { bounds: Vec::new(), products: BTreeSet::new() }
    }

    /// `D = {d | d^2 = 0}`.
    pub fn d() -> Self {
        Self::simplicial(1, std::iter::empty())
    }

    /// `D_k = {d | d^{k+1} = 0}`.
    pub fn d_order(k: u32) -> Self {
        Self { bounds: vec![k + 1], products: BTreeSet::new() }
    }

    /// `D^n`, the n-fold product of `D`.
    pub fn cube(n: usize) -> Self {
        Self::simplicial(n, std::iter::empty())
    }

    /// `D(n)`: all pairwise products vanish.
    pub fn d_of(n: usize) -> Self {
        let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| vec![i, j]));
        Self::simplicial(n, pairs)
    }

    /// `D^n{p}` for a product set with zero-based indices.
    ///
    /// Panics if `p` violates the presentation invariants.
    pub fn simplicial(n: usize, p: impl IntoIterator<Item = Vec<usize>>) -> Self {
        Self::new(vec![2; n], p).expect("invalid simplicial presentation")
    }

    pub fn num_vars(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds(&self) -> &[u32] {
        &self.bounds
    }

    /// Normalized vanishing products, zero-based.
    pub fn products(&self) -> &BTreeSet<Vec<usize>> {
        &self.products
    }

    /// True when every degree bound is 2, i.e. the object is some `D^n{p}`.
    pub fn is_simplicial(&self) -> bool {
        self.bounds.iter().all(|&k| k == 2)
    }

    /// Generator monomials of the ideal as exponent vectors, pure powers first.
    pub fn generators(&self) -> Vec<Vec<u32>> {
        let n = self.num_vars();
        let mut gens = Vec::with_capacity(n + self.products.len());
        for (i, &k) in self.bounds.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = k;
            gens.push(e);
        }
        for p in &self.products {
            let mut e = vec![0; n];
            for &i in p {
                e[i] = 1;
            }
            gens.push(e);
        }
        gens
    }

    /// Whether the monomial with exponent vector `e` lies in the ideal.
    pub fn kills(&self, e: &[u32]) -> bool {
        e.iter().zip(&self.bounds).any(|(&a, &k)| a >= k)
            || self.products.iter().any(|p| p.iter().all(|&i| e[i] > 0))
    }

    /// Disjoint union of variables with `other`'s indices shifted past ours.
    pub fn tensor(&self, other: &Self) -> Self {
        let shift = self.num_vars();
        let mut bounds = self.bounds.clone();
        bounds.extend_from_slice(&other.bounds);
        let mut products = self.products.clone();
        products.extend(other.products.iter().map(|p| p.iter().map(|i| i + shift).collect()));
        Self { bounds, products: minimize(products) }
    }

    /// `p ⊕ q`: juxtapose the variables and make every cross pair vanish.
    pub fn oplus(&self, other: &Self) -> Result<Self, WeilError> {
        if !self.is_simplicial() || !other.is_simplicial() {
            return Err(WeilError::NotSimplicial);
        }
        let m = self.num_vars();
        let n = other.num_vars();
        let mut products = self.products.clone();
        products.extend(other.products.iter().map(|p| p.iter().map(|j| j + m).collect()));
        for i in 0..m {
            for j in 0..n {
                products.insert(vec![i, j + m]);
            }
        }
        Ok(Self { bounds: vec![2; m + n], products: minimize(products) })
    }

    /// Presentation on the variables `range`, keeping only products inside it.
    ///
    /// Returns `None` when some product straddles the boundary of the range.
    pub fn block(&self, range: std::ops::Range<usize>) -> Option<Self> {
        let mut products = BTreeSet::new();
        for p in &self.products {
            let inside = p.iter().filter(|i| range.contains(i)).count();
            if inside == p.len() {
                products.insert(p.iter().map(|i| i - range.start).collect());
            } else if inside != 0 {
                return None;
            }
        }
        Some(Self { bounds: self.bounds[range].to_vec(), products })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PresentationDoc::from(self)).expect("presentation serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, WeilError> {
        let doc: PresentationDoc =
            serde_json::from_str(text).map_err(|e| WeilError::Document(e.to_string()))?;
        doc.try_into()
    }
}

fn minimize(set: BTreeSet<Vec<usize>>) -> BTreeSet<Vec<usize>> {
    let divides = |a: &Vec<usize>, b: &Vec<usize>| a.len() < b.len() && a.iter().all(|i| b.contains(i));
    set.iter()
        .filter(|p| !set.iter().any(|q| divides(q, p)))
        .cloned()
        .collect()
}

fn one_based(p: &[usize]) -> String {
    let parts: Vec<String> = p.iter().map(|i| (i + 1).to_string()).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for InfinitesimalPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bounds: Vec<String> = self.bounds.iter().map(|k| k.to_string()).collect();
        let products: Vec<String> = self.products.iter().map(|p| one_based(p)).collect();
        write!(f, "vars {} bounds [{}] products {{{}}}", self.num_vars(), bounds.join(","), products.join(","))
    }
}

/// Wire form: `{"vars": n, "bounds": [k1..kn], "products": [[i1,...], ...]}`, one-based.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationDoc {
    vars: usize,
    bounds: Option<Vec<Option<u32>>>,
    #[serde(default)]
    products: Vec<Vec<usize>>,
}

impl From<&InfinitesimalPresentation> for PresentationDoc {
    fn from(p: &InfinitesimalPresentation) -> Self {
        Self {
            vars: p.num_vars(),
            bounds: Some(p.bounds.iter().map(|&k| Some(k)).collect()),
            products: p.products.iter().map(|q| q.iter().map(|i| i + 1).collect()).collect(),
        }
    }
}

impl TryFrom<PresentationDoc> for InfinitesimalPresentation {
    type Error = WeilError;

    fn try_from(doc: PresentationDoc) -> Result<Self, WeilError> {
        let bounds = doc.bounds.ok_or(WeilError::InfiniteDimensional { var: 1 })?;
        if bounds.len() < doc.vars {
            return Err(WeilError::InfiniteDimensional { var: bounds.len() + 1 });
        }
        if bounds.len() > doc.vars {
            return Err(WeilError::Document(format!(
                "{} degree bounds given for {} variables",
                bounds.len(),
                doc.vars
            )));
        }
        let bounds = bounds
            .into_iter()
            .enumerate()
            .map(|(i, k)| k.ok_or(WeilError::InfiniteDimensional { var: i + 1 }))
            .collect::<Result<Vec<_>, _>>()?;
        let products = doc
            .products
            .into_iter()
            .map(|p| {
                p.into_iter()
                    .map(|i| {
                        i.checked_sub(1)
                            .ok_or_else(|| WeilError::InvalidPresentation("variable index 0 in product".into()))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(bounds, products)
    }
}
