use std::sync::Arc;

use super::{InfinitesimalPresentation, WeilAlgebra, WeilElement, WeilError};

/// Coefficients below this magnitude count as zero in the well-definedness check.
pub const WELL_DEFINED_TOLERANCE: f64 = 1e-12;

/// Algebra map induced by a putative map of infinitesimal objects
/// `domain_object -> codomain_object`.
///
/// The map of algebras runs the other way: each generator of the codomain
/// object's algebra is sent to an element of the domain object's algebra,
/// and a general element is mapped by substitution.
#[derive(Clone, Debug)]
pub struct WeilMorphism {
    domain: Arc<WeilAlgebra>,
    codomain: Arc<WeilAlgebra>,
    images: Vec<WeilElement>,
    // image of every basis monomial of the codomain algebra
    monomial_images: Vec<WeilElement>,
}

impl WeilMorphism {
    /// Checks and builds the morphism `dom -> cod` sending codomain generator
    /// `j` to `images[j]`.
    pub fn new(
        dom: &InfinitesimalPresentation,
        cod: &InfinitesimalPresentation,
        images: Vec<WeilElement>,
    ) -> Result<Self, WeilError> {
        Self::from_algebras(&WeilAlgebra::shared(dom), &WeilAlgebra::shared(cod), images)
    }

    pub fn from_algebras(
        domain: &Arc<WeilAlgebra>,
        codomain: &Arc<WeilAlgebra>,
        images: Vec<WeilElement>,
    ) -> Result<Self, WeilError> {
        if images.len() != codomain.num_vars() {
            return Err(WeilError::DimensionMismatch { expected: codomain.num_vars(), found: images.len() });
        }
        for (j, img) in images.iter().enumerate() {
            if !img.algebra().same_as(domain) {
                return Err(WeilError::AlgebraMismatch);
            }
            if img.augmentation() != 0.0 {
                return Err(WeilError::NonzeroAugmentation { var: j + 1 });
            }
        }
        let power = |e: &[u32]| {
            e.iter().zip(&images).fold(domain.one(), |acc, (&k, img)| if k == 0 { acc } else { &acc * &img.powi(k) })
        };
        for g in codomain.presentation().generators() {
            if power(&g).max_abs() > WELL_DEFINED_TOLERANCE {
                return Err(WeilError::NotWellDefined { generator: monomial_label(&g) });
            }
        }
        let monomial_images = codomain.basis().iter().map(|e| power(e)).collect();
        Ok(Self { domain: Arc::clone(domain), codomain: Arc::clone(codomain), images, monomial_images })
    }

    pub fn identity(p: &InfinitesimalPresentation) -> Self {
        let a = WeilAlgebra::shared(p);
        let images = (0..a.num_vars()).map(|i| a.var(i).expect("variable in range")).collect();
        Self::from_algebras(&a, &a, images).expect("identity is well defined")
    }

    /// Algebra of the domain object (where images live).
    pub fn domain(&self) -> &Arc<WeilAlgebra> {
        &self.domain
    }

    /// Algebra of the codomain object (what the morphism is applied to).
    pub fn codomain(&self) -> &Arc<WeilAlgebra> {
        &self.codomain
    }

    pub fn images(&self) -> &[WeilElement] {
        &self.images
    }

    /// Substitutes the generator images into `a`.
    pub fn apply(&self, a: &WeilElement) -> Result<WeilElement, WeilError> {
        if !a.algebra().same_as(&self.codomain) {
            return Err(WeilError::AlgebraMismatch);
        }
        let mut out = self.domain.zero();
        for (&c, img) in a.coeffs().iter().zip(&self.monomial_images) {
            if c != 0.0 {
                for (o, v) in out.coeffs_mut().iter_mut().zip(img.coeffs()) {
                    *o += c * v;
                }
            }
        }
        Ok(out)
    }

    /// The composite object map `first` then `then`; on algebras this applies
    /// `then` first.
    pub fn compose(first: &Self, then: &Self) -> Result<Self, WeilError> {
        if !first.codomain.same_as(&then.domain) {
            return Err(WeilError::AlgebraMismatch);
        }
        let images = then.images.iter().map(|img| first.apply(img)).collect::<Result<Vec<_>, _>>()?;
        Self::from_algebras(&first.domain, &then.codomain, images)
    }

    /// `Φ_1 ⊕ ... ⊕ Φ_n`: the morphism out of the ⊕ of the domains whose
    /// restriction to block `i` is `Φ_i`.
    pub fn combine(parts: &[Self]) -> Result<Self, WeilError> {
        let first = parts.first().ok_or(WeilError::EmptyCombination)?;
        if parts.len() == 1 {
            return Ok(first.clone());
        }
        if parts.iter().any(|p| !p.codomain.same_as(&first.codomain)) {
            return Err(WeilError::AlgebraMismatch);
        }
        let domains: Vec<InfinitesimalPresentation> = parts.iter().map(|p| p.domain.presentation().clone()).collect();
        let sum = oplus_all(&domains)?;
        let big = WeilAlgebra::shared(&sum);
        let mut images = vec![big.zero(); first.codomain.num_vars()];
        let mut offset = 0;
        for part in parts {
            for (slot, img) in images.iter_mut().zip(&part.images) {
                *slot = &*slot + &embed_block(img, &big, offset);
            }
            offset += part.domain.num_vars();
        }
        Self::from_algebras(&big, &first.codomain, images)
    }

    /// Inclusion of block `i` into `parts[0] ⊕ ... ⊕ parts[n-1]`,
    /// `d ↦ (0, ..., d, ..., 0)`.
    pub fn block_inclusion(parts: &[InfinitesimalPresentation], i: usize) -> Result<Self, WeilError> {
        let sum = oplus_all(parts)?;
        let block = parts.get(i).ok_or(WeilError::VariableOutOfRange { var: i + 1, vars: parts.len() })?;
        let offset: usize = parts[..i].iter().map(|p| p.num_vars()).sum();
        let dom = WeilAlgebra::shared(block);
        let images = (0..sum.num_vars())
            .map(|v| {
                if (offset..offset + block.num_vars()).contains(&v) {
                    dom.var(v - offset)
                } else {
                    Ok(dom.zero())
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_algebras(&dom, &WeilAlgebra::shared(&sum), images)
    }
}

/// Left fold of `⊕` over the presentations.
pub fn oplus_all(parts: &[InfinitesimalPresentation]) -> Result<InfinitesimalPresentation, WeilError> {
    let (head, tail) = parts.split_first().ok_or(WeilError::EmptyCombination)?;
    if !head.is_simplicial() {
        return Err(WeilError::NotSimplicial);
    }
    tail.iter().try_fold(head.clone(), |acc, p| acc.oplus(p))
}

/// Re-expresses `a` in `target`, whose variables `offset..` host `a`'s variables.
pub(crate) fn embed_block(a: &WeilElement, target: &Arc<WeilAlgebra>, offset: usize) -> WeilElement {
    let mut out = target.zero();
    let n = target.num_vars();
    for (e, &c) in a.algebra().basis().iter().zip(a.coeffs()) {
        if c == 0.0 {
            continue;
        }
        let mut big = vec![0; n];
        big[offset..offset + e.len()].copy_from_slice(e);
        if let Some(pos) = target.index_of(&big) {
            out.coeffs_mut()[pos] += c;
        }
    }
    out
}

fn monomial_label(e: &[u32]) -> String {
    let factors: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| if k == 1 { format!("X{}", i + 1) } else { format!("X{}^{k}", i + 1) })
        .collect();
    factors.join("*")
}
