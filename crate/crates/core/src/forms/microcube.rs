use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::FormError;
use crate::perm::Permutation;
use crate::prolongation::WeilPoint;
use crate::weil::{embed_block, exponent_key, parse_exponent_key, InfinitesimalPresentation, WeilAlgebra, WeilElement};

/// Restrictions agreeing to within this bound count as equal in [`Microcube::add_at`].
pub const RESTRICTION_TOLERANCE: f64 = 1e-9;

/// A point of `R^m ⊗ W_{D^n} ⊗ W_aux`.
///
/// Every element of `W_{D^n}` is a combination of square-free monomials
/// `x^S`, `S ⊆ {1..n}`, so the point is stored as one `R^m ⊗ W_aux` vector
/// per subset, indexed by the bitmask of `S` (bit `k` for variable `k+1`).
/// With `W_aux = R` this is a microcube in the plain sense; a nontrivial
/// auxiliary algebra carries the scalar extensions needed to apply forms
/// "tensored with the identity". Values of `E ⊗ W_{D^n}` use the same type.
#[derive(Clone, Debug, PartialEq)]
pub struct Microcube {
    degree: usize,
    aux: Arc<WeilAlgebra>,
    coeffs: Vec<Vec<WeilElement>>,
}

impl Microcube {
    pub fn zero(degree: usize, dim: usize, aux: &Arc<WeilAlgebra>) -> Self {
        Self { degree, aux: Arc::clone(aux), coeffs: vec![vec![aux.zero(); dim]; 1 << degree] }
    }

    /// Builds a cube from its `2^degree` coefficient vectors.
    pub fn from_coeffs(degree: usize, aux: &Arc<WeilAlgebra>, coeffs: Vec<Vec<WeilElement>>) -> Result<Self, FormError> {
        if coeffs.len() != 1 << degree {
            return Err(FormError::Shape(format!("{} coefficient vectors for degree {degree}", coeffs.len())));
        }
        let dim = coeffs[0].len();
        for v in &coeffs {
            if v.len() != dim {
                return Err(FormError::Dimension { expected: dim, found: v.len() });
            }
            if v.iter().any(|c| !c.algebra().same_as(aux)) {
                return Err(FormError::Weil(crate::weil::WeilError::AlgebraMismatch));
            }
        }
        Ok(Self { degree, aux: Arc::clone(aux), coeffs })
    }

    /// Real cube from per-subset coefficient vectors.
    pub fn from_real(degree: usize, coeffs: &[Vec<f64>]) -> Result<Self, FormError> {
        let r = WeilAlgebra::reals();
        let lifted = coeffs.iter().map(|v| v.iter().map(|&c| WeilElement::constant(&r, c)).collect()).collect();
        Self::from_coeffs(degree, &r, lifted)
    }

    /// `i(x; a_1..a_n)` with real data.
    pub fn canonical(x: &[f64], edges: &[Vec<f64>]) -> Result<Self, FormError> {
        let r = WeilAlgebra::reals();
        let lift = |v: &[f64]| v.iter().map(|&c| WeilElement::constant(&r, c)).collect::<Vec<_>>();
        Self::canonical_over(&r, lift(x), edges.iter().map(|e| lift(e)).collect())
    }

    /// `i(x; a_1..a_n)` with base and edges in `W_aux`.
    pub fn canonical_over(
        aux: &Arc<WeilAlgebra>,
        base: Vec<WeilElement>,
        edges: Vec<Vec<WeilElement>>,
    ) -> Result<Self, FormError> {
        let degree = edges.len();
        let mut cube = Self::zero(degree, base.len(), aux);
        for (i, e) in edges.into_iter().enumerate() {
            if e.len() != base.len() {
                return Err(FormError::Dimension { expected: base.len(), found: e.len() });
            }
            cube.coeffs[1 << i] = e;
        }
        cube.coeffs[0] = base;
        Self::from_coeffs(degree, aux, cube.coeffs)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.coeffs[0].len()
    }

    pub fn aux(&self) -> &Arc<WeilAlgebra> {
        &self.aux
    }

    pub fn coeffs(&self) -> &[Vec<WeilElement>] {
        &self.coeffs
    }

    /// Coefficient vector of `x^S` for the subset bitmask `mask`.
    pub fn coefficient(&self, mask: usize) -> &[WeilElement] {
        &self.coeffs[mask]
    }

    /// `π(γ)`.
    pub fn base(&self) -> &[WeilElement] {
        &self.coeffs[0]
    }

    /// Edge vector `e_{i+1}`: the coefficient of the single variable `x_{i+1}`.
    pub fn edge(&self, i: usize) -> &[WeilElement] {
        &self.coeffs[1 << i]
    }

    /// Coefficient of the top monomial `x_1...x_n`.
    pub fn top(&self) -> &[WeilElement] {
        &self.coeffs[self.full_mask()]
    }

    fn full_mask(&self) -> usize {
        (1 << self.degree) - 1
    }

    fn check_position(&self, i: usize) -> Result<(), FormError> {
        if i < self.degree {
            Ok(())
        } else {
            Err(FormError::Position { position: i + 1, degree: self.degree })
        }
    }

    fn map_coeffs(&self, f: impl Fn(usize, &WeilElement) -> WeilElement) -> Self {
        let coeffs = self.coeffs.iter().enumerate().map(|(mask, v)| v.iter().map(|c| f(mask, c)).collect()).collect();
        Self { degree: self.degree, aux: Arc::clone(&self.aux), coeffs }
    }

    /// `γ|^{i}`: substitute `d_i = 0` and close up the remaining variables.
    pub fn restrict(&self, i: usize) -> Result<Self, FormError> {
        self.check_position(i)?;
        let low = (1 << i) - 1;
        let coeffs = (0..1usize << (self.degree - 1))
            .map(|m| self.coeffs[(m & low) | ((m & !low) << 1)].clone())
            .collect();
        Ok(Self { degree: self.degree - 1, aux: Arc::clone(&self.aux), coeffs })
    }

    /// `γ^σ`: substitution `X_k ↦ x_{σ(k)}`. Acting twice composes as
    /// `permute(permute(γ, σ), τ) = permute(γ, τ ∘ σ)`.
    pub fn permute(&self, sigma: &Permutation) -> Result<Self, FormError> {
        if sigma.len() != self.degree {
            return Err(FormError::Shape(format!("permutation of {} slots on degree {}", sigma.len(), self.degree)));
        }
        let mut coeffs = vec![Vec::new(); self.coeffs.len()];
        for (mask, v) in self.coeffs.iter().enumerate() {
            let image = (0..self.degree).filter(|k| mask >> k & 1 == 1).fold(0, |acc, k| acc | 1 << sigma.apply(k));
            coeffs[image] = v.clone();
        }
        Ok(Self { degree: self.degree, aux: Arc::clone(&self.aux), coeffs })
    }

    /// Substitution by the face cycle `∂_i`, which moves edge `i` to the last slot.
    pub fn transpose_face(&self, i: usize) -> Result<Self, FormError> {
        self.check_position(i)?;
        self.permute(&Permutation::face_cycle(self.degree, i))
    }

    /// `α ·_i γ`: substitute `d_i ↦ α d_i`.
    pub fn scale_at(&self, i: usize, alpha: f64) -> Result<Self, FormError> {
        self.check_position(i)?;
        Ok(self.map_coeffs(|mask, c| if mask >> i & 1 == 1 { c.scale(alpha) } else { c.clone() }))
    }

    /// Multiplies every coefficient by `alpha` (the vector-space scaling of `E`).
    pub fn scale(&self, alpha: f64) -> Self {
        self.map_coeffs(|_, c| c.scale(alpha))
    }

    /// `γ_1 +_i γ_2` for cubes with the same `i`-th restriction.
    pub fn add_at(&self, other: &Self, i: usize) -> Result<Self, FormError> {
        self.check_position(i)?;
        if self.degree != other.degree || self.dim() != other.dim() || !self.aux.same_as(&other.aux) {
            return Err(FormError::Shape("add_at needs cubes of the same shape".into()));
        }
        let deviation = self
            .restrict(i)?
            .distance(&other.restrict(i)?)
            .expect("same shape");
        if deviation > RESTRICTION_TOLERANCE {
            return Err(FormError::RestrictionMismatch { deviation });
        }
        let a = self.transpose_face(i)?;
        let b = other.transpose_face(i)?;
        let last = self.degree - 1;
        let mut sum = a.clone();
        for (mask, v) in sum.coeffs.iter_mut().enumerate() {
            if mask >> last & 1 == 1 {
                for (s, t) in v.iter_mut().zip(&b.coeffs[mask]) {
                    *s = &*s + t;
                }
            }
        }
        sum.permute(&Permutation::face_cycle(self.degree, i).inverse())
    }

    /// Coordinatewise sum in `E ⊗ W_{D^n}`.
    pub fn try_add(&self, other: &Self) -> Result<Self, FormError> {
        if self.degree != other.degree || self.dim() != other.dim() || !self.aux.same_as(&other.aux) {
            return Err(FormError::Shape("sum of cubes of different shapes".into()));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(u, v)| u.iter().zip(v).map(|(a, b)| a + b).collect())
            .collect();
        Ok(Self { degree: self.degree, aux: Arc::clone(&self.aux), coeffs })
    }

    /// `D_0`: remove the part constant in the last infinitesimal variable.
    pub fn d0(&self) -> Self {
        let Some(last) = self.degree.checked_sub(1) else {
            return self.map_coeffs(|_, c| c.scale(0.0));
        };
        self.map_coeffs(|mask, c| if mask >> last & 1 == 1 { c.clone() } else { c.scale(0.0) })
    }

    /// Largest coefficient outside the top monomial.
    pub fn homogeneity_residual(&self) -> f64 {
        let full = self.full_mask();
        self.coeffs
            .iter()
            .enumerate()
            .filter(|&(mask, _)| mask != full)
            .flat_map(|(_, v)| v.iter().map(|c| c.max_abs()))
            .fold(0.0, f64::max)
    }

    /// `n`-homogeneity: scaling any infinitesimal variable by `α` scales the
    /// value by `α`, which holds iff only the top monomial survives.
    pub fn is_n_homogeneous(&self, tol: f64) -> bool {
        self.homogeneity_residual() <= tol
    }

    /// Largest coefficient difference; `None` for different shapes.
    pub fn distance(&self, other: &Self) -> Option<f64> {
        if self.degree != other.degree || self.dim() != other.dim() {
            return None;
        }
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .flat_map(|(u, v)| u.iter().zip(v))
            .try_fold(0.0f64, |m, (a, b)| Some(m.max(a.distance(b)?)))
    }

    /// Views the last infinitesimal variable as part of the scalars:
    /// `R^m ⊗ W_{D^n} ⊗ W_aux = R^m ⊗ W_{D^{n-1}} ⊗ (W_D ⊗ W_aux)`.
    pub fn fold_last(&self) -> Result<Self, FormError> {
        let last = self.degree.checked_sub(1).ok_or(FormError::Position { position: 1, degree: 0 })?;
        let outer = WeilAlgebra::tensor(&WeilAlgebra::shared(&InfinitesimalPresentation::d()), &self.aux);
        let d = outer.var(0)?;
        let coeffs = (0..1usize << last)
            .map(|mask| {
                self.coeffs[mask]
                    .iter()
                    .zip(&self.coeffs[mask | 1 << last])
                    .map(|(c0, c1)| &embed_block(c0, &outer, 1) + &(&d * &embed_block(c1, &outer, 1)))
                    .collect()
            })
            .collect();
        Ok(Self { degree: last, aux: outer, coeffs })
    }

    /// Inverse of [`fold_last`](Self::fold_last): `self.aux` must be `W_D ⊗ aux`.
    pub fn unfold_last(&self, aux: &Arc<WeilAlgebra>) -> Result<Self, FormError> {
        let expected = InfinitesimalPresentation::d().tensor(aux.presentation());
        if self.aux.presentation() != &expected {
            return Err(FormError::Weil(crate::weil::WeilError::AlgebraMismatch));
        }
        let split = |c: &WeilElement| {
            let mut parts = [aux.zero(), aux.zero()];
            for (e, &v) in self.aux.basis().iter().zip(c.coeffs()) {
                if v != 0.0 {
                    let pos = aux.index_of(&e[1..]).expect("tensor factor monomial");
                    parts[e[0] as usize].coeffs_mut()[pos] += v;
                }
            }
            parts
        };
        let n = self.degree + 1;
        let mut coeffs = vec![Vec::new(); 1 << n];
        for (mask, v) in self.coeffs.iter().enumerate() {
            let (low, high): (Vec<_>, Vec<_>) = v.iter().map(|c| {
                let [a, b] = split(c);
                (a, b)
            }).unzip();
            coeffs[mask] = low;
            coeffs[mask | 1 << self.degree] = high;
        }
        Ok(Self { degree: n, aux: Arc::clone(aux), coeffs })
    }

    /// The cube as a point over `W_{D^n} ⊗ W_aux` (cube variables first).
    pub fn to_weil_point(&self) -> WeilPoint {
        let full = WeilAlgebra::tensor(&WeilAlgebra::cube(self.degree), &self.aux);
        let n = self.degree;
        let coords = (0..self.dim())
            .map(|j| {
                let mut out = full.zero();
                for (e, pos) in full.basis().iter().zip(0..) {
                    let mask = (0..n).filter(|&k| e[k] == 1).fold(0, |acc, k| acc | 1 << k);
                    let aux_pos = self.aux.index_of(&e[n..]).expect("tensor factor monomial");
                    out.coeffs_mut()[pos] = self.coeffs[mask][j].coeffs()[aux_pos];
                }
                out
            })
            .collect();
        WeilPoint::new(&full, coords).expect("coordinates share the algebra")
    }

    /// Reads a point over `W_{D^n} ⊗ W_aux` (cube variables first).
    pub fn from_weil_point(p: &WeilPoint, degree: usize) -> Result<Self, FormError> {
        let pres = p.algebra().presentation();
        let shape = || FormError::Shape(format!("algebra is not W_(D^{degree}) tensor an auxiliary algebra"));
        if pres.num_vars() < degree {
            return Err(shape());
        }
        let cube_part = pres.block(0..degree).ok_or_else(shape)?;
        let aux_part = pres.block(degree..pres.num_vars()).ok_or_else(shape)?;
        if cube_part != InfinitesimalPresentation::cube(degree) {
            return Err(shape());
        }
        let aux = WeilAlgebra::shared(&aux_part);
        let mut cube = Self::zero(degree, p.dim(), &aux);
        for (j, c) in p.coords().iter().enumerate() {
            for (e, &v) in p.algebra().basis().iter().zip(c.coeffs()) {
                let mask = (0..degree).filter(|&k| e[k] == 1).fold(0, |acc, k| acc | 1 << k);
                let aux_pos = aux.index_of(&e[degree..]).expect("tensor factor monomial");
                cube.coeffs[mask][j].coeffs_mut()[aux_pos] = v;
            }
        }
        Ok(cube)
    }

    /// Real coefficient vectors; `None` unless the auxiliary algebra is `R`.
    pub fn real_coeffs(&self) -> Option<Vec<Vec<f64>>> {
        (self.aux.dim() == 1)
            .then(|| self.coeffs.iter().map(|v| v.iter().map(|c| c.augmentation()).collect()).collect())
    }

    pub fn to_doc(&self) -> Option<MicrocubeDoc> {
        let real = self.real_coeffs()?;
        let higher = (0..real.len())
            .filter(|m| m.count_ones() >= 2)
            .filter(|&m| real[m].iter().any(|&c| c != 0.0))
            .map(|m| (exponent_key(&mask_exponents(m, self.degree)), real[m].clone()))
            .collect();
        Some(MicrocubeDoc {
            base: real[0].clone(),
            edges: (0..self.degree).map(|i| real[1 << i].clone()).collect(),
            higher,
        })
    }

    pub fn from_doc(doc: &MicrocubeDoc) -> Result<Self, FormError> {
        let degree = doc.edges.len();
        let dim = doc.base.len();
        let mut coeffs = vec![vec![0.0; dim]; 1 << degree];
        coeffs[0] = doc.base.clone();
        for (i, e) in doc.edges.iter().enumerate() {
            coeffs[1 << i] = e.clone();
        }
        for (key, v) in &doc.higher {
            let e = parse_exponent_key(key, degree)?;
            if e.iter().any(|&k| k > 1) || e.iter().sum::<u32>() < 2 {
                return Err(FormError::Document(format!("`{key}` is not a higher monomial of W_(D^{degree})")));
            }
            let mask = e.iter().enumerate().filter(|(_, &k)| k == 1).fold(0, |acc, (k, _)| acc | 1 << k);
            coeffs[mask] = v.clone();
        }
        Self::from_real(degree, &coeffs)
    }

    pub fn from_json(text: &str) -> Result<Self, FormError> {
        let doc: MicrocubeDoc = serde_json::from_str(text).map_err(|e| FormError::Document(e.to_string()))?;
        Self::from_doc(&doc)
    }
}

fn mask_exponents(mask: usize, n: usize) -> Vec<u32> {
    (0..n).map(|k| (mask >> k & 1) as u32).collect()
}

/// `{"base": [...], "edges": [[...], ...], "higher": {"1,1,0": [...]}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MicrocubeDoc {
    pub base: Vec<f64>,
    pub edges: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub higher: BTreeMap<String, Vec<f64>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prolongation::canonical_i;
    use crate::weil::WeilMorphism;

    fn cube(data: &[&[f64]]) -> Microcube {
        let n = data.len().trailing_zeros() as usize;
        Microcube::from_real(n, &data.iter().map(|v| v.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn restrict_canonical_drops_edge() {
        let g = Microcube::canonical(&[1.0, 2.0], &[vec![3.0, 4.0], vec![5.0, 6.0]]).unwrap();
        assert_eq!(g.restrict(0).unwrap(), Microcube::canonical(&[1.0, 2.0], &[vec![5.0, 6.0]]).unwrap());
        let g1 = Microcube::canonical(&[1.0, 2.0], &[vec![3.0, 4.0]]).unwrap();
        assert_eq!(g1.restrict(0).unwrap(), Microcube::canonical(&[1.0, 2.0], &[]).unwrap());
        assert!(g1.restrict(1).is_err());
    }

    #[test]
    fn restricting_twice() {
        let g = cube(&[&[0.0], &[1.0], &[2.0], &[3.0], &[4.0], &[5.0], &[6.0], &[7.0]]);
        let a = g.restrict(0).unwrap().restrict(0).unwrap();
        let b = g.restrict(1).unwrap().restrict(0).unwrap();
        assert_eq!(a, b);
        // only the third variable survives
        assert_eq!(a.real_coeffs().unwrap(), vec![vec![0.0], vec![4.0]]);
    }

    #[test]
    fn restrict_matches_substitution_morphism() {
        let g = cube(&[&[1.0, -1.0], &[2.0, 0.5], &[3.0, 0.0], &[4.0, 1.0], &[5.0, 2.0], &[6.0, 3.0], &[7.0, 4.0], &[8.0, 5.0]]);
        let d3 = InfinitesimalPresentation::cube(3);
        let d2 = InfinitesimalPresentation::cube(2);
        let w2 = WeilAlgebra::cube(2);
        for i in 0..3 {
            // X_k ↦ x_k below i, X_i ↦ 0, X_k ↦ x_{k-1} above i
            let images = (0..3)
                .map(|k| match k.cmp(&i) {
                    std::cmp::Ordering::Less => w2.var(k).unwrap(),
                    std::cmp::Ordering::Equal => w2.zero(),
                    std::cmp::Ordering::Greater => w2.var(k - 1).unwrap(),
                })
                .collect();
            let phi = WeilMorphism::new(&d2, &d3, images).unwrap();
            let via_morphism = g.to_weil_point().map(&phi).unwrap();
            assert_eq!(g.restrict(i).unwrap().to_weil_point(), via_morphism);
        }
    }

    #[test]
    fn transpose_face_examples() {
        let g = Microcube::canonical(&[0.0], &[vec![1.0], vec![2.0]]).unwrap();
        assert_eq!(g.transpose_face(1).unwrap(), g);
        let swapped = g.transpose_face(0).unwrap();
        assert_eq!(swapped, Microcube::canonical(&[0.0], &[vec![2.0], vec![1.0]]).unwrap());

        let h = Microcube::canonical(&[0.0], &[vec![1.0], vec![2.0], vec![3.0]]).unwrap();
        let t = h.transpose_face(0).unwrap();
        assert_eq!(t.edge(2)[0].augmentation(), 1.0);
        assert_eq!(t.edge(0)[0].augmentation(), 2.0);
        assert_eq!(t.edge(1)[0].augmentation(), 3.0);
    }

    #[test]
    fn permute_matches_substitution_morphism() {
        let g = cube(&[&[1.0], &[2.0], &[3.0], &[4.0], &[5.0], &[6.0], &[7.0], &[8.0]]);
        let d3 = InfinitesimalPresentation::cube(3);
        let w3 = WeilAlgebra::cube(3);
        for sigma in Permutation::all(3) {
            let images = (0..3).map(|k| w3.var(sigma.apply(k)).unwrap()).collect();
            let phi = WeilMorphism::new(&d3, &d3, images).unwrap();
            assert_eq!(g.permute(&sigma).unwrap().to_weil_point(), g.to_weil_point().map(&phi).unwrap());
            for tau in Permutation::all(3) {
                let twice = g.permute(&sigma).unwrap().permute(&tau).unwrap();
                assert_eq!(twice, g.permute(&tau.compose(&sigma)).unwrap());
            }
        }
        let ab = Microcube::canonical(&[1.0, 1.0], &[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let ba = Microcube::canonical(&[1.0, 1.0], &[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(ab.permute(&Permutation::transposition(2, 0, 1)).unwrap(), ba);
        assert_eq!(ab.permute(&Permutation::identity(2)).unwrap(), ab);
    }

    #[test]
    fn scale_at_laws() {
        let g = cube(&[&[1.0], &[2.0], &[3.0], &[4.0]]);
        assert_eq!(g.scale_at(0, 1.0).unwrap(), g);
        let z = g.scale_at(1, 0.0).unwrap();
        assert_eq!(z.real_coeffs().unwrap(), vec![vec![1.0], vec![2.0], vec![0.0], vec![0.0]]);
        let ab = g.scale_at(0, 2.0).unwrap().scale_at(0, 3.0).unwrap();
        assert_eq!(ab, g.scale_at(0, 6.0).unwrap());
    }

    #[test]
    fn add_at_degree_one_adds_slopes() {
        let a = Microcube::canonical(&[1.0, 2.0], &[vec![3.0, 4.0]]).unwrap();
        let b = Microcube::canonical(&[1.0, 2.0], &[vec![-1.0, 0.5]]).unwrap();
        let s = a.add_at(&b, 0).unwrap();
        assert_eq!(s, Microcube::canonical(&[1.0, 2.0], &[vec![2.0, 4.5]]).unwrap());
        let c = Microcube::canonical(&[1.5, 2.0], &[vec![3.0, 4.0]]).unwrap();
        assert!(matches!(a.add_at(&c, 0), Err(FormError::RestrictionMismatch { .. })));
    }

    #[test]
    fn add_at_zero_fiber_is_identity() {
        let g = cube(&[&[1.0], &[2.0], &[3.0], &[4.0]]);
        for i in 0..2 {
            let zero_fiber = g.scale_at(i, 0.0).unwrap();
            assert_eq!(g.add_at(&zero_fiber, i).unwrap(), g);
        }
    }

    #[test]
    fn d0_examples() {
        // 2 + 3 x2 + 5 x1 x2
        let g = cube(&[&[2.0], &[0.0], &[3.0], &[5.0]]);
        let k = g.d0();
        assert_eq!(k.real_coeffs().unwrap(), vec![vec![0.0], vec![0.0], vec![3.0], vec![5.0]]);
        assert_eq!(k.d0(), k);
        let flat = cube(&[&[2.0], &[7.0], &[0.0], &[0.0]]);
        assert_eq!(flat.d0().homogeneity_residual(), 0.0);
        assert!(flat.d0().top()[0].is_zero());
    }

    #[test]
    fn homogeneity_predicate() {
        let top = cube(&[&[0.0], &[0.0], &[0.0], &[4.0]]);
        assert!(top.is_n_homogeneous(0.0));
        for i in 0..2 {
            assert_eq!(top.scale_at(i, 2.0).unwrap(), top.scale(2.0));
        }
        let constant = cube(&[&[1.0], &[0.0], &[0.0], &[0.0]]);
        assert!(!constant.is_n_homogeneous(1e-12));
        assert_ne!(constant.scale_at(0, 2.0).unwrap(), constant.scale(2.0));
        let x1 = cube(&[&[0.0], &[1.0], &[0.0], &[0.0]]);
        assert!(!x1.is_n_homogeneous(1e-12));
        assert_eq!(x1.scale_at(0, 2.0).unwrap(), x1.scale(2.0));
        assert_ne!(x1.scale_at(1, 2.0).unwrap(), x1.scale(2.0));
    }

    #[test]
    fn fold_unfold_round_trip() {
        let g = cube(&[&[1.0], &[2.0], &[3.0], &[4.0]]);
        let f = g.fold_last().unwrap();
        assert_eq!(f.degree(), 1);
        assert_eq!(f.base()[0].coeffs(), &[1.0, 3.0]);
        assert_eq!(f.unfold_last(g.aux()).unwrap(), g);
    }

    #[test]
    fn weil_point_round_trip() {
        let p = canonical_i(&[1.0, 2.0], &[vec![3.0, 4.0], vec![5.0, 6.0]]).unwrap();
        let g = Microcube::from_weil_point(&p, 2).unwrap();
        assert_eq!(g, Microcube::canonical(&[1.0, 2.0], &[vec![3.0, 4.0], vec![5.0, 6.0]]).unwrap());
        assert_eq!(g.to_weil_point(), p);
        assert!(Microcube::from_weil_point(&p, 3).is_err());
    }

    #[test]
    fn json_document() {
        let text = r#"{"base": [0, 0], "edges": [[1, 0], [0, 1]], "higher": {"1,1": [0.5, -1]}}"#;
        let g = Microcube::from_json(text).unwrap();
        assert_eq!(g.degree(), 2);
        assert_eq!(g.top()[0].augmentation(), 0.5);
        assert_eq!(Microcube::from_doc(&g.to_doc().unwrap()).unwrap(), g);
        assert!(Microcube::from_json(r#"{"base": [0], "edges": [[1]], "higher": {"2": [1]}}"#).is_err());
        assert!(Microcube::from_json(r#"{"base": [0, 0], "edges": [[1]]}"#).is_err());
    }
}
