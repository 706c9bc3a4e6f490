//! Weil prolongation of `R^m`: points with Weil-algebra coordinates, the
//! action of smooth maps on them, and the Euclidean structure of `R^m ⊗ W_D`.

use std::sync::Arc;

use thiserror::Error;

use crate::expr::{EvalError, Expr};
use crate::weil::{InfinitesimalPresentation, WeilAlgebra, WeilElement, WeilError, WeilMorphism};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProlongationError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Weil(#[from] WeilError),
    #[error("vector dimensions disagree: {0} vs {1}")]
    Dimension(usize, usize),
    #[error("expected a point over W_D")]
    NotTangent,
    #[error("base point is not zero (largest entry {0})")]
    NonzeroBase(f64),
}

/// A point of `R^m ⊗ W`: `m` coordinates in one Weil algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct WeilPoint {
    algebra: Arc<WeilAlgebra>,
    coords: Vec<WeilElement>,
}

impl WeilPoint {
    pub fn new(algebra: &Arc<WeilAlgebra>, coords: Vec<WeilElement>) -> Result<Self, WeilError> {
        if coords.iter().any(|c| !c.algebra().same_as(algebra)) {
            return Err(WeilError::AlgebraMismatch);
        }
        Ok(Self { algebra: Arc::clone(algebra), coords })
    }

    /// A real point viewed over `algebra` (all nilpotent parts zero).
    pub fn constant(algebra: &Arc<WeilAlgebra>, x: &[f64]) -> Self {
        Self { algebra: Arc::clone(algebra), coords: x.iter().map(|&v| WeilElement::constant(algebra, v)).collect() }
    }

    pub fn algebra(&self) -> &Arc<WeilAlgebra> {
        &self.algebra
    }

    pub fn coords(&self) -> &[WeilElement] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<WeilElement> {
        self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// The canonical projection to `R^m`.
    pub fn base_point(&self) -> Vec<f64> {
        self.coords.iter().map(|c| c.augmentation()).collect()
    }

    /// Coefficient vector of the monomial `x^e` across coordinates.
    pub fn coefficient(&self, exponents: &[u32]) -> Vec<f64> {
        self.coords.iter().map(|c| c.coeff(exponents)).collect()
    }

    /// `(id ⊗ W_φ)(self)`.
    pub fn map(&self, phi: &WeilMorphism) -> Result<Self, WeilError> {
        let coords = self.coords.iter().map(|c| phi.apply(c)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self { algebra: Arc::clone(phi.domain()), coords })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ProlongationError> {
        if self.dim() != other.dim() {
            return Err(ProlongationError::Dimension(self.dim(), other.dim()));
        }
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a.try_add(b)).collect::<Result<_, _>>()?;
        Ok(Self { algebra: Arc::clone(&self.algebra), coords })
    }

    pub fn scale(&self, alpha: f64) -> Self {
        Self { algebra: Arc::clone(&self.algebra), coords: self.coords.iter().map(|c| c.scale(alpha)).collect() }
    }

    /// Largest coefficient difference, `None` if the points are incomparable.
    pub fn distance(&self, other: &Self) -> Option<f64> {
        if self.dim() != other.dim() {
            return None;
        }
        self.coords.iter().zip(&other.coords).try_fold(0.0f64, |m, (a, b)| Some(m.max(a.distance(b)?)))
    }
}

/// Evaluates `f` with coordinates of `p` as scalars.
///
/// Analytic primitives act through their Taylor series at the constant
/// term, truncated at the nilpotency index, and division inverts with the
/// geometric series.
pub fn eval_over_weil(f: &Expr, p: &WeilPoint) -> Result<WeilElement, EvalError> {
    let alg = &p.algebra;
    Ok(match f {
        Expr::Const(c) => WeilElement::constant(alg, *c),
        Expr::Var(i) => p
            .coords
            .get(*i)
            .cloned()
            .ok_or(EvalError::MissingVariable { var: *i, dim: p.dim() })?,
        Expr::Neg(a) => -eval_over_weil(a, p)?,
        Expr::Add(a, b) => eval_over_weil(a, p)? + eval_over_weil(b, p)?,
        Expr::Sub(a, b) => eval_over_weil(a, p)? - eval_over_weil(b, p)?,
        Expr::Mul(a, b) => eval_over_weil(a, p)? * eval_over_weil(b, p)?,
        Expr::Div(a, b) => {
            let d = eval_over_weil(b, p)?;
            let inv = d.inverse().map_err(|_| EvalError::DivisionByZero)?;
            eval_over_weil(a, p)? * inv
        }
        Expr::Pow(a, k) => {
            let base = eval_over_weil(a, p)?;
            if *k >= 0 {
                base.powi(*k as u32)
            } else {
                base.inverse().map_err(|_| EvalError::DivisionByZero)?.powi(k.unsigned_abs())
            }
        }
        Expr::Call(g, a) => {
            let inner = eval_over_weil(a, p)?;
            let series = g.taylor(inner.augmentation(), alg.nilpotency_index() as usize)?;
            if inner.nilpotent_part().is_zero() {
                WeilElement::constant(alg, series[0])
            } else {
                inner.compose_series(&series)
            }
        }
    })
}

/// `f ⊗ W` applied componentwise.
pub fn prolong_map(f: &[Expr], p: &WeilPoint) -> Result<WeilPoint, EvalError> {
    let coords = f.iter().map(|fi| eval_over_weil(fi, p)).collect::<Result<Vec<_>, _>>()?;
    Ok(WeilPoint { algebra: Arc::clone(&p.algebra), coords })
}

/// Compares `(id ⊗ W_φ)(f ⊗ W)(p)` with `(f ⊗ W')((id ⊗ W_φ)(p))`.
pub fn naturality_check(f: &[Expr], phi: &WeilMorphism, p: &WeilPoint, tol: f64) -> Result<bool, ProlongationError> {
    if !p.algebra.same_as(phi.codomain()) {
        return Err(WeilError::AlgebraMismatch.into());
    }
    let lhs = prolong_map(f, p)?.map(phi)?;
    let rhs = prolong_map(f, &p.map(phi)?)?;
    Ok(lhs.distance(&rhs).is_some_and(|d| d <= tol))
}

/// `i(x; a_1, ..., a_n)`: the germ `(r_1..r_n) ↦ x + Σ r_i a_i` as a point
/// over `W_{D^n}`.
pub fn canonical_i(x: &[f64], edges: &[Vec<f64>]) -> Result<WeilPoint, ProlongationError> {
    let alg = WeilAlgebra::cube(edges.len());
    if let Some(bad) = edges.iter().find(|a| a.len() != x.len()) {
        return Err(ProlongationError::Dimension(x.len(), bad.len()));
    }
    let coords = (0..x.len())
        .map(|j| {
            let mut c = WeilElement::constant(&alg, x[j]);
            for (i, a) in edges.iter().enumerate() {
                c = &c + &alg.var(i).expect("cube variable").scale(a[j]);
            }
            c
        })
        .collect();
    Ok(WeilPoint { algebra: alg, coords })
}

/// Kock–Lawvere read-off: the unique `a` with `t = i(0, a)`.
pub fn kock_lawvere_split(t: &WeilPoint) -> Result<Vec<f64>, ProlongationError> {
    if t.algebra.presentation() != &InfinitesimalPresentation::d() {
        return Err(ProlongationError::NotTangent);
    }
    let base = t.base_point();
    let worst = base.iter().fold(0.0f64, |m, b| m.max(b.abs()));
    if worst != 0.0 {
        return Err(ProlongationError::NonzeroBase(worst));
    }
    Ok(t.coefficient(&[1]))
}

/// `(x, a) ↦ i(x; a)` over `W_D` and its inverse `t ↦ (π(t), slope)`.
pub fn tangent_decompose(t: &WeilPoint) -> Result<(Vec<f64>, Vec<f64>), ProlongationError> {
    if t.algebra.presentation() != &InfinitesimalPresentation::d() {
        return Err(ProlongationError::NotTangent);
    }
    Ok((t.base_point(), t.coefficient(&[1])))
}

/// Addition of tangents through `D(2)`: embed `t1` along `(d1,d2) ↦ d1` and
/// `t2` along `(d1,d2) ↦ d2`, add in `R^m ⊗ W_{D(2)}`, restrict along
/// `d ↦ (d,d)`.
pub fn tangent_sum_via_d2(t1: &WeilPoint, t2: &WeilPoint) -> Result<WeilPoint, ProlongationError> {
    for t in [t1, t2] {
        let worst = t.base_point().iter().fold(0.0f64, |m, b| m.max(b.abs()));
        if worst != 0.0 {
            return Err(ProlongationError::NonzeroBase(worst));
        }
    }
    let d = InfinitesimalPresentation::d();
    let d2 = InfinitesimalPresentation::d_of(2);
    let w_d2 = WeilAlgebra::shared(&d2);
    let w_d = WeilAlgebra::shared(&d);
    let first = WeilMorphism::new(&d2, &d, vec![w_d2.var(0)?])?;
    let second = WeilMorphism::new(&d2, &d, vec![w_d2.var(1)?])?;
    let diagonal = WeilMorphism::new(&d, &d2, vec![w_d.var(0)?, w_d.var(0)?])?;
    let sum = t1.map(&first)?.try_add(&t2.map(&second)?)?;
    Ok(sum.map(&diagonal)?)
}

/// `i_E(0, t)` for `E = (R^m ⊗ W_D)_x`, realized in `R^m ⊗ W_{D^2}`: the
/// line `r ↦ r·t` in the tangent space, where the inner infinitesimal of
/// `t` is `d1` and the scalar `r` runs over the outer `d2`.
pub fn tangent_line(t: &WeilPoint) -> Result<WeilPoint, ProlongationError> {
    let (x, a) = tangent_decompose(t)?;
    let sq = WeilAlgebra::cube(2);
    let r = sq.var(1)?;
    let d1 = sq.var(0)?;
    let coords = x
        .iter()
        .zip(&a)
        .map(|(&xj, &aj)| (&d1 * &r).scale(aj).add_constant(xj))
        .collect();
    Ok(WeilPoint { algebra: sq, coords })
}

/// `(id ⊗ W_{(d1,d2) ∈ D^2 ↦ d1 d2 ∈ D})(t)`.
pub fn product_pullback(t: &WeilPoint) -> Result<WeilPoint, ProlongationError> {
    let sq = WeilAlgebra::cube(2);
    let phi = WeilMorphism::new(&InfinitesimalPresentation::cube(2), &InfinitesimalPresentation::d(), vec![
        &sq.var(0)? * &sq.var(1)?,
    ])?;
    Ok(t.map(&phi)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_expression, Func};

    fn point(alg: &Arc<WeilAlgebra>, coeffs: &[&[f64]]) -> WeilPoint {
        let coords = coeffs.iter().map(|c| WeilElement::from_coeffs(alg, c.to_vec()).unwrap()).collect();
        WeilPoint::new(alg, coords).unwrap()
    }

    #[test]
    fn cube_over_second_order() {
        let alg = WeilAlgebra::shared(&InfinitesimalPresentation::d_order(2));
        let p = point(&alg, &[&[2.0, 1.0, 0.0]]);
        let v = eval_over_weil(&parse_expression("x1^3").unwrap(), &p).unwrap();
        assert_eq!(v.coeffs(), &[8.0, 12.0, 6.0]);
    }

    #[test]
    fn exp_over_d() {
        let alg = WeilAlgebra::shared(&InfinitesimalPresentation::d());
        let p = point(&alg, &[&[0.0, 1.0]]);
        let v = eval_over_weil(&Expr::call(Func::Exp, Expr::var(0)), &p).unwrap();
        assert_eq!(v.coeffs(), &[1.0, 1.0]);
    }

    #[test]
    fn real_points_evaluate_plainly() {
        let f = parse_expression("sin(x1) * exp(x2) / (1 + x1^2) + sqrt(x2)").unwrap();
        let alg = WeilAlgebra::cube(2);
        let p = WeilPoint::constant(&alg, &[0.3, 0.7]);
        let v = eval_over_weil(&f, &p).unwrap();
        assert!((v.augmentation() - f.eval(&[0.3, 0.7]).unwrap()).abs() < 1e-15);
        assert!(v.nilpotent_part().is_zero());
        let r = WeilPoint::constant(&WeilAlgebra::reals(), &[0.3, 0.7]);
        assert_eq!(eval_over_weil(&f, &r).unwrap().augmentation(), f.eval(&[0.3, 0.7]).unwrap());
    }

    #[test]
    fn weil_eval_errors() {
        let alg = WeilAlgebra::shared(&InfinitesimalPresentation::d());
        let p = point(&alg, &[&[0.0, 1.0]]);
        assert_eq!(eval_over_weil(&parse_expression("1 / x1").unwrap(), &p), Err(EvalError::DivisionByZero));
        assert!(matches!(
            eval_over_weil(&parse_expression("log(x1)").unwrap(), &p),
            Err(EvalError::Domain { .. })
        ));
        assert!(matches!(
            eval_over_weil(&parse_expression("sqrt(x1)").unwrap(), &p),
            Err(EvalError::Domain { .. })
        ));
    }

    #[test]
    fn prolong_pair_map() {
        let alg = WeilAlgebra::shared(&InfinitesimalPresentation::d());
        let p = point(&alg, &[&[1.0, 1.0], &[2.0, 0.0]]);
        let f = [parse_expression("x1 * x2").unwrap(), parse_expression("x1 + x2").unwrap()];
        let q = prolong_map(&f, &p).unwrap();
        assert_eq!(q.coords()[0].coeffs(), &[2.0, 2.0]);
        assert_eq!(q.coords()[1].coeffs(), &[3.0, 1.0]);
        let id = [Expr::var(0), Expr::var(1)];
        assert_eq!(prolong_map(&id, &p).unwrap(), p);
    }

    #[test]
    fn functoriality_spot_check() {
        let alg = WeilAlgebra::shared(&InfinitesimalPresentation::d_order(2));
        let p = point(&alg, &[&[1.5, 1.0, 0.5]]);
        let f = parse_expression("x1^2").unwrap();
        let g = parse_expression("x1 + 1").unwrap();
        let gf = parse_expression("x1^2 + 1").unwrap();
        let fg = parse_expression("(x1 + 1)^2").unwrap();
        let step = |e: &Expr, q: &WeilPoint| prolong_map(std::slice::from_ref(e), q).unwrap();
        assert_eq!(step(&g, &step(&f, &p)), step(&gf, &p));
        assert_eq!(step(&f, &step(&g, &p)), step(&fg, &p));
    }

    #[test]
    fn naturality_examples() {
        let d = InfinitesimalPresentation::d();
        let d2nd = InfinitesimalPresentation::d_order(2);
        let w = WeilAlgebra::shared(&d2nd);
        let x = w.var(0).unwrap();
        let sq = WeilMorphism::new(&d2nd, &d, vec![&x * &x]).unwrap();
        let wd = WeilAlgebra::shared(&d);
        let p = point(&wd, &[&[1.25, -2.0]]);
        assert!(naturality_check(&[parse_expression("x1^2").unwrap()], &sq, &p, 1e-12).unwrap());
        assert!(naturality_check(&[parse_expression("3 * x1 - 2").unwrap()], &sq, &p, 0.0).unwrap());

        let cube = InfinitesimalPresentation::cube(2);
        let wc = WeilAlgebra::cube(2);
        let swap = WeilMorphism::new(&cube, &cube, vec![wc.var(1).unwrap(), wc.var(0).unwrap()]).unwrap();
        let q = point(&wc, &[&[0.5, 1.0, -1.0, 2.0]]);
        assert!(naturality_check(&[Expr::call(Func::Exp, Expr::var(0))], &swap, &q, 1e-12).unwrap());
        assert!(naturality_check(&[Expr::var(0)], &swap, &p, 0.0).is_err());
    }

    #[test]
    fn canonical_map_examples() {
        let p = canonical_i(&[0.0, 0.0], &[vec![1.0, 0.0]]).unwrap();
        assert_eq!(p.coords()[0].coeffs(), &[0.0, 1.0]);
        assert!(p.coords()[1].is_zero());
        let q = canonical_i(&[1.0, 2.0], &[vec![3.0, 4.0], vec![5.0, 6.0]]).unwrap();
        assert_eq!(q.coords()[0].coeffs(), &[1.0, 3.0, 5.0, 0.0]);
        assert_eq!(q.coords()[1].coeffs(), &[2.0, 4.0, 6.0, 0.0]);
        assert_eq!(q.base_point(), vec![1.0, 2.0]);
        assert!(canonical_i(&[1.0], &[vec![1.0, 2.0]]).is_err());
    }

    #[test]
    fn split_reads_slope() {
        let alg = WeilAlgebra::shared(&InfinitesimalPresentation::d());
        let t = point(&alg, &[&[0.0, 3.0], &[0.0, -1.0]]);
        assert_eq!(kock_lawvere_split(&t).unwrap(), vec![3.0, -1.0]);
        let moved = point(&alg, &[&[1.0, 3.0]]);
        assert!(matches!(kock_lawvere_split(&moved), Err(ProlongationError::NonzeroBase(_))));
    }

    #[test]
    fn remark_identity() {
        let alg = WeilAlgebra::shared(&InfinitesimalPresentation::d());
        let t = point(&alg, &[&[1.0, 3.0], &[-2.0, 0.5]]);
        assert_eq!(tangent_line(&t).unwrap(), product_pullback(&t).unwrap());
    }

    #[test]
    fn tangent_addition_through_d2() {
        let alg = WeilAlgebra::shared(&InfinitesimalPresentation::d());
        let t1 = point(&alg, &[&[0.0, 3.0], &[0.0, -1.0]]);
        let t2 = point(&alg, &[&[0.0, 0.5], &[0.0, 4.0]]);
        let s = tangent_sum_via_d2(&t1, &t2).unwrap();
        assert_eq!(s, t1.try_add(&t2).unwrap());
    }
}
