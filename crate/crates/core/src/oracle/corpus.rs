//! Random inputs for the law checks.
//!
//! Polynomial coefficients are integers in `[-5, 5]` with total degree at
//! most 3; forms live on `R^m` with `m ≤ 4` and have degree at most
//! `min(m, 3)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::expr::{Expr, Func};
use crate::forms::{ClassicalForm, Microcube};
use crate::perm::{increasing_tuples, Permutation};
use crate::prolongation::WeilPoint;
use crate::weil::{InfinitesimalPresentation, WeilAlgebra, WeilElement};

/// A presentation with up to `max_vars` variables, bounds in `2..=4` and
/// random vanishing products.
pub fn presentation<R: Rng>(rng: &mut R, max_vars: usize) -> InfinitesimalPresentation {
    let n = rng.gen_range(1..=max_vars);
    let bounds = (0..n).map(|_| rng.gen_range(2..=4)).collect();
    InfinitesimalPresentation::new(bounds, subsets(rng, n, 0.3)).expect("valid random presentation")
}

/// `D^n{p}` with `n ≤ max_vars`.
pub fn simplicial<R: Rng>(rng: &mut R, max_vars: usize) -> InfinitesimalPresentation {
    let n = rng.gen_range(1..=max_vars);
    InfinitesimalPresentation::new(vec![2; n], subsets(rng, n, 0.4)).expect("valid random presentation")
}

fn subsets<R: Rng>(rng: &mut R, n: usize, p: f64) -> Vec<Vec<usize>> {
    (0usize..1 << n)
        .filter(|m| m.count_ones() >= 2)
        .filter(|_| rng.gen_bool(p))
        .map(|m| (0..n).filter(|k| m >> k & 1 == 1).collect())
        .collect()
}

/// Integer coefficients in `[-r, r]`.
pub fn element<R: Rng>(rng: &mut R, alg: &Arc<WeilAlgebra>, r: i32) -> WeilElement {
    let coeffs = (0..alg.dim()).map(|_| rng.gen_range(-r..=r) as f64).collect();
    WeilElement::from_coeffs(alg, coeffs).expect("right length")
}

/// An element with zero constant term.
pub fn nilpotent<R: Rng>(rng: &mut R, alg: &Arc<WeilAlgebra>, r: i32) -> WeilElement {
    element(rng, alg, r).nilpotent_part()
}

/// Real in `[-r, r]` rounded to a multiple of 1/8, so sums and small
/// products stay exact.
pub fn dyadic<R: Rng>(rng: &mut R, r: f64) -> f64 {
    (rng.gen_range(-r..=r) * 8.0).round() / 8.0
}

pub fn point<R: Rng>(rng: &mut R, m: usize, r: f64) -> Vec<f64> {
    (0..m).map(|_| dyadic(rng, r)).collect()
}

/// A point of `R^m ⊗ W` with real base in `[-r, r]` and small nilpotent parts.
pub fn weil_point<R: Rng>(rng: &mut R, alg: &Arc<WeilAlgebra>, m: usize, r: f64) -> WeilPoint {
    let coords = (0..m).map(|_| nilpotent(rng, alg, 2).add_constant(dyadic(rng, r))).collect();
    WeilPoint::new(alg, coords).expect("shared algebra")
}

/// Sum of random monomials of total degree ≤ 3 in `x_1..x_m`.
pub fn polynomial<R: Rng>(rng: &mut R, m: usize) -> Expr {
    let mut out: Option<Expr> = None;
    for exps in monomials(m, 3) {
        if !rng.gen_bool(0.35) {
            continue;
        }
        let c = rng.gen_range(-5..=5);
        if c == 0 {
            continue;
        }
        let mut term = Expr::Const(c as f64);
        for (j, &e) in exps.iter().enumerate() {
            match e {
                0 => {}
                1 => term = term * Expr::var(j),
                _ => term = term * Expr::var(j).powi(e as i32),
            }
        }
        out = Some(match out {
            None => term,
            Some(acc) => acc + term,
        });
    }
    out.unwrap_or(Expr::Const(0.0))
}

fn monomials(m: usize, degree: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0; m]];
    for _ in 0..degree {
        let mut next = Vec::new();
        for e in &out {
            for j in 0..m {
                let mut f = e.clone();
                f[j] += 1;
                next.push(f);
            }
        }
        out.extend(next);
        out.sort();
        out.dedup();
    }
    out
}

/// `(m, n)` with `1 ≤ m ≤ 4` and `n ≤ min(m, 3)`.
pub fn form_shape<R: Rng>(rng: &mut R) -> (usize, usize) {
    let m = rng.gen_range(1..=4);
    (m, rng.gen_range(0..=m.min(3)))
}

/// A scalar form whose components are random polynomials.
pub fn polynomial_form<R: Rng>(rng: &mut R, m: usize, n: usize) -> ClassicalForm {
    let components: BTreeMap<Vec<usize>, Vec<Expr>> =
        increasing_tuples(m, n).into_iter().map(|t| (t, vec![polynomial(rng, m)])).collect();
    ClassicalForm::symbolic(m, n, 1, components).expect("well-formed random form")
}

/// A real cube with every coefficient in `[-r, r]`, higher ones included.
pub fn microcube<R: Rng>(rng: &mut R, n: usize, m: usize, r: f64) -> Microcube {
    let coeffs: Vec<Vec<f64>> = (0..1 << n).map(|_| point(rng, m, r)).collect();
    Microcube::from_real(n, &coeffs).expect("consistent shape")
}

/// A cube over `aux` with random real parts and nilpotent perturbations.
pub fn microcube_over<R: Rng>(rng: &mut R, n: usize, m: usize, aux: &Arc<WeilAlgebra>) -> Microcube {
    let coeffs = (0..1 << n).map(|_| weil_point(rng, aux, m, 2.0).into_coords()).collect();
    Microcube::from_coeffs(n, aux, coeffs).expect("consistent shape")
}

pub fn permutation<R: Rng>(rng: &mut R, n: usize) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Permutation::from_images(images).expect("shuffle is a permutation")
}

/// A single-variable expression built from `x1`, constants and the analytic
/// primitives, with `log` and `sqrt` only applied to positive arguments.
/// Defined on all of `R`.
pub fn analytic<R: Rng>(rng: &mut R, depth: u32) -> Expr {
    if depth == 0 || rng.gen_bool(0.2) {
        return if rng.gen_bool(0.7) { Expr::var(0) } else { Expr::Const(rng.gen_range(-3..=3) as f64) };
    }
    let sub = |rng: &mut R| analytic(rng, depth - 1);
    match rng.gen_range(0..9) {
        0 => sub(rng) + sub(rng),
        1 => sub(rng) - sub(rng),
        2 => sub(rng) * sub(rng),
        3 => sub(rng) / (Expr::Const(2.0) + sub(rng).powi(2)),
        4 => sub(rng).powi(rng.gen_range(2..=3)),
        5 => Expr::call(Func::Sin, sub(rng)),
        6 => Expr::call(Func::Cos, sub(rng)),
        7 => Expr::call(if rng.gen_bool(0.5) { Func::Log } else { Func::Sqrt }, Expr::Const(1.0) + sub(rng).powi(2)),
        _ => Expr::call(Func::Exp, Expr::call(Func::Sin, sub(rng))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn monomials_up_to_degree() {
        assert_eq!(monomials(2, 3).len(), 10);
        assert_eq!(monomials(4, 3).len(), 35);
    }

    #[test]
    fn analytic_expressions_are_total() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let e = analytic(&mut rng, 3);
            for x in [-2.0, -0.5, 0.0, 1.0, 3.0] {
                assert!(e.eval(&[x]).unwrap().is_finite(), "{e} at {x}");
            }
        }
    }

    #[test]
    fn shapes_stay_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let (m, n) = form_shape(&mut rng);
            assert!((1..=4).contains(&m) && n <= m.min(3));
            let p = presentation(&mut rng, 3);
            assert!(WeilAlgebra::shared(&p).dim() <= 64);
        }
    }
}
