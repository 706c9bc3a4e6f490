//! Symbolic partial derivatives of expression trees.
//!
//! Results are lightly simplified (constant folding and the neutral
//! elements of `+` and `*`) so that derivatives of polynomials stay small.

use crate::expr::{Expr, Func};

/// `∂f/∂x_{var}` with `var` zero-based.
pub fn diff(f: &Expr, var: usize) -> Expr {
    match f {
        Expr::Const(_) => Expr::Const(0.0),
        Expr::Var(j) => Expr::Const(if *j == var { 1.0 } else { 0.0 }),
        Expr::Neg(a) => neg(diff(a, var)),
        Expr::Add(a, b) => add(diff(a, var), diff(b, var)),
        Expr::Sub(a, b) => sub(diff(a, var), diff(b, var)),
        Expr::Mul(a, b) => add(mul(diff(a, var), (**b).clone()), mul((**a).clone(), diff(b, var))),
        Expr::Div(a, b) => {
            let num = sub(mul(diff(a, var), (**b).clone()), mul((**a).clone(), diff(b, var)));
            div(num, pow((**b).clone(), 2))
        }
        Expr::Pow(a, k) => {
            if *k == 0 {
                return Expr::Const(0.0);
            }
            mul(mul(Expr::Const(*k as f64), pow((**a).clone(), k - 1)), diff(a, var))
        }
        Expr::Call(g, a) => {
            let inner = diff(a, var);
            if inner.is_const(0.0) {
                return Expr::Const(0.0);
            }
            let a = (**a).clone();
            let outer = match g {
                Func::Sin => Expr::call(Func::Cos, a),
                Func::Cos => neg(Expr::call(Func::Sin, a)),
                Func::Exp => Expr::call(Func::Exp, a),
                Func::Log => return div(inner, a),
                Func::Sqrt => return div(inner, mul(Expr::Const(2.0), Expr::call(Func::Sqrt, a))),
            };
            mul(outer, inner)
        }
    }
}

/// Gradient `(∂_1 f, ..., ∂_m f)`.
pub fn gradient(f: &Expr, m: usize) -> Vec<Expr> {
    (0..m).map(|j| diff(f, j)).collect()
}

fn constant(e: &Expr) -> Option<f64> {
    match e {
        Expr::Const(c) => Some(*c),
        _ => None,
    }
}

fn neg(a: Expr) -> Expr {
    match a {
        Expr::Const(c) => Expr::Const(-c),
        Expr::Neg(inner) => *inner,
        a => -a,
    }
}

fn add(a: Expr, b: Expr) -> Expr {
    match (constant(&a), constant(&b)) {
        (Some(x), Some(y)) => Expr::Const(x + y),
        (Some(x), _) if x == 0.0 => b,
        (_, Some(y)) if y == 0.0 => a,
        _ => a + b,
    }
}

fn sub(a: Expr, b: Expr) -> Expr {
    match (constant(&a), constant(&b)) {
        (Some(x), Some(y)) => Expr::Const(x - y),
        (Some(x), _) if x == 0.0 => neg(b),
        (_, Some(y)) if y == 0.0 => a,
        _ => a - b,
    }
}

fn mul(a: Expr, b: Expr) -> Expr {
    match (constant(&a), constant(&b)) {
        (Some(x), Some(y)) => Expr::Const(x * y),
        (Some(x), _) | (_, Some(x)) if x == 0.0 => Expr::Const(0.0),
        (Some(x), _) if x == 1.0 => b,
        (_, Some(y)) if y == 1.0 => a,
        _ => a * b,
    }
}

fn div(a: Expr, b: Expr) -> Expr {
    match (constant(&a), constant(&b)) {
        (Some(x), _) if x == 0.0 => Expr::Const(0.0),
        (_, Some(y)) if y == 1.0 => a,
        _ => a / b,
    }
}

fn pow(a: Expr, k: i32) -> Expr {
    match (k, constant(&a)) {
        (0, _) => Expr::Const(1.0),
        (1, _) => a,
        (_, Some(x)) => Expr::Const(x.powi(k)),
        _ => a.powi(k),
    }
}
