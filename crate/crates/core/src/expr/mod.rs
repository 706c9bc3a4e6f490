//! Expression trees for smooth maps `R^m -> R`.
//!
//! Variables are `x1..xm` in text and zero-based [`Expr::Var`] indices in
//! memory. Printing emits the minimal parentheses needed to parse back to
//! the same tree.

mod parser;

use std::fmt;

pub use parser::{parse_expression, ParseError};

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Log,
    Sqrt,
}

impl Func {
    pub const ALL: [Func; 5] = [Func::Sin, Func::Cos, Func::Exp, Func::Log, Func::Sqrt];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }

    pub fn eval(self, x: f64) -> Result<f64, EvalError> {
        match self {
            Func::Sin => Ok(x.sin()),
            Func::Cos => Ok(x.cos()),
            Func::Exp => Ok(x.exp()),
            Func::Log if x <= 0.0 => Err(EvalError::Domain { func: self, at: x }),
            Func::Log => Ok(x.ln()),
            Func::Sqrt if x < 0.0 => Err(EvalError::Domain { func: self, at: x }),
            Func::Sqrt => Ok(x.sqrt()),
        }
    }

    /// Normalized Taylor coefficients `g^{(j)}(c) / j!` for `j < terms`.
    pub fn taylor(self, c: f64, terms: usize) -> Result<Vec<f64>, EvalError> {
        let domain = EvalError::Domain { func: self, at: c };
        let mut out = Vec::with_capacity(terms);
        let mut fact = 1.0;
        for j in 0..terms {
            if j > 0 {
                fact *= j as f64;
            }
            let deriv = match self {
                Func::Sin => [c.sin(), c.cos(), -c.sin(), -c.cos()][j % 4],
                Func::Cos => [c.cos(), -c.sin(), -c.cos(), c.sin()][j % 4],
                Func::Exp => c.exp(),
                Func::Log => {
                    if c <= 0.0 {
                        return Err(domain);
                    }
                    if j == 0 {
                        c.ln()
                    } else {
                        // (-1)^{j-1} (j-1)! / c^j
                        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
                        sign * (fact / j as f64) / c.powi(j as i32)
                    }
                }
                Func::Sqrt => {
                    if c < 0.0 || (c == 0.0 && terms > 1) {
                        return Err(domain);
                    }
                    // (1/2)(1/2 - 1)...(1/2 - j + 1) c^{1/2 - j}
                    let falling: f64 = (0..j).map(|l| 0.5 - l as f64).product();
                    falling * c.sqrt() / c.powi(j as i32)
                }
            };
            out.push(deriv / fact);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(f64),
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Call(Func, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("division by an element with zero constant term")]
    DivisionByZero,
    #[error("{} is not defined at {at}", func.name())]
    Domain { func: Func, at: f64 },
    #[error("variable x{} is not available at a point of dimension {dim}", var + 1)]
    MissingVariable { var: usize, dim: usize },
    #[error("{0}")]
    Weil(#[from] crate::weil::WeilError),
}

impl Expr {
    pub fn var(i: usize) -> Self {
        Expr::Var(i)
    }

    pub fn constant(c: f64) -> Self {
        Expr::Const(c)
    }

    pub fn call(f: Func, e: Expr) -> Self {
        Expr::Call(f, Box::new(e))
    }

    pub fn powi(self, p: i32) -> Self {
        Expr::Pow(Box::new(self), p)
    }

    /// Number of variables the expression needs: one past the largest index.
    pub fn arity(&self) -> usize {
        match self {
            Expr::Const(_) => 0,
            Expr::Var(i) => i + 1,
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Call(_, a) => a.arity(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => a.arity().max(b.arity()),
        }
    }

    pub fn is_const(&self, c: f64) -> bool {
        matches!(self, Expr::Const(v) if *v == c)
    }

    /// `self(args_1, ..., args_m)`: replaces `x_i` by `args[i]`.
    pub fn substitute(&self, args: &[Expr]) -> Result<Expr, EvalError> {
        let sub = |e: &Expr| e.substitute(args).map(Box::new);
        Ok(match self {
            Expr::Const(c) => Expr::Const(*c),
            Expr::Var(i) => args.get(*i).cloned().ok_or(EvalError::MissingVariable { var: *i, dim: args.len() })?,
            Expr::Neg(a) => Expr::Neg(sub(a)?),
            Expr::Add(a, b) => Expr::Add(sub(a)?, sub(b)?),
            Expr::Sub(a, b) => Expr::Sub(sub(a)?, sub(b)?),
            Expr::Mul(a, b) => Expr::Mul(sub(a)?, sub(b)?),
            Expr::Div(a, b) => Expr::Div(sub(a)?, sub(b)?),
            Expr::Pow(a, k) => Expr::Pow(sub(a)?, *k),
            Expr::Call(g, a) => Expr::Call(*g, sub(a)?),
        })
    }

    /// Plain real evaluation.
    pub fn eval(&self, x: &[f64]) -> Result<f64, EvalError> {
        Ok(match self {
            Expr::Const(c) => *c,
            Expr::Var(i) => *x.get(*i).ok_or(EvalError::MissingVariable { var: *i, dim: x.len() })?,
            Expr::Neg(a) => -a.eval(x)?,
            Expr::Add(a, b) => a.eval(x)? + b.eval(x)?,
            Expr::Sub(a, b) => a.eval(x)? - b.eval(x)?,
            Expr::Mul(a, b) => a.eval(x)? * b.eval(x)?,
            Expr::Div(a, b) => {
                let d = b.eval(x)?;
                if d == 0.0 {
                    return Err(EvalError::DivisionByZero);
                }
                a.eval(x)? / d
            }
            Expr::Pow(a, p) => {
                let base = a.eval(x)?;
                if *p < 0 && base == 0.0 {
                    return Err(EvalError::DivisionByZero);
                }
                base.powi(*p)
            }
            Expr::Call(f, a) => f.eval(a.eval(x)?)?,
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Const(c) if *c < 0.0 || (*c == 0.0 && c.is_sign_negative()) => 3,
            Expr::Pow(..) => 4,
            Expr::Const(_) | Expr::Var(_) | Expr::Call(..) => 5,
        }
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, e: &Expr, min_prec: u8) -> fmt::Result {
    if e.precedence() < min_prec {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "{c:?}"),
            Expr::Var(i) => write!(f, "x{}", i + 1),
            Expr::Neg(a) => {
                f.write_str("-")?;
                write_operand(f, a, 3)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                write_operand(f, a, 1)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                write_operand(f, b, 2)
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                write_operand(f, a, 2)?;
                f.write_str(if matches!(self, Expr::Mul(..)) { " * " } else { " / " })?;
                write_operand(f, b, 3)
            }
            Expr::Pow(a, p) => {
                write_operand(f, a, 5)?;
                if *p < 0 { write!(f, "^({p})") } else { write!(f, "^{p}") }
            }
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

macro_rules! expr_binop {
    ($trait:ident, $method:ident, $variant:ident) => {
        impl std::ops::$trait for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                Expr::$variant(Box::new(self), Box::new(rhs))
            }
        }
    };
}

expr_binop!(Add, add, Add);
expr_binop!(Sub, sub, Sub);
expr_binop!(Mul, mul, Mul);
expr_binop!(Div, div, Div);

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_parenthesizes_minimally() {
        let e = (Expr::var(0) + Expr::var(1)) * Expr::var(2);
        assert_eq!(e.to_string(), "(x1 + x2) * x3");
        let e = Expr::var(0) - (Expr::var(1) - Expr::var(2));
        assert_eq!(e.to_string(), "x1 - (x2 - x3)");
        let e = (-Expr::var(0)).powi(2);
        assert_eq!(e.to_string(), "(-x1)^2");
        let e = Expr::var(0).powi(-2) * Expr::constant(-3.0);
        assert_eq!(e.to_string(), "x1^(-2) * -3.0");
        let e = Expr::call(Func::Sin, Expr::var(1) / Expr::constant(2.0));
        assert_eq!(e.to_string(), "sin(x2 / 2.0)");
    }

    #[test]
    fn taylor_coefficients_of_log_and_sqrt() {
        let t = Func::Log.taylor(2.0, 4).unwrap();
        let expected = [2f64.ln(), 0.5, -1.0 / 8.0, 1.0 / 24.0];
        for (a, b) in t.iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
        let s = Func::Sqrt.taylor(4.0, 3).unwrap();
        let expected = [2.0, 0.25, -1.0 / 64.0];
        for (a, b) in s.iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!(Func::Log.taylor(0.0, 2).is_err());
        assert!(Func::Sqrt.taylor(0.0, 2).is_err());
        assert_eq!(Func::Sqrt.taylor(0.0, 1).unwrap(), vec![0.0]);
    }

    #[test]
    fn real_eval_errors() {
        let e = Expr::var(0) / Expr::var(1);
        assert_eq!(e.eval(&[1.0, 0.0]), Err(EvalError::DivisionByZero));
        assert!(matches!(e.eval(&[1.0]), Err(EvalError::MissingVariable { var: 1, dim: 1 })));
        let l = Expr::call(Func::Log, Expr::var(0));
        assert!(matches!(l.eval(&[-1.0]), Err(EvalError::Domain { .. })));
    }
}
