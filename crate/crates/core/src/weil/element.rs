use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{WeilAlgebra, WeilError};

/// An element of a Weil algebra: one real coefficient per basis monomial.
#[derive(Clone)]
pub struct WeilElement {
    algebra: Arc<WeilAlgebra>,
    coeffs: Vec<f64>,
}

impl WeilElement {
    pub fn zero(algebra: &Arc<WeilAlgebra>) -> Self {
        Self { algebra: Arc::clone(algebra), coeffs: vec![0.0; algebra.dim()] }
    }

    pub fn constant(algebra: &Arc<WeilAlgebra>, c: f64) -> Self {
        let mut out = Self::zero(algebra);
        out.coeffs[0] = c;
        out
    }

    pub fn from_coeffs(algebra: &Arc<WeilAlgebra>, coeffs: Vec<f64>) -> Result<Self, WeilError> {
        if coeffs.len() != algebra.dim() {
            return Err(WeilError::DimensionMismatch { expected: algebra.dim(), found: coeffs.len() });
        }
        Ok(Self { algebra: Arc::clone(algebra), coeffs })
    }

    pub fn algebra(&self) -> &Arc<WeilAlgebra> {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    /// Coefficient of the monomial `x^e`; zero for monomials outside the basis.
    pub fn coeff(&self, exponents: &[u32]) -> f64 {
        self.algebra.index_of(exponents).map_or(0.0, |i| self.coeffs[i])
    }

    /// The constant term.
    pub fn augmentation(&self) -> f64 {
        self.coeffs[0]
    }

    /// The element minus its constant term.
    pub fn nilpotent_part(&self) -> Self {
        let mut out = self.clone();
        out.coeffs[0] = 0.0;
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    fn check(&self, other: &Self) -> Result<(), WeilError> {
        if self.algebra.same_as(&other.algebra) {
            Ok(())
        } else {
            Err(WeilError::AlgebraMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, WeilError> {
        self.check(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, WeilError> {
        self.check(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    /// Truncated polynomial product.
    pub fn try_mul(&self, other: &Self) -> Result<Self, WeilError> {
        self.check(other)?;
        let mut out = vec![0.0; self.coeffs.len()];
        for (a, &ca) in self.coeffs.iter().enumerate() {
            if ca == 0.0 {
                continue;
            }
            for &(b, c) in self.algebra.products_of(a) {
                out[c] += ca * other.coeffs[b];
            }
        }
        Ok(Self { algebra: Arc::clone(&self.algebra), coeffs: out })
    }

    pub fn scale(&self, alpha: f64) -> Self {
        Self { algebra: Arc::clone(&self.algebra), coeffs: self.coeffs.iter().map(|c| alpha * c).collect() }
    }

    pub fn add_constant(&self, c: f64) -> Self {
        let mut out = self.clone();
        out.coeffs[0] += c;
        out
    }

    pub fn powi(&self, p: u32) -> Self {
        let mut out = self.algebra.one();
        let mut base = self.clone();
        let mut p = p;
        while p > 0 {
            if p & 1 == 1 {
                out = &out * &base;
            }
            base = &base * &base;
            p >>= 1;
        }
        out
    }

    /// `Σ_j series[j] ν^j` where `ν` is the nilpotent part of `self`.
    ///
    /// Terms with `j ≥` the nilpotency index vanish and are never read.
    pub fn compose_series(&self, series: &[f64]) -> Self {
        let nu = self.nilpotent_part();
        let mut out = self.algebra.zero();
        // Horner on the truncated series
        for &c in series.iter().rev() {
            out = (&out * &nu).add_constant(c);
        }
        out
    }

    /// Multiplicative inverse via the geometric series in `-ν/c`.
    pub fn inverse(&self) -> Result<Self, WeilError> {
        let c = self.augmentation();
        if c == 0.0 {
            return Err(WeilError::NotInvertible);
        }
        let n = self.algebra.nilpotency_index() as usize;
        let series: Vec<f64> = (0..n).map(|j| (-1.0f64).powi(j as i32) / c.powi(j as i32 + 1)).collect();
        Ok(self.compose_series(&series))
    }

    /// Largest coefficient difference; `None` on algebra mismatch.
    pub fn distance(&self, other: &Self) -> Option<f64> {
        self.check(other).ok()?;
        Some(self.coeffs.iter().zip(&other.coeffs).fold(0.0, |m, (a, b)| m.max((a - b).abs())))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        Self {
            algebra: Arc::clone(&self.algebra),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    /// Document form `{"coeffs": {"e1,e2,...": value}}` listing nonzero terms.
    pub fn to_doc(&self) -> ElementDoc {
        let coeffs = self
            .algebra
            .basis()
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, &c)| c != 0.0)
            .map(|(e, &c)| (exponent_key(e), c))
            .collect();
        ElementDoc { coeffs }
    }

    pub fn from_doc(algebra: &Arc<WeilAlgebra>, doc: &ElementDoc) -> Result<Self, WeilError> {
        let mut out = Self::zero(algebra);
        for (key, &c) in &doc.coeffs {
            let e = parse_exponent_key(key, algebra.num_vars())?;
            let pos = algebra
                .index_of(&e)
                .ok_or_else(|| WeilError::Document(format!("monomial {key} is zero in this algebra")))?;
            out.coeffs[pos] += c;
        }
        Ok(out)
    }
}

/// `"e1,e2,..."`; the constant monomial of a zero-variable algebra is `""`.
pub fn exponent_key(e: &[u32]) -> String {
    e.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",")
}

pub fn parse_exponent_key(key: &str, vars: usize) -> Result<Vec<u32>, WeilError> {
    let bad = || WeilError::Document(format!("bad monomial key {key:?} for {vars} variables"));
    if key.trim().is_empty() {
        return if vars == 0 { Ok(Vec::new()) } else { Err(bad()) };
    }
    let e = key
        .split(',')
        .map(|s| s.trim().parse::<u32>().map_err(|_| bad()))
        .collect::<Result<Vec<_>, _>>()?;
    if e.len() != vars {
        return Err(bad());
    }
    Ok(e)
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ElementDoc {
    pub coeffs: BTreeMap<String, f64>,
}

impl PartialEq for WeilElement {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same_as(&other.algebra) && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for WeilElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeilElement({self})")
    }
}

impl fmt::Display for WeilElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0.0)
            .map(|(i, &c)| if i == 0 { format!("{c}") } else { format!("{c}*{}", self.algebra.monomial_name(i)) })
            .collect();
        if terms.is_empty() { f.write_str("0") } else { f.write_str(&terms.join(" + ")) }
    }
}

// Operator forms panic on algebra mismatch; use the `try_*` methods when the
// operands may come from different algebras.
macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&WeilElement> for &WeilElement {
            type Output = WeilElement;
            fn $method(self, rhs: &WeilElement) -> WeilElement {
                self.$checked(rhs).expect("operands live in different Weil algebras")
            }
        }
        impl $trait<WeilElement> for WeilElement {
            type Output = WeilElement;
            fn $method(self, rhs: WeilElement) -> WeilElement {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &WeilElement {
    type Output = WeilElement;
    fn neg(self) -> WeilElement {
        self.scale(-1.0)
    }
}

impl Neg for WeilElement {
    type Output = WeilElement;
    fn neg(self) -> WeilElement {
        self.scale(-1.0)
    }
}
