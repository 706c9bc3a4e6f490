use std::collections::BTreeMap;

use super::symbolic::diff;
use super::OracleError;
use crate::expr::Expr;
use crate::forms::ClassicalForm;
use crate::perm::increasing_tuples;

/// Coordinate exterior derivative:
/// `(dω)_{j_0 < ... < j_n} = Σ_t (-1)^t ∂_{j_t} ω_{J \ j_t}`.
pub fn classical_d(omega: &ClassicalForm) -> Result<ClassicalForm, OracleError> {
    let comps = omega.symbolic_components().ok_or(OracleError::NotSymbolic)?;
    let (m, n, k) = (omega.dim(), omega.degree(), omega.codim());
    let mut out = BTreeMap::new();
    for tuple in increasing_tuples(m, n + 1) {
        let mut acc: Vec<Option<Expr>> = vec![None; k];
        for t in 0..tuple.len() {
            let mut rest = tuple.clone();
            let j = rest.remove(t);
            let Some(exprs) = comps.get(&rest) else { continue };
            for (slot, e) in acc.iter_mut().zip(exprs) {
                let term = diff(e, j);
                if term.is_const(0.0) {
                    continue;
                }
                *slot = Some(match (slot.take(), t % 2 == 0) {
                    (None, true) => term,
                    (None, false) => -term,
                    (Some(s), true) => s + term,
                    (Some(s), false) => s - term,
                });
            }
        }
        if acc.iter().any(Option::is_some) {
            out.insert(tuple, acc.into_iter().map(|e| e.unwrap_or(Expr::Const(0.0))).collect());
        }
    }
    Ok(ClassicalForm::symbolic(m, n + 1, k, out)?)
}

/// Gradient, curl or divergence of a scalar form on `R^3`, labelled by
/// component.
///
/// A 1-form `P dx + Q dy + R dz` has curl `(R_y - Q_z, P_z - R_x, Q_x - P_y)`;
/// a 2-form `A dy∧dz + B dz∧dx + C dx∧dy` has divergence `A_x + B_y + C_z`.
pub fn vector_calculus_views(omega: &ClassicalForm) -> Result<Vec<(String, Expr)>, OracleError> {
    let comps = omega.symbolic_components().ok_or(OracleError::NotSymbolic)?;
    if omega.dim() != 3 || omega.degree() > 2 || omega.codim() != 1 {
        return Err(OracleError::Unsupported { dim: omega.dim(), degree: omega.degree(), codim: omega.codim() });
    }
    let c = |t: &[usize]| comps.get(t).map(|v| v[0].clone()).unwrap_or(Expr::Const(0.0));
    let d = |e: &Expr, j: usize| diff(e, j);
    let label = |name: &str, axis: &str| format!("{name}_{axis}");
    Ok(match omega.degree() {
        0 => {
            let f = c(&[]);
            ["x", "y", "z"].iter().enumerate().map(|(j, a)| (label("grad", a), d(&f, j))).collect()
        }
        1 => {
            let (p, q, r) = (c(&[0]), c(&[1]), c(&[2]));
            vec![
                (label("curl", "x"), d(&r, 1) - d(&q, 2)),
                (label("curl", "y"), d(&p, 2) - d(&r, 0)),
                (label("curl", "z"), d(&q, 0) - d(&p, 1)),
            ]
        }
        _ => {
            let (a, b, cc) = (c(&[1, 2]), -c(&[0, 2]), c(&[0, 1]));
            vec![("div".to_string(), d(&a, 0) + d(&b, 1) + d(&cc, 2))]
        }
    })
}

/// Central-difference estimate of `dω_x(a_0, ..., a_n)`:
/// `Σ_i (-1)^i ∂_t|_0 ω_{x + t a_i}(a_0, ..., â_i, ..., a_n)`.
pub fn finite_difference_d(omega: &ClassicalForm, x: &[f64], edges: &[Vec<f64>], h: f64) -> Result<Vec<f64>, OracleError> {
    if !(h > 0.0) {
        return Err(OracleError::Step(h));
    }
    if edges.len() != omega.degree() + 1 {
        return Err(OracleError::Form(crate::forms::FormError::Degree {
            expected: omega.degree() + 1,
            found: edges.len(),
        }));
    }
    let mut out = vec![0.0; omega.codim()];
    for i in 0..edges.len() {
        let others: Vec<Vec<f64>> = edges.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, a)| a.clone()).collect();
        let shifted = |s: f64| -> Vec<f64> { x.iter().zip(&edges[i]).map(|(xj, aj)| xj + s * aj).collect() };
        let plus = omega.evaluate_real(&shifted(h), &others)?;
        let minus = omega.evaluate_real(&shifted(-h), &others)?;
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        for (o, (p, q)) in out.iter_mut().zip(plus.iter().zip(&minus)) {
            *o += sign * (p - q) / (2.0 * h);
        }
    }
    Ok(out)
}
